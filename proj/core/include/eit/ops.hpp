#pragma once

#include <utility>

#include "eit/field.hpp"

namespace eit {

// Second-order central differences, cell-centered and collocated. Periodic
// axes wrap exactly; wall axes read ghosts synthesized per the WallRules
// (Extrap2 by default, which reproduces one-sided second-order stencils).
// All operators are pure and linear in their field arguments.

VectorField grad_scalar(const ScalarField& f, const WallRules& wr = {});
ScalarField div_vector(const VectorField& q, const WallRules& wr = {});
VectorField div_tensor(const SymTensorField& tau, const WallRules& wr = {});

/// Full velocity gradient, at(a,b,i) = d_a u^b.
GradTensorField jacobian(const VectorField& u, const WallRules& wr = {});

/// Def u = (grad u + grad u^T)/2
SymTensorField deformation_rate(const VectorField& u, const WallRules& wr = {});
SymTensorField deformation_rate(const GradTensorField& gu);

/// Lie transport of a vector density: L_u q + q div u  (the non-d_t part of
/// the Truesdell rate).  q must carry density_weight 1, u weight 0.
VectorField lie_transport_vector_density(const VectorField& u, const VectorField& q,
                                         const WallRules& wr_u = {}, const WallRules& wr_q = {});
SymTensorField lie_transport_tensor_density(const VectorField& u, const SymTensorField& s,
                                            const WallRules& wr_u = {}, const WallRules& wr_s = {});
HigherFluxField lie_transport_higher_density(const VectorField& u, const HigherFluxField& Q,
                                             const WallRules& wr_u = {}, const WallRules& wr_Q = {});

// Variants reusing a precomputed velocity gradient (assembly hot path).
VectorField lie_transport_vector_density(const GradTensorField& gu, const VectorField& u,
                                         const VectorField& q, const WallRules& wr_q = {});
SymTensorField lie_transport_tensor_density(const GradTensorField& gu, const VectorField& u,
                                            const SymTensorField& s, const WallRules& wr_s = {});
HigherFluxField lie_transport_higher_density(const GradTensorField& gu, const VectorField& u,
                                             const HigherFluxField& Q, const WallRules& wr_Q = {});

/// sigma = dev + p_v * delta with Tr dev = 0 pointwise; p_v = Tr sigma / d.
std::pair<SymTensorField, ScalarField> dev_iso_split(const SymTensorField& sigma);
SymTensorField recompose(const SymTensorField& dev, const ScalarField& p_v);

/// Symmetrized gradient raising a rank-(k-1) symmetric tensor to rank k.
HigherFluxField sym_grad_higher(const VectorField& p, const WallRules& wr = {});
HigherFluxField sym_grad_higher(const HigherFluxField& p, const WallRules& wr = {});
/// Divergence lowering rank: order 2 -> vector, order k>=3 -> order k-1.
VectorField div_higher_vec(const HigherFluxField& r, const WallRules& wr = {});
HigherFluxField div_higher(const HigherFluxField& r, const WallRules& wr = {});

// Pointwise algebra ---------------------------------------------------------

ScalarField dot(const VectorField& a, const VectorField& b);
ScalarField contract(const SymTensorField& a, const SymTensorField& b);
ScalarField contract(const HigherFluxField& a, const HigherFluxField& b);
ScalarField trace(const SymTensorField& s);
/// (s . v)^a = s^{ab} v_b
VectorField sym_dot_vec(const SymTensorField& s, const VectorField& v);
/// sigma . sigma (matrix square; symmetric)
SymTensorField sym_square(const SymTensorField& s);
/// q (x) q
SymTensorField sym_outer(const VectorField& q);
/// M^{ij} = Q^{i R} Q^{j R}, contraction over the remaining k-1 indices.
SymTensorField higher_square_sym2(const HigherFluxField& q);
/// (a . b)^i = a^{i j1..jk} b_{j1..jk}, a of order k+1, b of order k.
VectorField higher_dot_down(const HigherFluxField& a, const HigherFluxField& b);
VectorField higher_dot_down(const HigherFluxField& a, const VectorField& b);

double integral(const ScalarField& f);
/// Fourth-difference smoothing increment (stabilization); adds
/// -coef * sum_axis (f_{-2} -4 f_{-1} +6 f_0 -4 f_{+1} + f_{+2})/16 to rate.
void add_hyperdiffusion(FieldBase& rate, const FieldBase& f, double coef, const WallRules& wr);

}  // namespace eit
