#pragma once

#include <vector>

#include "eit/field.hpp"
#include "eit/synth.hpp"
#include "eit/thermo.hpp"

namespace eit {

struct Vec2 {
  double x = 0.0, y = 0.0;
};
struct Mat2 {
  // row a, column B: entry (a, B) = d phi^a / d X^B
  double m[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
  double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

Mat2 mat_mul(const Mat2& a, const Mat2& b);
Vec2 mat_vec(const Mat2& a, const Vec2& v);
Mat2 mat_inv(const Mat2& a);

/// Closed-form time-dependent diffeomorphism family on the periodic unit box:
/// a composition of axis waves (variable Jacobian, Newton-inverted to
/// round-off), transverse shears and rigid rotations, each with analytic
/// gradient, Jacobian and time derivative.  No numerically integrated flows.
class DiffeoFamily {
 public:
  struct Stage {
    enum class Kind { AxisWave, Shear, Rotation } kind;
    int axis = 0;       // AxisWave: displaced axis; Shear: displaced axis
    int k = 1;          // spatial wavenumber
    double amp = 0.0;   // |amp| < 1 keeps axis waves invertible
    double omega = 0.0;
    double phase = 0.0;
    Vec2 center{0.5, 0.5};  // rotation center
    double c(double t) const;
    double dc(double t) const;
  };

  DiffeoFamily(int dim, double lx, double ly = 1.0) : dim_(dim), lx_(lx), ly_(ly) {}

  DiffeoFamily& add_axis_wave(int axis, double amp, int k, double omega, double phase = 0.0);
  DiffeoFamily& add_shear(int displaced_axis, double amp, int k, double omega, double phase = 0.0);
  DiffeoFamily& add_rotation(double omega, double phase = 0.0, Vec2 center = {0.5, 0.5});

  int dim() const { return dim_; }

  Vec2 map(double t, Vec2 X) const;
  Mat2 grad(double t, Vec2 X) const;
  /// det grad; throws AdmissibilityError if not > 0
  double jac(double t, Vec2 X) const;
  Vec2 inverse(double t, Vec2 x) const;
  /// d phi / dt at fixed label X
  Vec2 vel_material(double t, Vec2 X) const;
  /// spatial velocity u(t, x) = vel_material(t, phi^{-1}(x))
  Vec2 vel_spatial(double t, Vec2 x) const;

 private:
  int dim_;
  double lx_, ly_;
  std::vector<Stage> stages_;
};

/// Periodic 4-point Lagrange (cubic) interpolation of a field component at a
/// continuous point.
double interp_cubic(const FieldBase& f, int comp, double x, double y = 0.0);

// Pointwise Piola-type transforms of contravariant densities:
// q^a(phi(X)) J = phi^a_{,A} Q^A  and the two-index analogue.
Vec2 push_vector_density(const Mat2& gradphi, double J, const Vec2& Q);
/// S and the result in (xx, xy, yy) storage
std::array<double, 3> push_tensor_density(const Mat2& gradphi, double J,
                                          const std::array<double, 3>& S);

/// Grid pushforward: reference-grid density Q to the spatial grid of the
/// same box, sampling Q at phi^{-1}(x) by cubic interpolation.
VectorField pushforward(const DiffeoFamily& phi, double t, const VectorField& Q);
SymTensorField pushforward(const DiffeoFamily& phi, double t, const SymTensorField& S);

/// Inverse transform (spatial density to the reference grid).
VectorField pullback(const DiffeoFamily& phi, double t, const VectorField& q);
SymTensorField pullback(const DiffeoFamily& phi, double t, const SymTensorField& sigma);

struct IdentityResult {
  double max_abs_err = 0.0;
  double scale = 1.0;
  double rel() const { return max_abs_err / scale; }
};

/// Numerical verification of  d/dt Q = (phi^* D_t q) J_phi : the material
/// time derivative of the pulled-back flux (central differences, step eps_t)
/// against the pullback of the grid-computed Truesdell rate.  The flux is a
/// closed-form time-modulated trig field drawn from `seed`; the map is a
/// fixed wave+shear family.
IdentityResult truesdell_identity_check(int dim, bool tensor, int n, double eps_t, unsigned seed);

/// Numerical verification of  dL/dQ = phi^* (dl/dq)  (and the sigma
/// analogue): central finite differences of the materialized energy density
/// through the real pushforward/interpolation pipeline against the pulled
/// back spatial conjugate.  fd_step <= 0 selects the step by a Richardson
/// probe.
IdentityResult conjugate_identity_check(int dim, bool tensor, int n, double fd_step, unsigned seed);

/// Density integral invariance along the pushforward, |int q - int Q|.
double pushforward_integral_drift(const DiffeoFamily& phi, double t, const VectorField& Q);

}  // namespace eit
