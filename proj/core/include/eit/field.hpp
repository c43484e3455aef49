#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "eit/grid.hpp"

namespace eit {

/// Ghost synthesis for WALL axes. Periodic axes always wrap.
///   Even     mirror across the face (f(-1) = f(0)); realizes d f/dn = 0
///   Odd      antimirror (f(-1) = -f(0)); realizes f = 0 at the face
///   Extrap2  quadratic extrapolation; equivalent to one-sided second-order
///            differences for pure calculus with no physics attached
enum class GhostRule : std::uint8_t { Even, Odd, Extrap2 };

/// Per-axis, per-component wall rules for a field (ignored on periodic axes).
struct WallRules {
  static constexpr int kMaxComp = 8;
  GhostRule rule[2][kMaxComp];

  WallRules(GhostRule all = GhostRule::Extrap2) {
    for (auto& ax : rule)
      for (auto& r : ax) r = all;
  }
  WallRules& set(int axis, int comp, GhostRule r) {
    rule[axis][comp] = r;
    return *this;
  }
  WallRules& set_axis(int axis, GhostRule r) {
    for (auto& c : rule[axis]) c = r;
    return *this;
  }
  GhostRule operator()(int axis, int comp) const { return rule[axis][comp]; }
};

/// Dense multi-component sample set on a Grid, component-major storage.
/// density_weight records how the object transforms under diffeomorphisms
/// (0: ordinary tensor, 1: tensor density); the transport operators check it.
class FieldBase {
 public:
  FieldBase() = default;
  FieldBase(const Grid& g, int ncomp, int density_weight)
      : grid_(g), ncomp_(ncomp), dw_(density_weight), data_(static_cast<size_t>(ncomp) * g.cells(), 0.0) {}

  const Grid& grid() const { return grid_; }
  int ncomp() const { return ncomp_; }
  int density_weight() const { return dw_; }
  bool empty() const { return data_.empty(); }

  double* comp(int c) { return data_.data() + static_cast<size_t>(c) * grid_.cells(); }
  const double* comp(int c) const { return data_.data() + static_cast<size_t>(c) * grid_.cells(); }

  double& operator()(int c, int i) { return comp(c)[i]; }
  double operator()(int c, int i) const { return comp(c)[i]; }

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  void fill(double v) { data_.assign(data_.size(), v); }

  /// this += a * other (shape must match)
  void axpy(double a, const FieldBase& other);
  /// this = a * this
  void scale(double a);

  double max_abs() const;
  /// L2 norm weighted by cell volume.
  double l2() const;

  /// Extended accessor: indices may run one or two cells outside the
  /// interior; wall ghosts are synthesized per the rules, periodic wraps.
  double ext(int c, int ix, int iy, const WallRules& wr) const;

 protected:
  Grid grid_{};
  int ncomp_ = 0;
  int dw_ = 0;
  std::vector<double> data_;
};

struct ScalarField : FieldBase {
  ScalarField() = default;
  explicit ScalarField(const Grid& g, int density_weight = 0) : FieldBase(g, 1, density_weight) {}
  double& operator[](int i) { return data_[i]; }
  double operator[](int i) const { return data_[i]; }
};

struct VectorField : FieldBase {
  VectorField() = default;
  explicit VectorField(const Grid& g, int density_weight = 0) : FieldBase(g, g.dim, density_weight) {}
};

/// Symmetric rank-2 contravariant field; components xx (1D) or xx,xy,yy (2D).
struct SymTensorField : FieldBase {
  SymTensorField() = default;
  explicit SymTensorField(const Grid& g, int density_weight = 1)
      : FieldBase(g, g.sym_comps(), density_weight) {}
  // contraction multiplicity of stored component c (off-diagonals count twice)
  double weight(int c) const { return (grid_.dim == 2 && c == 1) ? 2.0 : 1.0; }
};

/// Fully symmetric rank-k contravariant density, k >= 2.
/// 2D components are indexed by the number of y indices, j = 0..k.
struct HigherFluxField : FieldBase {
  int order = 2;
  HigherFluxField() = default;
  HigherFluxField(const Grid& g, int k) : FieldBase(g, g.sym_comps(k), 1), order(k) {}
  /// multinomial multiplicity C(k, j) of stored component j
  double weight(int j) const;
};

/// Full (unsymmetrized) rank-2 gradient workspace: comp index a*dim+b holds
/// d_a u^b. Internal to the operator kernels but exposed for assembly reuse.
struct GradTensorField : FieldBase {
  GradTensorField() = default;
  explicit GradTensorField(const Grid& g) : FieldBase(g, g.dim * g.dim, 0) {}
  double& at(int a, int b, int i) { return comp(a * grid_.dim + b)[i]; }
  double at(int a, int b, int i) const { return comp(a * grid_.dim + b)[i]; }
};

double binomial(int n, int k);

}  // namespace eit
