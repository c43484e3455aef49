#pragma once

#include <array>
#include <string>

#include "eit/errors.hpp"

namespace eit {

enum class AxisKind { Periodic, Wall };

/// Structured, uniform, cell-centered 1D/2D mesh.
///
/// Cell centers sit at x_i = (i + 1/2) h. Wall axes get ghost values
/// synthesized on the fly by the operators; periodic axes wrap exactly.
struct Grid {
  int dim = 1;
  std::array<int, 2> n{1, 1};
  std::array<double, 2> h{1.0, 1.0};
  std::array<AxisKind, 2> kind{AxisKind::Periodic, AxisKind::Periodic};

  static Grid make_1d(int nx, double length, AxisKind kx = AxisKind::Periodic);
  static Grid make_2d(int nx, int ny, double lx, double ly,
                      AxisKind kx = AxisKind::Periodic,
                      AxisKind ky = AxisKind::Periodic);

  int cells() const { return n[0] * n[1]; }
  int idx(int ix, int iy) const { return iy * n[0] + ix; }
  double x(int ix) const { return (ix + 0.5) * h[0]; }
  double y(int iy) const { return (iy + 0.5) * h[1]; }
  double coord(int axis, int i) const { return (i + 0.5) * h[axis]; }
  double length(int axis) const { return n[axis] * h[axis]; }
  double cell_volume() const { return dim == 1 ? h[0] : h[0] * h[1]; }
  bool periodic(int axis) const { return kind[axis] == AxisKind::Periodic; }

  // Number of independent symmetric rank-2 components (1 in 1D; xx,xy,yy in 2D).
  int sym_comps() const { return dim == 1 ? 1 : 3; }
  // Independent components of a fully symmetric rank-k tensor.
  int sym_comps(int order) const { return dim == 1 ? 1 : order + 1; }

  bool operator==(const Grid&) const = default;

  void validate() const;
};

std::string to_string(const Grid& g);

}  // namespace eit
