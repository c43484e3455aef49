#include "eit/grid.hpp"

#include <sstream>

namespace eit {

Grid Grid::make_1d(int nx, double length, AxisKind kx) {
  Grid g;
  g.dim = 1;
  g.n = {nx, 1};
  g.h = {length / nx, 1.0};
  g.kind = {kx, AxisKind::Periodic};
  g.validate();
  return g;
}

Grid Grid::make_2d(int nx, int ny, double lx, double ly, AxisKind kx, AxisKind ky) {
  Grid g;
  g.dim = 2;
  g.n = {nx, ny};
  g.h = {lx / nx, ly / ny};
  g.kind = {kx, ky};
  g.validate();
  return g;
}

void Grid::validate() const {
  for (int a = 0; a < dim; ++a) {
    if (n[a] < 4)
      throw StencilError("grid extent " + std::to_string(n[a]) + " on axis " +
                         std::to_string(a) + " is below the stencil width (4)");
    if (!(h[a] > 0.0))
      throw StencilError("grid spacing must be positive on axis " + std::to_string(a));
  }
}

std::string to_string(const Grid& g) {
  std::ostringstream os;
  os << g.dim << "d nx=" << g.n[0];
  if (g.dim == 2) os << " ny=" << g.n[1];
  os << " hx=" << g.h[0];
  if (g.dim == 2) os << " hy=" << g.h[1];
  os << " axes=";
  for (int a = 0; a < g.dim; ++a) os << (g.periodic(a) ? 'P' : 'W');
  return os.str();
}

}  // namespace eit
