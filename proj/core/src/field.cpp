#include "eit/field.hpp"

#include <algorithm>
#include <cassert>

namespace eit {

void FieldBase::axpy(double a, const FieldBase& other) {
  assert(data_.size() == other.data_.size());
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += a * other.data_[i];
}

void FieldBase::scale(double a) {
  for (double& v : data_) v *= a;
}

double FieldBase::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double FieldBase::l2() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s * grid_.cell_volume());
}

namespace {

// Value of component `f` at 1D index `i` on `axis`, with the other index
// fixed; `get` fetches interior values by axis index.
template <class Get>
double axis_ext(int i, int n, bool periodic, GhostRule rule, Get&& get) {
  if (i >= 0 && i < n) return get(i);
  if (periodic) {
    int j = i % n;
    if (j < 0) j += n;
    return get(j);
  }
  // Wall ghosts, depth 1 or 2 past either face.
  const bool low = i < 0;
  const int depth = low ? -i : i - n + 1;
  auto in = [&](int k) { return get(low ? k : n - 1 - k); };
  switch (rule) {
    case GhostRule::Even:
      return in(depth - 1);
    case GhostRule::Odd:
      return -in(depth - 1);
    case GhostRule::Extrap2:
      if (depth == 1) return 3.0 * in(0) - 3.0 * in(1) + in(2);
      return 6.0 * in(0) - 8.0 * in(1) + 3.0 * in(2);
  }
  return 0.0;  // unreachable
}

}  // namespace

double FieldBase::ext(int c, int ix, int iy, const WallRules& wr) const {
  const double* d = comp(c);
  const int nx = grid_.n[0], ny = grid_.n[1];
  const bool x_in = ix >= 0 && ix < nx;
  const bool y_in = iy >= 0 && iy < ny;
  if (x_in && y_in) return d[iy * nx + ix];
  if (!x_in && y_in)
    return axis_ext(ix, nx, grid_.periodic(0), wr(0, c), [&](int j) { return d[iy * nx + j]; });
  if (x_in && !y_in)
    return axis_ext(iy, ny, grid_.periodic(1), wr(1, c), [&](int j) { return d[j * nx + ix]; });
  // Corner ghosts: extend in x first, then y.
  return axis_ext(iy, ny, grid_.periodic(1), wr(1, c), [&](int jy) {
    return axis_ext(ix, nx, grid_.periodic(0), wr(0, c), [&](int jx) { return d[jy * nx + jx]; });
  });
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double HigherFluxField::weight(int j) const {
  if (grid_.dim == 1) return 1.0;
  return binomial(order, j);
}

}  // namespace eit
