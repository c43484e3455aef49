#include "eit/ops.hpp"

#include <cassert>

namespace eit {

namespace {

void require_shape(const FieldBase& a, const FieldBase& b) {
  if (!(a.grid() == b.grid())) throw ContractViolation("operands live on different grids");
}

void require_density(const FieldBase& f, int dw, const char* what) {
  if (f.density_weight() != dw) throw ContractViolation(std::string(what) + ": density_weight mismatch");
}

// d(component c of f)/d(axis) into out.
void diff_axis(const FieldBase& f, int c, int axis, const WallRules& wr, double* out) {
  const Grid& g = f.grid();
  const int nx = g.n[0], ny = g.n[1];
  const double inv2h = 1.0 / (2.0 * g.h[axis]);
  const double* d = f.comp(c);
  const bool per = g.periodic(axis);
  if (axis == 0) {
    for (int iy = 0; iy < ny; ++iy) {
      const double* row = d + static_cast<size_t>(iy) * nx;
      double* orow = out + static_cast<size_t>(iy) * nx;
      for (int ix = 1; ix < nx - 1; ++ix) orow[ix] = (row[ix + 1] - row[ix - 1]) * inv2h;
      if (per) {
        orow[0] = (row[1] - row[nx - 1]) * inv2h;
        orow[nx - 1] = (row[0] - row[nx - 2]) * inv2h;
      } else {
        orow[0] = (row[1] - f.ext(c, -1, iy, wr)) * inv2h;
        orow[nx - 1] = (f.ext(c, nx, iy, wr) - row[nx - 2]) * inv2h;
      }
    }
  } else {
    for (int iy = 0; iy < ny; ++iy) {
      const int ym = iy - 1, yp = iy + 1;
      const bool inner = iy > 0 && iy < ny - 1;
      for (int ix = 0; ix < nx; ++ix) {
        double lo, hi;
        if (inner) {
          lo = d[ym * nx + ix];
          hi = d[yp * nx + ix];
        } else {
          lo = f.ext(c, ix, ym, wr);
          hi = f.ext(c, ix, yp, wr);
        }
        out[iy * nx + ix] = (hi - lo) * inv2h;
      }
    }
  }
}

}  // namespace

VectorField grad_scalar(const ScalarField& f, const WallRules& wr) {
  const Grid& g = f.grid();
  VectorField out(g, 0);
  for (int a = 0; a < g.dim; ++a) diff_axis(f, 0, a, wr, out.comp(a));
  return out;
}

ScalarField div_vector(const VectorField& q, const WallRules& wr) {
  const Grid& g = q.grid();
  ScalarField out(g, 0);
  std::vector<double> tmp(g.cells());
  for (int a = 0; a < g.dim; ++a) {
    diff_axis(q, a, a, wr, tmp.data());
    for (int i = 0; i < g.cells(); ++i) out[i] += tmp[i];
  }
  return out;
}

namespace {
// stored component index of sym rank-2 (a,b); 1D -> 0, 2D -> xx,xy,yy
inline int sym_idx(int dim, int a, int b) {
  if (dim == 1) return 0;
  return a + b;  // xx=0, xy/yx=1, yy=2
}
}  // namespace

VectorField div_tensor(const SymTensorField& tau, const WallRules& wr) {
  const Grid& g = tau.grid();
  VectorField out(g, 0);
  std::vector<double> tmp(g.cells());
  for (int a = 0; a < g.dim; ++a) {
    double* oa = out.comp(a);
    for (int b = 0; b < g.dim; ++b) {
      diff_axis(tau, sym_idx(g.dim, a, b), b, wr, tmp.data());
      for (int i = 0; i < g.cells(); ++i) oa[i] += tmp[i];
    }
  }
  return out;
}

GradTensorField jacobian(const VectorField& u, const WallRules& wr) {
  const Grid& g = u.grid();
  GradTensorField out(g);
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) diff_axis(u, b, a, wr, out.comp(a * g.dim + b));
  return out;
}

SymTensorField deformation_rate(const GradTensorField& gu) {
  const Grid& g = gu.grid();
  SymTensorField out(g, 0);
  if (g.dim == 1) {
    for (int i = 0; i < g.cells(); ++i) out(0, i) = gu.at(0, 0, i);
    return out;
  }
  for (int i = 0; i < g.cells(); ++i) {
    out(0, i) = gu.at(0, 0, i);
    out(1, i) = 0.5 * (gu.at(0, 1, i) + gu.at(1, 0, i));
    out(2, i) = gu.at(1, 1, i);
  }
  return out;
}

SymTensorField deformation_rate(const VectorField& u, const WallRules& wr) {
  return deformation_rate(jacobian(u, wr));
}

VectorField lie_transport_vector_density(const GradTensorField& gu, const VectorField& u,
                                         const VectorField& q, const WallRules& wr_q) {
  require_shape(u, q);
  require_density(q, 1, "lie_transport_vector_density");
  require_density(u, 0, "lie_transport_vector_density(u)");
  const Grid& g = q.grid();
  VectorField out(g, 1);
  const int dim = g.dim;
  std::vector<double> dq(static_cast<size_t>(dim) * g.cells());
  for (int a = 0; a < dim; ++a) {
    // gradient of q^a along all axes
    for (int c = 0; c < dim; ++c) diff_axis(q, a, c, wr_q, dq.data() + static_cast<size_t>(c) * g.cells());
    double* oa = out.comp(a);
    for (int i = 0; i < g.cells(); ++i) {
      double adv = 0.0, stretch = 0.0, div_u = 0.0;
      for (int c = 0; c < dim; ++c) {
        adv += u(c, i) * dq[static_cast<size_t>(c) * g.cells() + i];
        stretch += q(c, i) * gu.at(c, a, i);
        div_u += gu.at(c, c, i);
      }
      oa[i] = adv - stretch + q(a, i) * div_u;
    }
  }
  return out;
}

VectorField lie_transport_vector_density(const VectorField& u, const VectorField& q,
                                         const WallRules& wr_u, const WallRules& wr_q) {
  return lie_transport_vector_density(jacobian(u, wr_u), u, q, wr_q);
}

SymTensorField lie_transport_tensor_density(const GradTensorField& gu, const VectorField& u,
                                            const SymTensorField& s, const WallRules& wr_s) {
  require_shape(u, s);
  require_density(s, 1, "lie_transport_tensor_density");
  require_density(u, 0, "lie_transport_tensor_density(u)");
  const Grid& g = s.grid();
  SymTensorField out(g, 1);
  const int n = g.cells();
  if (g.dim == 1) {
    std::vector<double> ds(n);
    diff_axis(s, 0, 0, wr_s, ds.data());
    for (int i = 0; i < n; ++i) {
      const double du = gu.at(0, 0, i);
      out(0, i) = u(0, i) * ds[i] - 2.0 * s(0, i) * du + s(0, i) * du;
    }
    return out;
  }
  // advective derivatives of each stored component
  std::vector<double> dxc(n), dyc(n);
  for (int c = 0; c < 3; ++c) {
    diff_axis(s, c, 0, wr_s, dxc.data());
    diff_axis(s, c, 1, wr_s, dyc.data());
    double* oc = out.comp(c);
    for (int i = 0; i < n; ++i) oc[i] = u(0, i) * dxc[i] + u(1, i) * dyc[i];
  }
  for (int i = 0; i < n; ++i) {
    const double uxx = gu.at(0, 0, i), uxy = gu.at(0, 1, i);
    const double uyx = gu.at(1, 0, i), uyy = gu.at(1, 1, i);
    const double div_u = uxx + uyy;
    const double sxx = s(0, i), sxy = s(1, i), syy = s(2, i);
    // -s^{cb} d_c u^a - s^{ac} d_c u^b + s^{ab} div u
    out(0, i) += -2.0 * (sxx * uxx + sxy * uyx) + sxx * div_u;
    out(1, i) += -(sxy * uxx + syy * uyx) - (sxx * uxy + sxy * uyy) + sxy * div_u;
    out(2, i) += -2.0 * (sxy * uxy + syy * uyy) + syy * div_u;
  }
  return out;
}

SymTensorField lie_transport_tensor_density(const VectorField& u, const SymTensorField& s,
                                            const WallRules& wr_u, const WallRules& wr_s) {
  return lie_transport_tensor_density(jacobian(u, wr_u), u, s, wr_s);
}

HigherFluxField lie_transport_higher_density(const GradTensorField& gu, const VectorField& u,
                                             const HigherFluxField& Q, const WallRules& wr_Q) {
  require_shape(u, Q);
  require_density(Q, 1, "lie_transport_higher_density");
  const Grid& g = Q.grid();
  const int k = Q.order;
  HigherFluxField out(g, k);
  const int n = g.cells();
  if (g.dim == 1) {
    std::vector<double> dq(n);
    diff_axis(Q, 0, 0, wr_Q, dq.data());
    for (int i = 0; i < n; ++i) {
      const double du = gu.at(0, 0, i);
      out(0, i) = u(0, i) * dq[i] - k * Q(0, i) * du + Q(0, i) * du;
    }
    return out;
  }
  std::vector<double> dxc(n), dyc(n);
  for (int j = 0; j <= k; ++j) {
    diff_axis(Q, j, 0, wr_Q, dxc.data());
    diff_axis(Q, j, 1, wr_Q, dyc.data());
    double* oj = out.comp(j);
    for (int i = 0; i < n; ++i) {
      const double uxx = gu.at(0, 0, i), uxy = gu.at(0, 1, i);
      const double uyx = gu.at(1, 0, i), uyy = gu.at(1, 1, i);
      const double div_u = uxx + uyy;
      // component j holds j y-indices and k-j x-indices
      double conv = (k - j) * Q(j, i) * uxx + j * Q(j, i) * uyy;
      if (j + 1 <= k) conv += (k - j) * Q(j + 1, i) * uyx;
      if (j - 1 >= 0) conv += j * Q(j - 1, i) * uxy;
      oj[i] = u(0, i) * dxc[i] + u(1, i) * dyc[i] - conv + Q(j, i) * div_u;
    }
  }
  return out;
}

HigherFluxField lie_transport_higher_density(const VectorField& u, const HigherFluxField& Q,
                                             const WallRules& wr_u, const WallRules& wr_Q) {
  return lie_transport_higher_density(jacobian(u, wr_u), u, Q, wr_Q);
}

std::pair<SymTensorField, ScalarField> dev_iso_split(const SymTensorField& sigma) {
  const Grid& g = sigma.grid();
  SymTensorField dev(g, sigma.density_weight());
  ScalarField pv(g, sigma.density_weight());
  const int n = g.cells();
  if (g.dim == 1) {
    for (int i = 0; i < n; ++i) pv[i] = sigma(0, i);
    // dev is identically zero in 1D
    return {std::move(dev), std::move(pv)};
  }
  for (int i = 0; i < n; ++i) {
    const double p = 0.5 * (sigma(0, i) + sigma(2, i));
    pv[i] = p;
    dev(0, i) = sigma(0, i) - p;
    dev(1, i) = sigma(1, i);
    dev(2, i) = sigma(2, i) - p;
  }
  return {std::move(dev), std::move(pv)};
}

SymTensorField recompose(const SymTensorField& dev, const ScalarField& p_v) {
  const Grid& g = dev.grid();
  SymTensorField out = dev;
  const int n = g.cells();
  if (g.dim == 1) {
    for (int i = 0; i < n; ++i) out(0, i) += p_v[i];
    return out;
  }
  for (int i = 0; i < n; ++i) {
    out(0, i) += p_v[i];
    out(2, i) += p_v[i];
  }
  return out;
}

namespace {

HigherFluxField sym_grad_impl(const FieldBase& p, int k, const WallRules& wr) {
  const Grid& g = p.grid();
  HigherFluxField out(g, k);
  const int n = g.cells();
  std::vector<double> dx(n), dy(n);
  if (g.dim == 1) {
    diff_axis(p, 0, 0, wr, dx.data());
    for (int i = 0; i < n; ++i) out(0, i) = dx[i];
    return out;
  }
  // p component indexing: j' y-indices among k-1 (vector: 0 = x, 1 = y)
  for (int j = 0; j <= k; ++j) {
    double* oj = out.comp(j);
    std::fill(oj, oj + n, 0.0);
    if (k - j > 0) {
      diff_axis(p, j, 0, wr, dx.data());
      const double c = static_cast<double>(k - j) / k;
      for (int i = 0; i < n; ++i) oj[i] += c * dx[i];
    }
    if (j > 0) {
      diff_axis(p, j - 1, 1, wr, dy.data());
      const double c = static_cast<double>(j) / k;
      for (int i = 0; i < n; ++i) oj[i] += c * dy[i];
    }
  }
  return out;
}

}  // namespace

HigherFluxField sym_grad_higher(const VectorField& p, const WallRules& wr) {
  return sym_grad_impl(p, 2, wr);
}

HigherFluxField sym_grad_higher(const HigherFluxField& p, const WallRules& wr) {
  return sym_grad_impl(p, p.order + 1, wr);
}

VectorField div_higher_vec(const HigherFluxField& r, const WallRules& wr) {
  if (r.order != 2) throw ContractViolation("div_higher_vec requires order 2");
  const Grid& g = r.grid();
  VectorField out(g, 1);
  const int n = g.cells();
  std::vector<double> tmp(n);
  if (g.dim == 1) {
    diff_axis(r, 0, 0, wr, tmp.data());
    for (int i = 0; i < n; ++i) out(0, i) = tmp[i];
    return out;
  }
  for (int a = 0; a < 2; ++a) {
    double* oa = out.comp(a);
    diff_axis(r, a + 0, 0, wr, tmp.data());  // contract c = x: component a y-count
    for (int i = 0; i < n; ++i) oa[i] = tmp[i];
    diff_axis(r, a + 1, 1, wr, tmp.data());  // contract c = y
    for (int i = 0; i < n; ++i) oa[i] += tmp[i];
  }
  return out;
}

HigherFluxField div_higher(const HigherFluxField& r, const WallRules& wr) {
  if (r.order < 3) throw ContractViolation("div_higher requires order >= 3");
  const Grid& g = r.grid();
  const int k = r.order - 1;
  HigherFluxField out(g, k);
  const int n = g.cells();
  std::vector<double> tmp(n);
  if (g.dim == 1) {
    diff_axis(r, 0, 0, wr, tmp.data());
    for (int i = 0; i < n; ++i) out(0, i) = tmp[i];
    return out;
  }
  for (int j = 0; j <= k; ++j) {
    double* oj = out.comp(j);
    diff_axis(r, j, 0, wr, tmp.data());
    for (int i = 0; i < n; ++i) oj[i] = tmp[i];
    diff_axis(r, j + 1, 1, wr, tmp.data());
    for (int i = 0; i < n; ++i) oj[i] += tmp[i];
  }
  return out;
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  require_shape(a, b);
  const Grid& g = a.grid();
  ScalarField out(g, 0);
  for (int c = 0; c < g.dim; ++c)
    for (int i = 0; i < g.cells(); ++i) out[i] += a(c, i) * b(c, i);
  return out;
}

ScalarField contract(const SymTensorField& a, const SymTensorField& b) {
  require_shape(a, b);
  const Grid& g = a.grid();
  ScalarField out(g, 0);
  for (int c = 0; c < a.ncomp(); ++c) {
    const double w = a.weight(c);
    for (int i = 0; i < g.cells(); ++i) out[i] += w * a(c, i) * b(c, i);
  }
  return out;
}

ScalarField contract(const HigherFluxField& a, const HigherFluxField& b) {
  require_shape(a, b);
  if (a.order != b.order) throw ContractViolation("higher-order contraction: order mismatch");
  const Grid& g = a.grid();
  ScalarField out(g, 0);
  for (int c = 0; c < a.ncomp(); ++c) {
    const double w = a.weight(c);
    for (int i = 0; i < g.cells(); ++i) out[i] += w * a(c, i) * b(c, i);
  }
  return out;
}

ScalarField trace(const SymTensorField& s) {
  const Grid& g = s.grid();
  ScalarField out(g, 0);
  if (g.dim == 1) {
    for (int i = 0; i < g.cells(); ++i) out[i] = s(0, i);
    return out;
  }
  for (int i = 0; i < g.cells(); ++i) out[i] = s(0, i) + s(2, i);
  return out;
}

VectorField sym_dot_vec(const SymTensorField& s, const VectorField& v) {
  require_shape(s, v);
  const Grid& g = s.grid();
  VectorField out(g, v.density_weight());
  if (g.dim == 1) {
    for (int i = 0; i < g.cells(); ++i) out(0, i) = s(0, i) * v(0, i);
    return out;
  }
  for (int i = 0; i < g.cells(); ++i) {
    out(0, i) = s(0, i) * v(0, i) + s(1, i) * v(1, i);
    out(1, i) = s(1, i) * v(0, i) + s(2, i) * v(1, i);
  }
  return out;
}

SymTensorField sym_square(const SymTensorField& s) {
  const Grid& g = s.grid();
  SymTensorField out(g, s.density_weight());
  if (g.dim == 1) {
    for (int i = 0; i < g.cells(); ++i) out(0, i) = s(0, i) * s(0, i);
    return out;
  }
  for (int i = 0; i < g.cells(); ++i) {
    const double xx = s(0, i), xy = s(1, i), yy = s(2, i);
    out(0, i) = xx * xx + xy * xy;
    out(1, i) = xy * (xx + yy);
    out(2, i) = xy * xy + yy * yy;
  }
  return out;
}

SymTensorField sym_outer(const VectorField& q) {
  const Grid& g = q.grid();
  SymTensorField out(g, q.density_weight());
  if (g.dim == 1) {
    for (int i = 0; i < g.cells(); ++i) out(0, i) = q(0, i) * q(0, i);
    return out;
  }
  for (int i = 0; i < g.cells(); ++i) {
    out(0, i) = q(0, i) * q(0, i);
    out(1, i) = q(0, i) * q(1, i);
    out(2, i) = q(1, i) * q(1, i);
  }
  return out;
}

SymTensorField higher_square_sym2(const HigherFluxField& q) {
  const Grid& g = q.grid();
  const int k = q.order;
  SymTensorField out(g, 1);
  if (g.dim == 1) {
    for (int i = 0; i < g.cells(); ++i) out(0, i) = q(0, i) * q(0, i);
    return out;
  }
  for (int j = 0; j <= k - 1; ++j) {
    const double w = binomial(k - 1, j);
    for (int i = 0; i < g.cells(); ++i) {
      out(0, i) += w * q(j, i) * q(j, i);
      out(1, i) += w * q(j, i) * q(j + 1, i);
      out(2, i) += w * q(j + 1, i) * q(j + 1, i);
    }
  }
  return out;
}

namespace {
VectorField higher_dot_down_impl(const HigherFluxField& a, const FieldBase& b, int korder) {
  const Grid& g = a.grid();
  if (a.order != korder + 1) throw ContractViolation("higher_dot_down: order mismatch");
  VectorField out(g, 1);
  if (g.dim == 1) {
    for (int i = 0; i < g.cells(); ++i) out(0, i) = a(0, i) * b(0, i);
    return out;
  }
  for (int j = 0; j <= korder; ++j) {
    const double w = binomial(korder, j);
    for (int i = 0; i < g.cells(); ++i) {
      out(0, i) += w * a(j, i) * b(j, i);
      out(1, i) += w * a(j + 1, i) * b(j, i);
    }
  }
  return out;
}
}  // namespace

VectorField higher_dot_down(const HigherFluxField& a, const HigherFluxField& b) {
  return higher_dot_down_impl(a, b, b.order);
}

VectorField higher_dot_down(const HigherFluxField& a, const VectorField& b) {
  return higher_dot_down_impl(a, b, 1);
}

double integral(const ScalarField& f) {
  double s = 0.0;
  const double* d = f.comp(0);
  for (int i = 0; i < f.grid().cells(); ++i) s += d[i];
  return s * f.grid().cell_volume();
}

void add_hyperdiffusion(FieldBase& rate, const FieldBase& f, double coef, const WallRules& wr) {
  if (coef == 0.0) return;
  const Grid& g = f.grid();
  const int nx = g.n[0], ny = g.n[1];
  for (int c = 0; c < f.ncomp(); ++c) {
    double* r = rate.comp(c);
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix) {
        double d4 = 0.0;
        d4 += f.ext(c, ix - 2, iy, wr) - 4.0 * f.ext(c, ix - 1, iy, wr) + 6.0 * f.ext(c, ix, iy, wr) -
              4.0 * f.ext(c, ix + 1, iy, wr) + f.ext(c, ix + 2, iy, wr);
        if (g.dim == 2)
          d4 += f.ext(c, ix, iy - 2, wr) - 4.0 * f.ext(c, ix, iy - 1, wr) + 6.0 * f.ext(c, ix, iy, wr) -
                4.0 * f.ext(c, ix, iy + 1, wr) + f.ext(c, ix, iy + 2, wr);
        r[iy * nx + ix] -= coef * d4 / 16.0;
      }
  }
}

}  // namespace eit
