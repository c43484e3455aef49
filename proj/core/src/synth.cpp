#include "eit/synth.hpp"

#include <cmath>

namespace eit {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double TrigSeries::value(double x, double y) const {
  double v = bias;
  for (const Mode& m : modes) {
    double t = m.amp * std::cos(kTwoPi * m.kx * x / lx + m.phx);
    if (dim == 2) t *= std::cos(kTwoPi * m.ky * y / ly + m.phy);
    v += t;
  }
  return v;
}

double TrigSeries::deriv(int axis, double x, double y) const {
  double v = 0.0;
  for (const Mode& m : modes) {
    if (axis == 0) {
      const double wx = kTwoPi * m.kx / lx;
      double t = -m.amp * wx * std::sin(kTwoPi * m.kx * x / lx + m.phx);
      if (dim == 2) t *= std::cos(kTwoPi * m.ky * y / ly + m.phy);
      v += t;
    } else {
      const double wy = kTwoPi * m.ky / ly;
      double t = -m.amp * wy * std::sin(kTwoPi * m.ky * y / ly + m.phy);
      t *= std::cos(kTwoPi * m.kx * x / lx + m.phx);
      v += t;
    }
  }
  return v;
}

std::uint64_t Rng::next_u64() {
  // splitmix64
  std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  const double u = (next_u64() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

TrigSeries random_trig(Rng& rng, const Grid& g, int max_mode, double amp, double bias) {
  TrigSeries f;
  f.dim = g.dim;
  f.lx = g.length(0);
  f.ly = g.dim == 2 ? g.length(1) : 1.0;
  f.bias = bias;
  for (int kx = 0; kx <= max_mode; ++kx)
    for (int ky = 0; ky <= (g.dim == 2 ? max_mode : 0); ++ky) {
      if (kx == 0 && ky == 0) continue;
      TrigSeries::Mode m;
      m.kx = kx;
      m.ky = ky;
      m.amp = amp * rng.uniform(-1.0, 1.0);
      m.phx = rng.uniform(0.0, kTwoPi);
      m.phy = rng.uniform(0.0, kTwoPi);
      f.modes.push_back(m);
    }
  return f;
}

void sample(const TrigSeries& f, const Grid& g, double* out) {
  for (int iy = 0; iy < g.n[1]; ++iy)
    for (int ix = 0; ix < g.n[0]; ++ix)
      out[g.idx(ix, iy)] = f.value(g.x(ix), g.dim == 2 ? g.y(iy) : 0.0);
}

ScalarField sample_scalar(const TrigSeries& f, const Grid& g, int density_weight) {
  ScalarField out(g, density_weight);
  sample(f, g, out.comp(0));
  return out;
}

}  // namespace eit
