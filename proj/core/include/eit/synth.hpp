#pragma once

#include <cstdint>
#include <vector>

#include "eit/field.hpp"

namespace eit {

/// Random low-mode trigonometric series on the grid's periodic box.
/// Smooth, analytic everywhere, exactly evaluable off-grid — the workhorse
/// for pullback oracles and manufactured states.
struct TrigSeries {
  struct Mode {
    int kx = 0, ky = 0;
    double amp = 0.0, phx = 0.0, phy = 0.0;
  };
  double lx = 1.0, ly = 1.0;
  int dim = 1;
  double bias = 0.0;
  std::vector<Mode> modes;

  double value(double x, double y = 0.0) const;
  double deriv(int axis, double x, double y = 0.0) const;
};

/// Deterministic 64-bit generator with an explicit uniform double mapping,
/// so identical seeds give identical fields on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next_u64();
  double uniform(double lo, double hi);

 private:
  std::uint64_t s_;
};

TrigSeries random_trig(Rng& rng, const Grid& g, int max_mode, double amp, double bias = 0.0);

void sample(const TrigSeries& f, const Grid& g, double* out);
ScalarField sample_scalar(const TrigSeries& f, const Grid& g, int density_weight = 0);

}  // namespace eit
