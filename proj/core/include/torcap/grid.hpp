#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace torcap {

// Uniform discretization of [0, 2pi)^n. Point p (multi-index) sits at
// theta_j = 2*pi*p_j/m. All set/measure data is stored in grid index units;
// radians appear only at I/O boundaries.
struct TorusGrid {
  std::size_t n = 1; // dimension, 1..3
  std::size_t m = 8; // points per axis, power of two >= 8

  TorusGrid() = default;
  TorusGrid(std::size_t n_, std::size_t m_) : n(n_), m(m_) { validate(); }

  void validate() const {
    if (n < 1 || n > 3) throw std::invalid_argument("TorusGrid: n must be 1, 2 or 3");
    if (m < 8 || (m & (m - 1)) != 0)
      throw std::invalid_argument("TorusGrid: m must be a power of two >= 8");
    if (total_points() > (1ULL << 24))
      throw std::invalid_argument("TorusGrid: m^n exceeds the 2^24 resource guard");
  }

  std::size_t total_points() const {
    std::size_t t = 1;
    for (std::size_t i = 0; i < n; ++i) t *= m;
    return t;
  }

  std::vector<std::size_t> dims() const { return std::vector<std::size_t>(n, m); }

  double cell_width() const { return 2.0 * std::numbers::pi / static_cast<double>(m); }

  bool operator==(const TorusGrid& o) const { return n == o.n && m == o.m; }
};

// A subset E of grid points. When the set is a product of per-axis 1-D sets
// the factor masks are kept alongside the full mask; the equilibrium solver
// exploits that structure (the equilibrium measure of a product set is the
// tensor product of the factor measures).
struct GridSet {
  TorusGrid grid;
  std::vector<bool> mask; // length grid.total_points(), row-major
  std::optional<std::vector<std::vector<bool>>> factors;

  GridSet() = default;
  GridSet(TorusGrid g, std::vector<bool> msk) : grid(g), mask(std::move(msk)) {
    if (mask.size() != grid.total_points())
      throw std::invalid_argument("GridSet: mask length != m^n");
  }

  static GridSet from_factors(TorusGrid g, std::vector<std::vector<bool>> facs) {
    if (facs.size() != g.n) throw std::invalid_argument("GridSet: factor count != n");
    for (const auto& f : facs)
      if (f.size() != g.m) throw std::invalid_argument("GridSet: factor length != m");
    std::vector<bool> msk(g.total_points(), false);
    const std::size_t total = g.total_points();
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      bool in = true;
      for (std::size_t ax = g.n; ax-- > 0;) {
        const std::size_t p = rem % g.m;
        rem /= g.m;
        if (!facs[ax][p]) { in = false; break; }
      }
      msk[flat] = in;
    }
    GridSet s(g, std::move(msk));
    s.factors = std::move(facs);
    return s;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (bool b : mask) c += b ? 1 : 0;
    return c;
  }
  bool empty() const { return count() == 0; }

  // drop the product factorization (forces the generic n-D solver path)
  GridSet without_factors() const {
    GridSet s(grid, mask);
    return s;
  }
};

// Nonnegative weights on grid points; weights represent mu(cell), so the
// potential of mu is a plain circular convolution with the kernel table.
struct GridMeasure {
  TorusGrid grid;
  std::vector<double> weights;

  GridMeasure() = default;
  GridMeasure(TorusGrid g, std::vector<double> w) : grid(g), weights(std::move(w)) {
    if (weights.size() != grid.total_points())
      throw std::invalid_argument("GridMeasure: weight length != m^n");
    for (double x : weights)
      if (x < 0.0) throw std::invalid_argument("GridMeasure: negative weight");
  }

  double mass() const {
    double s = 0.0;
    for (double x : weights) s += x;
    return s;
  }
};

} // namespace torcap
