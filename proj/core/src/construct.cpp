#include "torcap/construct.hpp"

#include "torcap/fft.hpp"
#include "torcap/series.hpp"
#include "torcap/setspec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace torcap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sqrt_capacity_of_dilation(const GridSet& E, std::size_t radius,
                                 const EquilibriumOptions& opts, GridSet& out_set,
                                 EquilibriumResult& out_result) {
  out_set = dilate(E, radius);
  out_result = equilibrium(out_set, opts);
  return std::sqrt(std::max(out_result.capacity, 0.0));
}

} // namespace

NestedCompacts nested_compacts(const GridSet& E, std::size_t J, double budget,
                               const EquilibriumOptions& opts) {
  if (E.empty()) throw std::invalid_argument("nested_compacts: E must be nonempty");
  if (J == 0 || J > 8) throw std::invalid_argument("nested_compacts: J must be in 1..8");
  if (!(budget > 0.0)) throw std::invalid_argument("nested_compacts: budget must be positive");

  NestedCompacts chain;
  chain.requested_levels = J;
  std::size_t prev_radius = E.grid.m / 8 * 8; // cap for level 1 is m/8

  for (std::size_t j = 1; j <= J; ++j) {
    const double target = budget * std::pow(2.0, -static_cast<double>(j));
    const std::size_t cap = (j == 1) ? E.grid.m / 8 : prev_radius / 8;

    GridSet cand_set;
    EquilibriumResult cand_res;
    double sc = sqrt_capacity_of_dilation(E, cap, opts, cand_set, cand_res);
    std::size_t radius = cap;
    if (sc > target) {
      // bisect the largest radius in [0, cap] under the target
      GridSet lo_set;
      EquilibriumResult lo_res;
      const double sc0 = sqrt_capacity_of_dilation(E, 0, opts, lo_set, lo_res);
      if (sc0 > target) {
        chain.shortfall = true;
        break;
      }
      std::size_t lo = 0, hi = cap; // feasible at lo, infeasible at hi
      cand_set = lo_set;
      cand_res = lo_res;
      radius = 0;
      while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        GridSet mid_set;
        EquilibriumResult mid_res;
        const double scm = sqrt_capacity_of_dilation(E, mid, opts, mid_set, mid_res);
        if (scm <= target) {
          lo = mid;
          cand_set = std::move(mid_set);
          cand_res = std::move(mid_res);
          radius = mid;
        } else {
          hi = mid;
        }
      }
    }
    chain.sets.push_back(std::move(cand_set));
    chain.equilibria.push_back(std::move(cand_res));
    chain.capacities.push_back(chain.equilibria.back().capacity);
    prev_radius = radius;
  }

  for (double c : chain.capacities) chain.sqrt_cap_sum += std::sqrt(std::max(c, 0.0));
  return chain;
}

std::pair<double, double> verify_recomp(double C_const, const TorusGrid& grid) {
  if (!(C_const > 0.0)) throw std::invalid_argument("verify_recomp: C_const must be positive");
  const std::size_t m = grid.m;
  // per-axis factor C + log 1/(1 - e^{-i psi}) = A(psi) + i B(psi)
  std::vector<double> A(m, 0.0), B(m, 0.0), hv(m, 0.0);
  for (std::size_t p = 1; p < m; ++p) {
    const double psi = kTwoPi * static_cast<double>(p) / static_cast<double>(m);
    A[p] = C_const - std::log(2.0 * std::sin(0.5 * psi));
    B[p] = -(std::numbers::pi - psi) / 2.0;
    hv[p] = 9.0 - 0.5 * std::log(2.0 * std::sin(0.5 * psi));
  }

  double lo = 0.0, hi = 0.0;
  bool first = true;
  const std::size_t total = grid.total_points();
  std::vector<std::size_t> idx(grid.n, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    bool singular = false;
    cplx g(1.0, 0.0);
    double h = 1.0;
    for (std::size_t ax = grid.n; ax-- > 0;) {
      const std::size_t p = rem % m;
      rem /= m;
      if (p == 0) {
        singular = true;
        break;
      }
      g *= cplx(A[p], B[p]);
      h *= hv[p];
    }
    if (singular) continue;
    const double ratio = g.real() / h;
    if (first || ratio < lo) lo = ratio;
    if (first || ratio > hi) hi = ratio;
    first = false;
  }
  return {lo, hi};
}

LogKernelFunction divergent_function(const NestedCompacts& chain, std::size_t J,
                                     double C_const, std::span<const std::size_t> shape) {
  if (J == 0 || J > chain.sets.size())
    throw std::invalid_argument("divergent_function: J exceeds the available chain");
  const TorusGrid& grid = chain.sets.front().grid;
  if (shape.size() != grid.n)
    throw std::invalid_argument("divergent_function: shape dimension mismatch");
  for (std::size_t ax = 0; ax < grid.n; ++ax)
    if (shape[ax] - 1 > grid.m / 2)
      throw std::invalid_argument("divergent_function: shape exceeds the Nyquist index m/2");

  LogKernelFunction out;
  out.C_const = C_const;
  out.shortfall = chain.shortfall;
  out.coeffs = CoeffArray(grid.n, std::vector<std::size_t>(shape.begin(), shape.end()), 1);

  // multiplier g(0) = C, g(k) = 1/k
  const std::size_t kmax = *std::max_element(shape.begin(), shape.end());
  std::vector<double> g(kmax, 0.0);
  g[0] = C_const;
  for (std::size_t k = 1; k < kmax; ++k) g[k] = 1.0 / static_cast<double>(k);

  Fft fft(grid.dims());
  const std::size_t total = grid.total_points();
  std::vector<cplx> spec(total);
  const std::size_t coeff_count = out.coeffs.flat_count();

  for (std::size_t j = 0; j < J; ++j) {
    const GridMeasure& mu = chain.equilibria[j].measure;
    for (std::size_t i = 0; i < total; ++i) spec[i] = cplx(mu.weights[i], 0.0);
    fft.forward(spec.data()); // mu_hat(alpha) = sum_p w_p e^{-i(alpha, theta_p)}

    double dn = 0.0;
    for (std::size_t flat = 0; flat < coeff_count; ++flat) {
      std::size_t rem = flat, src = 0, stride = 1;
      double gw = 1.0, dirichlet_w = 1.0;
      for (std::size_t ax = grid.n; ax-- > 0;) {
        const std::size_t a = rem % shape[ax];
        rem /= shape[ax];
        gw *= g[a];
        dirichlet_w *= static_cast<double>(a + 1);
        src += a * stride; // alpha indexes the transform directly (alpha_j <= m/2 < m)
        stride *= grid.m;
      }
      const cplx term = gw * spec[src];
      out.coeffs.values[flat] += term;
      dn += dirichlet_w * std::norm(term);
    }
    out.term_dirichlet_sq.push_back(dn);
    out.source_measures.push_back(mu);
    out.capacities.push_back(chain.capacities[j]);
  }
  return out;
}

CoeffArray LogKernelFunction::rebuild() const {
  if (source_measures.empty()) return coeffs;
  const TorusGrid& grid = source_measures.front().grid;
  CoeffArray result(coeffs.n, coeffs.shape, 1);
  const std::size_t kmax = *std::max_element(coeffs.shape.begin(), coeffs.shape.end());
  std::vector<double> g(kmax, 0.0);
  g[0] = C_const;
  for (std::size_t k = 1; k < kmax; ++k) g[k] = 1.0 / static_cast<double>(k);

  Fft fft(grid.dims());
  const std::size_t total = grid.total_points();
  std::vector<cplx> spec(total);
  for (const GridMeasure& mu : source_measures) {
    for (std::size_t i = 0; i < total; ++i) spec[i] = cplx(mu.weights[i], 0.0);
    fft.forward(spec.data());
    const std::size_t coeff_count = result.flat_count();
    for (std::size_t flat = 0; flat < coeff_count; ++flat) {
      std::size_t rem = flat, src = 0, stride = 1;
      double gw = 1.0;
      for (std::size_t ax = coeffs.n; ax-- > 0;) {
        const std::size_t a = rem % coeffs.shape[ax];
        rem /= coeffs.shape[ax];
        gw *= g[a];
        src += a * stride;
        stride *= grid.m;
      }
      result.values[flat] += gw * spec[src];
    }
  }
  return result;
}

std::vector<std::vector<cplx>> radial_trace(const CoeffArray& f, std::span<const double> theta,
                                            std::span<const double> t_list) {
  std::vector<std::vector<cplx>> out;
  out.reserve(t_list.size());
  for (double t : t_list) {
    if (t < 0.0 || t >= 1.0)
      throw std::invalid_argument("radial_trace: radii must lie in [0, 1)");
    std::vector<double> r(f.n, t);
    out.push_back(abel_mean(f, r, theta));
  }
  return out;
}

double localization_bump(double theta) {
  double th = std::fmod(theta, kTwoPi);
  if (th < 0.0) th += kTwoPi;
  const double pi = std::numbers::pi;
  if (th < 0.5 * pi || th >= 1.5 * pi) return 0.0;
  if (th < 0.75 * pi) return 0.5 * (1.0 - std::cos(4.0 * (th - 0.5 * pi)));
  if (th < 1.25 * pi) return 1.0;
  return 0.5 * (1.0 - std::cos(4.0 * (1.5 * pi - th)));
}

LocalizationReport localization_demo(std::size_t m) {
  if (m < 8 || (m & (m - 1)) != 0)
    throw std::invalid_argument("localization_demo: m must be a power of two >= 8");
  LocalizationReport rep;
  rep.r_grid = {0.9, 0.99, 0.999};

  // axis 1: Poisson integral of the bump at angle 0, discrete normalized
  // quadrature on the m-point grid
  std::vector<double> f1(m);
  for (std::size_t p = 0; p < m; ++p)
    f1[p] = localization_bump(kTwoPi * static_cast<double>(p) / static_cast<double>(m));
  auto poisson_f1 = [&](double r) {
    double s = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
      const double psi = kTwoPi * static_cast<double>(p) / static_cast<double>(m);
      const double pk = (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(psi) + r * r);
      s += pk * f1[p];
    }
    return s / static_cast<double>(m);
  };

  // axis 2: a(k) = 10/((k+2) log(k+2)) — square-summable against (k+1) but
  // with divergent coefficient sum, so Re P[f2](t, 0) -> infinity as t -> 1.
  // The amplitude 10 makes the log-log growth clear the "exceeds 10" mark at
  // t = 0.999 already.
  constexpr std::size_t kF2Terms = 200000;
  auto abel_f2 = [&](double r) {
    double s = 0.0, rp = 1.0;
    for (std::size_t k = 0; k < kF2Terms; ++k) {
      const double kk = static_cast<double>(k) + 2.0;
      s += 10.0 / (kk * std::log(kk)) * rp;
      rp *= r;
    }
    return s;
  };

  for (double r : rep.r_grid) rep.f1_poisson.push_back(poisson_f1(r));
  rep.f2_abel_at_0999 = abel_f2(0.999);

  double lo = 0.0, hi = 0.0;
  bool first = true;
  rep.trace.assign(rep.r_grid.size(), std::vector<double>(rep.r_grid.size(), 0.0));
  for (std::size_t i = 0; i < rep.r_grid.size(); ++i)
    for (std::size_t j = 0; j < rep.r_grid.size(); ++j) {
      const double v = rep.f1_poisson[i] * abel_f2(rep.r_grid[j]);
      rep.trace[i][j] = v;
      if (first || v < lo) lo = v;
      if (first || v > hi) hi = v;
      first = false;
    }
  rep.oscillation = hi - lo;

  // sampled zero strip: |theta_1| <= 0.3 exactly
  for (std::size_t p = 0; p < m; ++p) {
    double th = kTwoPi * static_cast<double>(p) / static_cast<double>(m);
    if (th > std::numbers::pi) th -= kTwoPi;
    if (std::abs(th) <= 0.3) rep.strip_max_abs = std::max(rep.strip_max_abs, std::abs(f1[p]));
  }
  return rep;
}

} // namespace torcap
