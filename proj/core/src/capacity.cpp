#include "torcap/capacity.hpp"

#include "torcap/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace torcap {

namespace {

std::vector<double> kernel_eigenvalues(const TorusGrid& grid) {
  const KernelTable table = sample_h(grid.m);
  return tensor_eigenvalues(table.h_eigenvalues(), grid.n);
}

struct SolverScratch {
  CirculantOperator op;
  explicit SolverScratch(const TorusGrid& grid)
      : op(grid.dims(), kernel_eigenvalues(grid)) {}
};

void project_onto(const std::vector<bool>& mask, std::vector<double>& w) {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!mask[i] || w[i] < 0.0) w[i] = 0.0;
  }
}

EquilibriumResult solve_generic(const GridSet& E, const EquilibriumOptions& opts) {
  const TorusGrid& grid = E.grid;
  const std::size_t total = grid.total_points();
  SolverScratch scratch(grid);
  const CirculantOperator& K = scratch.op;
  const double step = 1.0 / (2.0 * K.eig_max());

  EquilibriumResult res;
  res.measure.grid = grid;

  const std::size_t set_size = E.count();
  if (set_size == 0) {
    res.measure.weights.assign(total, 0.0);
    res.converged = true;
    return res;
  }

  const double init_w = 1.0 / (std::pow(9.0, static_cast<double>(grid.n)) *
                               static_cast<double>(total));
  std::vector<double> w(total, 0.0);
  for (std::size_t i = 0; i < total; ++i)
    if (E.mask[i]) w[i] = init_w;

  std::vector<double> y = w;
  std::vector<double> w_new(total), Kv(total);
  double t_acc = 1.0;
  double F_prev = std::numeric_limits<double>::quiet_NaN();
  double F_w = std::numeric_limits<double>::infinity();
  std::size_t run = 0;
  std::size_t it = 0;
  bool converged = false;

  auto gradient_step = [&](const std::vector<double>& from) {
    K.apply(from, Kv);
    for (std::size_t i = 0; i < total; ++i)
      w_new[i] = from[i] - step * 2.0 * (Kv[i] - 1.0);
    project_onto(E.mask, w_new);
  };

  auto objective = [&](const std::vector<double>& v) {
    K.apply(v, Kv);
    double quad = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      quad += v[i] * Kv[i];
      lin += v[i];
    }
    return quad - 2.0 * lin;
  };

  while (it < opts.max_iter) {
    gradient_step(y);
    double F = objective(w_new);
    if (F > F_w) {
      // momentum overshoot: restart from the last monotone iterate
      t_acc = 1.0;
      y = w;
      gradient_step(y);
      F = objective(w_new);
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_acc * t_acc));
    const double beta = (t_acc - 1.0) / t_next;
    for (std::size_t i = 0; i < total; ++i)
      y[i] = w_new[i] + beta * (w_new[i] - w[i]);
    project_onto(E.mask, y);
    t_acc = t_next;
    std::swap(w, w_new);
    F_w = F;
    ++it;

    if (!std::isnan(F_prev)) {
      const double rel = std::abs(F - F_prev) / std::max(std::abs(F), 1e-300);
      if (rel < opts.tol * 1e-3) {
        ++run;
        if (run >= 10) {
          // KKT quality gate before declaring convergence
          K.apply(w, Kv);
          double mass = 0.0, en = 0.0;
          std::size_t viol = 0;
          for (std::size_t i = 0; i < total; ++i) {
            mass += w[i];
            en += w[i] * Kv[i];
          }
          for (std::size_t i = 0; i < total; ++i)
            if (E.mask[i] && Kv[i] < 1.0 - opts.tol) ++viol;
          const double me = std::abs(mass - en) / std::max(mass, 1e-300);
          const double vf = static_cast<double>(viol) / static_cast<double>(set_size);
          if (me <= 0.05 * opts.tol && vf <= 0.015) {
            converged = true;
            break;
          }
          run = 0;
        }
      } else {
        run = 0;
      }
    }
    F_prev = F;
  }

  K.apply(w, Kv);
  double mass = 0.0, en = 0.0, resid = 0.0;
  std::size_t viol = 0;
  for (std::size_t i = 0; i < total; ++i) {
    mass += w[i];
    en += w[i] * Kv[i];
    if (w[i] > 0.0) resid = std::max(resid, std::abs(Kv[i] - 1.0));
    if (E.mask[i] && Kv[i] < 1.0 - opts.tol) ++viol;
  }
  res.measure.weights = std::move(w);
  res.mass = mass;
  res.energy = en;
  res.capacity = 2.0 * mass - en;
  res.potential_residual_on_support = resid;
  res.constraint_violation_fraction = static_cast<double>(viol) / static_cast<double>(set_size);
  res.iterations = it;
  res.converged = converged;
  return res;
}

// Equilibrium of a product set is the tensor product of the 1-D factor
// equilibria (the energy form factorizes, and the minimizer is unique).
EquilibriumResult solve_product(const GridSet& E, const EquilibriumOptions& opts) {
  const TorusGrid& grid = E.grid;
  const auto& factors = *E.factors;
  std::vector<EquilibriumResult> parts;
  parts.reserve(grid.n);
  for (std::size_t ax = 0; ax < grid.n; ++ax) {
    GridSet f1(TorusGrid(1, grid.m), factors[ax]);
    parts.push_back(solve_generic(f1, opts));
  }

  EquilibriumResult res;
  res.measure.grid = grid;
  const std::size_t total = grid.total_points();
  std::vector<double> w(total, 1.0);
  bool all_conv = true;
  std::size_t it_max = 0;
  for (const auto& p : parts) {
    all_conv = all_conv && p.converged;
    it_max = std::max(it_max, p.iterations);
  }
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double v = 1.0;
    for (std::size_t ax = grid.n; ax-- > 0;) {
      v *= parts[ax].measure.weights[rem % grid.m];
      rem /= grid.m;
    }
    w[flat] = v;
  }
  res.measure.weights = std::move(w);
  res.mass = 1.0;
  res.energy = 1.0;
  for (const auto& p : parts) {
    res.mass *= p.mass;
    res.energy *= p.energy;
  }
  res.capacity = 2.0 * res.mass - res.energy;
  res.iterations = it_max;
  res.converged = all_conv;

  // diagnostics from the assembled n-D measure
  std::vector<double> pot = apply_H(res.measure);
  double resid = 0.0;
  std::size_t viol = 0;
  const std::size_t set_size = E.count();
  for (std::size_t i = 0; i < total; ++i) {
    if (res.measure.weights[i] > 0.0) resid = std::max(resid, std::abs(pot[i] - 1.0));
    if (E.mask[i] && pot[i] < 1.0 - opts.tol) ++viol;
  }
  res.potential_residual_on_support = resid;
  res.constraint_violation_fraction =
      set_size ? static_cast<double>(viol) / static_cast<double>(set_size) : 0.0;
  return res;
}

} // namespace

std::vector<double> apply_H(const GridMeasure& mu) {
  CirculantOperator op(mu.grid.dims(), kernel_eigenvalues(mu.grid));
  std::vector<double> out;
  op.apply(mu.weights, out);
  return out;
}

double energy(const GridMeasure& mu) {
  const std::vector<double> pot = apply_H(mu);
  double e = 0.0;
  for (std::size_t i = 0; i < pot.size(); ++i) e += mu.weights[i] * pot[i];
  return e;
}

EquilibriumResult equilibrium(const GridSet& E, const EquilibriumOptions& opts) {
  if (opts.tol <= 0.0 || opts.tol >= 0.1)
    throw std::invalid_argument("equilibrium: tol must lie in (0, 0.1)");
  if (E.factors && E.grid.n > 1) return solve_product(E, opts);
  return solve_generic(E, opts);
}

double capacity_dual(const GridSet& E, const EquilibriumOptions& opts) {
  EquilibriumResult r = equilibrium(E, opts);
  if (r.mass <= 0.0) return 0.0;
  return r.mass * r.mass / r.energy;
}

PrimalCheckReport capacity_primal_check(const GridSet& E, const EquilibriumResult& result,
                                        double tol) {
  const TorusGrid& grid = E.grid;
  const std::vector<double> b = sample_b_truncated(grid.m, grid.m / 2);
  Fft fft1({grid.m});
  std::vector<cplx> spec = fft1.forward(b);
  std::vector<double> eig1(grid.m);
  for (std::size_t k = 0; k < grid.m; ++k) eig1[k] = spec[k].real();
  CirculantOperator B(grid.dims(), tensor_eigenvalues(eig1, grid.n));

  std::vector<double> field; // f* = B mu*
  B.apply(result.measure.weights, field);
  double field_min = field.empty() ? 0.0 : field[0];
  double l2 = 0.0;
  for (double v : field) {
    field_min = std::min(field_min, v);
    l2 += v * v;
  }
  l2 /= static_cast<double>(field.size()); // normalized Lebesgue measure

  std::vector<double> constraint; // B f* = (b*b) mu*
  B.apply(field, constraint);

  std::size_t set_size = 0, viol = 0;
  for (std::size_t i = 0; i < E.mask.size(); ++i) {
    if (!E.mask[i]) continue;
    ++set_size;
    if (constraint[i] < 1.0 - tol) ++viol;
  }
  PrimalCheckReport rep;
  rep.field_min = field_min;
  rep.l2_ratio = result.capacity > 0.0 ? l2 / result.capacity : 0.0;
  rep.violation_fraction =
      set_size ? static_cast<double>(viol) / static_cast<double>(set_size) : 0.0;
  return rep;
}

ProductCapacityResult product_capacity(const std::vector<GridSet>& factors,
                                       const EquilibriumOptions& opts) {
  if (factors.empty()) throw std::invalid_argument("product_capacity: no factors");
  const std::size_t m = factors.front().grid.m;
  for (const auto& f : factors) {
    if (f.grid.n != 1) throw std::invalid_argument("product_capacity: factors must be 1-D");
    if (f.grid.m != m) throw std::invalid_argument("product_capacity: mixed resolutions");
  }
  ProductCapacityResult out;
  out.product = 1.0;
  for (const auto& f : factors) {
    const double c = capacity_dual(f, opts);
    out.factor_capacities.push_back(c);
    out.product *= c;
  }

  const std::size_t n = factors.size();
  double points = 1.0;
  for (std::size_t i = 0; i < n; ++i) points *= static_cast<double>(m);
  if (n > 3 || points > static_cast<double>(1ULL << 24)) {
    out.direct_skipped = true;
    return out;
  }

  std::vector<std::vector<bool>> masks;
  for (const auto& f : factors) masks.push_back(f.mask);
  // direct check deliberately bypasses the tensor fast path
  GridSet prod = GridSet::from_factors(TorusGrid(n, m), masks).without_factors();
  out.direct = capacity_dual(prod, opts);
  if (out.product > 0.0)
    out.rel_gap = std::abs(*out.direct - out.product) / out.product;
  return out;
}

} // namespace torcap
