#pragma once

#include "torcap/capacity.hpp"
#include "torcap/coeffs.hpp"
#include "torcap/grid.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace torcap {

// Decreasing compact neighborhoods F_1 >= F_2 >= ... >= F_J >= E with
// sqrt-capacities controlled by budget * 2^{-j}.
struct NestedCompacts {
  std::vector<GridSet> sets;
  std::vector<EquilibriumResult> equilibria; // one per set, measures reused downstream
  std::vector<double> capacities;
  double sqrt_cap_sum = 0.0;
  bool shortfall = false; // some level could not meet its budget even at radius 0
  std::size_t requested_levels = 0;
};

// F_j is the Chebyshev dilation of E by a radius found by bisection: the
// largest radius not exceeding an eighth of the previous one whose measured
// sqrt-capacity fits under budget * 2^{-j}. The aggressive radius decay is
// what makes the construction's divergence visible at finite truncation:
// grid capacities move only logarithmically in the radius, so a bare
// budget-driven search would barely shrink the sets.
NestedCompacts nested_compacts(const GridSet& E, std::size_t J, double budget,
                               const EquilibriumOptions& opts = {});

// min/max over grid points off the singular cells of Re G(psi) / H(psi),
// G(psi) = prod_j (C + log 1/(1 - e^{-i psi_j})). c_low > 0 accepts C.
std::pair<double, double> verify_recomp(double C_const, const TorusGrid& grid);

// f = sum_j f_j with f_j the log-kernel transform of the equilibrium measure
// of F_j: coefficients a_alpha = prod_j g(alpha_j) * mu_hat(alpha), where
// g(0) = C_const and g(k) = 1/k.
struct LogKernelFunction {
  CoeffArray coeffs;                       // the truncated sum over j <= J
  std::vector<GridMeasure> source_measures;
  double C_const = 0.0;
  std::vector<double> capacities;          // C(F_j), copied from the chain
  std::vector<double> term_dirichlet_sq;   // ||f_j||_D^2 at this truncation
  bool shortfall = false;

  // rebuilds the coefficient array from source_measures (idempotence check)
  CoeffArray rebuild() const;
};

// Requires shape_j - 1 <= m/2 (coefficients beyond the Nyquist index of the
// equilibrium grid would alias).
LogKernelFunction divergent_function(const NestedCompacts& chain, std::size_t J,
                                     double C_const, std::span<const std::size_t> shape);

// abel_mean along the diagonal z = t e^{i theta} for each t in t_list
std::vector<std::vector<cplx>> radial_trace(const CoeffArray& f, std::span<const double> theta,
                                            std::span<const double> t_list);

// The bi-Poisson localization failure demo: f(theta) = f1(theta_1) f2(theta_2)
// with f1 a cosine-tapered bump supported in [pi/2, 3pi/2] (so f vanishes for
// |theta_1| <= 0.3) and f2 the 1-D series with a_k = 10/((k+2) log(k+2)).
// The bi-Poisson trace P[f](r, 0) then has no limit as r -> (1,1).
struct LocalizationReport {
  std::vector<double> r_grid;                       // approach radii per axis
  std::vector<std::vector<double>> trace;           // trace[i][j] at (r_i, r_j)
  double strip_max_abs = 0.0;                       // max |f1| sampled on |theta_1| <= 0.3
  double oscillation = 0.0;                         // max - min over the approach grid
  double f2_abel_at_0999 = 0.0;                     // 1-D divergence witness
  std::vector<double> f1_poisson;                   // P[f1 dtheta](r, 0) per radius
};

LocalizationReport localization_demo(std::size_t m);

// the bump f1 itself (exact zeros by construction)
double localization_bump(double theta);

} // namespace torcap
