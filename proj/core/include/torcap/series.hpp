#pragma once

#include "torcap/coeffs.hpp"

#include <span>
#include <string>
#include <vector>

namespace torcap {

enum class ScanVerdict { converged, diverged, inconclusive };

std::string to_string(ScanVerdict v);

// Result of sweeping every rectangular partial sum S_N, N <= N_max.
struct SummationScan {
  std::vector<double> theta;
  std::vector<std::size_t> n_max;
  double sup_norm = 0.0;            // max over rectangles of ||S_N||
  std::vector<cplx> final_value;    // S_{N_max}, length d
  double oscillation_tail = 0.0;    // diameter bound of {S_N} over the top decile
  ScanVerdict verdict = ScanVerdict::inconclusive;
  // sup over the dyadic sub-boxes N <= N_max/4, /2, /1 (divergence proxy)
  double shell_sup[3] = {0.0, 0.0, 0.0};
};

struct RadialVariationResult {
  std::vector<double> theta;
  std::vector<std::pair<double, double>> levels; // (delta_k, integral over [0, 1-delta_k]^n)
  double extrapolated = 0.0;                     // +inf when increments are not geometric
  bool monotone = true;
};

// S_N f(theta) = sum_{alpha <= N} a_alpha e^{i(alpha,theta)}
std::vector<cplx> rect_partial_sum(const CoeffArray& f, std::span<const std::size_t> N,
                                   std::span<const double> theta);

// Scans every rectangle N <= N_max via n-dimensional prefix sums (one pass,
// work proportional to the rectangle count). Verdict: converged when the
// top-decile oscillation is below tol; diverged when sup exceeds 10x the
// Dirichlet norm with strictly increasing sups across the three largest
// dyadic shells; otherwise inconclusive.
SummationScan pringsheim_scan(const CoeffArray& f, std::span<const double> theta,
                              std::span<const std::size_t> n_max, double tol);

// f_r(theta) = sum_alpha a_alpha prod r_j^{alpha_j} e^{i(alpha,theta)}
std::vector<cplx> abel_mean(const CoeffArray& f, std::span<const double> r,
                            std::span<const double> theta);

// crude scale for the mass dropped by truncation at the stored shape
double abel_truncation_bound(const CoeffArray& f, std::span<const double> r);

// || S_N f - f_{1-1/N} || along one axis, coefficients in the tensor
// complement treated as the vector dimension.
double fejer_gap(const CoeffArray& f, std::size_t N, double theta, std::size_t axis);

// F_h(theta) = sum_alpha a_alpha prod sinc(alpha_j h_j) e^{i(alpha,theta)},
// sinc(0 h) = 1 exactly.
std::vector<cplx> strong_diff_mean(const CoeffArray& f, std::span<const double> h,
                                   std::span<const double> theta);

// d_r f = sum_alpha a_alpha prod (alpha_j r_j^{alpha_j - 1}) e^{i(alpha,theta)}
std::vector<cplx> radial_derivative(const CoeffArray& f, std::span<const double> r,
                                    std::span<const double> theta);

// Tensor Gauss-Legendre quadrature of ||d_r f_r(theta)|| over [0, 1-2^-k]^n
// for k = 1..depth, with Richardson extrapolation when the increments decay
// geometrically.
RadialVariationResult radial_variation(const CoeffArray& f, std::span<const double> theta,
                                       std::size_t depth);

} // namespace torcap
