#pragma once

#include <cstddef>
#include <vector>

namespace torcap {

// Samples of the closed-form kernel h(theta) = 9 + (1/2) log(1/|1 - e^{i theta}|)
// on the m-point grid. h(0) is infinite; slot 0 carries the regularized value
// h_diag chosen so that the grid sum equals 9m exactly (the continuum mean of
// h is 9, and this choice preserves it on every grid). Numerically
// h_diag = 9 + (1/2) log m, via prod_{p=1}^{m-1} 2 sin(pi p/m) = m.
struct KernelTable {
  std::size_t grid_resolution = 0; // m
  std::vector<double> h_samples;   // length m, slot 0 = h_diag
  double h_diag = 0.0;
  std::vector<double> b_samples;   // truncated b series, length m (empty until sampled)
  std::size_t truncation_K = 0;

  // transform eigenvalues of the 1-D circulant h kernel (all positive)
  std::vector<double> h_eigenvalues() const;
};

// Tables for the tilde kernels of the variation argument:
//   tilde_b(theta) = sum_{k>=0} c_k cos(k theta) = Re (1 - e^{i theta})^{-1/2}
//   tilde_h = tilde_b * tilde_b, cosine coefficients c_k^2/2.
// tail_bound stores c_{K+1}^2/2; by the Dirichlet test the truncation error
// at theta is at most tail_bound / |sin(theta/2)| pointwise. (The raw tail
// sum diverges like the harmonic series, so only the pointwise form is
// usable as a rigorous bound.)
struct TildeKernelTable {
  std::vector<double> c_coeffs;        // c_0..c_K
  std::vector<double> tilde_b_samples; // length m
  std::vector<double> tilde_h_samples; // length m
  double tail_bound = 0.0;             // c_{K+1}^2 / 2
  double tail_bound_b = 0.0;           // c_{K+1}
  std::size_t grid_resolution = 0;
  std::size_t truncation_K = 0;

  // min over p != 0 of tilde_h_samples[p] - tail_bound/|sin(theta_p/2)|;
  // positive value certifies tilde_h >= c > 0 on the grid
  double certified_h_min() const;
};

// c_k = binom(k - 1/2, k) by the recurrence c_0 = 1, c_k = c_{k-1} (k - 1/2)/k.
double binom_coeff_c(std::size_t k);
std::vector<double> binom_coeff_sequence(std::size_t K);

// closed form Re (1 - e^{i theta})^{-1/2}, 0 < theta < 2pi
double tilde_b_closed_form(double theta);

KernelTable sample_h(std::size_t m);

// b_samples[p] = 3 + sum_{k=1}^K cos(2 pi k p / m)/sqrt(k); requires K <= m/2
std::vector<double> sample_b_truncated(std::size_t m, std::size_t K);

// sample_h plus the truncated b series in one table
KernelTable sample_kernels(std::size_t m, std::size_t K);

TildeKernelTable tilde_h_series(std::size_t m, std::size_t K);

// Max relative deviation between the discrete circular autoconvolution of
// b (normalized counting measure) and the h table, over points with
// min(p, m-p) >= 4.
double verify_b_conv_h(std::size_t m, std::size_t K);

// Same deviation restricted to even p: those angles persist when the grid is
// refined m -> 2m, which is where the refinement trend is monotone.
double verify_b_conv_h_shared(std::size_t m, std::size_t K);

} // namespace torcap
