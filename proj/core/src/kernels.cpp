#include "torcap/kernels.hpp"

#include "torcap/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace torcap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_resolution(std::size_t m) {
  if (m < 8 || (m & (m - 1)) != 0)
    throw std::invalid_argument("kernel resolution m must be a power of two >= 8");
}

double h_point(double theta) {
  const double mod = 2.0 * std::abs(std::sin(0.5 * theta));
  return 9.0 - 0.5 * std::log(mod);
}

} // namespace

double binom_coeff_c(std::size_t k) {
  double c = 1.0;
  for (std::size_t j = 1; j <= k; ++j)
    c *= (static_cast<double>(j) - 0.5) / static_cast<double>(j);
  return c;
}

std::vector<double> binom_coeff_sequence(std::size_t K) {
  std::vector<double> c(K + 1);
  c[0] = 1.0;
  for (std::size_t j = 1; j <= K; ++j)
    c[j] = c[j - 1] * (static_cast<double>(j) - 0.5) / static_cast<double>(j);
  return c;
}

double tilde_b_closed_form(double theta) {
  // (1 - e^{i theta})^{-1/2} = (2 sin(theta/2))^{-1/2} e^{i (pi - theta)/4}
  const double s = 2.0 * std::sin(0.5 * theta);
  if (s <= 0.0) throw std::invalid_argument("tilde_b_closed_form: theta in (0, 2pi)");
  return std::cos(0.25 * (std::numbers::pi - theta)) / std::sqrt(s);
}

KernelTable sample_h(std::size_t m) {
  check_resolution(m);
  KernelTable t;
  t.grid_resolution = m;
  t.h_samples.resize(m);
  // fill p <= m/2 and mirror, so h[p] == h[m-p] holds exactly
  for (std::size_t p = 1; p <= m / 2; ++p) {
    const double v = h_point(kTwoPi * static_cast<double>(p) / static_cast<double>(m));
    t.h_samples[p] = v;
    t.h_samples[m - p] = v;
  }
  double off_sum = 0.0;
  for (std::size_t p = 1; p < m; ++p) off_sum += t.h_samples[p];
  t.h_diag = 9.0 * static_cast<double>(m) - off_sum;
  t.h_samples[0] = t.h_diag;
  return t;
}

std::vector<double> KernelTable::h_eigenvalues() const {
  Fft fft({grid_resolution});
  std::vector<cplx> spec = fft.forward(h_samples);
  std::vector<double> eig(grid_resolution);
  for (std::size_t k = 0; k < grid_resolution; ++k) eig[k] = spec[k].real();
  return eig;
}

std::vector<double> sample_b_truncated(std::size_t m, std::size_t K) {
  check_resolution(m);
  if (K < 1 || K > m / 2)
    throw std::invalid_argument("sample_b_truncated: need 1 <= K <= m/2 (aliasing)");
  std::vector<double> b(m, 0.0);
  for (std::size_t p = 0; p <= m / 2; ++p) {
    const double theta = kTwoPi * static_cast<double>(p) / static_cast<double>(m);
    double s = 3.0;
    for (std::size_t k = 1; k <= K; ++k)
      s += std::cos(static_cast<double>(k) * theta) / std::sqrt(static_cast<double>(k));
    b[p] = s;
    b[(m - p) % m] = s; // cosine parity
  }
  return b;
}

KernelTable sample_kernels(std::size_t m, std::size_t K) {
  KernelTable t = sample_h(m);
  t.b_samples = sample_b_truncated(m, K);
  t.truncation_K = K;
  return t;
}

TildeKernelTable tilde_h_series(std::size_t m, std::size_t K) {
  check_resolution(m);
  if (K < 16) throw std::invalid_argument("tilde_h_series: K >= 16 required");
  TildeKernelTable t;
  t.grid_resolution = m;
  t.truncation_K = K;
  std::vector<double> c = binom_coeff_sequence(K + 1);
  t.tail_bound = 0.5 * c[K + 1] * c[K + 1];
  t.tail_bound_b = c[K + 1];
  c.resize(K + 1);
  t.c_coeffs = c;
  t.tilde_b_samples.assign(m, 0.0);
  t.tilde_h_samples.assign(m, 0.0);
  for (std::size_t p = 0; p <= m / 2; ++p) {
    const double theta = kTwoPi * static_cast<double>(p) / static_cast<double>(m);
    double sb = c[0], sh = c[0] * c[0];
    for (std::size_t k = 1; k <= K; ++k) {
      const double ck = c[k];
      const double cs = std::cos(static_cast<double>(k) * theta);
      sb += ck * cs;
      sh += 0.5 * ck * ck * cs;
    }
    t.tilde_b_samples[p] = sb;
    t.tilde_b_samples[(m - p) % m] = sb;
    t.tilde_h_samples[p] = sh;
    t.tilde_h_samples[(m - p) % m] = sh;
  }
  return t;
}

double TildeKernelTable::certified_h_min() const {
  const std::size_t m = grid_resolution;
  double lo = tilde_h_samples[1];
  bool first = true;
  for (std::size_t p = 1; p < m; ++p) {
    const double s =
        std::abs(std::sin(std::numbers::pi * static_cast<double>(p) / static_cast<double>(m)));
    const double v = tilde_h_samples[p] - tail_bound / s;
    if (first || v < lo) {
      lo = v;
      first = false;
    }
  }
  return lo;
}

namespace {

double conv_deviation(std::size_t m, std::size_t K, bool shared_only) {
  const std::vector<double> b = sample_b_truncated(m, K);
  Fft fft({m});
  std::vector<cplx> spec = fft.forward(b);
  for (auto& z : spec) z = z * z / static_cast<double>(m);
  fft.inverse(spec.data());
  const KernelTable ht = sample_h(m);
  double dev = 0.0;
  // shared mode restricts to even indices at distance >= 8: exactly the
  // angles of the half-resolution grid at distance >= 4
  const std::size_t stride = shared_only ? 2 : 1;
  const std::size_t min_dist = shared_only ? 8 : 4;
  for (std::size_t p = 0; p < m; p += stride) {
    const std::size_t dist = std::min(p, m - p);
    if (dist < min_dist) continue;
    const double rel = std::abs(spec[p].real() - ht.h_samples[p]) / std::abs(ht.h_samples[p]);
    if (rel > dev) dev = rel;
  }
  return dev;
}

} // namespace

double verify_b_conv_h(std::size_t m, std::size_t K) { return conv_deviation(m, K, false); }

double verify_b_conv_h_shared(std::size_t m, std::size_t K) { return conv_deviation(m, K, true); }

} // namespace torcap
