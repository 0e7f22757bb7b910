#include "torcap/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace torcap {

GaussLegendre gauss_legendre(std::size_t q) {
  if (q == 0) throw std::invalid_argument("gauss_legendre: q must be positive");
  GaussLegendre gl;
  gl.nodes.resize(q);
  gl.weights.resize(q);
  const std::size_t half = (q + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(q) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence up to degree q
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= q; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(q) * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.nodes[i] = -x;
    gl.nodes[q - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.weights[i] = w;
    gl.weights[q - 1 - i] = w;
  }
  return gl;
}

GaussLegendre gauss_legendre(std::size_t q, double a, double b) {
  GaussLegendre gl = gauss_legendre(q);
  const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
  for (std::size_t i = 0; i < q; ++i) {
    gl.nodes[i] = mid + rad * gl.nodes[i];
    gl.weights[i] *= rad;
  }
  return gl;
}

double clausen_cl2(double x) {
  if (x < 0.0 || x > std::numbers::pi + 1e-12)
    throw std::invalid_argument("clausen_cl2: x must lie in [0, pi]");
  if (x == 0.0) return 0.0;
  // Cl2(x) = x - x log x + sum_{n>=1} zeta(2n) x^{2n+1} / (n (2n+1) (2pi)^{2n})
  double s = x - x * std::log(x);
  const double ratio = x / (2.0 * std::numbers::pi);
  double pw = ratio * ratio;
  for (int n = 1; n < 80; ++n) {
    const double term = std::riemann_zeta(2.0 * n) * pw * x /
                        (static_cast<double>(n) * (2.0 * n + 1.0));
    s += term;
    if (term < 1e-18 * std::abs(s)) break;
    pw *= ratio * ratio;
  }
  return s;
}

} // namespace torcap
