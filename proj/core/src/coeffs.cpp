#include "torcap/coeffs.hpp"

#include <cmath>

namespace torcap {

double CoeffArray::dirichlet_norm_sq() const {
  const std::size_t count = flat_count();
  double total = 0.0;
  std::vector<std::size_t> alpha(n, 0);
  for (std::size_t flat = 0; flat < count; ++flat) {
    double wgt = 1.0;
    {
      std::size_t rem = flat;
      for (std::size_t ax = n; ax-- > 0;) {
        wgt *= static_cast<double>(rem % shape[ax] + 1);
        rem /= shape[ax];
      }
    }
    double mag = 0.0;
    for (std::size_t c = 0; c < d; ++c) mag += std::norm(values[flat * d + c]);
    total += wgt * mag;
  }
  return total;
}

double CoeffArray::dirichlet_norm() const { return std::sqrt(dirichlet_norm_sq()); }

double CoeffArray::l2_norm_sq() const {
  double total = 0.0;
  for (const cplx& v : values) total += std::norm(v);
  return total;
}

} // namespace torcap
