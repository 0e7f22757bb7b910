#pragma once

#include "torcap/fft.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace torcap {

// Truncated multiple Fourier coefficients a_alpha, alpha in prod [0, N_j],
// with values in C^d. Storage is row-major in alpha with the d components
// of each coefficient contiguous. Immutable by convention once built.
struct CoeffArray {
  std::size_t n = 1;
  std::vector<std::size_t> shape; // N_j + 1 per axis
  std::size_t d = 1;
  std::vector<cplx> values;       // flat_count() * d entries

  CoeffArray() = default;
  CoeffArray(std::size_t n_, std::vector<std::size_t> shape_, std::size_t d_ = 1)
      : n(n_), shape(std::move(shape_)), d(d_) {
    if (n < 1 || shape.size() != n) throw std::invalid_argument("CoeffArray: bad shape");
    if (d < 1) throw std::invalid_argument("CoeffArray: d >= 1 required");
    for (auto s : shape)
      if (s == 0) throw std::invalid_argument("CoeffArray: zero extent");
    values.assign(flat_count() * d, cplx(0.0, 0.0));
  }

  std::size_t flat_count() const {
    std::size_t t = 1;
    for (auto s : shape) t *= s;
    return t;
  }

  std::size_t flat_index(std::span<const std::size_t> alpha) const {
    std::size_t idx = 0;
    for (std::size_t ax = 0; ax < n; ++ax) {
      if (alpha[ax] >= shape[ax]) throw std::out_of_range("CoeffArray: index out of shape");
      idx = idx * shape[ax] + alpha[ax];
    }
    return idx;
  }

  cplx* at(std::span<const std::size_t> alpha) { return values.data() + flat_index(alpha) * d; }
  const cplx* at(std::span<const std::size_t> alpha) const {
    return values.data() + flat_index(alpha) * d;
  }

  // sum_alpha prod_j (alpha_j + 1) * ||a_alpha||^2
  double dirichlet_norm_sq() const;
  double dirichlet_norm() const;

  // sum_alpha ||a_alpha||^2
  double l2_norm_sq() const;
};

} // namespace torcap
