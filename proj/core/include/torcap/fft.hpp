#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace torcap {

using cplx = std::complex<double>;

// n-dimensional complex DFT on a power-of-two grid, wrapping FFTW.
// Plans use FFTW_ESTIMATE only: plan selection is then deterministic,
// which keeps artifact bytes identical across reruns.
class Fft {
public:
  explicit Fft(std::vector<std::size_t> dims);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return total_; }
  const std::vector<std::size_t>& dims() const { return dims_; }

  // in-place, unnormalized forward transform
  void forward(cplx* data) const;
  // in-place inverse with 1/size normalization
  void inverse(cplx* data) const;

  std::vector<cplx> forward(const std::vector<double>& real_in) const;

private:
  std::vector<std::size_t> dims_;
  std::size_t total_;
  void* plan_fwd_;
  void* plan_bwd_;
  cplx* buf_;
};

// Real circular convolution against a fixed real, symmetric kernel given by
// its transform eigenvalues. Reused across solver iterations.
class CirculantOperator {
public:
  CirculantOperator(std::vector<std::size_t> dims, std::vector<double> eigenvalues);

  const std::vector<double>& eigenvalues() const { return eigs_; }
  double eig_max() const { return eig_max_; }
  double eig_min() const { return eig_min_; }
  std::size_t size() const { return fft_.size(); }

  // out = K * in (circular convolution), both real fields of length size()
  void apply(const std::vector<double>& in, std::vector<double>& out) const;

private:
  Fft fft_;
  std::vector<double> eigs_;
  double eig_max_, eig_min_;
  mutable std::vector<cplx> work_;
};

// eigenvalues of the n-fold tensor kernel: outer product of 1-D DFTs
std::vector<double> tensor_eigenvalues(const std::vector<double>& eig1d, std::size_t n);

} // namespace torcap
