#include "torcap/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace torcap {

namespace {
// FFTW's planner is not thread-safe; plan creation and destruction are
// serialized so independent solves may run on concurrent threads.
// Execution on distinct plans needs no lock.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
} // namespace

Fft::Fft(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("Fft: empty dims");
  total_ = 1;
  for (std::size_t d : dims_) {
    if (d == 0) throw std::invalid_argument("Fft: zero dimension");
    total_ *= d;
  }
  buf_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(fftw_complex) * total_));
  if (!buf_) throw std::bad_alloc();
  std::vector<int> n(dims_.begin(), dims_.end());
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_dft(static_cast<int>(n.size()), n.data(),
                              reinterpret_cast<fftw_complex*>(buf_),
                              reinterpret_cast<fftw_complex*>(buf_),
                              FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft(static_cast<int>(n.size()), n.data(),
                              reinterpret_cast<fftw_complex*>(buf_),
                              reinterpret_cast<fftw_complex*>(buf_),
                              FFTW_BACKWARD, FFTW_ESTIMATE);
  }
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_);
}

void Fft::forward(cplx* data) const {
  std::copy(data, data + total_, buf_);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::copy(buf_, buf_ + total_, data);
}

void Fft::inverse(cplx* data) const {
  std::copy(data, data + total_, buf_);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  const double inv = 1.0 / static_cast<double>(total_);
  for (std::size_t i = 0; i < total_; ++i) data[i] = buf_[i] * inv;
}

std::vector<cplx> Fft::forward(const std::vector<double>& real_in) const {
  if (real_in.size() != total_) throw std::invalid_argument("Fft::forward: size mismatch");
  std::vector<cplx> out(total_);
  for (std::size_t i = 0; i < total_; ++i) out[i] = cplx(real_in[i], 0.0);
  forward(out.data());
  return out;
}

CirculantOperator::CirculantOperator(std::vector<std::size_t> dims,
                                     std::vector<double> eigenvalues)
    : fft_(std::move(dims)), eigs_(std::move(eigenvalues)), work_(fft_.size()) {
  if (eigs_.size() != fft_.size())
    throw std::invalid_argument("CirculantOperator: eigenvalue count mismatch");
  eig_max_ = *std::max_element(eigs_.begin(), eigs_.end());
  eig_min_ = *std::min_element(eigs_.begin(), eigs_.end());
}

void CirculantOperator::apply(const std::vector<double>& in, std::vector<double>& out) const {
  const std::size_t n = fft_.size();
  if (in.size() != n) throw std::invalid_argument("CirculantOperator::apply: size mismatch");
  for (std::size_t i = 0; i < n; ++i) work_[i] = cplx(in[i], 0.0);
  fft_.forward(work_.data());
  for (std::size_t i = 0; i < n; ++i) work_[i] *= eigs_[i];
  fft_.inverse(work_.data());
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = work_[i].real();
}

std::vector<double> tensor_eigenvalues(const std::vector<double>& eig1d, std::size_t n) {
  std::vector<double> out = eig1d;
  for (std::size_t axis = 1; axis < n; ++axis) {
    std::vector<double> next(out.size() * eig1d.size());
    std::size_t idx = 0;
    for (double a : out)
      for (double b : eig1d) next[idx++] = a * b;
    out = std::move(next);
  }
  return out;
}

} // namespace torcap
