#include "patternfront/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace patternfront {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

RealFft::RealFft(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("RealFft: n must be >= 2");
  std::lock_guard lock(planner_mutex());
  real_buf_ = fftw_alloc_real(static_cast<std::size_t>(n));
  half_buf_ = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
  auto* half = static_cast<fftw_complex*>(half_buf_);
  fwd_ = fftw_plan_dft_r2c_1d(n, real_buf_, half, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_c2r_1d(n, half, real_buf_, FFTW_ESTIMATE);
  if (!fwd_ || !bwd_) throw std::runtime_error("RealFft: FFTW planning failed");
}

RealFft::~RealFft() { release(); }

void RealFft::release() noexcept {
  if (!fwd_ && !bwd_ && !real_buf_ && !half_buf_) return;
  std::lock_guard lock(planner_mutex());
  if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
  if (real_buf_) fftw_free(real_buf_);
  if (half_buf_) fftw_free(half_buf_);
  fwd_ = bwd_ = nullptr;
  real_buf_ = nullptr;
  half_buf_ = nullptr;
}

RealFft::RealFft(RealFft&& o) noexcept
    : n_(std::exchange(o.n_, 0)),
      real_buf_(std::exchange(o.real_buf_, nullptr)),
      half_buf_(std::exchange(o.half_buf_, nullptr)),
      fwd_(std::exchange(o.fwd_, nullptr)),
      bwd_(std::exchange(o.bwd_, nullptr)) {}

RealFft& RealFft::operator=(RealFft&& o) noexcept {
  if (this != &o) {
    release();
    n_ = std::exchange(o.n_, 0);
    real_buf_ = std::exchange(o.real_buf_, nullptr);
    half_buf_ = std::exchange(o.half_buf_, nullptr);
    fwd_ = std::exchange(o.fwd_, nullptr);
    bwd_ = std::exchange(o.bwd_, nullptr);
  }
  return *this;
}

void RealFft::forward(std::span<const double> x, std::span<cplx> spectrum) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(spectrum.size()) != n_)
    throw std::invalid_argument("RealFft::forward: size mismatch");
  std::copy(x.begin(), x.end(), real_buf_);
  fftw_execute(static_cast<fftw_plan>(fwd_));
  const auto* half = reinterpret_cast<const cplx*>(half_buf_);
  const int nh = n_ / 2;
  for (int k = 0; k <= nh; ++k) spectrum[k] = half[k];
  for (int k = nh + 1; k < n_; ++k) spectrum[k] = std::conj(half[n_ - k]);
}

void RealFft::inverse(std::span<const cplx> spectrum, std::span<double> x) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(spectrum.size()) != n_)
    throw std::invalid_argument("RealFft::inverse: size mismatch");
  auto* half = reinterpret_cast<cplx*>(half_buf_);
  const int nh = n_ / 2;
  for (int k = 0; k <= nh; ++k) half[k] = spectrum[k];
  // Real signals have real mode 0 and (for even n) real Nyquist mode.
  half[0] = cplx(half[0].real(), 0.0);
  if (n_ % 2 == 0) half[nh] = cplx(half[nh].real(), 0.0);
  fftw_execute(static_cast<fftw_plan>(bwd_));
  const double inv_n = 1.0 / n_;
  for (int j = 0; j < n_; ++j) x[j] = real_buf_[j] * inv_n;
}

std::vector<cplx> RealFft::forward(std::span<const double> x) const {
  std::vector<cplx> out(static_cast<std::size_t>(n_));
  forward(x, out);
  return out;
}

std::vector<double> RealFft::inverse(std::span<const cplx> spectrum) const {
  std::vector<double> out(static_cast<std::size_t>(n_));
  inverse(spectrum, out);
  return out;
}

ComplexFft::ComplexFft(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("ComplexFft: n must be >= 1");
  std::lock_guard lock(planner_mutex());
  buf_in_ = fftw_alloc_complex(static_cast<std::size_t>(n));
  buf_out_ = fftw_alloc_complex(static_cast<std::size_t>(n));
  auto* in = static_cast<fftw_complex*>(buf_in_);
  auto* out = static_cast<fftw_complex*>(buf_out_);
  fwd_ = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!fwd_ || !bwd_) throw std::runtime_error("ComplexFft: FFTW planning failed");
}

ComplexFft::~ComplexFft() { release(); }

void ComplexFft::release() noexcept {
  if (!fwd_ && !bwd_ && !buf_in_ && !buf_out_) return;
  std::lock_guard lock(planner_mutex());
  if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
  if (buf_in_) fftw_free(buf_in_);
  if (buf_out_) fftw_free(buf_out_);
  fwd_ = bwd_ = nullptr;
  buf_in_ = buf_out_ = nullptr;
}

ComplexFft::ComplexFft(ComplexFft&& o) noexcept
    : n_(std::exchange(o.n_, 0)),
      buf_in_(std::exchange(o.buf_in_, nullptr)),
      buf_out_(std::exchange(o.buf_out_, nullptr)),
      fwd_(std::exchange(o.fwd_, nullptr)),
      bwd_(std::exchange(o.bwd_, nullptr)) {}

ComplexFft& ComplexFft::operator=(ComplexFft&& o) noexcept {
  if (this != &o) {
    release();
    n_ = std::exchange(o.n_, 0);
    buf_in_ = std::exchange(o.buf_in_, nullptr);
    buf_out_ = std::exchange(o.buf_out_, nullptr);
    fwd_ = std::exchange(o.fwd_, nullptr);
    bwd_ = std::exchange(o.bwd_, nullptr);
  }
  return *this;
}

void ComplexFft::forward(std::span<const cplx> x, std::span<cplx> spectrum) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(spectrum.size()) != n_)
    throw std::invalid_argument("ComplexFft::forward: size mismatch");
  auto* in = static_cast<cplx*>(buf_in_);
  std::copy(x.begin(), x.end(), in);
  fftw_execute(static_cast<fftw_plan>(fwd_));
  const auto* out = static_cast<const cplx*>(buf_out_);
  std::copy(out, out + n_, spectrum.begin());
}

void ComplexFft::inverse(std::span<const cplx> spectrum, std::span<cplx> x) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(spectrum.size()) != n_)
    throw std::invalid_argument("ComplexFft::inverse: size mismatch");
  auto* in = static_cast<cplx*>(buf_in_);
  std::copy(spectrum.begin(), spectrum.end(), in);
  fftw_execute(static_cast<fftw_plan>(bwd_));
  const auto* out = static_cast<const cplx*>(buf_out_);
  const double inv_n = 1.0 / n_;
  for (int j = 0; j < n_; ++j) x[j] = out[j] * inv_n;
}

}  // namespace patternfront
