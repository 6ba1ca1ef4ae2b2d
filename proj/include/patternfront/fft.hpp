#pragma once

#include <complex>
#include <span>
#include <vector>

namespace patternfront {

using cplx = std::complex<double>;

/// Transform convention used throughout the library: the forward transform is
/// unnormalized, X_k = sum_j x_j exp(-2 pi i j k / n), and the inverse divides
/// by n. Mode 0 is therefore the plain sum of the samples. Spectra are stored
/// in FFT order (0, 1, ..., n/2, -n/2+1, ..., -1).
///
/// Instances own scratch buffers; one instance must not be used from two
/// threads at once. Plan creation is serialized internally.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  RealFft(RealFft&& other) noexcept;
  RealFft& operator=(RealFft&& other) noexcept;

  int size() const { return n_; }

  // Writes the full (Hermitian) spectrum of n entries.
  void forward(std::span<const double> x, std::span<cplx> spectrum) const;
  // Uses only entries 0..n/2 of the spectrum; Hermitian symmetry is assumed.
  void inverse(std::span<const cplx> spectrum, std::span<double> x) const;

  std::vector<cplx> forward(std::span<const double> x) const;
  std::vector<double> inverse(std::span<const cplx> spectrum) const;

 private:
  void release() noexcept;

  int n_ = 0;
  double* real_buf_ = nullptr;
  void* half_buf_ = nullptr;
  void* fwd_ = nullptr;
  void* bwd_ = nullptr;
};

class ComplexFft {
 public:
  explicit ComplexFft(int n);
  ~ComplexFft();
  ComplexFft(const ComplexFft&) = delete;
  ComplexFft& operator=(const ComplexFft&) = delete;
  ComplexFft(ComplexFft&& other) noexcept;
  ComplexFft& operator=(ComplexFft&& other) noexcept;

  int size() const { return n_; }

  void forward(std::span<const cplx> x, std::span<cplx> spectrum) const;
  void inverse(std::span<const cplx> spectrum, std::span<cplx> x) const;

 private:
  void release() noexcept;

  int n_ = 0;
  void* buf_in_ = nullptr;
  void* buf_out_ = nullptr;
  void* fwd_ = nullptr;
  void* bwd_ = nullptr;
};

/// Signed integer wave index of FFT slot j on an n-point grid.
inline int wave_index(int j, int n) { return j <= n / 2 ? j : j - n; }

}  // namespace patternfront
