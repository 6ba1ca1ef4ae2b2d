#pragma once

#include <span>
#include <vector>

#include "patternfront/fft.hpp"
#include "patternfront/params.hpp"

namespace patternfront {

/// Uniform periodic grid x_j = j * length / n on [0, length).
struct Grid {
  int n = 0;
  double length = 0.0;

  double dx() const { return length / n; }
  double x(int j) const { return j * dx(); }
  // Angular wave number of FFT slot j; the Nyquist slot maps to +n/2.
  double wavenumber(int j) const;
  std::vector<double> points() const;
};

/// Pair of real periodic fields (u, v) held as full Hermitian spectra in the
/// unnormalized FFT convention of fft.hpp. mean_v is the conserved mean of v;
/// v_hat[0] == mean_v * n.
struct FieldPair {
  Grid grid;
  std::vector<cplx> u_hat;
  std::vector<cplx> v_hat;
  double mean_v = 0.0;

  static FieldPair from_values(const Grid& grid, std::span<const double> u,
                               std::span<const double> v);

  std::vector<double> u_values() const;
  std::vector<double> v_values() const;
};

/// Zero fields on a grid of n_periods pattern periods, length n_periods*2pi/kc.
/// n_grid must be a power of two >= 16.
FieldPair make_grid(int n_grid, int n_periods, const ModelParams& params);

/// Per-thread cached transforms for a given size.
const RealFft& real_fft(int n);
const ComplexFft& complex_fft(int n);

/// max_k |X_k - conj(X_{-k})| / max(1, max_k |X_k|)
double hermitian_defect(std::span<const cplx> spectrum);

bool is_power_of_two(int n);

}  // namespace patternfront
