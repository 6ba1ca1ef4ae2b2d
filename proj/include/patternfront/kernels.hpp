#pragma once

#include <complex>
#include <span>

namespace patternfront::kernels {

using cplx = std::complex<double>;

// Pointwise nonlinearities and spectral updates used by the time steppers.
// Each kernel has a serial reference and an OpenMP version; the two produce
// bit-identical results (every output element depends on one index only).

/// p = u v - u^3, q = u^2.
void full_nonlinear_serial(std::span<const double> u, std::span<const double> v,
                           std::span<double> p, std::span<double> q);
void full_nonlinear_omp(std::span<const double> u, std::span<const double> v,
                        std::span<double> p, std::span<double> q);

/// p = A B - k A |A|^2, q = |A|^2.
void amplitude_nonlinear_serial(std::span<const cplx> a, std::span<const double> b, double k,
                                std::span<cplx> p, std::span<double> q);
void amplitude_nonlinear_omp(std::span<const cplx> a, std::span<const double> b, double k,
                             std::span<cplx> p, std::span<double> q);

/// out = c1 x + c2 y + c3 z with real per-mode coefficients. z may be empty,
/// in which case c3 is ignored.
void combine_serial(std::span<const double> c1, std::span<const cplx> x,
                    std::span<const double> c2, std::span<const cplx> y,
                    std::span<const double> c3, std::span<const cplx> z, std::span<cplx> out);
void combine_omp(std::span<const double> c1, std::span<const cplx> x, std::span<const double> c2,
                 std::span<const cplx> y, std::span<const double> c3, std::span<const cplx> z,
                 std::span<cplx> out);

}  // namespace patternfront::kernels
