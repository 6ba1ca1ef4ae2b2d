#include "patternfront/kernels.hpp"

#include <cstddef>
#include <stdexcept>

namespace patternfront::kernels {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void full_nonlinear_serial(std::span<const double> u, std::span<const double> v,
                           std::span<double> p, std::span<double> q) {
  require(v.size() == u.size() && p.size() == u.size() && q.size() == u.size(),
          "full_nonlinear: size mismatch");
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double ui = u[i];
    q[i] = ui * ui;
    p[i] = ui * v[i] - ui * q[i];
  }
}

void full_nonlinear_omp(std::span<const double> u, std::span<const double> v,
                        std::span<double> p, std::span<double> q) {
  require(v.size() == u.size() && p.size() == u.size() && q.size() == u.size(),
          "full_nonlinear: size mismatch");
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double ui = u[i];
    q[i] = ui * ui;
    p[i] = ui * v[i] - ui * q[i];
  }
}

void amplitude_nonlinear_serial(std::span<const cplx> a, std::span<const double> b, double k,
                                std::span<cplx> p, std::span<double> q) {
  require(b.size() == a.size() && p.size() == a.size() && q.size() == a.size(),
          "amplitude_nonlinear: size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    q[i] = std::norm(a[i]);
    p[i] = a[i] * (b[i] - k * q[i]);
  }
}

void amplitude_nonlinear_omp(std::span<const cplx> a, std::span<const double> b, double k,
                             std::span<cplx> p, std::span<double> q) {
  require(b.size() == a.size() && p.size() == a.size() && q.size() == a.size(),
          "amplitude_nonlinear: size mismatch");
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    q[i] = std::norm(a[i]);
    p[i] = a[i] * (b[i] - k * q[i]);
  }
}

void combine_serial(std::span<const double> c1, std::span<const cplx> x,
                    std::span<const double> c2, std::span<const cplx> y,
                    std::span<const double> c3, std::span<const cplx> z, std::span<cplx> out) {
  const std::size_t n = out.size();
  require(c1.size() == n && x.size() == n && c2.size() == n && y.size() == n,
          "combine: size mismatch");
  if (z.empty()) {
    for (std::size_t i = 0; i < n; ++i) out[i] = c1[i] * x[i] + c2[i] * y[i];
    return;
  }
  require(c3.size() == n && z.size() == n, "combine: size mismatch");
  for (std::size_t i = 0; i < n; ++i) out[i] = c1[i] * x[i] + c2[i] * y[i] + c3[i] * z[i];
}

void combine_omp(std::span<const double> c1, std::span<const cplx> x, std::span<const double> c2,
                 std::span<const cplx> y, std::span<const double> c3, std::span<const cplx> z,
                 std::span<cplx> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
  require(c1.size() == out.size() && x.size() == out.size() && c2.size() == out.size() &&
              y.size() == out.size(),
          "combine: size mismatch");
  if (z.empty()) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = c1[i] * x[i] + c2[i] * y[i];
    return;
  }
  require(c3.size() == out.size() && z.size() == out.size(), "combine: size mismatch");
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = c1[i] * x[i] + c2[i] * y[i] + c3[i] * z[i];
}

}  // namespace patternfront::kernels
