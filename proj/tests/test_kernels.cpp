#include <random>

#include "doctest.h"
#include "patternfront/kernels.hpp"

using namespace patternfront;
using namespace patternfront::kernels;

namespace {

std::vector<double> random_reals(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

std::vector<cplx> random_complex(std::size_t n, unsigned seed) {
  const std::vector<double> a = random_reals(2 * n, seed);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {a[2 * i], a[2 * i + 1]};
  return v;
}

}  // namespace

TEST_CASE("full nonlinearity: values and serial/OpenMP agreement") {
  const std::size_t n = 10007;
  const auto u = random_reals(n, 1), v = random_reals(n, 2);
  std::vector<double> p1(n), q1(n), p2(n), q2(n);
  full_nonlinear_serial(u, v, p1, q1);
  full_nonlinear_omp(u, v, p2, q2);
  CHECK(p1 == p2);
  CHECK(q1 == q2);
  for (std::size_t i = 0; i < n; i += 997) {
    CHECK(q1[i] == doctest::Approx(u[i] * u[i]));
    CHECK(p1[i] == doctest::Approx(u[i] * v[i] - u[i] * u[i] * u[i]));
  }
  std::vector<double> short_buf(3);
  CHECK_THROWS(full_nonlinear_serial(u, v, short_buf, q1));
  CHECK_THROWS(full_nonlinear_omp(u, v, short_buf, q1));
}

TEST_CASE("amplitude nonlinearity") {
  const std::size_t n = 4099;
  const auto a = random_complex(n, 3);
  const auto b = random_reals(n, 4);
  std::vector<cplx> p1(n), p2(n);
  std::vector<double> q1(n), q2(n);
  amplitude_nonlinear_serial(a, b, 3.5, p1, q1);
  amplitude_nonlinear_omp(a, b, 3.5, p2, q2);
  CHECK(p1 == p2);
  CHECK(q1 == q2);
  for (std::size_t i = 0; i < n; i += 401) {
    const cplx want = a[i] * (b[i] - 3.5 * std::norm(a[i]));
    CHECK(std::abs(p1[i] - want) < 1e-15);
  }
}

TEST_CASE("spectral combination with and without the third term") {
  const std::size_t n = 8191;
  const auto c1 = random_reals(n, 5), c2 = random_reals(n, 6), c3 = random_reals(n, 7);
  const auto x = random_complex(n, 8), y = random_complex(n, 9), z = random_complex(n, 10);
  std::vector<cplx> o1(n), o2(n), o3(n);
  combine_serial(c1, x, c2, y, c3, z, o1);
  combine_omp(c1, x, c2, y, c3, z, o2);
  CHECK(o1 == o2);
  for (std::size_t i = 0; i < n; i += 1001)
    CHECK(std::abs(o1[i] - (c1[i] * x[i] + c2[i] * y[i] + c3[i] * z[i])) < 1e-15);
  combine_serial(c1, x, c2, y, {}, {}, o3);
  for (std::size_t i = 0; i < n; i += 1001)
    CHECK(std::abs(o3[i] - (c1[i] * x[i] + c2[i] * y[i])) < 1e-15);
  // In-place update.
  std::vector<cplx> inplace = x;
  combine_omp(c1, inplace, c2, y, {}, {}, inplace);
  CHECK(inplace == o3);
}
