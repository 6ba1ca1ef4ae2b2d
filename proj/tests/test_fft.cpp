#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "patternfront/errors.hpp"
#include "patternfront/fft.hpp"
#include "patternfront/field.hpp"

using namespace patternfront;

TEST_CASE("real transform matches the direct DFT") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (const int n : {8, 16, 64}) {
    std::vector<double> x(n);
    for (double& v : x) v = d(rng);
    const std::vector<cplx> got = RealFft(n).forward(x);
    const std::vector<cplx> want = oracle::direct_dft(std::vector<cplx>(x.begin(), x.end()));
    for (int k = 0; k < n; ++k) CHECK(std::abs(got[k] - want[k]) < 1e-12);
    CHECK(hermitian_defect(got) < 1e-13);
  }
}

TEST_CASE("complex transform matches the direct DFT and round-trips") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const int n = 32;
  std::vector<cplx> x(n), spec(n), back(n);
  for (cplx& v : x) v = {d(rng), d(rng)};
  ComplexFft fft(n);
  fft.forward(x, spec);
  const std::vector<cplx> want = oracle::direct_dft(x);
  for (int k = 0; k < n; ++k) CHECK(std::abs(spec[k] - want[k]) < 1e-12);
  fft.inverse(spec, back);
  for (int j = 0; j < n; ++j) CHECK(std::abs(back[j] - x[j]) < 1e-14);
}

TEST_CASE("normalization: mode 0 is the sum and the inverse divides by n") {
  const int n = 16;
  std::vector<double> ones(n, 1.0);
  const std::vector<cplx> s = RealFft(n).forward(ones);
  CHECK(s[0].real() == doctest::Approx(16.0));
  const std::vector<double> back = RealFft(n).inverse(s);
  for (const double v : back) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("wave indices and grid wavenumbers") {
  CHECK(wave_index(0, 8) == 0);
  CHECK(wave_index(4, 8) == 4);
  CHECK(wave_index(5, 8) == -3);
  const ModelParams p = ModelParams::make(3.0, 7.0, 0.0, 0.1);
  const FieldPair f = make_grid(64, 4, p);
  CHECK(f.grid.length == doctest::Approx(8.0 * std::numbers::pi));
  CHECK(f.grid.wavenumber(4) == doctest::Approx(1.0));
  CHECK(f.grid.wavenumber(60) == doctest::Approx(-1.0));
  CHECK(std::abs(f.grid.wavenumber(32)) == doctest::Approx(8.0));
  CHECK_THROWS_AS(make_grid(100, 4, p), DomainError);
  CHECK_THROWS_AS(make_grid(64, 0, p), DomainError);
}

TEST_CASE("field values round-trip through spectra") {
  const ModelParams p = ModelParams::make(3.0, 7.0, 0.0, 0.1);
  const FieldPair g = make_grid(128, 8, p);
  std::vector<double> u(128), v(128);
  for (int j = 0; j < 128; ++j) {
    u[j] = std::cos(g.grid.x(j)) + 0.1 * std::sin(3.0 * g.grid.x(j));
    v[j] = 0.5 + 0.2 * std::cos(0.25 * g.grid.x(j));
  }
  const FieldPair f = FieldPair::from_values(g.grid, u, v);
  CHECK(f.mean_v == doctest::Approx(0.5));
  const std::vector<double> u2 = f.u_values(), v2 = f.v_values();
  for (int j = 0; j < 128; ++j) {
    CHECK(u2[j] == doctest::Approx(u[j]).epsilon(1e-13));
    CHECK(v2[j] == doctest::Approx(v[j]).epsilon(1e-13));
  }
}
