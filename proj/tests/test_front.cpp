#include <cmath>
#include <numbers>

#include "doctest.h"
#include "patternfront/errors.hpp"
#include "patternfront/front.hpp"
#include "patternfront/periodic.hpp"
#include "patternfront/reduced.hpp"

using namespace patternfront;

namespace {

ModelParams fig(double g) { return ModelParams::make(3.0, 7.0, g, 0.1); }

FrontProfile profile(double g, Interpolation interp = Interpolation::monotone_cubic) {
  const ShootResult s = shoot_heteroclinic(fig(g), 1e-5);
  REQUIRE(s.ok());
  return FrontProfile::from_trajectory(s, fig(g), interp);
}

}  // namespace

TEST_CASE("W and v conversions are inverse") {
  const std::vector<double> u = {0.1, -0.2, 0.3}, w = {0.5, 0.0, -0.1};
  const std::vector<double> v = w_to_v(u, w, 1.5);
  CHECK(v[1] == doctest::Approx(0.0 - 1.5 * 0.04));
  const std::vector<double> back = v_to_w(u, v, 1.5);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(w[i]).epsilon(1e-15));
}

TEST_CASE("profile anchoring and limits") {
  for (const double g : {0.0, 1.0}) {
    const FrontProfile prof = profile(g);
    const double a = std::sqrt(3.0 / (3.0 + g));
    CHECK(prof.A_at(0.0) == doctest::Approx(0.5 * a).epsilon(1e-6));
    CHECK(prof.A_at(-1e3) == doctest::Approx(a));
    CHECK(prof.W_at(-1e3) == doctest::Approx(2.0 * g * 3.0 / (3.0 + g)));
    CHECK(prof.reaches_origin());
    CHECK(prof.A_at(1e3) < 1e-6);
    double prev = INFINITY;
    for (double y = prof.y_min(); y <= prof.y_max(); y += 0.05) {
      CHECK(prof.A_at(y) <= prev + 1e-15);
      prev = prof.A_at(y);
    }
  }
}

TEST_CASE("quintic envelope derivatives agree with finite differences") {
  const FrontProfile prof = profile(1.0, Interpolation::quintic_hermite);
  const double h = 1e-3;
  for (const double y : {-1.0, 0.0, 0.7, 2.0}) {
    const EnvelopeDerivatives d = prof.derivatives(y);
    CHECK(d.A[0] == doctest::Approx(prof.A_at(y)).epsilon(1e-10));
    const double fd1 = (prof.A_at(y - 2 * h) - 8 * prof.A_at(y - h) + 8 * prof.A_at(y + h) -
                        prof.A_at(y + 2 * h)) / (12 * h);
    CHECK(std::abs(d.A[1] - fd1) < 1e-6);
    const double fdw = (prof.W_at(y + h) - prof.W_at(y - h)) / (2 * h);
    CHECK(std::abs(d.W[1] - fdw) < 1e-5);
    const double fd1p = [&] {
      const double yp = y + h, ym = y - h;
      return (prof.derivatives(yp).A[1] - prof.derivatives(ym).A[1]) / (2 * h);
    }();
    CHECK(std::abs(d.A[2] - fd1p) < 1e-5);
  }
}

TEST_CASE("mirrored geometry") {
  const ModelParams p = fig(0.0).with_x0(0.9);
  const double L = 96.0 * 2.0 * std::numbers::pi;
  const MirroredGeometry g = mirrored_geometry(L, p);
  CHECK(std::cos(g.mirror + 0.9) == doctest::Approx(1.0));
  CHECK(std::abs(g.mirror - L / 6.0) <= std::numbers::pi);
  CHECK(g.front - g.mirror == doctest::Approx(L / 6.0));
  const FrontPlacement place{FrontLayout::mirrored, 0.0};
  CHECK(front_y(g.front, 0.0, L, place, p) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(front_y(2 * g.mirror - g.front, 0.0, L, place, p) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(front_y(g.front + 5.0, 10.0, L, place, p) ==
        doctest::Approx(0.1 * 5.0 - 0.01 * 7.0 * 10.0));
  const FrontPlacement single{FrontLayout::single, 3.0};
  CHECK(front_y(13.0, 0.0, L, single, p) == doctest::Approx(1.0));
}

TEST_CASE("assembled front is symmetric about the mirror point and follows the ansatz") {
  const FrontProfile prof = profile(1.0);
  const ModelParams p = fig(1.0);
  const FieldPair f = assemble_front(prof, 0.0, make_grid(2048, 64, p));
  const MirroredGeometry g = mirrored_geometry(f.grid.length, p);
  const std::vector<double> u = f.u_values(), v = f.v_values();
  const double dx = f.grid.dx();
  const long jm = std::lround(g.mirror / dx);
  REQUIRE(std::abs(jm * dx - g.mirror) < 1e-9);
  for (long k = 1; k < 1000; k += 37) {
    const auto at = [&](long j) { return ((j % 2048) + 2048) % 2048; };
    CHECK(u[at(jm + k)] == doctest::Approx(u[at(jm - k)]).epsilon(1e-12));
    CHECK(v[at(jm + k)] == doctest::Approx(v[at(jm - k)]).epsilon(1e-12));
  }
  for (int j = 0; j < 2048; j += 101) {
    const double x = f.grid.x(j);
    const double y = front_y(x, 0.0, f.grid.length, {}, p);
    const double a = prof.A_at(y);
    CHECK(u[j] == doctest::Approx(0.2 * a * std::cos(x)).epsilon(1e-12));
    CHECK(v[j] == doctest::Approx(0.01 * (prof.W_at(y) - 2 * a * a - 2 * a * a * std::cos(2 * x)))
                      .epsilon(1e-12));
  }
}

TEST_CASE("a constant circle profile reproduces the leading-order periodic state") {
  const ModelParams p = fig(2.0);
  const double a = std::sqrt(3.0 / 5.0);
  const FrontProfile prof = FrontProfile::constant(p, a, 2.0 * 2.0 * 3.0 / 5.0, -100.0, 100.0);
  const FieldPair f = assemble_front(prof, 0.0, make_grid(256, 8, p));
  const PeriodicEquilibrium lo = leading_order(p);
  const std::vector<double> u = f.u_values(), v = f.v_values();
  for (int j = 0; j < 256; j += 9) {
    CHECK(u[j] == doctest::Approx(lo.u_at(f.grid.x(j))).epsilon(1e-12));
    // The mean of v carries eps^2 (W0 - 2 g a^2) = 0 on the circle.
    CHECK(v[j] == doctest::Approx(lo.v_at(f.grid.x(j))).epsilon(1e-12));
  }
}

TEST_CASE("assembly preconditions") {
  const ModelParams q = ModelParams::make(3.0, 7.0, 0.0, 0.1, 0.5);
  const FrontProfile prof = FrontProfile::constant(q, 1.0, 0.0, -1.0, 1.0);
  CHECK_THROWS_AS(assemble_front(prof, 0.0, make_grid(64, 4, q)), DomainError);
  CHECK_THROWS_AS(FrontProfile::constant(fig(0.0), 1.0, 0.0, 1.0, 1.0), DomainError);
}
