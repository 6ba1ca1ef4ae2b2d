#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "patternfront/errors.hpp"
#include "patternfront/io.hpp"
#include "patternfront/reduced.hpp"

using namespace patternfront;

namespace {

ModelParams fig(double g) { return ModelParams::make(3.0, 7.0, g, 0.1); }

std::array<double, 5> coords(const ReducedState& s) {
  const auto c = s.coords();
  return {c(0), c(1), c(2), c(3), c(4)};
}

ReducedState state(const std::array<double, 5>& x) {
  return {cplx(x[0], x[1]), cplx(x[2], x[3]), x[4]};
}

}  // namespace

TEST_CASE("reduced right-hand side matches the real-coordinate flow") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (const double g : {0.0, 0.7, 5.0}) {
    for (int t = 0; t < 10; ++t) {
      const std::array<double, 5> x = {d(rng), d(rng), d(rng), d(rng), d(rng)};
      const auto want = oracle::reduced_flow(x, 3.0, 7.0, g);
      const auto got = coords(reduced_rhs(state(x), fig(g)));
      for (int i = 0; i < 5; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("analytic Jacobian matches finite differences") {
  const ModelParams p = fig(1.5);
  const ReducedState at{cplx(0.4, -0.3), cplx(0.1, 0.2), 0.3};
  const auto f = [&](const Eigen::VectorXd& x) {
    const auto r = oracle::reduced_flow({x(0), x(1), x(2), x(3), x(4)}, 3.0, 7.0, 1.5);
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(r.data(), 5));
  };
  const Eigen::MatrixXd fd = oracle::fd_jacobian(f, at.coords(), 1e-6);
  CHECK((fd - linearize(at, p).jacobian).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("fixed points vanish and have the expected signatures") {
  for (const double g : {0.0, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    const FixedPointList fps = fixed_points(fig(g));
    REQUIRE(fps.points.size() == 2);
    for (const FixedPointInfo& f : fps.points) {
      CHECK(reduced_rhs(f.state, fig(g)).norm() <= 1e-14);
      if (f.kind == FixedPointKind::circle) {
        CHECK(signature(f.eigenvalues) == "+0---");
        CHECK(f.unstable_dir.has_value());
      } else {
        CHECK(signature(f.eigenvalues) == "-----");
      }
    }
  }
  const FixedPointList none = fixed_points(fig(-3.5));
  CHECK(none.points.size() == 1);
  CHECK_FALSE(none.notice.empty());
}

TEST_CASE("the circle is a continuum of fixed points") {
  const ModelParams p = fig(2.0);
  const double a = std::sqrt(3.0 / 5.0);
  for (const double phase : {0.3, 1.9, 4.0})
    CHECK(reduced_rhs({std::polar(a, phase), cplx{}, 2.0 * 2.0 * 3.0 / 5.0}, p).norm() < 1e-14);
}

TEST_CASE("origin eigenvalues are the roots of 4 l^2 + c0 l + alpha0 and -c0") {
  const Linearization lin = linearize({}, fig(0.0));
  // [DERIVED] (-7 +- 1)/8 each twice, and -7.
  const std::array<double, 5> want = {-0.75, -0.75, -1.0, -1.0, -7.0};
  for (int k = 0; k < 5; ++k) CHECK(std::abs(lin.eigenvalues[k] - want[k]) < 1e-10);
}

TEST_CASE("Lyapunov function decreases at rate c0 |B|^2 when gamma = 0") {
  const ModelParams p = fig(0.0);
  const std::array<double, 5> x = {0.3, -0.2, 0.1, 0.4, 0.0};
  const auto dx = oracle::reduced_flow(x, 3.0, 7.0, 0.0);
  const double h = 1e-6;
  std::array<double, 5> xp = x, xm = x;
  for (int i = 0; i < 5; ++i) {
    xp[i] += h * dx[i];
    xm[i] -= h * dx[i];
  }
  const double dH = (lyapunov_H(state(xp).A, state(xp).B, p) - lyapunov_H(state(xm).A, state(xm).B, p)) / (2 * h);
  CHECK(dH == doctest::Approx(-7.0 * (0.1 * 0.1 + 0.4 * 0.4)).epsilon(1e-8));
}

TEST_CASE("limiting system is the large-gamma limit in scaled variables") {
  const double g = 1e6, a0 = 3.0;
  const ModelParams p = fig(g);
  const ReducedState t{cplx(0.6, 0.1), cplx(-0.2, 0.05), 0.4};
  const double sa = std::sqrt(a0 / (3.0 + g)), sw = 2.0 * a0 * g / (3.0 + g);
  const ReducedState s{sa * t.A, sa * t.B, sw * t.W0};
  const ReducedState d = reduced_rhs(s, p);
  const ReducedState scaled{d.A / sa, d.B / sa, d.W0 / sw};
  const ReducedState lim = limiting_rhs(t, p);
  CHECK(std::abs(scaled.A - lim.A) < 1e-12);
  CHECK(std::abs(scaled.B - lim.B) < 1e-5);
  CHECK(std::abs(scaled.W0 - lim.W0) < 1e-12);
}

TEST_CASE("shooting reaches the origin for a range of gamma") {
  for (const double g : {0.0, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    const ShootResult s = shoot_heteroclinic(fig(g), 1e-5);
    CHECK(s.ok());
    CHECK(s.terminal_norm <= 1e-6);
    CHECK(s.unstable_eigenvalue > 0.0);
    // |A| decreases along the connection.
    CHECK(std::abs(s.trajectory.back().state.A) < std::abs(s.trajectory.front().state.A));
  }
}

TEST_CASE("shot trajectory agrees with an independent RK4 integration") {
  const ModelParams p = fig(1.0);
  const ShootResult s = shoot_heteroclinic(p, 1e-5);
  REQUIRE(s.ok());
  const std::function<std::array<double, 5>(const std::array<double, 5>&)> f =
      [](const std::array<double, 5>& x) { return oracle::reduced_flow(x, 3.0, 7.0, 1.0); };
  // Start well into the transition so the integrated segment is not dominated
  // by the exponential departure from the circle.
  const std::size_t i0 = s.trajectory.size() / 2, i1 = i0 + 500;
  REQUIRE(i1 < s.trajectory.size());
  const double span = s.trajectory[i1].xi - s.trajectory[i0].xi;
  const auto end = oracle::rk4<5>(f, coords(s.trajectory[i0].state), span / 5000.0, 5000);
  const auto want = coords(s.trajectory[i1].state);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(end[i] - want[i]) < 1e-8);
}

TEST_CASE("shooting is insensitive to the initial offset") {
  const ModelParams p = fig(0.5);
  // Position where |A| first drops below half its circle value.
  const auto aligned = [](const ShootResult& s, double half) {
    for (std::size_t i = 1; i < s.trajectory.size(); ++i) {
      const double a0 = std::abs(s.trajectory[i - 1].state.A), a1 = std::abs(s.trajectory[i].state.A);
      if (a1 < half) return i - 1 + (a0 - half) / (a0 - a1);
    }
    return -1.0;
  };
  const double half = 0.5 * std::sqrt(3.0 / 3.5);
  std::vector<ShootResult> shots;
  for (const double delta : {1e-4, 1e-5, 1e-6}) shots.push_back(shoot_heteroclinic(p, delta));
  for (const ShootResult& s : shots) REQUIRE(s.ok());
  const double c0 = aligned(shots[0], half);
  for (std::size_t k = 1; k < shots.size(); ++k) {
    const double ck = aligned(shots[k], half);
    for (const double off : {-300.0, 0.0, 300.0}) {
      const double ia = c0 + off, ib = ck + off;
      const auto at = [](const ShootResult& s, double pos) {
        const std::size_t j = static_cast<std::size_t>(pos);
        const double w = pos - j;
        return (1 - w) * std::abs(s.trajectory[j].state.A) + w * std::abs(s.trajectory[j + 1].state.A);
      };
      CHECK(std::abs(at(shots[0], ia) - at(shots[k], ib)) < 1e-5);
    }
  }
}

TEST_CASE("gamma = 0: W0 stays zero and H is monotone") {
  const ModelParams p = fig(0.0);
  const ShootResult s = shoot_heteroclinic(p, 1e-5);
  REQUIRE(s.ok());
  double h_prev = INFINITY;
  bool monotone = true;
  for (const TrajectoryPoint& t : s.trajectory) {
    CHECK(std::abs(t.state.W0) <= 1e-12);
    const double h = lyapunov_H(t.state.A, t.state.B, p);
    monotone = monotone && h <= h_prev + 1e-14;
    h_prev = h;
  }
  CHECK(monotone);
  CHECK(lyapunov_defect(s.trajectory, p) <= 1e-7);
}

TEST_CASE("shooting preconditions") {
  CHECK_THROWS_AS(shoot_heteroclinic(ModelParams::make(3.0, 4.0, 0.0, 0.1), 1e-5), DomainError);
  CHECK_THROWS_AS(shoot_heteroclinic(fig(0.0), 0.0), DomainError);
  CHECK_THROWS_AS(shoot_heteroclinic(fig(0.0), 0.1), DomainError);
  CHECK_THROWS_AS(shoot_heteroclinic(fig(-3.0), 1e-5), DomainError);
}

TEST_CASE("tiny integration window times out") {
  ShootOptions o;
  o.xi_max = 1.0;
  const ShootResult s = shoot_heteroclinic(fig(0.0), 1e-5, o);
  CHECK(s.outcome == ShootOutcome::timeout);
  CHECK_FALSE(s.reason.empty());
}

TEST_CASE("trajectory table") {
  const ShootResult s = shoot_heteroclinic(fig(0.0), 1e-5);
  const Table t = trajectory_table(s.trajectory, fig(0.0));
  CHECK(t.columns == std::vector<std::string>{"xi", "re_A", "im_A", "re_B", "im_B", "W0", "H"});
  CHECK(t.rows.size() == s.trajectory.size());
}
