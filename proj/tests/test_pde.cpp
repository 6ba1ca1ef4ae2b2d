#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "patternfront/errors.hpp"
#include "patternfront/io.hpp"
#include "patternfront/pde.hpp"
#include "patternfront/periodic.hpp"
#include "patternfront/reduced.hpp"

using namespace patternfront;

namespace {

ModelParams fig(double g, double eps = 0.1) { return ModelParams::make(3.0, 7.0, g, eps); }

FieldPair homogeneous(double u0, double v0, int n = 32) {
  FieldPair f = make_grid(n, 2, fig(0.0));
  std::vector<double> u(n, u0), v(n, v0);
  return FieldPair::from_values(f.grid, u, v);
}

// u' = l u - u^3 with l = alpha - 1 + v0 (homogeneous fields keep v constant).
double bernoulli(double u0, double l, double t) {
  return std::sqrt(l / (1.0 + (l / (u0 * u0) - 1.0) * std::exp(-2.0 * l * t)));
}

double homogeneous_error(Scheme s, double dt) {
  SimConfig cfg;
  cfg.dt = dt;
  cfg.t_end = 2.0;
  cfg.scheme = s;
  const FieldPair f = evolve_full(homogeneous(0.1, 0.2), {1.5, 0.7}, cfg);
  return std::abs(f.u_values()[0] - bernoulli(0.1, 0.7, 2.0));
}

}  // namespace

TEST_CASE("configuration checks") {
  SimConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.dealias = false;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.record_every = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  CHECK(parse_scheme("imex1") == Scheme::imex1);
  CHECK(parse_scheme("ETD-RK") == Scheme::etdrk2);
  CHECK(std::string(to_string(Scheme::imex2)) == "imex2");
  CHECK_THROWS_AS(parse_scheme("rk4"), ConfigError);
  SimConfig c2;
  c2.dt = 0.1;
  c2.t_end = 1.0;
  CHECK(c2.steps() == 10);
}

TEST_CASE("convergence orders on a homogeneous Bernoulli solution") {
  const double e1 = homogeneous_error(Scheme::imex1, 0.02), e1h = homogeneous_error(Scheme::imex1, 0.01);
  const double e2 = homogeneous_error(Scheme::imex2, 0.02), e2h = homogeneous_error(Scheme::imex2, 0.01);
  const double e3 = homogeneous_error(Scheme::etdrk2, 0.02), e3h = homogeneous_error(Scheme::etdrk2, 0.01);
  CHECK(std::log2(e1 / e1h) == doctest::Approx(1.0).epsilon(0.1));
  CHECK(std::log2(e2 / e2h) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(std::log2(e3 / e3h) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("linear modes are propagated exactly by the exponential scheme") {
  const ModelParams p = fig(0.0);
  FieldPair f = make_grid(64, 4, p);
  std::vector<double> u(64), v(64);
  for (int j = 0; j < 64; ++j) {
    u[j] = 1e-9 * std::cos(0.75 * f.grid.x(j));
    v[j] = 1e-3 * std::cos(0.5 * f.grid.x(j));
  }
  f = FieldPair::from_values(f.grid, u, v);
  SimConfig cfg;
  cfg.dt = 0.5;
  cfg.t_end = 5.0;
  cfg.scheme = Scheme::etdrk2;
  const FieldPair g = evolve_full(f, {p.alpha(), 0.0}, cfg);
  const double s = 1.0 - 0.75 * 0.75;
  const double grow = std::exp((-s * s + p.alpha()) * 5.0);
  const double decay = std::exp(-0.25 * 5.0);
  const std::vector<double> u1 = g.u_values(), v1 = g.v_values();
  for (int j = 0; j < 64; j += 7) {
    CHECK(u1[j] == doctest::Approx(u[j] * grow).epsilon(1e-6));
    CHECK(v1[j] == doctest::Approx(v[j] * decay).epsilon(1e-9));
  }
}

TEST_CASE("mean of v is conserved bit for bit") {
  const ModelParams p = fig(1.0);
  FieldPair f = make_grid(256, 16, p);
  std::vector<double> u(256), v(256);
  for (int j = 0; j < 256; ++j) {
    u[j] = 0.2 * std::cos(f.grid.x(j)) + 0.1 * std::sin(f.grid.x(j) / 4.0);
    v[j] = 0.05 * std::cos(f.grid.x(j) / 2.0) - 0.1;
  }
  f = FieldPair::from_values(f.grid, u, v);
  for (const Scheme s : {Scheme::imex1, Scheme::imex2, Scheme::etdrk2}) {
    SimConfig cfg;
    cfg.scheme = s;
    cfg.dt = 0.05;
    cfg.t_end = 20.0;
    const cplx m0 = f.v_hat[0];
    bool same = true;
    cfg.record_every = 1;
    evolve_full(f, PdeCoefficients::from(p), cfg,
                [&](const FieldPair& g, long) { same = same && g.v_hat[0] == m0; });
    CHECK(same);
  }
}

TEST_CASE("refined equilibria are fixed points of every scheme") {
  const ModelParams p = fig(1.0);
  const PeriodicEquilibrium eq = newton_refine(leading_order(p));
  const FieldPair f = to_field(eq, 256, 4);
  for (const Scheme s : {Scheme::imex1, Scheme::imex2, Scheme::etdrk2}) {
    SimConfig cfg;
    cfg.scheme = s;
    cfg.dt = 0.05;
    cfg.t_end = 10.0;
    const FieldPair g = evolve_full(f, PdeCoefficients::from(p), cfg);
    const std::vector<double> a = f.u_values(), b = g.u_values();
    double move = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) move = std::max(move, std::abs(a[j] - b[j]));
    CHECK(move < 1e-12);
  }
}

TEST_CASE("serial and OpenMP steppers agree bit for bit") {
  const ModelParams p = fig(0.5);
  const PeriodicEquilibrium eq = newton_refine(leading_order(p, 8));
  FieldPair f = to_field(eq, 512, 16);
  std::vector<double> u = f.u_values();
  for (int j = 0; j < 512; ++j) u[j] += 0.01 * std::sin(0.125 * f.grid.x(j));
  f = FieldPair::from_values(f.grid, u, f.v_values());
  for (const Scheme s : {Scheme::imex2, Scheme::etdrk2}) {
    SimConfig a;
    a.scheme = s;
    a.dt = 0.05;
    a.t_end = 5.0;
    SimConfig b = a;
    b.parallel = false;
    const FieldPair fa = evolve_full(f, PdeCoefficients::from(p), a);
    const FieldPair fb = evolve_full(f, PdeCoefficients::from(p), b);
    CHECK(fa.u_hat == fb.u_hat);
    CHECK(fa.v_hat == fb.v_hat);
  }
}

TEST_CASE("nonlinear terms match a direct transform and respect the 2/3 rule") {
  const int n = 32;
  const ModelParams p = fig(1.5);
  FieldPair f = make_grid(n, 2, p);
  std::vector<double> u(n), v(n);
  for (int j = 0; j < n; ++j) {
    const double x = f.grid.x(j);
    u[j] = 0.5 * std::cos(x) + 0.3 * std::sin(2.5 * x) + 0.1;
    v[j] = 0.2 * std::cos(1.5 * x) - 0.05;
  }
  f = FieldPair::from_values(f.grid, u, v);
  FullSystemStepper stepper(f.grid, {0.01, 1.5}, SimConfig{});
  std::vector<cplx> nu, nv;
  stepper.nonlinear(f, nu, nv);
  std::vector<cplx> p_vals(n), q_vals(n);
  for (int j = 0; j < n; ++j) {
    p_vals[j] = u[j] * v[j] - u[j] * u[j] * u[j];
    q_vals[j] = u[j] * u[j];
  }
  const std::vector<cplx> ph = oracle::direct_dft(p_vals), qh = oracle::direct_dft(q_vals);
  for (int j = 0; j < n; ++j) {
    const int k = wave_index(j, n);
    const double kk = f.grid.wavenumber(j);
    if (3 * std::abs(k) <= n) {
      CHECK(std::abs(nu[j] - ph[j]) < 1e-12);
      CHECK(std::abs(nv[j] - (-kk * kk * 1.5) * qh[j]) < 1e-12);
    } else {
      CHECK(nu[j] == cplx{});
      CHECK(nv[j] == cplx{});
    }
  }
}

TEST_CASE("blow-up is reported as a numerical failure") {
  SimConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 100.0;
  cfg.scheme = Scheme::imex1;
  CHECK_THROWS_AS(evolve_full(homogeneous(10.0, 0.0), {0.0, 0.0}, cfg), NumericalError);
}

TEST_CASE("grid mismatch is rejected") {
  FieldPair f = homogeneous(0.1, 0.0, 32);
  FullSystemStepper s(make_grid(64, 2, fig(0.0)).grid, {0.0, 0.0}, SimConfig{});
  CHECK_THROWS_AS(s.step(f), DomainError);
}

TEST_CASE("amplitude system: homogeneous Bernoulli solution") {
  // A' = alpha0 A - (3 + g) A |A|^2, B0 stays zero.
  const Grid grid = make_grid(32, 2, fig(0.0)).grid;
  std::vector<cplx> a(32, cplx(0.1, 0.1));
  std::vector<double> b(32, 0.0);
  AmplitudeFields f = AmplitudeFields::from_values(grid, a, b);
  SimConfig cfg;
  cfg.dt = 0.001;
  AmplitudeStepper st(grid, 3.0, 1.0, cfg);
  for (int s = 0; s < 1000; ++s) st.step(f);
  const double r0 = std::abs(cplx(0.1, 0.1));
  const double k = 4.0, l = 3.0;
  const double want = std::sqrt(l / (k + (l / (r0 * r0) - k) * std::exp(-2.0 * l)));
  const std::vector<cplx> got = f.A_values();
  CHECK(std::abs(got[5]) == doctest::Approx(want).epsilon(1e-5));
  CHECK(std::arg(got[5]) == doctest::Approx(std::numbers::pi / 4));
}

TEST_CASE("amplitude system conserves the mean of B0") {
  const Grid grid = make_grid(128, 8, fig(0.0)).grid;
  std::vector<cplx> a(128);
  std::vector<double> b(128);
  for (int j = 0; j < 128; ++j) {
    a[j] = std::polar(0.5 + 0.3 * std::cos(grid.x(j) / 8.0), 0.1 * std::sin(grid.x(j) / 4.0));
    b[j] = 0.1 * std::cos(grid.x(j) / 8.0) + 0.2;
  }
  AmplitudeFields f = AmplitudeFields::from_values(grid, a, b);
  const cplx m0 = f.B_hat[0];
  SimConfig cfg;
  cfg.dt = 0.01;
  f = [&] {
    AmplitudeFields g = f;
    for (int s = 0; s < 500; ++s) g = step_amplitude(g, 3.0, 2.0, cfg);
    return g;
  }();
  CHECK(f.B_hat[0] == m0);
}

TEST_CASE("Hilbert envelope of pure and modulated carriers") {
  const int n = 512;
  const double L = 32 * 2 * std::numbers::pi;
  std::vector<double> pure(n), mod(n);
  for (int j = 0; j < n; ++j) {
    const double x = L * j / n;
    pure[j] = 0.3 * std::cos(x + 0.4);
    mod[j] = (1.0 + 0.5 * std::cos(x / 16.0)) * std::cos(x);
  }
  const std::vector<double> e1 = hilbert_envelope(pure), e2 = hilbert_envelope(mod);
  for (int j = 0; j < n; j += 13) {
    CHECK(e1[j] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(e2[j] == doctest::Approx(1.0 + 0.5 * std::cos(L * j / n / 16.0)).epsilon(1e-12));
  }
}

TEST_CASE("front position on a synthetic envelope") {
  const Grid grid = make_grid(64, 2, fig(0.0)).grid;
  std::vector<double> env(64, 0.0);
  for (int j = 0; j < 64; ++j) env[j] = j <= 40 ? 1.0 : 0.0;
  env[41] = 0.25;
  // Threshold 0.5: crossing between j = 40 (1.0) and 41 (0.25), 2/3 of a cell.
  const double x = front_position(env, grid, grid.x(10), 1.0);
  CHECK(x == doctest::Approx(grid.x(40) + grid.dx() * 2.0 / 3.0));
  CHECK(std::isnan(front_position(env, grid, grid.x(50), 1.0)));
}

TEST_CASE("least-squares slope") {
  const std::vector<double> x = {0, 1, 2, 3}, y = {1, 3, 5, 7};
  CHECK(fit_slope(x, y) == doctest::Approx(2.0));
  CHECK_THROWS_AS(fit_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("residual of a constant circle profile is the third harmonic") {
  for (const double g : {0.0, 1.0}) {
    for (const double eps : {0.1, 0.05}) {
      const ModelParams p = fig(g, eps);
      const double a = std::sqrt(3.0 / (3.0 + g));
      const FrontProfile prof = FrontProfile::constant(p, a, 2.0 * g * a * a, -1.0, 1.0);
      const AnsatzPoint r = profile_residual(prof, -0.5, 0.5, 0.01);
      // [DERIVED] u^3 - u v at |A| = a leaves 2 (1 + g) a^3 eps^3 cos(3 theta).
      CHECK(r.residual_u == doctest::Approx(2.0 * (1.0 + g) * a * a * a * eps * eps * eps).epsilon(1e-6));
      CHECK(r.residual_v < 1e-15);
    }
  }
}

TEST_CASE("ansatz residual scales with order at least two") {
  const std::vector<double> eps = {0.1, 0.05, 0.025};
  for (const double g : {0.0, 1.0}) {
    const AnsatzReport r = ansatz_residual(fig(g), eps);
    CHECK(r.points.size() == 3);
    CHECK(r.slope_u >= 2.0);
    CHECK(r.slope_u == doctest::Approx(3.0).epsilon(0.05));
    if (g != 0.0) CHECK(r.slope_v >= 3.0);
  }
}

TEST_CASE("short front experiment") {
  SimConfig cfg;
  cfg.dt = 0.05;
  cfg.t_end = 60.0;
  cfg.record_every = 100;
  FrontExperiment setup;
  setup.n_grid = 1024;
  setup.n_periods = 60;
  const Diagnostics d = run_front_experiment(fig(0.0), cfg, setup);
  CHECK(d.time.size() == 13);
  CHECK(d.mean_v_drift == 0.0);
  CHECK(d.front_monotone);
  CHECK(d.fitted_speed == doctest::Approx(0.7).epsilon(0.15));
  CHECK(d.amplitude_error < 0.05);
  CHECK(d.reconstruction_distance < 0.5);
  const Table t = diagnostics_table(d);
  CHECK(t.rows.size() == d.time.size());

  setup.n_periods = 20;
  CHECK_THROWS_AS(run_front_experiment(fig(0.0), cfg, setup), DomainError);
  setup.n_periods = 60;
  CHECK_THROWS_AS(run_front_experiment(ModelParams::make(3.0, 4.0, 0.0, 0.1), cfg, setup),
                  DomainError);
}
