#include "patternfront/reduced.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>

#include "patternfront/errors.hpp"
#include "patternfront/io.hpp"

namespace patternfront {

namespace odeint = boost::numeric::odeint;

Eigen::Matrix<double, 5, 1> ReducedState::coords() const {
  Eigen::Matrix<double, 5, 1> x;
  x << A.real(), A.imag(), B.real(), B.imag(), W0;
  return x;
}

ReducedState ReducedState::from_coords(const Eigen::Matrix<double, 5, 1>& x) {
  return {cplx(x(0), x(1)), cplx(x(2), x(3)), x(4)};
}

ReducedState reduced_rhs(const ReducedState& s, const ModelParams& p) {
  const double a2 = std::norm(s.A);
  const double g = p.gamma();
  ReducedState d;
  d.A = s.B;
  d.B = 0.25 * (-p.alpha0() * s.A - p.c0() * s.B - s.A * s.W0 + 3.0 * (1.0 + g) * s.A * a2);
  d.W0 = -p.c0() * s.W0 + 2.0 * p.c0() * g * a2;
  return d;
}

ReducedState limiting_rhs(const ReducedState& s, const ModelParams& p) {
  const double a2 = std::norm(s.A);
  const double al = p.alpha0();
  ReducedState d;
  d.A = s.B;
  d.B = 0.25 * (-p.c0() * s.B - al * s.A - 2.0 * al * s.A * s.W0 + 3.0 * al * s.A * a2);
  d.W0 = -p.c0() * s.W0 + p.c0() * a2;
  return d;
}

double lyapunov_H(cplx A, cplx B, const ModelParams& p) {
  const double a2 = std::norm(A);
  return 2.0 * std::norm(B) + 0.5 * p.alpha0() * a2 - 0.75 * a2 * a2;
}

Linearization linearize(const ReducedState& at, const ModelParams& p) {
  const double a = at.A.real(), b = at.A.imag(), r2 = a * a + b * b;
  const double k = 3.0 * (1.0 + p.gamma());
  const double c0 = p.c0(), al = p.alpha0(), w = at.W0, g = p.gamma();
  Linearization lin;
  auto& J = lin.jacobian;
  J.setZero();
  J(0, 2) = 1.0;
  J(1, 3) = 1.0;
  J(2, 0) = 0.25 * (-al - w + k * (r2 + 2.0 * a * a));
  J(2, 1) = 0.25 * k * 2.0 * a * b;
  J(2, 2) = -0.25 * c0;
  J(2, 4) = -0.25 * a;
  J(3, 0) = 0.25 * k * 2.0 * a * b;
  J(3, 1) = 0.25 * (-al - w + k * (r2 + 2.0 * b * b));
  J(3, 3) = -0.25 * c0;
  J(3, 4) = -0.25 * b;
  J(4, 0) = 4.0 * c0 * g * a;
  J(4, 1) = 4.0 * c0 * g * b;
  J(4, 4) = -c0;

  Eigen::EigenSolver<Eigen::Matrix<double, 5, 5>> es(J, true);
  if (es.info() != Eigen::Success) throw NumericalError("reduced Jacobian eigensolve failed");
  std::array<int, 5> order{0, 1, 2, 3, 4};
  const auto vals = es.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (vals(i).real() != vals(j).real()) return vals(i).real() > vals(j).real();
    return vals(i).imag() > vals(j).imag();
  });
  const auto vecs = es.eigenvectors();
  for (int i = 0; i < 5; ++i) {
    lin.eigenvalues[i] = vals(order[i]);
    lin.eigenvectors.col(i) = vecs.col(order[i]);
  }
  return lin;
}

namespace {

FixedPointInfo describe(const ReducedState& s, FixedPointKind kind, const ModelParams& p) {
  FixedPointInfo info;
  info.state = s;
  info.kind = kind;
  const Linearization lin = linearize(s, p);
  info.eigenvalues = lin.eigenvalues;
  int positive = 0;
  for (const cplx z : lin.eigenvalues) positive += z.real() > 1e-9;
  const cplx top = lin.eigenvalues[0];
  if (positive == 1 && std::abs(top.imag()) <= 1e-12) {
    Eigen::Matrix<double, 5, 1> v = lin.eigenvectors.col(0).real();
    info.unstable_dir = v / v.norm();
  }
  return info;
}

}  // namespace

FixedPointList fixed_points(const ModelParams& p) {
  FixedPointList out;
  out.points.push_back(describe({}, FixedPointKind::trivial, p));
  const double g = p.gamma();
  if (g > -3.0) {
    ReducedState c;
    c.A = std::sqrt(p.alpha0() / (3.0 + g));
    c.W0 = 2.0 * g / (3.0 + g) * p.alpha0();
    out.points.push_back(describe(c, FixedPointKind::circle, p));
  } else {
    out.notice = "gamma <= -3: no circle of nontrivial fixed points";
  }
  return out;
}

std::string signature(const std::array<cplx, 5>& eigenvalues, double tol) {
  std::string s;
  for (const cplx z : eigenvalues) s += z.real() > tol ? '+' : (z.real() < -tol ? '-' : '0');
  return s;
}

const char* to_string(ShootOutcome o) {
  switch (o) {
    case ShootOutcome::success: return "success";
    case ShootOutcome::escaped: return "escaped";
    case ShootOutcome::timeout: return "timeout";
    case ShootOutcome::step_underflow: return "step_underflow";
  }
  return "unknown";
}

ShootResult shoot_heteroclinic(const ModelParams& p, double delta, const ShootOptions& opt) {
  if (!front_regime(p)) throw DomainError("shooting needs c0^2 > 16 alpha0 (monotone tails)");
  if (!(p.gamma() > -3.0)) throw DomainError("shooting needs gamma > -3");
  if (!(delta > 0.0 && delta <= 1e-2)) throw DomainError("shooting needs 0 < delta <= 1e-2");
  if (!(opt.sample_dxi > 0.0)) throw DomainError("sample_dxi must be positive");

  const FixedPointList fps = fixed_points(p);
  const FixedPointInfo& circle = fps.points.at(1);
  if (!circle.unstable_dir)
    throw NumericalError("circle point has no single real unstable direction (signature " +
                         signature(circle.eigenvalues) + ")");

  double xi_max = opt.xi_max;
  if (xi_max <= 0.0) {
    double slowest = std::numeric_limits<double>::infinity();
    for (const cplx z : fps.points[0].eigenvalues)
      if (z.real() < 0.0) slowest = std::min(slowest, -z.real());
    xi_max = 200.0 / slowest;
  }
  const double escape = opt.escape_radius > 0.0 ? opt.escape_radius : 10.0 * circle.state.norm();

  const Eigen::Matrix<double, 5, 1> v = *circle.unstable_dir;
  const auto slope_a2 = [](const Eigen::Matrix<double, 5, 1>& x) {
    return 2.0 * (x(0) * x(2) + x(1) * x(3));
  };
  Eigen::Matrix<double, 5, 1> x0 = circle.state.coords() + delta * v;
  if (slope_a2(x0) >= 0.0) x0 = circle.state.coords() - delta * v;

  using State = std::array<double, 5>;
  const auto system = [&p](const State& x, State& dxdt, double) {
    const ReducedState s{cplx(x[0], x[1]), cplx(x[2], x[3]), x[4]};
    const ReducedState d = reduced_rhs(s, p);
    dxdt = {d.A.real(), d.A.imag(), d.B.real(), d.B.imag(), d.W0};
  };
  const auto to_state = [](const State& x) {
    return ReducedState{cplx(x[0], x[1]), cplx(x[2], x[3]), x[4]};
  };

  ShootResult res;
  res.delta = delta;
  res.unstable_eigenvalue = circle.eigenvalues[0].real();

  auto stepper = odeint::make_dense_output(opt.atol, opt.rtol, odeint::runge_kutta_dopri5<State>());
  State start{x0(0), x0(1), x0(2), x0(3), x0(4)};
  stepper.initialize(start, 0.0, 1e-3);
  res.trajectory.push_back({0.0, to_state(start)});
  long next = 1;
  const auto finish = [&](ShootOutcome o, std::string why) {
    res.outcome = o;
    res.reason = std::move(why);
    res.terminal_norm = res.trajectory.back().state.norm();
  };

  while (true) {
    const auto [t0, t1] = stepper.do_step(system);
    (void)t0;
    // Dense samples inside the step, checking the stop conditions at each.
    while (next * opt.sample_dxi <= t1) {
      const double xi = next * opt.sample_dxi;
      State x;
      stepper.calc_state(xi, x);
      res.trajectory.push_back({xi, to_state(x)});
      ++next;
      const double nrm = res.trajectory.back().state.norm();
      if (nrm <= opt.tol_origin) {
        finish(ShootOutcome::success, "reached origin");
        return res;
      }
      if (nrm >= escape) {
        finish(ShootOutcome::escaped, "left the ball of radius " + format_double(escape));
        return res;
      }
    }
    const State& cur = stepper.current_state();
    const ReducedState cs = to_state(cur);
    const double nrm = cs.norm();
    if (!std::isfinite(nrm) || nrm >= escape) {
      res.trajectory.push_back({t1, cs});
      finish(ShootOutcome::escaped, "left the ball of radius " + format_double(escape));
      return res;
    }
    if (nrm <= opt.tol_origin) {
      res.trajectory.push_back({t1, cs});
      finish(ShootOutcome::success, "reached origin");
      return res;
    }
    if (t1 >= xi_max) {
      res.trajectory.push_back({t1, cs});
      finish(ShootOutcome::timeout, "xi exceeded " + format_double(xi_max));
      return res;
    }
    if (stepper.current_time_step() < 1e-14 * (1.0 + std::abs(t1))) {
      res.trajectory.push_back({t1, cs});
      finish(ShootOutcome::step_underflow, "step size underflow at xi = " + format_double(t1));
      return res;
    }
  }
}

Table trajectory_table(const std::vector<TrajectoryPoint>& traj, const ModelParams& p) {
  Table t;
  t.columns = {"xi", "re_A", "im_A", "re_B", "im_B", "W0", "H"};
  for (const auto& pt : traj) {
    const auto& s = pt.state;
    t.add_row({pt.xi, s.A.real(), s.A.imag(), s.B.real(), s.B.imag(), s.W0,
               lyapunov_H(s.A, s.B, p)});
  }
  return t;
}

double lyapunov_defect(const std::vector<TrajectoryPoint>& traj, const ModelParams& p) {
  double worst = 0.0;
  // The last point may sit off the uniform lattice.
  const std::size_t m = traj.size() >= 1 ? traj.size() - 1 : 0;
  for (std::size_t i = 2; i + 2 < m; ++i) {
    const double h = traj[i + 1].xi - traj[i].xi;
    const auto H = [&](std::size_t j) { return lyapunov_H(traj[j].state.A, traj[j].state.B, p); };
    const double dH = (H(i - 2) - 8.0 * H(i - 1) + 8.0 * H(i + 1) - H(i + 2)) / (12.0 * h);
    worst = std::max(worst, std::abs(dH + p.c0() * std::norm(traj[i].state.B)));
  }
  return worst;
}

}  // namespace patternfront
