#include "patternfront/periodic.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>

#include "patternfront/errors.hpp"
#include "patternfront/io.hpp"

namespace patternfront {

namespace {

// Coefficients c_k for |k| <= half, stored at k + half.
struct Coeffs {
  int half = 0;
  std::vector<cplx> c;

  explicit Coeffs(int h) : half(h), c(static_cast<std::size_t>(2 * h + 1)) {}
  Coeffs(int h, const std::vector<cplx>& data) : half(h), c(data) {}
  cplx at(int k) const { return (k < -half || k > half) ? cplx{} : c[k + half]; }
};

Coeffs convolve(const Coeffs& a, const Coeffs& b) {
  Coeffs out(a.half + b.half);
  for (int i = -a.half; i <= a.half; ++i) {
    const cplx ai = a.at(i);
    if (ai == cplx{}) continue;
    for (int j = -b.half; j <= b.half; ++j) out.c[i + j + out.half] += ai * b.at(j);
  }
  return out;
}

double linear_symbol(int n, const ModelParams& p) {
  const double k = n * p.kc();
  const double s = 1.0 - k * k;
  return -s * s + p.alpha();
}

PeriodicEquilibrium translated(const PeriodicEquilibrium& eq, double shift) {
  PeriodicEquilibrium out = eq;
  const double kc = eq.params.kc();
  for (int n = -eq.n_modes; n <= eq.n_modes; ++n) {
    const cplx rot = std::polar(1.0, n * kc * shift);
    out.u(n) = eq.u(n) * rot;
    out.v(n) = eq.v(n) * rot;
  }
  return out;
}

enum Field { kU = 0, kV = 1 };

struct Slot {
  Field field;
  int mode;
  bool imag;
};

// Shared layout of unknowns and equations.
std::vector<Slot> layout(int N) {
  std::vector<Slot> s;
  s.reserve(static_cast<std::size_t>(4 * N));
  s.push_back({kU, 0, false});
  s.push_back({kU, 1, false});
  for (int n = 2; n <= N; ++n) {
    s.push_back({kU, n, false});
    s.push_back({kU, n, true});
  }
  for (int n = 1; n <= N; ++n) {
    s.push_back({kV, n, false});
    s.push_back({kV, n, true});
  }
  return s;
}

}  // namespace

PeriodicEquilibrium::PeriodicEquilibrium(int n, const ModelParams& p)
    : n_modes(n),
      u_coeffs(static_cast<std::size_t>(2 * n + 1)),
      v_coeffs(static_cast<std::size_t>(2 * n + 1)),
      residual_norm(std::numeric_limits<double>::quiet_NaN()),
      params(p) {
  if (n < 2) throw DomainError("periodic truncation needs at least 2 modes");
}

double PeriodicEquilibrium::u_at(double x) const {
  double acc = u(0).real();
  for (int n = 1; n <= n_modes; ++n)
    acc += 2.0 * (u(n) * std::polar(1.0, n * params.kc() * x)).real();
  return acc;
}

double PeriodicEquilibrium::v_at(double x) const {
  double acc = v(0).real();
  for (int n = 1; n <= n_modes; ++n)
    acc += 2.0 * (v(n) * std::polar(1.0, n * params.kc() * x)).real();
  return acc;
}

double amplitude_fixed_point(const ModelParams& params) {
  if (!(params.gamma() > -3.0))
    throw DomainError("gamma <= -3: no small stationary periodic solutions");
  if (!params.inside_existence_band()) throw DomainError("q0^2 >= alpha0: outside existence band");
  return std::sqrt((params.alpha0() - params.q0() * params.q0()) / (3.0 + params.gamma()));
}

PeriodicEquilibrium leading_order(const ModelParams& params, int n_modes) {
  const double a = amplitude_fixed_point(params);
  const double eps = params.eps();
  PeriodicEquilibrium eq(n_modes, params);
  const double phase = params.kc() * params.x0();
  eq.u(1) = eps * a * std::polar(1.0, phase);
  eq.u(-1) = std::conj(eq.u(1));
  eq.v(2) = -eps * eps * a * a * params.gamma() * std::polar(1.0, 2.0 * phase);
  eq.v(-2) = std::conj(eq.v(2));
  return eq;
}

std::pair<std::vector<cplx>, std::vector<cplx>> stationary_residual(
    const PeriodicEquilibrium& eq) {
  const int N = eq.n_modes;
  const Coeffs u(N, eq.u_coeffs), v(N, eq.v_coeffs);
  const Coeffs uu = convolve(u, u);
  const Coeffs uv = convolve(u, v);
  const Coeffs uuu = convolve(uu, u);
  std::vector<cplx> fu(static_cast<std::size_t>(2 * N + 1)), fv(fu.size());
  for (int n = -N; n <= N; ++n) {
    const double k = n * eq.params.kc();
    fu[n + N] = linear_symbol(n, eq.params) * u.at(n) + uv.at(n) - uuu.at(n);
    fv[n + N] = -k * k * (v.at(n) + eq.params.gamma() * uu.at(n));
  }
  return {fu, fv};
}

double residual_sup(const PeriodicEquilibrium& eq) {
  const auto [fu, fv] = stationary_residual(eq);
  double r = 0.0;
  for (const cplx z : fu) r = std::max(r, std::abs(z));
  for (const cplx z : fv) r = std::max(r, std::abs(z));
  return r;
}

NewtonSystem newton_system(const PeriodicEquilibrium& eq) {
  const int N = eq.n_modes;
  const ModelParams& p = eq.params;
  const Coeffs u(N, eq.u_coeffs), v(N, eq.v_coeffs);
  const Coeffs uu = convolve(u, u);
  const Coeffs uv = convolve(u, v);
  const Coeffs uuu = convolve(uu, u);
  const std::vector<Slot> slots = layout(N);
  const std::size_t dim = slots.size();

  NewtonSystem sys;
  sys.unknowns.resize(dim);
  sys.equations.resize(dim);
  sys.jacobian.assign(dim, std::vector<double>(dim, 0.0));

  // Equations: F_u(n) and G_v(n) = v_n + gamma (u^2)_n (F_v divided by -(n kc)^2).
  const auto equation = [&](Field f, int n) -> cplx {
    if (f == kU) return linear_symbol(n, p) * u.at(n) + uv.at(n) - uuu.at(n);
    return v.at(n) + p.gamma() * uu.at(n);
  };
  // d(equation f, n) / d(field g, mode m), complex-linear part.
  const auto partial = [&](Field f, int n, Field g, int m) -> cplx {
    if (f == kU && g == kU) return (n == m ? linear_symbol(n, p) : 0.0) + v.at(n - m) - 3.0 * uu.at(n - m);
    if (f == kU && g == kV) return u.at(n - m);
    if (f == kV && g == kU) return 2.0 * p.gamma() * u.at(n - m);
    return n == m ? 1.0 : 0.0;
  };

  for (std::size_t i = 0; i < dim; ++i) {
    const Slot& e = slots[i];
    const cplx val = equation(e.field, e.mode);
    sys.equations[i] = e.imag ? val.imag() : val.real();
    const Slot& x = slots[i];
    const cplx xv = x.field == kU ? u.at(x.mode) : v.at(x.mode);
    sys.unknowns[i] = x.imag ? xv.imag() : xv.real();
  }
  for (std::size_t i = 0; i < dim; ++i) {
    const Slot& e = slots[i];
    for (std::size_t j = 0; j < dim; ++j) {
      const Slot& x = slots[j];
      const cplx dir = x.imag ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
      cplx d = partial(e.field, e.mode, x.field, x.mode) * dir;
      if (x.mode != 0) d += partial(e.field, e.mode, x.field, -x.mode) * std::conj(dir);
      sys.jacobian[i][j] = e.imag ? d.imag() : d.real();
    }
  }
  return sys;
}

PeriodicEquilibrium from_unknowns(const PeriodicEquilibrium& shape, const std::vector<double>& x) {
  PeriodicEquilibrium out(shape.n_modes, shape.params);
  const std::vector<Slot> slots = layout(shape.n_modes);
  if (x.size() != slots.size()) throw std::invalid_argument("from_unknowns: size mismatch");
  for (std::size_t i = 0; i < slots.size(); ++i) {
    cplx& target = slots[i].field == kU ? out.u(slots[i].mode) : out.v(slots[i].mode);
    if (slots[i].imag)
      target.imag(x[i]);
    else
      target.real(x[i]);
  }
  for (int n = 1; n <= shape.n_modes; ++n) {
    out.u(-n) = std::conj(out.u(n));
    out.v(-n) = std::conj(out.v(n));
  }
  out.residual_norm = shape.residual_norm;
  out.iterations = shape.iterations;
  return out;
}

PeriodicEquilibrium newton_refine(const PeriodicEquilibrium& start, double tol, int max_iter) {
  if (!(tol >= 1e-13)) throw DomainError("newton_refine: tol must be >= 1e-13");
  if (max_iter < 1) throw DomainError("newton_refine: max_iter must be >= 1");
  const double x0 = start.params.x0();
  PeriodicEquilibrium eq = translated(start, -x0);
  // Enforce the constraints on the starting point.
  eq.v(0) = 0.0;
  eq.u(0) = eq.u(0).real();
  eq.u(1) = std::abs(eq.u(1));
  eq.u(-1) = eq.u(1);

  double res = residual_sup(eq);
  int iter = 0;
  while (res > tol) {
    if (iter == max_iter)
      throw NumericalError("Newton refinement did not converge in " + std::to_string(max_iter) +
                           " iterations (residual " + format_double(res) + ")");
    const NewtonSystem sys = newton_system(eq);
    const int dim = static_cast<int>(sys.unknowns.size());
    Eigen::MatrixXd J(dim, dim);
    Eigen::VectorXd F(dim), x(dim);
    for (int i = 0; i < dim; ++i) {
      F(i) = sys.equations[i];
      x(i) = sys.unknowns[i];
      for (int j = 0; j < dim; ++j) J(i, j) = sys.jacobian[i][j];
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14))
      throw NumericalError("singular Newton Jacobian (reciprocal condition estimate " +
                           format_double(rcond) + ")");
    x -= lu.solve(F);
    eq = from_unknowns(eq, std::vector<double>(x.data(), x.data() + dim));
    res = residual_sup(eq);
    ++iter;
  }
  PeriodicEquilibrium out = translated(eq, x0);
  out.v(0) = 0.0;
  out.residual_norm = res;
  out.iterations = iter;
  return out;
}

PeriodicEquilibrium embed(const PeriodicEquilibrium& eq, int n_modes) {
  if (n_modes < eq.n_modes) throw DomainError("embed: cannot drop modes");
  PeriodicEquilibrium out(n_modes, eq.params);
  for (int n = -eq.n_modes; n <= eq.n_modes; ++n) {
    out.u(n) = eq.u(n);
    out.v(n) = eq.v(n);
  }
  out.residual_norm = std::numeric_limits<double>::quiet_NaN();
  return out;
}

FieldPair to_field(const PeriodicEquilibrium& eq, int n_grid, int n_periods) {
  FieldPair f = make_grid(n_grid, n_periods, eq.params);
  for (int n = -eq.n_modes; n <= eq.n_modes; ++n) {
    const int k = n * n_periods;
    if (2 * std::abs(k) >= n_grid) {
      if (eq.u(n) != cplx{} || eq.v(n) != cplx{})
        throw DomainError("to_field: grid too coarse for the retained modes");
      continue;
    }
    const int slot = k >= 0 ? k : k + n_grid;
    f.u_hat[slot] = eq.u(n) * static_cast<double>(n_grid);
    f.v_hat[slot] = eq.v(n) * static_cast<double>(n_grid);
  }
  f.mean_v = eq.v(0).real();
  return f;
}

nlohmann::json periodic_json(const PeriodicEquilibrium& eq) {
  nlohmann::json u = nlohmann::json::array(), v = nlohmann::json::array();
  for (int n = 0; n <= eq.n_modes; ++n) {
    u.push_back({eq.u(n).real(), eq.u(n).imag()});
    v.push_back({eq.v(n).real(), eq.v(n).imag()});
  }
  nlohmann::json j = {{"n_modes", eq.n_modes},
                      {"iterations", eq.iterations},
                      {"params", params_json(eq.params)},
                      {"fundamental_amplitude", eq.fundamental_amplitude()},
                      {"u_coeffs", u},
                      {"v_coeffs", v}};
  j["residual_norm"] = std::isnan(eq.residual_norm) ? nlohmann::json(nullptr)
                                                    : nlohmann::json(eq.residual_norm);
  return j;
}

Table periodic_samples(const PeriodicEquilibrium& eq, int points) {
  if (points < 2) throw DomainError("periodic_samples: need at least 2 points");
  Table t;
  t.columns = {"x", "u", "v"};
  const double period = 2.0 * std::numbers::pi / eq.params.kc();
  for (int j = 0; j < points; ++j) {
    const double x = period * j / points;
    t.add_row({x, eq.u_at(x), eq.v_at(x)});
  }
  return t;
}

}  // namespace patternfront
