#include "patternfront/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "patternfront/errors.hpp"
#include "patternfront/io.hpp"
#include "patternfront/kernels.hpp"
#include "patternfront/periodic.hpp"
#include "patternfront/reduced.hpp"

namespace patternfront {

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::imex1: return "imex1";
    case Scheme::imex2: return "imex2";
    case Scheme::etdrk2: return "etdrk2";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "imex1" || name == "IMEX-1") return Scheme::imex1;
  if (name == "imex2" || name == "IMEX-2") return Scheme::imex2;
  if (name == "etdrk2" || name == "ETD-RK") return Scheme::etdrk2;
  throw ConfigError("unknown scheme '" + name + "' (expected imex1, imex2 or etdrk2)");
}

int SimConfig::steps() const { return static_cast<int>(std::llround(t_end / dt)); }

void SimConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (!(t_end >= dt)) throw DomainError("t_end must be >= dt");
  if (record_every < 1) throw DomainError("record_every must be >= 1");
  // The nonlinear terms are always active, so the 2/3 rule is mandatory.
  if (!dealias) throw DomainError("dealiasing must stay on while nonlinear terms are active");
  if (!(blowup_norm > 0.0)) throw DomainError("blowup_norm must be positive");
}

namespace {

double phi1(double z) {
  if (std::abs(z) < 0.2) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 14; ++k) {
      term *= z / (k + 1);
      sum += term;
    }
    return sum;
  }
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < 0.2) {
    double term = 0.5, sum = 0.5;
    for (int k = 1; k < 14; ++k) {
      term *= z / (k + 2);
      sum += term;
    }
    return sum;
  }
  return (std::expm1(z) - z) / (z * z);
}

struct Coefs {
  std::vector<double> a, b, c;
};

// Per-mode update coefficients for a diagonal linear symbol L.
struct SchemeCoefs {
  Coefs imex1, imex2, etd1, etd2;

  SchemeCoefs(std::span<const double> L, double dt) {
    const std::size_t n = L.size();
    for (Coefs* c : {&imex1, &imex2, &etd1, &etd2}) {
      c->a.resize(n);
      c->b.resize(n);
      c->c.resize(n);
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double z = dt * L[k];
      imex1.a[k] = 1.0 / (1.0 - z);
      imex1.b[k] = dt / (1.0 - z);
      const double d = 1.0 - 0.5 * z;
      imex2.a[k] = (1.0 + 0.5 * z) / d;
      imex2.b[k] = 1.5 * dt / d;
      imex2.c[k] = -0.5 * dt / d;
      etd1.a[k] = std::exp(z);
      etd1.b[k] = dt * phi1(z);
      etd2.a[k] = 1.0;
      etd2.b[k] = dt * phi2(z);
      etd2.c[k] = -dt * phi2(z);
    }
  }
};

// Time integration of two diagonal-linear spectral components.
class Engine {
 public:
  Engine(std::span<const double> l0, std::span<const double> l1, const SimConfig& cfg)
      : cfg_(cfg), coefs_{SchemeCoefs(l0, cfg.dt), SchemeCoefs(l1, cfg.dt)} {
    for (int i = 0; i < 2; ++i) {
      const std::size_t n = i == 0 ? l0.size() : l1.size();
      n_[i].resize(n);
      prev_[i].resize(n);
      tmp_[i].resize(n);
      ntmp_[i].resize(n);
    }
  }

  void reset() { have_prev_ = false; }

  template <class Nonlinear>
  void step(std::vector<cplx>& x0, std::vector<cplx>& x1, Nonlinear&& nl) {
    std::vector<cplx>* x[2] = {&x0, &x1};
    nl(x0, x1, n_[0], n_[1]);
    const bool bootstrap = cfg_.scheme == Scheme::imex2 && !have_prev_;
    if (cfg_.scheme == Scheme::imex1 || bootstrap) {
      for (int i = 0; i < 2; ++i) {
        const Coefs& c = coefs_[i].imex1;
        combine(c.a, *x[i], c.b, n_[i], {}, {}, *x[i]);
      }
    } else if (cfg_.scheme == Scheme::imex2) {
      for (int i = 0; i < 2; ++i) {
        const Coefs& c = coefs_[i].imex2;
        combine(c.a, *x[i], c.b, n_[i], c.c, prev_[i], *x[i]);
      }
    } else {
      for (int i = 0; i < 2; ++i) {
        const Coefs& c = coefs_[i].etd1;
        combine(c.a, *x[i], c.b, n_[i], {}, {}, tmp_[i]);
      }
      nl(tmp_[0], tmp_[1], ntmp_[0], ntmp_[1]);
      for (int i = 0; i < 2; ++i) {
        const Coefs& c = coefs_[i].etd2;
        combine(c.a, tmp_[i], c.b, ntmp_[i], c.c, n_[i], *x[i]);
      }
    }
    if (cfg_.scheme == Scheme::imex2) {
      std::swap(prev_[0], n_[0]);
      std::swap(prev_[1], n_[1]);
      have_prev_ = true;
    }
  }

 private:
  void combine(std::span<const double> c1, std::span<const cplx> x, std::span<const double> c2,
               std::span<const cplx> y, std::span<const double> c3, std::span<const cplx> z,
               std::span<cplx> out) const {
    if (cfg_.parallel)
      kernels::combine_omp(c1, x, c2, y, c3, z, out);
    else
      kernels::combine_serial(c1, x, c2, y, c3, z, out);
  }

  SimConfig cfg_;
  SchemeCoefs coefs_[2];
  std::vector<cplx> n_[2], prev_[2], tmp_[2], ntmp_[2];
  bool have_prev_ = false;
};

std::vector<bool> dealias_mask(int n) {
  std::vector<bool> keep(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) keep[j] = 3 * std::abs(wave_index(j, n)) <= n;
  return keep;
}

double spectral_l2(std::span<const cplx> hat, const Grid& g) {
  double s = 0.0;
  for (const cplx z : hat) s += std::norm(z);
  return std::sqrt(g.dx() * s / g.n);
}

}  // namespace

struct FullSystemStepper::Impl {
  Impl(const Grid& g, PdeCoefficients c, const SimConfig& cfg)
      : grid(g), coeffs(c), keep(dealias_mask(g.n)), ksq(g.n), engine([&] {
          std::vector<double> lu(g.n), lv(g.n);
          for (int j = 0; j < g.n; ++j) {
            const double k = g.wavenumber(j);
            const double s = 1.0 - k * k;
            lu[j] = -s * s + c.alpha;
            lv[j] = -k * k;
          }
          return Engine(lu, lv, cfg);
        }()),
        u(g.n), v(g.n), p(g.n), q(g.n), phat(g.n), qhat(g.n), parallel(cfg.parallel) {
    for (int j = 0; j < g.n; ++j) ksq[j] = g.wavenumber(j) * g.wavenumber(j);
  }

  void nonlinear(std::span<const cplx> uh, std::span<const cplx> vh, std::vector<cplx>& nu,
                 std::vector<cplx>& nv) {
    const RealFft& fft = real_fft(grid.n);
    fft.inverse(uh, u);
    fft.inverse(vh, v);
    if (parallel)
      kernels::full_nonlinear_omp(u, v, p, q);
    else
      kernels::full_nonlinear_serial(u, v, p, q);
    fft.forward(p, phat);
    fft.forward(q, qhat);
    for (int j = 0; j < grid.n; ++j) {
      nu[j] = keep[j] ? phat[j] : cplx{};
      nv[j] = keep[j] ? -ksq[j] * coeffs.gamma * qhat[j] : cplx{};
    }
  }

  Grid grid;
  PdeCoefficients coeffs;
  std::vector<bool> keep;
  std::vector<double> ksq;
  Engine engine;
  std::vector<double> u, v, p, q;
  std::vector<cplx> phat, qhat;
  bool parallel;
};

FullSystemStepper::FullSystemStepper(const Grid& grid, PdeCoefficients coeffs, SimConfig cfg)
    : cfg_((cfg.validate(), cfg)), impl_(std::make_unique<Impl>(grid, coeffs, cfg_)) {}
FullSystemStepper::~FullSystemStepper() = default;
FullSystemStepper::FullSystemStepper(FullSystemStepper&&) noexcept = default;
FullSystemStepper& FullSystemStepper::operator=(FullSystemStepper&&) noexcept = default;

void FullSystemStepper::reset() { impl_->engine.reset(); }

void FullSystemStepper::nonlinear(const FieldPair& f, std::vector<cplx>& nu,
                                  std::vector<cplx>& nv) {
  nu.resize(f.u_hat.size());
  nv.resize(f.v_hat.size());
  impl_->nonlinear(f.u_hat, f.v_hat, nu, nv);
}

void FullSystemStepper::step(FieldPair& f) {
  if (f.grid.n != impl_->grid.n || f.grid.length != impl_->grid.length)
    throw DomainError("FullSystemStepper: field grid does not match the stepper");
  impl_->engine.step(f.u_hat, f.v_hat,
                     [this](const std::vector<cplx>& a, const std::vector<cplx>& b,
                            std::vector<cplx>& na, std::vector<cplx>& nb) {
                       impl_->nonlinear(a, b, na, nb);
                     });
  const double nu = spectral_l2(f.u_hat, f.grid), nv = spectral_l2(f.v_hat, f.grid);
  if (!std::isfinite(nu) || !std::isfinite(nv) || nu > cfg_.blowup_norm || nv > cfg_.blowup_norm)
    throw NumericalError("blow-up detected: |u| = " + format_double(nu) +
                         ", |v| = " + format_double(nv));
}

FieldPair step_full(FieldPair fields, const ModelParams& params, const SimConfig& cfg) {
  FullSystemStepper stepper(fields.grid, PdeCoefficients::from(params), cfg);
  stepper.step(fields);
  return fields;
}

FieldPair evolve_full(FieldPair fields, PdeCoefficients coeffs, const SimConfig& cfg,
                      const std::function<void(const FieldPair&, long)>& observer) {
  FullSystemStepper stepper(fields.grid, coeffs, cfg);
  const long steps = cfg.steps();
  for (long s = 1; s <= steps; ++s) {
    stepper.step(fields);
    if (observer && (s % cfg.record_every == 0 || s == steps)) observer(fields, s);
  }
  return fields;
}

AmplitudeFields AmplitudeFields::from_values(const Grid& grid, std::span<const cplx> A,
                                             std::span<const double> B0) {
  if (static_cast<int>(A.size()) != grid.n || static_cast<int>(B0.size()) != grid.n)
    throw DomainError("AmplitudeFields: size does not match grid");
  AmplitudeFields f;
  f.grid = grid;
  f.A_hat.resize(A.size());
  complex_fft(grid.n).forward(A, f.A_hat);
  f.B_hat = real_fft(grid.n).forward(B0);
  return f;
}

std::vector<cplx> AmplitudeFields::A_values() const {
  std::vector<cplx> a(A_hat.size());
  complex_fft(grid.n).inverse(A_hat, a);
  return a;
}

std::vector<double> AmplitudeFields::B_values() const { return real_fft(grid.n).inverse(B_hat); }

struct AmplitudeStepper::Impl {
  Impl(const Grid& g, double alpha0, double gamma, const SimConfig& cfg)
      : grid(g), gamma(gamma), keep(dealias_mask(g.n)), ksq(g.n), engine([&] {
          std::vector<double> la(g.n), lb(g.n);
          for (int j = 0; j < g.n; ++j) {
            const double k = g.wavenumber(j);
            la[j] = -4.0 * k * k + alpha0;
            lb[j] = -k * k;
          }
          return Engine(la, lb, cfg);
        }()),
        a(g.n), p(g.n), b(g.n), q(g.n), phat(g.n), qhat(g.n), parallel(cfg.parallel) {
    for (int j = 0; j < g.n; ++j) ksq[j] = g.wavenumber(j) * g.wavenumber(j);
  }

  void nonlinear(std::span<const cplx> ah, std::span<const cplx> bh, std::vector<cplx>& na,
                 std::vector<cplx>& nb) {
    complex_fft(grid.n).inverse(ah, a);
    real_fft(grid.n).inverse(bh, b);
    if (parallel)
      kernels::amplitude_nonlinear_omp(a, b, 3.0 + gamma, p, q);
    else
      kernels::amplitude_nonlinear_serial(a, b, 3.0 + gamma, p, q);
    complex_fft(grid.n).forward(p, phat);
    real_fft(grid.n).forward(q, qhat);
    for (int j = 0; j < grid.n; ++j) {
      na[j] = keep[j] ? phat[j] : cplx{};
      nb[j] = keep[j] ? -ksq[j] * 2.0 * gamma * qhat[j] : cplx{};
    }
  }

  Grid grid;
  double gamma;
  std::vector<bool> keep;
  std::vector<double> ksq;
  Engine engine;
  std::vector<cplx> a, p;
  std::vector<double> b, q;
  std::vector<cplx> phat, qhat;
  bool parallel;
};

AmplitudeStepper::AmplitudeStepper(const Grid& grid, double alpha0, double gamma, SimConfig cfg)
    : cfg_((cfg.validate(), cfg)), impl_(std::make_unique<Impl>(grid, alpha0, gamma, cfg_)) {}
AmplitudeStepper::~AmplitudeStepper() = default;
AmplitudeStepper::AmplitudeStepper(AmplitudeStepper&&) noexcept = default;
AmplitudeStepper& AmplitudeStepper::operator=(AmplitudeStepper&&) noexcept = default;

void AmplitudeStepper::reset() { impl_->engine.reset(); }

void AmplitudeStepper::step(AmplitudeFields& f) {
  if (f.grid.n != impl_->grid.n) throw DomainError("AmplitudeStepper: grid mismatch");
  impl_->engine.step(f.A_hat, f.B_hat,
                     [this](const std::vector<cplx>& a, const std::vector<cplx>& b,
                            std::vector<cplx>& na, std::vector<cplx>& nb) {
                       impl_->nonlinear(a, b, na, nb);
                     });
  const double na = spectral_l2(f.A_hat, f.grid), nb = spectral_l2(f.B_hat, f.grid);
  if (!std::isfinite(na) || !std::isfinite(nb) || na > cfg_.blowup_norm || nb > cfg_.blowup_norm)
    throw NumericalError("blow-up detected in the amplitude system");
}

AmplitudeFields step_amplitude(AmplitudeFields fields, double alpha0, double gamma,
                               const SimConfig& cfg) {
  AmplitudeStepper stepper(fields.grid, alpha0, gamma, cfg);
  stepper.step(fields);
  return fields;
}

std::vector<double> hilbert_envelope(std::span<const double> u) {
  const int n = static_cast<int>(u.size());
  std::vector<cplx> hat = real_fft(n).forward(u);
  for (int j = 1; j < n; ++j) {
    if (2 * j < n)
      hat[j] *= 2.0;
    else if (2 * j > n)
      hat[j] = 0.0;
  }
  std::vector<cplx> z(static_cast<std::size_t>(n));
  complex_fft(n).inverse(hat, z);
  std::vector<double> env(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) env[j] = std::abs(z[j]);
  return env;
}

double front_position(std::span<const double> env, const Grid& grid, double mirror,
                      double amplitude) {
  const int n = grid.n;
  const double dx = grid.dx();
  const double thr = 0.5 * amplitude;
  const long j0 = static_cast<long>(std::ceil(mirror / dx));
  const auto at = [&](long j) { return env[static_cast<std::size_t>(((j % n) + n) % n)]; };
  if (at(j0) < thr) return std::numeric_limits<double>::quiet_NaN();
  for (long j = j0 + 1; j <= j0 + n / 2; ++j) {
    const double e0 = at(j - 1), e1 = at(j);
    if (e1 < thr) return (j - 1) * dx + (e0 - thr) / (e0 - e1) * dx;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_slope needs >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_slope: abscissae are all equal");
  return sxy / sxx;
}

Diagnostics run_front_experiment(const ModelParams& params, const SimConfig& cfg,
                                 const FrontExperiment& setup) {
  if (!front_regime(params)) throw DomainError("front experiment needs c0^2 > 16 alpha0");
  if (setup.n_periods < 40) throw DomainError("front experiment needs >= 40 pattern periods");
  cfg.validate();

  const ShootResult shot = shoot_heteroclinic(params, setup.shoot_delta);
  if (!shot.ok()) throw NumericalError(std::string("shooting failed: ") + shot.reason);
  const FrontProfile profile = FrontProfile::from_trajectory(shot, params);
  const PeriodicEquilibrium eq = newton_refine(leading_order(params));

  Diagnostics d;
  d.pattern_amplitude = eq.fundamental_amplitude();
  FieldPair f = make_grid(setup.n_grid, setup.n_periods, params);
  const Grid grid = f.grid;
  f = assemble_front(profile, 0.0, f, {FrontLayout::mirrored, 0.0});
  const MirroredGeometry geo = mirrored_geometry(grid.length, params);
  const double v0 = f.v_hat[0].real();

  const auto record = [&](const FieldPair& fp, double t) {
    const std::vector<double> u = fp.u_values();
    const std::vector<double> env = hilbert_envelope(u);
    d.time.push_back(t);
    d.mean_v.push_back(fp.v_hat[0].real() / grid.n);
    d.mean_v_drift = std::max(d.mean_v_drift, std::abs(fp.v_hat[0].real() - v0) / grid.n);
    d.norm_u.push_back(spectral_l2(fp.u_hat, grid));
    d.norm_v.push_back(spectral_l2(fp.v_hat, grid));
    d.front_position.push_back(front_position(env, grid, geo.mirror, d.pattern_amplitude));
    // Mean envelope within L/12 of the mirror point.
    double sum = 0.0;
    int count = 0;
    for (int j = 0; j < grid.n; ++j) {
      double dist = std::fmod(std::abs(grid.x(j) - geo.mirror), grid.length);
      dist = std::min(dist, grid.length - dist);
      if (dist <= grid.length / 12.0) {
        sum += env[j];
        ++count;
      }
    }
    d.amplitude_behind.push_back(count ? sum / count : 0.0);
  };

  record(f, 0.0);
  f = evolve_full(std::move(f), PdeCoefficients::from(params), cfg,
                  [&](const FieldPair& fp, long s) { record(fp, s * cfg.dt); });

  std::vector<double> ts, xs;
  for (std::size_t i = 0; i < d.time.size(); ++i) {
    if (d.time[i] >= setup.fit_from * cfg.t_end && std::isfinite(d.front_position[i])) {
      ts.push_back(d.time[i]);
      xs.push_back(d.front_position[i]);
    }
  }
  d.fitted_speed = ts.size() >= 2 ? fit_slope(ts, xs) : std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 1; i < d.front_position.size(); ++i)
    if (!(d.front_position[i] >= d.front_position[i - 1] - 0.5 * grid.dx()))
      d.front_monotone = false;
  d.amplitude_error =
      std::abs(d.amplitude_behind.back() - d.pattern_amplitude) / d.pattern_amplitude;

  const double t_final = cfg.steps() * cfg.dt;
  const FieldPair rec =
      assemble_front(profile, t_final, make_grid(setup.n_grid, setup.n_periods, params),
                     {FrontLayout::mirrored, 0.0});
  const std::vector<double> u = f.u_values(), ur = rec.u_values();
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    num = std::max(num, std::abs(u[j] - ur[j]));
    den = std::max(den, std::abs(ur[j]));
  }
  d.reconstruction_distance = den > 0.0 ? num / den : num;
  return d;
}

Table diagnostics_table(const Diagnostics& d) {
  Table t;
  t.columns = {"t", "mean_v", "norm_u", "norm_v", "front_position", "amplitude_behind"};
  for (std::size_t i = 0; i < d.time.size(); ++i)
    t.add_row({d.time[i], d.mean_v[i], d.norm_u[i], d.norm_v[i], d.front_position[i],
               d.amplitude_behind[i]});
  return t;
}

namespace {

// d^m/dx^m [f(eps x) cos(w theta)] with f_j = f^{(j)}(y).
double leibniz_cos(const double* f, int m, double w, double theta, double eps) {
  static constexpr double binom[5][5] = {
      {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
  double acc = 0.0, ej = 1.0;
  for (int j = 0; j <= m; ++j) {
    const int r = m - j;
    acc += binom[m][j] * ej * f[j] * std::pow(w, r) *
           std::cos(w * theta + r * 0.5 * std::numbers::pi);
    ej *= eps;
  }
  return acc;
}

}  // namespace

AnsatzPoint profile_residual(const FrontProfile& profile, double y_lo, double y_hi, double dx) {
  const ModelParams& p = profile.params();
  const double eps = p.eps(), c0 = p.c0(), g = p.gamma(), alpha = p.alpha();
  if (!(eps > 0.0)) throw DomainError("ansatz residual needs eps > 0");
  if (!(dx > 0.0) || !(y_hi > y_lo)) throw DomainError("ansatz residual: empty sampling window");
  AnsatzPoint out{eps, 0.0, 0.0};
  const long count = static_cast<long>(std::floor((y_hi - y_lo) / (eps * dx)));
  for (long i = 0; i <= count; ++i) {
    const double x = y_lo / eps + i * dx;
    const double y = eps * x;
    const double th = x + p.x0();
    const EnvelopeDerivatives d = profile.derivatives(y);
    const double* A = d.A.data();
    const double P[3] = {A[0] * A[0], 2.0 * A[0] * A[1], 2.0 * A[1] * A[1] + 2.0 * A[0] * A[2]};

    const double u = 2.0 * eps * leibniz_cos(A, 0, 1.0, th, eps);
    const double uxx = 2.0 * eps * leibniz_cos(A, 2, 1.0, th, eps);
    const double u4 = 2.0 * eps * leibniz_cos(A, 4, 1.0, th, eps);
    const double ut = 2.0 * eps * (-eps * eps * c0) * A[1] * std::cos(th);
    const double e2 = eps * eps;
    const double v = e2 * (d.W[0] - 2.0 * g * P[0] - 2.0 * g * P[0] * std::cos(2.0 * th));
    const double ru = -(u + 2.0 * uxx + u4) + alpha * u + u * v - u * u * u - ut;

    const double p2cos = leibniz_cos(P, 2, 2.0, th, eps);
    const double vxx = e2 * (e2 * d.W[2] - 2.0 * g * e2 * P[2] - 2.0 * g * p2cos);
    const double u2xx = 2.0 * e2 * (e2 * P[2] + p2cos);
    const double vt = e2 * (-e2 * c0) * (d.W[1] - 2.0 * g * P[1] - 2.0 * g * P[1] * std::cos(2.0 * th));
    const double rv = vxx + g * u2xx - vt;

    out.residual_u = std::max(out.residual_u, std::abs(ru));
    out.residual_v = std::max(out.residual_v, std::abs(rv));
  }
  return out;
}

AnsatzReport ansatz_residual(const ModelParams& params, std::span<const double> eps_list,
                             double dx) {
  if (eps_list.size() < 2) throw DomainError("ansatz residual needs at least two eps values");
  AnsatzReport rep;
  std::vector<double> le, lu, lv;
  for (const double eps : eps_list) {
    const ModelParams p = params.with_eps(eps);
    const ShootResult shot = shoot_heteroclinic(p, 1e-5);
    if (!shot.ok()) throw NumericalError(std::string("shooting failed: ") + shot.reason);
    const FrontProfile prof = FrontProfile::from_trajectory(shot, p, Interpolation::quintic_hermite);
    AnsatzPoint pt = profile_residual(prof, prof.y_min(), prof.y_max(), dx);
    rep.points.push_back(pt);
    le.push_back(std::log(eps));
    lu.push_back(std::log(pt.residual_u));
    lv.push_back(std::log(pt.residual_v));
  }
  rep.slope_u = fit_slope(le, lu);
  rep.slope_v = fit_slope(le, lv);
  return rep;
}

}  // namespace patternfront
