#include "patternfront/front.hpp"

#include <algorithm>
// pchip.hpp calls isnan unqualified; boost::math::isnan must be visible first.
#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/interpolators/quintic_hermite.hpp>
#include <cmath>
#include <numbers>

#include "patternfront/errors.hpp"
#include "patternfront/io.hpp"

namespace patternfront {

std::vector<double> w_to_v(std::span<const double> u, std::span<const double> w, double gamma) {
  if (u.size() != w.size()) throw DomainError("w_to_v: fields on different grids");
  std::vector<double> v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) v[i] = w[i] - gamma * u[i] * u[i];
  return v;
}

std::vector<double> v_to_w(std::span<const double> u, std::span<const double> v, double gamma) {
  if (u.size() != v.size()) throw DomainError("v_to_w: fields on different grids");
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = v[i] + gamma * u[i] * u[i];
  return w;
}

void FrontProfile::build_interpolants() {
  using boost::math::interpolators::pchip;
  using boost::math::interpolators::quintic_hermite;
  if (interp_ == Interpolation::monotone_cubic) {
    auto a = std::make_shared<pchip<std::vector<double>>>(std::vector<double>(y_),
                                                          std::vector<double>(a_));
    auto w = std::make_shared<pchip<std::vector<double>>>(std::vector<double>(y_),
                                                          std::vector<double>(w_));
    a_val_ = [a](double y) { return (*a)(y); };
    a_d1_ = [a](double y) { return a->prime(y); };
    w_val_ = [w](double y) { return (*w)(y); };
  } else {
    auto a = std::make_shared<quintic_hermite<std::vector<double>>>(
        std::vector<double>(y_), std::vector<double>(a_), std::vector<double>(da_),
        std::vector<double>(dda_));
    auto w = std::make_shared<quintic_hermite<std::vector<double>>>(
        std::vector<double>(y_), std::vector<double>(w_), std::vector<double>(dw_),
        std::vector<double>(ddw_));
    a_val_ = [a](double y) { return (*a)(y); };
    a_d1_ = [a](double y) { return a->prime(y); };
    w_val_ = [w](double y) { return (*w)(y); };
  }
}

FrontProfile FrontProfile::from_trajectory(const ShootResult& shot, const ModelParams& params,
                                           Interpolation interp) {
  FrontProfile prof(params);
  prof.interp_ = interp;
  prof.reaches_origin_ = shot.ok();
  const double g = params.gamma();
  if (!(g > -3.0)) throw DomainError("front profile needs gamma > -3");
  prof.a_left_ = std::sqrt(params.alpha0() / (3.0 + g));
  prof.w_left_ = 2.0 * g / (3.0 + g) * params.alpha0();

  std::vector<TrajectoryPoint> pts;
  for (const auto& p : shot.trajectory)
    if (pts.empty() || p.xi > pts.back().xi) pts.push_back(p);
  if (pts.size() < 4) throw NumericalError("trajectory too short for a front profile");

  if (interp == Interpolation::quintic_hermite) {
    for (const auto& p : pts)
      if (std::abs(p.state.A.imag()) > 1e-12 || std::abs(p.state.B.imag()) > 1e-12 ||
          p.state.A.real() < 0.0)
        throw DomainError("quintic envelope needs a trajectory with real A >= 0");
  }

  // Anchor: |A| crosses half the pattern amplitude at y = 0.
  const double half = 0.5 * prof.a_left_;
  double anchor = std::nan("");
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double a0 = std::abs(pts[i - 1].state.A), a1 = std::abs(pts[i].state.A);
    if (a0 > half && a1 <= half) {
      anchor = pts[i - 1].xi + (a0 - half) / (a0 - a1) * (pts[i].xi - pts[i - 1].xi);
      break;
    }
  }
  if (std::isnan(anchor)) throw NumericalError("trajectory never drops below half amplitude");

  for (const auto& p : pts) {
    const ReducedState d = reduced_rhs(p.state, params);
    prof.y_.push_back(p.xi - anchor);
    prof.a_.push_back(std::abs(p.state.A));
    prof.w_.push_back(p.state.W0);
    prof.da_.push_back(p.state.B.real());
    prof.dda_.push_back(d.B.real());
    prof.dw_.push_back(d.W0);
    prof.ddw_.push_back(-params.c0() * d.W0 +
                        4.0 * params.c0() * g * p.state.A.real() * p.state.B.real());
  }
  prof.build_interpolants();
  return prof;
}

FrontProfile FrontProfile::constant(const ModelParams& params, double A_abs, double W0,
                                    double y_min, double y_max) {
  if (!(y_max > y_min)) throw DomainError("constant profile needs y_max > y_min");
  FrontProfile prof(params);
  prof.constant_ = true;
  prof.interp_ = Interpolation::quintic_hermite;
  prof.reaches_origin_ = true;
  prof.a_left_ = prof.a_right_ = A_abs;
  prof.w_left_ = prof.w_right_ = W0;
  constexpr int kSamples = 8;
  for (int i = 0; i < kSamples; ++i) {
    prof.y_.push_back(y_min + (y_max - y_min) * i / (kSamples - 1));
    prof.a_.push_back(A_abs);
    prof.w_.push_back(W0);
    prof.da_.push_back(0.0);
    prof.dda_.push_back(0.0);
    prof.dw_.push_back(0.0);
    prof.ddw_.push_back(0.0);
  }
  prof.a_val_ = [A_abs](double) { return A_abs; };
  prof.a_d1_ = [](double) { return 0.0; };
  prof.w_val_ = [W0](double) { return W0; };
  return prof;
}

double FrontProfile::A_at(double y) const {
  if (y <= y_.front()) return a_left_;
  if (y >= y_.back()) {
    if (!reaches_origin_) throw DomainError("envelope requested beyond an incomplete trajectory");
    return a_right_;
  }
  return a_val_(y);
}

double FrontProfile::W_at(double y) const {
  if (y <= y_.front()) return w_left_;
  if (y >= y_.back()) {
    if (!reaches_origin_) throw DomainError("envelope requested beyond an incomplete trajectory");
    return w_right_;
  }
  return w_val_(y);
}

EnvelopeDerivatives FrontProfile::derivatives(double y) const {
  if (interp_ != Interpolation::quintic_hermite)
    throw DomainError("envelope derivatives need the quintic Hermite profile");
  EnvelopeDerivatives d;
  d.A[0] = A_at(y);
  d.W[0] = W_at(y);
  if (constant_ || y <= y_.front() || y >= y_.back()) return d;

  const double al = params_.alpha0(), c0 = params_.c0(), g = params_.gamma();
  const double A = d.A[0], W = d.W[0];
  const double A1 = a_d1_(y);
  const double A2 = 0.25 * (-al * A - c0 * A1 - A * W + 3.0 * (1.0 + g) * A * A * A);
  const double W1 = -c0 * W + 2.0 * c0 * g * A * A;
  const double W2 = -c0 * W1 + 4.0 * c0 * g * A * A1;
  const double A3 =
      0.25 * (-al * A1 - c0 * A2 - A1 * W - A * W1 + 9.0 * (1.0 + g) * A * A * A1);
  const double W3 = -c0 * W2 + 4.0 * c0 * g * (A1 * A1 + A * A2);
  const double A4 = 0.25 * (-al * A2 - c0 * A3 - A2 * W - 2.0 * A1 * W1 - A * W2 +
                            9.0 * (1.0 + g) * (2.0 * A * A1 * A1 + A * A * A2));
  const double W4 = -c0 * W3 + 4.0 * c0 * g * (3.0 * A1 * A2 + A * A3);
  d.A = {A, A1, A2, A3, A4};
  d.W = {W, W1, W2, W3, W4};
  return d;
}

MirroredGeometry mirrored_geometry(double length, const ModelParams& params) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double x0 = params.x0();
  const double mirror = two_pi * std::round((length / 6.0 + x0) / two_pi) - x0;
  return {mirror, mirror + length / 6.0};
}

double front_y(double x, double t, double length, const FrontPlacement& place,
               const ModelParams& params) {
  const double eps = params.eps();
  const double drift = eps * eps * params.c0() * t;
  if (place.layout == FrontLayout::single) return eps * (x - place.x_front) - drift;
  const MirroredGeometry g = mirrored_geometry(length, params);
  double d = std::fmod(x - g.mirror, length);
  if (d < -0.5 * length) d += length;
  if (d >= 0.5 * length) d -= length;
  return eps * (std::abs(d) - (g.front - g.mirror)) - drift;
}

FieldPair assemble_front(const FrontProfile& profile, double t, const FieldPair& grid,
                         const FrontPlacement& place) {
  const ModelParams& p = profile.params();
  if (p.kc() != 1.0) throw DomainError("front assembly assumes kc = 1 (eps * q0 = 0)");
  const Grid& gr = grid.grid;
  std::vector<double> ys(static_cast<std::size_t>(gr.n));
  double y_hi = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < gr.n; ++j) {
    ys[j] = front_y(gr.x(j), t, gr.length, place, p);
    y_hi = std::max(y_hi, ys[j]);
  }
  if (y_hi > profile.y_max() && !profile.reaches_origin())
    throw DomainError("insufficient trajectory coverage: grid needs y up to " +
                      format_double(y_hi) + " but the trajectory stops at y = " +
                      format_double(profile.y_max()) +
                      " without reaching the origin; extend the xi range by " +
                      format_double(y_hi - profile.y_max()));

  const double eps = p.eps(), g = p.gamma(), x0 = p.x0();
  std::vector<double> u(ys.size()), v(ys.size());
  for (int j = 0; j < gr.n; ++j) {
    const double a = profile.A_at(ys[j]);
    const double w = profile.W_at(ys[j]);
    const double th = gr.x(j) + x0;
    u[j] = eps * 2.0 * a * std::cos(th);
    v[j] = eps * eps * (w - 2.0 * g * a * a - 2.0 * g * a * a * std::cos(2.0 * th));
  }
  return FieldPair::from_values(gr, u, v);
}

}  // namespace patternfront
