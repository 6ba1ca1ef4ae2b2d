#pragma once

#include <cmath>
#include <iosfwd>
#include <map>
#include <string>

namespace patternfront {

/// Scalar parameters of the Swift-Hohenberg / conservation-law system.
///
/// The physical coefficients are alpha = eps^2 * alpha0 (distance from onset)
/// and c = eps * c0 (front speed). The critical wave number satisfies
/// kc^2 = 1 + eps * q0. Instances are validated on construction and are
/// immutable afterwards, so they can be shared freely across threads.
class ModelParams {
 public:
  static ModelParams make(double alpha0, double c0, double gamma, double eps, double q0 = 0.0,
                          double x0 = 0.0);

  double alpha0() const { return alpha0_; }
  double c0() const { return c0_; }
  double gamma() const { return gamma_; }
  double eps() const { return eps_; }
  double q0() const { return q0_; }
  double x0() const { return x0_; }
  double kc() const { return kc_; }

  double alpha() const { return eps_ * eps_ * alpha0_; }
  double speed() const { return eps_ * c0_; }

  ModelParams with_eps(double eps) const;
  ModelParams with_gamma(double gamma) const;
  ModelParams with_c0(double c0) const;
  ModelParams with_x0(double x0) const;

  // q0^2 < alpha0: the band in which periodic equilibria exist.
  bool inside_existence_band() const { return q0_ * q0_ < alpha0_; }

 private:
  ModelParams() = default;

  double alpha0_ = 0.0;
  double c0_ = 0.0;
  double gamma_ = 0.0;
  double eps_ = 0.0;
  double q0_ = 0.0;
  double x0_ = 0.0;
  double kc_ = 1.0;
};

/// sqrt(c0^2 - 16 alpha0). Throws DomainError in the oscillatory regime
/// c0^2 < 16 alpha0.
double derived_delta(const ModelParams& params);

/// True when c0^2 > 16 alpha0 strictly, which the front pipeline requires.
bool front_regime(const ModelParams& params);

/// Flat `key = value` configuration table. Lines starting with '#' are
/// comments. alpha0, c0, gamma and eps are mandatory; q0 and x0 default to 0.
/// Errors carry line numbers.
ModelParams parse_params(std::istream& in);
ModelParams load_params(const std::string& path);

/// Canonical text form of the parameters (17 significant digits, fixed key
/// order). Used for digests and JSON metadata.
std::string canonical_text(const ModelParams& params);

}  // namespace patternfront
