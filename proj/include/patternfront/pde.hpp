#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "patternfront/field.hpp"
#include "patternfront/front.hpp"
#include "patternfront/params.hpp"

namespace patternfront {

struct Table;

enum class Scheme {
  imex1,  // backward Euler on the linear part, forward Euler on the nonlinearity
  imex2,  // Crank-Nicolson / Adams-Bashforth 2, bootstrapped with one imex1 step
  etdrk2, // exponential time differencing, second-order Runge-Kutta (Cox-Matthews)
};
const char* to_string(Scheme s);
Scheme parse_scheme(const std::string& name);

struct SimConfig {
  double dt = 0.01;
  double t_end = 1.0;
  Scheme scheme = Scheme::imex2;
  bool dealias = true;
  int record_every = 100;
  bool parallel = true;  // OpenMP kernels; false selects the serial references
  double blowup_norm = 1e6;

  int steps() const;  // round(t_end / dt)
  void validate() const;
};

/// Coefficients of u_t = -(1 + d_x^2)^2 u + alpha u + u v - u^3,
/// v_t = v_xx + gamma (u^2)_xx. Separate from ModelParams so that alpha may be
/// negative (below onset).
struct PdeCoefficients {
  double alpha = 0.0;
  double gamma = 0.0;
  static PdeCoefficients from(const ModelParams& p) { return {p.alpha(), p.gamma()}; }
};

/// Stepper for the full system on a FieldPair. Linear terms are diagonal in
/// Fourier space and handled implicitly or exponentially; nonlinear terms are
/// explicit, evaluated pseudo-spectrally with the 2/3 rule. Both v updates
/// carry a factor k^2, so mode 0 of v never changes.
class FullSystemStepper {
 public:
  FullSystemStepper(const Grid& grid, PdeCoefficients coeffs, SimConfig cfg);
  ~FullSystemStepper();
  FullSystemStepper(FullSystemStepper&&) noexcept;
  FullSystemStepper& operator=(FullSystemStepper&&) noexcept;

  /// Advance by one dt. NumericalError on blow-up.
  void step(FieldPair& f);
  /// Drop multistep history (the next imex2 step is a bootstrap step).
  void reset();
  /// Spectral nonlinear terms (N_u, N_v) of the given fields.
  void nonlinear(const FieldPair& f, std::vector<cplx>& nu, std::vector<cplx>& nv);

  const SimConfig& config() const { return cfg_; }

 private:
  struct Impl;
  SimConfig cfg_;
  std::unique_ptr<Impl> impl_;
};

/// One step from fresh history (imex2 bootstraps with imex1).
FieldPair step_full(FieldPair fields, const ModelParams& params, const SimConfig& cfg);

/// Runs cfg.steps() steps; the observer (if any) sees the fields after every
/// record_every steps and at the end, with the step index.
FieldPair evolve_full(FieldPair fields, PdeCoefficients coeffs, const SimConfig& cfg,
                      const std::function<void(const FieldPair&, long)>& observer = {});

/// Amplitude system on the slow scale:
///   A_T  = 4 A_XX + alpha0 A + A B0 - (3 + gamma) A |A|^2
///   B0_T = B0_XX + 2 gamma (|A|^2)_XX
struct AmplitudeFields {
  Grid grid;
  std::vector<cplx> A_hat;  // complex field, full spectrum (complex FFT)
  std::vector<cplx> B_hat;  // real field, Hermitian spectrum

  static AmplitudeFields from_values(const Grid& grid, std::span<const cplx> A,
                                     std::span<const double> B0);
  std::vector<cplx> A_values() const;
  std::vector<double> B_values() const;
};

class AmplitudeStepper {
 public:
  AmplitudeStepper(const Grid& grid, double alpha0, double gamma, SimConfig cfg);
  ~AmplitudeStepper();
  AmplitudeStepper(AmplitudeStepper&&) noexcept;
  AmplitudeStepper& operator=(AmplitudeStepper&&) noexcept;

  void step(AmplitudeFields& f);
  void reset();

 private:
  struct Impl;
  SimConfig cfg_;
  std::unique_ptr<Impl> impl_;
};

AmplitudeFields step_amplitude(AmplitudeFields fields, double alpha0, double gamma,
                               const SimConfig& cfg);

/// |analytic signal| of a real periodic field (Hilbert-transform envelope).
std::vector<double> hilbert_envelope(std::span<const double> u);

struct Diagnostics {
  std::vector<double> time;
  std::vector<double> mean_v;
  std::vector<double> norm_u;  // discrete L2 norms, sqrt(dx sum u^2)
  std::vector<double> norm_v;
  std::vector<double> front_position;
  std::vector<double> amplitude_behind;
  double mean_v_drift = 0.0;  // max |mean_v(t) - mean_v(0)|
  double fitted_speed = 0.0;
  double pattern_amplitude = 0.0;  // refined periodic amplitude 2|u_1|
  double amplitude_error = 0.0;    // relative, last record
  double reconstruction_distance = 0.0;  // relative sup distance to assemble_front at t_end
  bool front_monotone = true;
};

struct FrontExperiment {
  int n_grid = 4096;
  int n_periods = 256;
  double fit_from = 0.5;  // fraction of t_end after which the speed is fitted
  double shoot_delta = 1e-5;
};

/// Mirrored front from the reduced heteroclinic evolved under the full PDE.
Diagnostics run_front_experiment(const ModelParams& params, const SimConfig& cfg,
                                 const FrontExperiment& setup = {});

/// Front position on the mirrored layout: first point right of the mirror
/// point where the envelope drops below half of `amplitude` (linearly
/// interpolated); NaN if none.
double front_position(std::span<const double> envelope, const Grid& grid, double mirror,
                      double amplitude);

Table diagnostics_table(const Diagnostics& d);

struct AnsatzPoint {
  double eps;
  double residual_u;  // sup over sample points
  double residual_v;
};

struct AnsatzReport {
  std::vector<AnsatzPoint> points;
  double slope_u = 0.0;  // least-squares slope of log residual vs log eps
  double slope_v = 0.0;
};

/// Sup of the pointwise residuals of the full PDE for the assembled front at
/// t = 0, over x with y in [y_lo, y_hi] sampled every dx. Time derivatives
/// use the traveling-frame chain rule d/dt = -eps^2 c0 d/dy; x derivatives
/// are expanded by the Leibniz rule with envelope derivatives from the flow.
AnsatzPoint profile_residual(const FrontProfile& profile, double y_lo, double y_hi, double dx);

/// Shoots and builds a quintic profile for every eps, evaluates the residual
/// over the sampled trajectory, and fits the scaling exponents.
AnsatzReport ansatz_residual(const ModelParams& params, std::span<const double> eps_list,
                             double dx = 0.1);

double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace patternfront
