#pragma once

#include <vector>

#include "json.hpp"
#include "patternfront/field.hpp"
#include "patternfront/params.hpp"

namespace patternfront {

struct Table;

/// Stationary periodic solution u(x) = sum_{|n|<=N} u_n exp(i n kc x), and
/// likewise v. Coefficients are stored for n = -N..N at index n + N and are
/// Hermitian (u_{-n} = conj(u_n)).
struct PeriodicEquilibrium {
  PeriodicEquilibrium(int n_modes, const ModelParams& params);

  int n_modes;
  std::vector<cplx> u_coeffs;
  std::vector<cplx> v_coeffs;
  double residual_norm;  // NaN until refined
  int iterations = 0;
  ModelParams params;

  cplx u(int n) const { return u_coeffs[static_cast<std::size_t>(n + n_modes)]; }
  cplx v(int n) const { return v_coeffs[static_cast<std::size_t>(n + n_modes)]; }
  cplx& u(int n) { return u_coeffs[static_cast<std::size_t>(n + n_modes)]; }
  cplx& v(int n) { return v_coeffs[static_cast<std::size_t>(n + n_modes)]; }

  double u_at(double x) const;
  double v_at(double x) const;
  // Amplitude of the fundamental, 2 |u_1|.
  double fundamental_amplitude() const { return 2.0 * std::abs(u(1)); }
};

/// sqrt((alpha0 - q0^2) / (3 + gamma)). DomainError for gamma <= -3 or
/// q0^2 >= alpha0.
double amplitude_fixed_point(const ModelParams& params);

/// u = 2 eps a cos(kc(x + x0)), v = -2 eps^2 a^2 gamma cos(2 kc(x + x0)) with
/// a = amplitude_fixed_point. Modes +-1 of u and +-2 of v only. Requires
/// n_modes >= 2.
PeriodicEquilibrium leading_order(const ModelParams& params, int n_modes = 16);

/// Residual of the truncated stationary system, modes |n| <= N:
///   F_u(n) = [-(1 - (n kc)^2)^2 + alpha] u_n + (u v)_n - (u^3)_n
///   F_v(n) = -(n kc)^2 [v_n + gamma (u^2)_n]
/// Returned as the pair of coefficient vectors (index n + N).
std::pair<std::vector<cplx>, std::vector<cplx>> stationary_residual(const PeriodicEquilibrium& eq);

/// Max modulus over all entries of stationary_residual.
double residual_sup(const PeriodicEquilibrium& eq);

/// Newton's method on the real unknowns Re u_0, (Re, Im) u_n for n >= 1 and
/// (Re, Im) v_n for n >= 1, in the frame translated by x0. v_0 = 0 is never an
/// unknown and Im u_1 = 0 pins the translation; the redundant equation
/// Im F_u(1) is dropped. The solution is translated back by x0 at the end.
/// NumericalError on non-convergence or a singular Jacobian.
PeriodicEquilibrium newton_refine(const PeriodicEquilibrium& start, double tol = 1e-12,
                                  int max_iter = 50);

/// Same coefficients padded with zeros to more modes.
PeriodicEquilibrium embed(const PeriodicEquilibrium& eq, int n_modes);

/// Places the equilibrium on a grid of n_periods pattern periods.
FieldPair to_field(const PeriodicEquilibrium& eq, int n_grid, int n_periods);

/// Real-coordinate Jacobian of the Newton system at eq (x0 frame). Exposed
/// for verification against finite differences.
struct NewtonSystem {
  std::vector<double> unknowns;
  std::vector<double> equations;
  std::vector<std::vector<double>> jacobian;
};
NewtonSystem newton_system(const PeriodicEquilibrium& eq_in_frame);
PeriodicEquilibrium from_unknowns(const PeriodicEquilibrium& shape, const std::vector<double>& x);

nlohmann::json periodic_json(const PeriodicEquilibrium& eq);
/// Samples x, u(x), v(x) on one period.
Table periodic_samples(const PeriodicEquilibrium& eq, int points);

}  // namespace patternfront
