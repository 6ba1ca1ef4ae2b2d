#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "patternfront/params.hpp"

namespace patternfront {

struct Table;
using cplx = std::complex<double>;

/// Point of the reduced system on the center manifold: envelope A, its slope
/// B = dA/dxi and the mean mode W0 (real).
struct ReducedState {
  cplx A;
  cplx B;
  double W0 = 0.0;

  // Real coordinates (Re A, Im A, Re B, Im B, W0).
  Eigen::Matrix<double, 5, 1> coords() const;
  static ReducedState from_coords(const Eigen::Matrix<double, 5, 1>& x);
  double norm() const { return coords().norm(); }
};

/// Leading-order reduced system (remainder terms in eps dropped):
///   A'  = B
///   B'  = (-alpha0 A - c0 B - A W0 + 3(1 + gamma) A |A|^2) / 4
///   W0' = -c0 W0 + 2 c0 gamma |A|^2
ReducedState reduced_rhs(const ReducedState& s, const ModelParams& params);

/// gamma -> infinity limit in the variables A~ = sqrt((3+g)/alpha0) A,
/// W~ = (3+g)/(2 alpha0 g) W0:
///   A~' = B~
///   B~' = (-c0 B~ - alpha0 A~ - 2 alpha0 A~ W~ + 3 alpha0 A~ |A~|^2) / 4
///   W~' = -c0 W~ + c0 |A~|^2
ReducedState limiting_rhs(const ReducedState& s, const ModelParams& params);

/// H = 2|B|^2 + (alpha0/2)|A|^2 - (3/4)|A|^4; decreases at rate c0 |B|^2 when
/// gamma = 0 and W0 = 0.
double lyapunov_H(cplx A, cplx B, const ModelParams& params);

enum class FixedPointKind { trivial, circle };

struct Linearization {
  Eigen::Matrix<double, 5, 5> jacobian;
  std::array<cplx, 5> eigenvalues;  // descending real part
  Eigen::Matrix<cplx, 5, 5> eigenvectors;  // columns match eigenvalues
};

/// Analytic Jacobian in the real coordinates and its eigendecomposition.
Linearization linearize(const ReducedState& at, const ModelParams& params);

struct FixedPointInfo {
  ReducedState state;
  FixedPointKind kind = FixedPointKind::trivial;
  std::array<cplx, 5> eigenvalues{};
  std::optional<Eigen::Matrix<double, 5, 1>> unstable_dir;  // unit, when one real positive
};

struct FixedPointList {
  std::vector<FixedPointInfo> points;
  std::string notice;  // set when the circle is omitted
};

/// The origin and the phi = 0 point (sqrt(alpha0/(3+g)), 0, 2 g alpha0/(3+g))
/// of the circle; the circle is omitted for gamma <= -3.
FixedPointList fixed_points(const ModelParams& params);

/// One character per eigenvalue: '+', '0' or '-' by the sign of the real part
/// (|Re| <= tol counts as zero).
std::string signature(const std::array<cplx, 5>& eigenvalues, double tol = 1e-9);

struct ShootOptions {
  double atol = 1e-10;
  double rtol = 1e-10;
  double tol_origin = 1e-6;
  double escape_radius = 0.0;  // 0: 10 |circle point|
  double xi_max = 0.0;         // 0: 200 / min |Re lambda_stable| at the origin
  double sample_dxi = 0.01;    // spacing of the dense samples
};

enum class ShootOutcome { success, escaped, timeout, step_underflow };
const char* to_string(ShootOutcome outcome);

struct TrajectoryPoint {
  double xi;
  ReducedState state;
};

struct ShootResult {
  ShootOutcome outcome = ShootOutcome::timeout;
  std::string reason;
  std::vector<TrajectoryPoint> trajectory;  // uniform in xi, plus the final point
  double unstable_eigenvalue = 0.0;
  double delta = 0.0;
  double terminal_norm = 0.0;
  bool ok() const { return outcome == ShootOutcome::success; }
};

/// Integrates from circle + delta * v (v the unit unstable eigenvector, signed
/// so that |A|^2 decreases initially) with adaptive Dormand-Prince until the
/// state is within tol_origin of the origin (success), leaves escape_radius,
/// or xi exceeds xi_max. DomainError unless c0^2 > 16 alpha0, gamma > -3 and
/// 0 < delta <= 1e-2.
ShootResult shoot_heteroclinic(const ModelParams& params, double delta,
                               const ShootOptions& options = {});

/// Columns xi, re_A, im_A, re_B, im_B, W0, H.
Table trajectory_table(const std::vector<TrajectoryPoint>& trajectory, const ModelParams& params);

/// max over interior samples of |dH/dxi + c0 |B|^2|, with dH/dxi from a
/// five-point difference of H along uniformly spaced samples.
double lyapunov_defect(const std::vector<TrajectoryPoint>& trajectory, const ModelParams& params);

}  // namespace patternfront
