#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "patternfront/field.hpp"
#include "patternfront/params.hpp"
#include "patternfront/reduced.hpp"

namespace patternfront {

/// v = w - gamma u^2 (inverse of w = v + gamma u^2). DomainError on size mismatch.
std::vector<double> w_to_v(std::span<const double> u, std::span<const double> w, double gamma);
std::vector<double> v_to_w(std::span<const double> u, std::span<const double> v, double gamma);

enum class Interpolation {
  monotone_cubic,   // PCHIP on |A| and W0
  quintic_hermite,  // values, first and second derivatives from the reduced flow
};

struct EnvelopeDerivatives {
  std::array<double, 5> A{};  // d^k|A|/dy^k, k = 0..4
  std::array<double, 5> W{};  // d^k W0/dy^k
};

/// Envelope of a modulating front in the slow variable y = eps x - eps^2 c0 t.
/// Samples come from a reduced trajectory, shifted so that |A| crosses half
/// its pattern value at y = 0. Outside the sampled range the envelope is held
/// at the circle point (y -> -inf) or at the origin (y -> +inf).
class FrontProfile {
 public:
  static FrontProfile from_trajectory(const ShootResult& shot, const ModelParams& params,
                                      Interpolation interp = Interpolation::monotone_cubic);
  /// Envelope frozen at one state on [y_min, y_max]; reaches_origin is set
  /// when the state is the origin.
  static FrontProfile constant(const ModelParams& params, double A_abs, double W0, double y_min,
                               double y_max);

  const std::vector<double>& y_samples() const { return y_; }
  const std::vector<double>& A_abs() const { return a_; }
  const std::vector<double>& W0() const { return w_; }
  const ModelParams& params() const { return params_; }

  double y_min() const { return y_.front(); }
  double y_max() const { return y_.back(); }
  bool reaches_origin() const { return reaches_origin_; }
  double A_left() const { return a_left_; }
  double W_left() const { return w_left_; }

  double A_at(double y) const;
  double W_at(double y) const;

  /// Derivatives of the envelope from the reduced flow at the interpolated
  /// state. Requires quintic_hermite and a trajectory in the real slice.
  EnvelopeDerivatives derivatives(double y) const;

 private:
  explicit FrontProfile(const ModelParams& params) : params_(params) {}
  void build_interpolants();

  ModelParams params_;
  Interpolation interp_ = Interpolation::monotone_cubic;
  std::vector<double> y_, a_, w_, da_, dda_, dw_, ddw_;
  bool reaches_origin_ = false;
  bool constant_ = false;
  double a_left_ = 0.0, w_left_ = 0.0, a_right_ = 0.0, w_right_ = 0.0;
  std::function<double(double)> a_val_, a_d1_, w_val_;
};

enum class FrontLayout {
  single,    // one front at x_front; pattern to its left
  mirrored,  // pattern around a mirror point, fronts on both sides; periodic-friendly
};

struct FrontPlacement {
  FrontLayout layout = FrontLayout::mirrored;
  double x_front = 0.0;  // single layout only
};

/// Geometry of the mirrored layout on a box of length L: the mirror point is
/// the carrier maximum nearest L/6 and the right-moving front starts L/6 to
/// its right.
struct MirroredGeometry {
  double mirror;
  double front;
};
MirroredGeometry mirrored_geometry(double length, const ModelParams& params);

/// Slow variable at (x, t) for the chosen layout.
double front_y(double x, double t, double length, const FrontPlacement& place,
               const ModelParams& params);

/// u_f = eps 2|A(y)| cos(x + x0),
/// v_f = eps^2 [W0(y) - 2 g |A(y)|^2 - 2 g |A(y)|^2 cos(2(x + x0))].
/// DomainError when the grid needs y beyond the trajectory end and the
/// trajectory did not reach the origin, or when kc != 1.
FieldPair assemble_front(const FrontProfile& profile, double t, const FieldPair& grid,
                         const FrontPlacement& place = {});

}  // namespace patternfront
