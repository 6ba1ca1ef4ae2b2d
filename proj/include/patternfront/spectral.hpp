#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "patternfront/params.hpp"
#include "patternfront/polynomial.hpp"

namespace patternfront {

struct Table;

// Spatial dynamics of the linearization about (u, v) = (0, 0) in the frame
// xi = x - c t. Fourier mode n of the Swift-Hohenberg component obeys a
// fourth-order ODE in xi, written as the companion system U' = L_sh U with
// bottom row (A, B, C, D); the conservation component gives the 2x2 system
// V' = L_con V with bottom row (G, H). mu = n * kc.
//
//   A = -(1 - mu^2)^2 + alpha      B = -4 i mu (1 - mu^2) + c
//   C = 6 mu^2 - 2                 D = -4 i mu
//   G = mu^2                       H = 2 i mu - c
//
// The SH block uses d/dx -> d/dxi + i mu and the conservation block
// d/dx -> d/dxi - i mu. L_{-n} is the complex conjugate of L_n in both.

struct SpectrumSlice {
  int n = 0;
  double mu = 0.0;
  Eigen::Matrix4cd L_sh = Eigen::Matrix4cd::Zero();
  Eigen::Matrix2cd L_con = Eigen::Matrix2cd::Zero();
  std::array<cplx, 4> exact_sh{};
  std::array<cplx, 2> exact_con{};
  bool has_asym = false;
  std::array<cplx, 4> asym_sh{};
  std::array<cplx, 2> asym_con{};
  // Entries 0..3 refer to exact_sh, 4..5 to exact_con.
  std::array<bool, 6> central_flags{};
};

/// (lambda_u(k), lambda_v(k)) = (-(1 - k^2)^2 + alpha, -k^2).
std::pair<double, double> dispersion_curves(double k, const ModelParams& params);

SpectrumSlice build_blocks(int n, const ModelParams& params);

/// -det(lambda I - L_sh). For kc = 1 this equals
/// -(lambda + i(n+1))^2 (lambda + i(n-1))^2 + eps c0 lambda + eps^2 alpha0.
Polynomial char_poly_sh(int n, const ModelParams& params);

/// det(nu I - L_con) = (nu - i mu)^2 + c nu.
Polynomial char_poly_con(int n, const ModelParams& params);

/// Eigenvalues of a small dense matrix, each polished on the characteristic
/// polynomial of that matrix.
std::vector<cplx> eigenvalues_by_matrix(const Eigen::MatrixXcd& m);
/// Roots of the characteristic polynomial by Laguerre iteration.
std::vector<cplx> eigenvalues_by_polynomial(const Polynomial& p);

/// Bottleneck distance between two equally sized multisets of complex numbers
/// (minimum over pairings of the maximum pairwise distance).
double multiset_distance(std::span<const cplx> a, std::span<const cplx> b);

/// For each target value, the error of the element of `values` assigned to it
/// by the bottleneck-optimal pairing.
std::vector<double> matched_errors(std::span<const cplx> values, std::span<const cplx> targets);

/// Sort key used for all eigenvalue lists: (round(Im), Re).
void sort_eigenvalues(std::span<cplx> values);

/// Fills exact_sh/exact_con. Both root routes are computed and must agree to
/// 1e-8 (scaled by 1 + |lambda|), and every root must satisfy
/// |p(lambda)| <= 1e-9 (1 + |lambda|^4); otherwise NumericalError.
SpectrumSlice exact_eigenvalues(SpectrumSlice slice, const ModelParams& params);

struct AsymptoticValues {
  std::array<cplx, 4> sh{};
  std::array<cplx, 2> con{};
};

/// Leading-order expansions in eps. Near lambda = -i m (m = n +- 1, m != 0):
/// -i m +- eps^{1/2} sqrt(i c0 m) / 2; for m = 0: eps(-c0 +- Delta)/8.
/// Conservation block: i n +- eps^{1/2} e^{3 pi i/4} sqrt(n c0), and {0, -eps c0}
/// at n = 0. Square roots are principal. Requires kc = 1; DomainError for
/// n = +-1 when c0^2 < 16 alpha0.
AsymptoticValues asymptotic_eigenvalues(int n, const ModelParams& params);

/// Expansions carried one order further (eps^1 terms added to the eps^{1/2}
/// branches, eps^2 terms to the central pair). Used to place the
/// central/hyperbolic threshold.
AsymptoticValues asymptotic_eigenvalues_next_order(int n, const ModelParams& params);

/// Spectrum for n = -n_max..n_max, slices computed in parallel.
std::vector<SpectrumSlice> compute_spectrum(int n_max, const ModelParams& params);
/// Serial reference of compute_spectrum.
std::vector<SpectrumSlice> compute_spectrum_serial(int n_max, const ModelParams& params);

struct CentralEigenvalue {
  int n = 0;
  bool sh_block = true;
  cplx lambda;
};

struct CentralReport {
  bool ok = false;
  int central_count = 0;
  double threshold = 0.0;      // |Re lambda| <= threshold counts as central
  double max_central = 0.0;    // max |Re| among central eigenvalues
  double min_hyperbolic = 0.0; // min |Re| among the rest
  double gap_constant = 0.0;   // min_hyperbolic / sqrt(eps)
  double ratio = 0.0;          // max_central / min_hyperbolic
  std::vector<CentralEigenvalue> central;
  std::string message;
};

/// Flags central eigenvalues (sets central_flags) and summarizes the gap.
/// The threshold is the geometric mean of the predicted central ceiling
/// eps * max(c0, (c0 + Delta)/8) and the predicted hyperbolic floor from the
/// next-order expansions. ok is true iff exactly six eigenvalues are central.
/// DomainError for eps <= 0 or when the slices do not cover |n| <= 3.
CentralReport classify_central(std::vector<SpectrumSlice>& slices, const ModelParams& params);

struct EigenPairing {
  cplx lambda;
  Eigen::Vector4cd phi;  // right eigenvector, phi(0) = 1
  Eigen::Vector4cd psi;  // eigenvector of L^H for conj(lambda), psi(3) = 1
  cplx pairing;          // psi^H phi
  cplx minus_dp;         // -p_1'(lambda)
  double residual = 0.0; // |L phi - lambda phi|
};

/// Central eigenvalue lambda_1^{sign} ~ eps(-c0 + sign Delta)/8 of L_1^SH with
/// its eigenvector/adjoint pair. sign is +1 or -1.
EigenPairing adjoint_pairing(int sign, const ModelParams& params);

/// Extension with dispersion c_u u_xxx and advection c_v v_x, in the frame of a
/// front moving with speed c and a pattern with phase velocity beta:
///
///   A = -(1 - n^2)^2 + alpha - i c_u n^3 + i beta n
///   B = -4 i n (1 - n^2) + c - 3 c_u n^2
///   C = 6 n^2 - 2 + 3 i c_u n
///   D = -4 i n + c_u
///   G = n^2 + i n (c_v + beta)
///   H = 2 i n - c - c_v
///
/// The u u_x and (u^2)_x terms enter only the nonlinearity.
struct ExtendedModel {
  double cu = 0.0;
  double cv = 0.0;
  double c = 0.0;
  double beta = 0.0;

  // beta defaults to the leading-order phase velocity c_u.
  static ExtendedModel with_phase_velocity(double cu, double cv, double c) {
    return {cu, cv, c, cu};
  }
};

std::pair<Eigen::Matrix4cd, Eigen::Matrix2cd> build_extended_blocks(int n,
                                                                    const ModelParams& params,
                                                                    const ExtendedModel& model);

/// Exact eigenvalues of the extended blocks, sorted like exact_eigenvalues.
AsymptoticValues extended_model_spectrum(int n, const ModelParams& params,
                                         const ExtendedModel& model);

struct ExtendedGapReport {
  int central_count = 0;        // eigenvalues with |lambda| <= central_tol
  double min_noncentral_re = 0.0;
  std::vector<std::pair<int, AsymptoticValues>> spectra;
};

ExtendedGapReport extended_spectral_gap(int n_max, const ModelParams& params,
                                        const ExtendedModel& model, double central_tol = 1e-6);

/// One row per (n, block, branch): n, block (0 = SH, 1 = con), branch,
/// exact re/im, asymptotic re/im (NaN when unavailable), central flag.
Table spectrum_table(std::span<const SpectrumSlice> slices);
Table extended_spectrum_table(const ExtendedGapReport& report);

}  // namespace patternfront
