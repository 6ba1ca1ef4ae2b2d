#include "patternfront/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>

#include "patternfront/errors.hpp"
#include "patternfront/io.hpp"

namespace patternfront {

namespace {

constexpr cplx I{0.0, 1.0};

std::vector<int> bottleneck_permutation(std::span<const cplx> values,
                                        std::span<const cplx> targets) {
  if (values.size() != targets.size())
    throw std::invalid_argument("eigenvalue lists differ in size");
  const std::size_t n = values.size();
  if (n > 8) throw std::invalid_argument("bottleneck matching limited to 8 elements");
  std::vector<int> perm(n), best(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best_max = std::numeric_limits<double>::infinity();
  double best_sum = best_max;
  do {
    double mx = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::abs(values[perm[i]] - targets[i]);
      mx = std::max(mx, d);
      sum += d;
    }
    if (mx < best_max || (mx == best_max && sum < best_sum)) {
      best_max = mx;
      best_sum = sum;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool central_branch_sh(int n, int m) { return m == 0 && (n == 1 || n == -1); }

}  // namespace

std::pair<double, double> dispersion_curves(double k, const ModelParams& params) {
  const double s = 1.0 - k * k;
  return {-s * s + params.alpha(), -k * k};
}

SpectrumSlice build_blocks(int n, const ModelParams& params) {
  SpectrumSlice s;
  s.n = n;
  s.mu = n * params.kc();
  const double mu = s.mu;
  const double c = params.speed();
  const double one_m = 1.0 - mu * mu;
  s.L_sh(0, 1) = s.L_sh(1, 2) = s.L_sh(2, 3) = 1.0;
  s.L_sh(3, 0) = -one_m * one_m + params.alpha();
  s.L_sh(3, 1) = -4.0 * I * mu * one_m + c;
  s.L_sh(3, 2) = 6.0 * mu * mu - 2.0;
  s.L_sh(3, 3) = -4.0 * I * mu;
  s.L_con(0, 1) = 1.0;
  s.L_con(1, 0) = mu * mu;
  s.L_con(1, 1) = 2.0 * I * mu - c;
  return s;
}

Polynomial char_poly_sh(int n, const ModelParams& params) {
  const SpectrumSlice s = build_blocks(n, params);
  // -det(l I - L) = -l^4 + D l^3 + C l^2 + B l + A for a companion matrix.
  return Polynomial({s.L_sh(3, 0), s.L_sh(3, 1), s.L_sh(3, 2), s.L_sh(3, 3), -1.0});
}

Polynomial char_poly_con(int n, const ModelParams& params) {
  const SpectrumSlice s = build_blocks(n, params);
  return Polynomial({-s.L_con(1, 0), -s.L_con(1, 1), 1.0});
}

std::vector<cplx> eigenvalues_by_matrix(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver did not converge");
  std::vector<cplx> vals(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  return polish_roots(characteristic_polynomial(m), std::move(vals));
}

std::vector<cplx> eigenvalues_by_polynomial(const Polynomial& p) { return laguerre_roots(p); }

double multiset_distance(std::span<const cplx> a, std::span<const cplx> b) {
  const auto perm = bottleneck_permutation(a, b);
  double mx = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) mx = std::max(mx, std::abs(a[perm[i]] - b[i]));
  return mx;
}

std::vector<double> matched_errors(std::span<const cplx> values, std::span<const cplx> targets) {
  const auto perm = bottleneck_permutation(values, targets);
  std::vector<double> err(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) err[i] = std::abs(values[perm[i]] - targets[i]);
  return err;
}

void sort_eigenvalues(std::span<cplx> values) {
  std::stable_sort(values.begin(), values.end(), [](cplx a, cplx b) {
    const double ra = std::round(a.imag()), rb = std::round(b.imag());
    if (ra != rb) return ra < rb;
    return a.real() < b.real();
  });
}

namespace {

template <std::size_t N>
std::array<cplx, N> checked_roots(const Eigen::MatrixXcd& m, const Polynomial& p, int n,
                                  const char* block) {
  std::vector<cplx> by_matrix = eigenvalues_by_matrix(m);
  const std::vector<cplx> by_poly = eigenvalues_by_polynomial(p);
  double scale = 1.0;
  for (const cplx z : by_matrix) scale = std::max(scale, std::abs(z));
  const double dist = multiset_distance(by_matrix, by_poly);
  if (!(dist <= 1e-8 * scale))
    throw NumericalError(std::string(block) + " block n=" + std::to_string(n) +
                         ": matrix and polynomial roots disagree by " + std::to_string(dist));
  const int deg = p.degree();
  for (const cplx z : by_matrix) {
    const double tol = 1e-9 * (1.0 + std::pow(std::abs(z), deg)) * std::abs(p.coeffs().back());
    if (!(std::abs(p(z)) <= tol))
      throw NumericalError(std::string(block) + " block n=" + std::to_string(n) +
                           ": root residual too large");
  }
  sort_eigenvalues(by_matrix);
  std::array<cplx, N> out{};
  std::copy_n(by_matrix.begin(), N, out.begin());
  return out;
}

}  // namespace

SpectrumSlice exact_eigenvalues(SpectrumSlice slice, const ModelParams& params) {
  slice.exact_sh = checked_roots<4>(slice.L_sh, char_poly_sh(slice.n, params), slice.n, "SH");
  slice.exact_con =
      checked_roots<2>(slice.L_con, char_poly_con(slice.n, params), slice.n, "conservation");
  return slice;
}

namespace {

// With skip_central the n = +-1 central pair is left as NaN, so Delta is not needed.
AsymptoticValues expansions(int n, const ModelParams& params, bool next_order,
                            bool skip_central = false) {
  if (params.kc() != 1.0)
    throw DomainError("eigenvalue expansions assume kc = 1 (eps * q0 = 0)");
  const double eps = params.eps();
  const double c0 = params.c0();
  const double se = std::sqrt(eps);
  AsymptoticValues out;
  int k = 0;
  for (const int m : {n + 1, n - 1}) {
    if (central_branch_sh(n, m) && skip_central) {
      out.sh[k++] = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
      out.sh[k++] = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    } else if (central_branch_sh(n, m)) {
      const double delta = derived_delta(params);
      for (const double sgn : {1.0, -1.0}) {
        const double d0 = (-c0 + sgn * delta) / 8.0;
        cplx val = eps * d0;
        if (next_order) {
          // 8 d0 + c0 = sgn * Delta; the n = -1 pair is the conjugate.
          cplx d1 = 4.0 * I * d0 * d0 * d0 / (sgn * delta);
          if (n == -1) d1 = std::conj(d1);
          val += eps * eps * d1;
        }
        out.sh[k++] = val;
      }
    } else {
      const cplx center = -I * static_cast<double>(m);
      const cplx s1 = std::sqrt(cplx(0.0, c0 * m)) / 2.0;
      // eps^1 term: -c0 n/8 about -i(n-1), +c0 n/8 about -i(n+1).
      const double s2 = (m == n - 1 ? -1.0 : 1.0) * c0 * n / 8.0;
      for (const double sgn : {1.0, -1.0}) {
        cplx val = center + sgn * se * s1;
        if (next_order) val += eps * s2;
        out.sh[k++] = val;
      }
    }
  }
  if (n == 0) {
    out.con = {cplx{0.0}, cplx{-eps * c0}};
  } else {
    const cplx branch = std::polar(1.0, 0.75 * std::numbers::pi);
    const cplx s1 = branch * std::sqrt(cplx(n * c0));
    for (int j = 0; j < 2; ++j) {
      const double sgn = j == 0 ? 1.0 : -1.0;
      cplx val = I * static_cast<double>(n) + sgn * se * s1;
      if (next_order) val += -eps * c0 / 2.0;
      out.con[j] = val;
    }
  }
  if (!skip_central) sort_eigenvalues(out.sh);
  sort_eigenvalues(out.con);
  return out;
}

}  // namespace

AsymptoticValues asymptotic_eigenvalues(int n, const ModelParams& params) {
  return expansions(n, params, false);
}

AsymptoticValues asymptotic_eigenvalues_next_order(int n, const ModelParams& params) {
  return expansions(n, params, true);
}

namespace {

SpectrumSlice full_slice(int n, const ModelParams& params) {
  SpectrumSlice s = exact_eigenvalues(build_blocks(n, params), params);
  const bool central_ok =
      (n != 1 && n != -1) || params.c0() * params.c0() >= 16.0 * params.alpha0();
  if (params.kc() == 1.0 && central_ok) {
    const AsymptoticValues a = asymptotic_eigenvalues(n, params);
    s.asym_sh = a.sh;
    s.asym_con = a.con;
    s.has_asym = true;
  }
  return s;
}

}  // namespace

std::vector<SpectrumSlice> compute_spectrum(int n_max, const ModelParams& params) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  const int count = 2 * n_max + 1;
  std::vector<SpectrumSlice> out(static_cast<std::size_t>(count));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      out[i] = full_slice(i - n_max, params);
    } catch (...) {
#pragma omp critical(patternfront_spectrum_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<SpectrumSlice> compute_spectrum_serial(int n_max, const ModelParams& params) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  std::vector<SpectrumSlice> out;
  out.reserve(static_cast<std::size_t>(2 * n_max + 1));
  for (int n = -n_max; n <= n_max; ++n) out.push_back(full_slice(n, params));
  return out;
}

CentralReport classify_central(std::vector<SpectrumSlice>& slices, const ModelParams& params) {
  const double eps = params.eps();
  if (!(eps > 0.0)) throw DomainError("central/hyperbolic classification needs eps > 0");
  for (int need = -3; need <= 3; ++need) {
    const bool found = std::any_of(slices.begin(), slices.end(),
                                   [need](const SpectrumSlice& s) { return s.n == need; });
    if (!found) throw DomainError("classification needs slices covering |n| <= 3");
  }
  const double c0 = params.c0();
  const double disc = c0 * c0 - 16.0 * params.alpha0();
  const double delta_re = disc > 0.0 ? std::sqrt(disc) : 0.0;
  const double ceiling = eps * std::max(c0, (c0 + delta_re) / 8.0);

  // Predicted hyperbolic floor over the non-central branches.
  double floor = std::numeric_limits<double>::infinity();
  for (const auto& s : slices) {
    const AsymptoticValues a = expansions(s.n, params, true, true);
    for (const cplx z : a.sh)
      if (!std::isnan(z.real())) floor = std::min(floor, std::abs(z.real()));
    if (s.n != 0)
      for (const cplx z : a.con) floor = std::min(floor, std::abs(z.real()));
  }

  CentralReport rep;
  rep.threshold = std::sqrt(ceiling * std::max(floor, ceiling));
  rep.min_hyperbolic = std::numeric_limits<double>::infinity();
  for (auto& s : slices) {
    for (int j = 0; j < 6; ++j) {
      const cplx z = j < 4 ? s.exact_sh[j] : s.exact_con[j - 4];
      const double re = std::abs(z.real());
      const bool central = re <= rep.threshold;
      s.central_flags[j] = central;
      if (central) {
        rep.central.push_back({s.n, j < 4, z});
        rep.max_central = std::max(rep.max_central, re);
      } else {
        rep.min_hyperbolic = std::min(rep.min_hyperbolic, re);
      }
    }
  }
  rep.central_count = static_cast<int>(rep.central.size());
  rep.gap_constant = rep.min_hyperbolic / std::sqrt(eps);
  rep.ratio = rep.max_central / rep.min_hyperbolic;
  rep.ok = rep.central_count == 6;
  if (!rep.ok) {
    rep.message = "expected 6 central eigenvalues, found " + std::to_string(rep.central_count) + ":";
    for (const auto& c : rep.central)
      rep.message += " (n=" + std::to_string(c.n) + (c.sh_block ? " SH " : " con ") +
                     format_double(c.lambda.real()) + (c.lambda.imag() < 0 ? "" : "+") +
                     format_double(c.lambda.imag()) + "i)";
  }
  return rep;
}

EigenPairing adjoint_pairing(int sign, const ModelParams& params) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("adjoint_pairing: sign must be +-1");
  if (!(params.eps() > 0.0)) throw DomainError("adjoint pairing needs eps > 0");
  if (!front_regime(params)) throw DomainError("adjoint pairing needs c0^2 > 16 alpha0");
  const double delta = derived_delta(params);
  const cplx target = params.eps() * (-params.c0() + sign * delta) / 8.0;

  const SpectrumSlice s = exact_eigenvalues(build_blocks(1, params), params);
  EigenPairing out;
  out.lambda = *std::min_element(s.exact_sh.begin(), s.exact_sh.end(), [&](cplx a, cplx b) {
    return std::abs(a - target) < std::abs(b - target);
  });

  const Eigen::Matrix4cd shifted = s.L_sh - out.lambda * Eigen::Matrix4cd::Identity();
  Eigen::JacobiSVD<Eigen::Matrix4cd> right(shifted, Eigen::ComputeFullV);
  Eigen::JacobiSVD<Eigen::Matrix4cd> left(shifted.adjoint().eval(), Eigen::ComputeFullV);
  const auto& sv = right.singularValues();
  if (!(sv(2) > 1e-12 * sv(0)))
    throw NumericalError("eigenvalue is numerically defective; eigenvectors not determined");

  out.phi = right.matrixV().col(3);
  if (std::abs(out.phi(0)) == 0.0) throw NumericalError("right eigenvector has zero first entry");
  out.phi /= out.phi(0);
  out.psi = left.matrixV().col(3);
  if (std::abs(out.psi(3)) == 0.0) throw NumericalError("adjoint eigenvector has zero last entry");
  out.psi /= out.psi(3);

  out.pairing = out.psi.dot(out.phi);  // conjugates psi
  out.minus_dp = -char_poly_sh(1, params).derivative()(out.lambda);
  out.residual = (s.L_sh * out.phi - out.lambda * out.phi).norm();
  return out;
}

std::pair<Eigen::Matrix4cd, Eigen::Matrix2cd> build_extended_blocks(int n,
                                                                    const ModelParams& params,
                                                                    const ExtendedModel& model) {
  const double mu = n * params.kc();
  const double one_m = 1.0 - mu * mu;
  Eigen::Matrix4cd sh = Eigen::Matrix4cd::Zero();
  sh(0, 1) = sh(1, 2) = sh(2, 3) = 1.0;
  sh(3, 0) = -one_m * one_m + params.alpha() - I * model.cu * mu * mu * mu + I * model.beta * mu;
  sh(3, 1) = -4.0 * I * mu * one_m + model.c - 3.0 * model.cu * mu * mu;
  sh(3, 2) = 6.0 * mu * mu - 2.0 + 3.0 * I * model.cu * mu;
  sh(3, 3) = -4.0 * I * mu + model.cu;
  Eigen::Matrix2cd con = Eigen::Matrix2cd::Zero();
  con(0, 1) = 1.0;
  con(1, 0) = mu * mu + I * mu * (model.cv + model.beta);
  con(1, 1) = 2.0 * I * mu - model.c - model.cv;
  return {sh, con};
}

AsymptoticValues extended_model_spectrum(int n, const ModelParams& params,
                                         const ExtendedModel& model) {
  const auto [sh, con] = build_extended_blocks(n, params, model);
  std::vector<cplx> a = eigenvalues_by_matrix(sh);
  std::vector<cplx> b = eigenvalues_by_matrix(con);
  sort_eigenvalues(a);
  sort_eigenvalues(b);
  AsymptoticValues out;
  std::copy_n(a.begin(), 4, out.sh.begin());
  std::copy_n(b.begin(), 2, out.con.begin());
  return out;
}

ExtendedGapReport extended_spectral_gap(int n_max, const ModelParams& params,
                                        const ExtendedModel& model, double central_tol) {
  ExtendedGapReport rep;
  rep.spectra.resize(static_cast<std::size_t>(2 * n_max + 1));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < 2 * n_max + 1; ++i)
    rep.spectra[i] = {i - n_max, extended_model_spectrum(i - n_max, params, model)};
  rep.min_noncentral_re = std::numeric_limits<double>::infinity();
  for (const auto& [n, vals] : rep.spectra) {
    for (const cplx z : vals.sh) {
      if (std::abs(z) <= central_tol)
        ++rep.central_count;
      else
        rep.min_noncentral_re = std::min(rep.min_noncentral_re, std::abs(z.real()));
    }
    for (const cplx z : vals.con) {
      if (std::abs(z) <= central_tol)
        ++rep.central_count;
      else
        rep.min_noncentral_re = std::min(rep.min_noncentral_re, std::abs(z.real()));
    }
  }
  return rep;
}

Table spectrum_table(std::span<const SpectrumSlice> slices) {
  Table t;
  t.columns = {"n", "block", "branch", "exact_re", "exact_im", "asym_re", "asym_im", "central"};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& s : slices) {
    std::vector<int> perm_sh(4), perm_con(2);
    std::iota(perm_sh.begin(), perm_sh.end(), 0);
    std::iota(perm_con.begin(), perm_con.end(), 0);
    if (s.has_asym) {
      // Align each exact root with the expansion it belongs to.
      perm_sh = bottleneck_permutation(s.asym_sh, s.exact_sh);
      perm_con = bottleneck_permutation(s.asym_con, s.exact_con);
    }
    for (int j = 0; j < 6; ++j) {
      const bool sh = j < 4;
      const int b = sh ? j : j - 4;
      const cplx ex = sh ? s.exact_sh[b] : s.exact_con[b];
      cplx as{nan, nan};
      if (s.has_asym) as = sh ? s.asym_sh[perm_sh[b]] : s.asym_con[perm_con[b]];
      t.add_row({static_cast<double>(s.n), sh ? 0.0 : 1.0, static_cast<double>(b), ex.real(),
                 ex.imag(), as.real(), as.imag(), s.central_flags[j] ? 1.0 : 0.0});
    }
  }
  return t;
}

Table extended_spectrum_table(const ExtendedGapReport& report) {
  Table t;
  t.columns = {"n", "block", "branch", "re", "im"};
  for (const auto& [n, vals] : report.spectra) {
    for (int j = 0; j < 4; ++j)
      t.add_row({static_cast<double>(n), 0.0, static_cast<double>(j), vals.sh[j].real(),
                 vals.sh[j].imag()});
    for (int j = 0; j < 2; ++j)
      t.add_row({static_cast<double>(n), 1.0, static_cast<double>(j), vals.con[j].real(),
                 vals.con[j].imag()});
  }
  return t;
}

}  // namespace patternfront
