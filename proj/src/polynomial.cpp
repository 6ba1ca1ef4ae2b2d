#include "patternfront/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "patternfront/errors.hpp"

namespace patternfront {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == cplx{}) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(cplx{});
}

Polynomial Polynomial::from_roots(std::span<const cplx> roots, cplx leading) {
  Polynomial p({leading});
  for (const cplx r : roots) p = p * Polynomial({-r, 1.0});
  return p;
}

Polynomial Polynomial::monomial(cplx c, int power) {
  std::vector<cplx> cs(static_cast<std::size_t>(power) + 1);
  cs[power] = c;
  return Polynomial(std::move(cs));
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Polynomial::magnitude_bound(cplx z) const {
  const double r = std::abs(z);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

Polynomial Polynomial::derivative(int order) const {
  std::vector<cplx> cs = coeffs_;
  for (int o = 0; o < order; ++o) {
    if (cs.size() <= 1) return Polynomial({0.0});
    std::vector<cplx> d(cs.size() - 1);
    for (std::size_t k = 1; k < cs.size(); ++k) d[k - 1] = cs[k] * static_cast<double>(k);
    cs = std::move(d);
  }
  return Polynomial(std::move(cs));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<cplx> cs(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t k = 0; k < cs.size(); ++k)
    cs[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
  return Polynomial(std::move(cs));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * cplx(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::vector<cplx> cs(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) cs[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(cs));
}

Polynomial Polynomial::operator*(cplx s) const {
  std::vector<cplx> cs = coeffs_;
  for (auto& c : cs) c *= s;
  return Polynomial(std::move(cs));
}

namespace {

// One root of p near z by Laguerre's method.
cplx laguerre(const Polynomial& p, cplx z) {
  const int n = p.degree();
  const double nd = n;
  constexpr int kMaxIter = 200;
  // Fractional steps break limit cycles.
  static constexpr double frac[] = {0.5, 0.25, 0.75, 0.13, 0.38, 0.62, 0.88, 1.0};
  for (int iter = 1; iter <= kMaxIter; ++iter) {
    cplx b = p.coeffs().back(), d{}, f{};
    double err = std::abs(b);
    const double az = std::abs(z);
    for (int j = n - 1; j >= 0; --j) {
      f = z * f + d;
      d = z * d + b;
      b = z * b + p.coeffs()[j];
      err = std::abs(b) + az * err;
    }
    err *= std::numeric_limits<double>::epsilon();
    if (std::abs(b) <= err) return z;
    const cplx g = d / b;
    const cplx g2 = g * g;
    const cplx h = g2 - 2.0 * f / b;
    const cplx sq = std::sqrt((nd - 1.0) * (nd * h - g2));
    cplx gp = g + sq, gm = g - sq;
    const double abp = std::abs(gp), abm = std::abs(gm);
    if (abp < abm) gp = gm;
    const cplx dx = std::max(abp, abm) > 0.0
                        ? nd / gp
                        : std::polar(1.0 + az, static_cast<double>(iter));
    const cplx z1 = z - dx;
    if (z == z1) return z;
    if (iter % 10 != 0)
      z = z1;
    else
      z -= frac[(iter / 10) % 8] * dx;
  }
  return z;
}

cplx newton(const Polynomial& p, const Polynomial& dp, cplx z, int max_iter = 60) {
  for (int i = 0; i < max_iter; ++i) {
    const cplx d = dp(z);
    if (d == cplx{}) break;
    const cplx step = p(z) / d;
    const cplx z1 = z - step;
    if (!std::isfinite(z1.real()) || !std::isfinite(z1.imag())) break;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(z))) {
      z = z1;
      break;
    }
    z = z1;
  }
  return z;
}

}  // namespace

std::vector<cplx> laguerre_roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) return {};
  std::vector<cplx> roots;
  roots.reserve(static_cast<std::size_t>(n));
  std::vector<cplx> work = p.coeffs();
  for (int deg = n; deg >= 1; --deg) {
    Polynomial q(std::vector<cplx>(work.begin(), work.begin() + deg + 1));
    cplx z = laguerre(q, cplx{});
    if (std::abs(z.imag()) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(z.real()))
      z = cplx(z.real(), 0.0);
    roots.push_back(z);
    // Synthetic division by (x - z).
    cplx b = work[deg];
    for (int j = deg - 1; j >= 0; --j) {
      const cplx c = work[j];
      work[j] = b;
      b = z * b + c;
    }
    work.resize(static_cast<std::size_t>(deg));
  }
  return polish_roots(p, std::move(roots));
}

std::vector<cplx> polish_roots(const Polynomial& p, std::vector<cplx> roots, double cluster_tol) {
  const Polynomial dp = p.derivative();
  const std::size_t n = roots.size();

  // Single-linkage clusters.
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  const auto find = [&](int i) {
    while (label[i] != i) i = label[i] = label[label[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) <= cluster_tol * (1.0 + std::abs(roots[i])))
        label[find(static_cast<int>(j))] = find(static_cast<int>(i));

  std::vector<cplx> out(n);
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> members;
    for (std::size_t j = i; j < n; ++j)
      if (find(static_cast<int>(j)) == find(static_cast<int>(i))) members.push_back(j);

    std::vector<cplx> single(members.size());
    double single_resid = 0.0;
    for (std::size_t m = 0; m < members.size(); ++m) {
      single[m] = newton(p, dp, roots[members[m]]);
      single_resid = std::max(single_resid, std::abs(p(single[m])));
    }

    bool use_cluster = false;
    cplx center{};
    const int mult = static_cast<int>(members.size());
    if (mult >= 2 && mult <= p.degree()) {
      for (const auto m : members) center += roots[m];
      center /= static_cast<double>(mult);
      const Polynomial q = p.derivative(mult - 1);
      const cplx z = newton(q, q.derivative(), center);
      const double resid = std::abs(p(z));
      const double floor =
          64.0 * std::numeric_limits<double>::epsilon() * p.magnitude_bound(z);
      if (std::isfinite(resid) && resid <= std::max(10.0 * single_resid, floor)) {
        use_cluster = true;
        center = z;
      }
    }
    for (std::size_t m = 0; m < members.size(); ++m) {
      out[members[m]] = use_cluster ? center : single[m];
      done[members[m]] = true;
    }
  }
  return out;
}

Polynomial characteristic_polynomial(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("characteristic_polynomial: not square");
  const int n = static_cast<int>(m.rows());
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
  c[n] = 1.0;
  Eigen::MatrixXcd mk = Eigen::MatrixXcd::Zero(n, n);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * id;
    c[n - k] = -(m * mk).trace() / static_cast<double>(k);
  }
  return Polynomial(std::move(c));
}

}  // namespace patternfront
