#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

namespace patternfront {

using cplx = std::complex<double>;

/// Dense complex polynomial, coefficients in ascending order of power.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);

  static Polynomial from_roots(std::span<const cplx> roots, cplx leading = 1.0);
  static Polynomial monomial(cplx c, int power);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx coeff(int k) const { return k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : cplx{}; }

  cplx operator()(cplx z) const;
  Polynomial derivative(int order = 1) const;

  // Sum_k |c_k| |z|^k, the natural scale for rounding error in p(z).
  double magnitude_bound(cplx z) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(cplx s) const;

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

/// All roots by Laguerre iteration with deflation, each polished against the
/// undeflated polynomial (see polish_roots).
std::vector<cplx> laguerre_roots(const Polynomial& p);

/// Newton polishing with cluster handling. Roots closer than
/// cluster_tol * (1 + |z|) are treated as one root of multiplicity m, which is
/// located as the nearby zero of the (m-1)-th derivative; the cluster estimate
/// is kept only if it is at least as consistent as individually polished roots.
std::vector<cplx> polish_roots(const Polynomial& p, std::vector<cplx> roots,
                               double cluster_tol = 1e-5);

/// det(z I - M) via the Faddeev-LeVerrier recursion.
Polynomial characteristic_polynomial(const Eigen::MatrixXcd& m);

}  // namespace patternfront
