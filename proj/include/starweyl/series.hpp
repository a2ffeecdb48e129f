#pragma once

#include "starweyl/charpoly.hpp"

namespace starweyl {

/// One series solution C_j(x, lambda) = x^{mu_j} sum_k c_{jk} (rho x)^{nk}:
/// leading coefficient, reciprocal recurrence factors, truncation bookkeeping.
struct SeriesSolution {
  int index = 0;  // j, 1-based
  cplx mu;
  cplx c0;
  cvector inv_delta;  // 1 / Delta(mu_j + s n), s = 1..cap
  mutable int max_terms_used = 0;
  double tol = 1e-12;
};

/// The entire-in-lambda fundamental system {C_j} of the unperturbed singular
/// equation, its dual determinant solutions C*_j and the Cauchy Green's
/// function g(x, t, lambda). Normalization: c_{j0} = 1 for j < n and
/// c_{n0} = (det[mu_j^{nu-1}])^{-1}, so det[C_j^{(nu-1)}] == 1.
///
/// Powers x^mu use the principal branch (arg in (-pi, pi]); evaluation is
/// valid on the plane cut along x <= 0.
class CBasis {
 public:
  explicit CBasis(CharData cd, double tol = 1e-12, double r_max = 80.0);

  const CharData& chardata() const { return cd_; }
  const std::vector<SeriesSolution>& series() const { return sol_; }
  double r_max() const { return r_max_; }

  /// Derivatives 0..n-1 of C_j at (x, lambda); j is 1-based.
  cvector eval(int j, cplx x, cplx lambda) const;

  /// Full derivative table W[j-1][nu] for j = 1..n, nu = 0..n-1.
  std::vector<cvector> eval_all(cplx x, cplx lambda) const;

  /// Dual solutions C*_j: (n-1)x(n-1) minors over derivative orders 0..n-2
  /// with column n-j+1 removed.
  cvector duals(cplx x, cplx lambda) const;

  /// nu-th x-derivative of g(x, t, lambda) = sum_j (-1)^{n-j} C_j(x) C*_{n-j+1}(t).
  cplx green(double x, double t, cplx lambda, int nu) const;

  /// All x-derivatives 0..n-1 of g at once.
  cvector green_all(double x, double t, cplx lambda) const;

 private:
  CharData cd_;
  std::vector<SeriesSolution> sol_;
  double r_max_;
  int cap_;
};

}  // namespace starweyl
