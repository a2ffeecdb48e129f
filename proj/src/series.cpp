#include "starweyl/series.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace starweyl {

CBasis::CBasis(CharData cd, double tol, double r_max)
    : cd_(std::move(cd)), r_max_(r_max) {
  const int n = cd_.n;
  // Terms decay factorially: (rho x)^{nk} / prod Delta ~ |rho x|^{nk}/(nk)!.
  // Budget enough terms for |rho x| = r_max plus tail margin.
  cap_ = int(std::ceil((r_max_ + 60.0) / n)) + 8;
  sol_.resize(n);
  const cplx vdet = vandermonde_det(cd_.mu);
  if (vdet == cplx(0.0))
    throw error(errc::equal_real_parts, "degenerate root set");
  for (int j = 0; j < n; ++j) {
    SeriesSolution& s = sol_[j];
    s.index = j + 1;
    s.mu = cd_.mu[j];
    s.c0 = (j == n - 1) ? 1.0 / vdet : cplx(1.0);
    s.tol = tol;
    s.inv_delta.resize(cap_);
    for (int k = 1; k <= cap_; ++k) {
      const cplx d = cd_.delta(s.mu + double(k * n));
      // Admissibility guarantees d != 0; guard against underflow anyway.
      if (std::abs(d) < 1e-250)
        throw error(errc::roots_differ_by_multiple_of_n,
                    "vanishing recurrence denominator");
      s.inv_delta[k - 1] = 1.0 / d;
    }
  }
}

cvector CBasis::eval(int j, cplx x, cplx lambda) const {
  const int n = cd_.n;
  const SeriesSolution& s = sol_[j - 1];
  if (std::abs(x) == 0.0)
    throw error(errc::out_of_convergence_budget, "series requested at x = 0");

  const cplx step = lambda * std::pow(x, double(n));  // (rho x)^n per term
  if (std::pow(std::abs(step), 1.0 / n) > r_max_)
    throw error(errc::out_of_convergence_budget,
                "|rho x| exceeds the calibrated series radius");

  cvector acc(n, 0.0);
  std::vector<double> peak(n, 0.0);
  cplx term = s.c0 * std::pow(x, s.mu);  // c_{jk} lambda^k x^{mu + nk}
  const double ratio_target = 0.5;
  int k = 0;
  int settled = 0;
  while (true) {
    const cplx base = s.mu + double(n * k);
    cplx ff = 1.0;
    double contrib = 0.0;
    for (int nu = 0; nu < n; ++nu) {
      const cplx t = term * ff;
      acc[nu] += t;
      const double m = std::abs(t);
      peak[nu] = std::max(peak[nu], m);
      contrib = std::max(contrib, m / std::max(1.0, peak[nu]));
      ff *= base - double(nu);
    }
    if (k + 1 > cap_)
      throw error(errc::out_of_convergence_budget, "series term budget exhausted");
    const cplx next = term * step * s.inv_delta[k];
    const double ratio =
        std::abs(term) > 0 ? std::abs(next) / std::abs(term) : 0.0;
    term = next;
    ++k;
    if (ratio < ratio_target && contrib < s.tol)
      ++settled;
    else
      settled = 0;
    if (settled >= 2 || std::abs(term) == 0.0) break;
  }
  s.max_terms_used = std::max(s.max_terms_used, k);

  // acc[nu] currently holds sum c_{jk} lambda^k ff(mu+nk, nu) x^{mu+nk};
  // divide by x^nu to land on the derivative.
  cplx xpow = 1.0;
  for (int nu = 1; nu < n; ++nu) {
    xpow *= x;
    acc[nu] /= xpow;
  }
  return acc;
}

std::vector<cvector> CBasis::eval_all(cplx x, cplx lambda) const {
  std::vector<cvector> out(cd_.n);
  for (int j = 1; j <= cd_.n; ++j) out[j - 1] = eval(j, x, lambda);
  return out;
}

cvector CBasis::duals(cplx x, cplx lambda) const {
  const int n = cd_.n;
  const auto table = eval_all(x, lambda);
  cvector out(n);
  if (n == 2) {
    // 1x1 minors: C*_1 = C_1, C*_2 = C_2.
    out[0] = table[0][0];
    out[1] = table[1][0];
    return out;
  }
  Eigen::MatrixXcd minor(n - 1, n - 1);
  for (int j = 1; j <= n; ++j) {
    const int skip = n - j;  // 0-based column n-j+1
    int cc = 0;
    for (int k = 0; k < n; ++k) {
      if (k == skip) continue;
      for (int nu = 0; nu <= n - 2; ++nu) minor(nu, cc) = table[k][nu];
      ++cc;
    }
    out[j - 1] = minor.determinant();
  }
  return out;
}

cplx CBasis::green(double x, double t, cplx lambda, int nu) const {
  const int n = cd_.n;
  const cvector dual_t = duals(t, lambda);
  cplx acc = 0.0;
  double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n-j} starting at j = 1
  for (int j = 1; j <= n; ++j) {
    acc += sign * eval(j, x, lambda)[nu] * dual_t[n - j];
    sign = -sign;
  }
  return acc;
}

cvector CBasis::green_all(double x, double t, cplx lambda) const {
  const int n = cd_.n;
  const cvector dual_t = duals(t, lambda);
  const auto cx = eval_all(x, lambda);
  cvector out(n, 0.0);
  double sign = (n % 2 == 0) ? -1.0 : 1.0;
  for (int j = 1; j <= n; ++j) {
    for (int nu = 0; nu < n; ++nu) out[nu] += sign * cx[j - 1][nu] * dual_t[n - j];
    sign = -sign;
  }
  return out;
}

}  // namespace starweyl
