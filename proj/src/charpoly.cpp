#include "starweyl/charpoly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace starweyl {

namespace {

constexpr double kAdmissTol = 1e-9;

// Newton-form coefficients of a polynomial at nodes 0, 1, 2, ...: recovers
// the nu_j of the falling-factorial expansion from monomial coefficients.
cvector falling_factorial_coeffs(const cvector& poly) {
  const int n = int(poly.size()) - 1;
  cvector work = poly;
  cvector out(n + 1);
  for (int j = 0; j <= n; ++j) {
    // Evaluate at j, then deflate by (mu - j).
    cplx val = 0.0;
    for (size_t k = work.size(); k-- > 0;) val = val * double(j) + work[k];
    out[j] = val;
    if (int(work.size()) > 1) {
      cvector next(work.size() - 1);
      cplx carry = work.back();
      for (size_t k = work.size() - 1; k-- > 0;) {
        next[k] = carry;
        carry = work[k] + carry * double(j);
      }
      work = std::move(next);
    }
  }
  return out;
}

}  // namespace

cvector build_char_poly(const cvector& nu, int n) {
  if (n < 2) throw error(errc::wrong_coefficient_count, "order must be >= 2");
  if (int(nu.size()) != n - 1)
    throw error(errc::wrong_coefficient_count,
                "expected " + std::to_string(n - 1) + " nu coefficients, got " +
                    std::to_string(nu.size()));
  cvector poly(n + 1, 0.0);
  // Accumulate nu_j * prod_{k=0}^{j-1} (mu - k); nu_{n-1} = 0, nu_n = 1.
  cvector ff = {1.0};  // running falling-factorial product
  for (int j = 0; j <= n; ++j) {
    const cplx coeff = (j == n) ? cplx(1.0) : (j == n - 1 ? cplx(0.0) : nu[j]);
    if (coeff != cplx(0.0))
      for (size_t k = 0; k < ff.size(); ++k) poly[k] += coeff * ff[k];
    // ff *= (mu - j)
    ff.push_back(0.0);
    for (size_t k = ff.size() - 1; k-- > 0;) {
      ff[k + 1] += ff[k];
      ff[k] *= -double(j);
    }
  }
  return poly;
}

CharData compute_char_roots(const cvector& poly) {
  const int n = int(poly.size()) - 1;
  if (n < 2 || poly[n] != cplx(1.0))
    throw error(errc::wrong_coefficient_count, "polynomial must be monic of degree >= 2");

  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -poly[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);

  CharData cd;
  cd.n = n;
  cd.poly = poly;
  cd.mu.resize(n);
  for (int i = 0; i < n; ++i) {
    cplx r = es.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      const cplx d = cd.delta_prime(r);
      if (std::abs(d) < 1e-300) break;
      const cplx step = cd.delta(r) / d;
      r -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(r))) break;
    }
    cd.mu[i] = r;
  }
  std::sort(cd.mu.begin(), cd.mu.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  double scale = 1.0;
  for (const cplx& r : cd.mu) scale = std::max(scale, std::abs(r));
  for (const cplx& r : cd.mu)
    if (std::abs(cd.delta(r)) > 1e-10 * std::pow(scale, n))
      throw error(errc::equal_real_parts, "root polish failed to converge");

  for (int i = 0; i + 1 < n; ++i)
    if (cd.mu[i + 1].real() - cd.mu[i].real() <= kAdmissTol)
      throw error(errc::equal_real_parts,
                  "roots with equal real parts (or multiple roots)");

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const cplx d = (cd.mu[i] - cd.mu[j]) / double(n);
      if (std::abs(d.imag()) < kAdmissTol &&
          std::abs(d.real() - std::round(d.real())) < kAdmissTol)
        throw error(errc::roots_differ_by_multiple_of_n,
                    "root difference is an integer multiple of n");
    }

  for (int i = 0; i < n; ++i)
    for (int m = 0; m <= n - 3; ++m)
      if (std::abs(cd.mu[i] - cplx(double(m))) < kAdmissTol)
        throw error(errc::root_in_forbidden_integer_set,
                    "root coincides with " + std::to_string(m));

  cplx sum = 0.0;
  for (const cplx& r : cd.mu) sum += r;
  const double vieta = double(n) * double(n - 1) / 2.0;
  if (std::abs(sum - vieta) > 1e-10 * std::max(1.0, std::abs(vieta)))
    throw error(errc::equal_real_parts, "root sum deviates from Vieta value");

  cd.theta_n = n - 1 - (cd.mu[n - 1].real() - cd.mu[0].real());

  const cvector ff = falling_factorial_coeffs(poly);
  cd.nu.assign(ff.begin(), ff.begin() + (n - 1));
  return cd;
}

CharData build_char_data(const cvector& nu, int n) {
  CharData cd = compute_char_roots(build_char_poly(nu, n));
  cd.nu = nu;  // exact inputs, not reconstructed
  return cd;
}

cplx vandermonde_det(const cvector& mu) {
  cplx det = 1.0;
  for (size_t i = 0; i < mu.size(); ++i)
    for (size_t j = i + 1; j < mu.size(); ++j) det *= mu[j] - mu[i];
  return det;
}

}  // namespace starweyl
