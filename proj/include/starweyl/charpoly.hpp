#pragma once

#include "starweyl/types.hpp"

namespace starweyl {

/// Indicial data of one singular equation: the characteristic polynomial
/// Delta(mu) = sum_j nu_j * mu(mu-1)...(mu-j+1) with nu_n = 1, nu_{n-1} = 0,
/// its roots sorted by increasing real part, and theta_n.
///
/// Admissibility (checked by compute_char_roots):
///   - mu_k - mu_j not an integer multiple of n,
///   - strictly increasing real parts (multiple roots rejected here too),
///   - no root in {0, 1, ..., n-3}.
/// The root sum equals n(n-1)/2 (Vieta: the mu^{n-1} coefficient is
/// -n(n-1)/2 once nu_{n-1} = 0); this is asserted, and it is exactly what
/// makes the unit-Wronskian normalization of the series basis close up.
struct CharData {
  int n = 0;
  cvector nu;    // nu_0 .. nu_{n-2}
  cvector poly;  // monic monomial coefficients, poly[k] mu^k, size n+1
  cvector mu;    // roots, Re increasing
  double theta_n = 0.0;  // n - 1 - Re(mu_n - mu_1)

  cplx delta(cplx m) const {
    cplx acc = 0.0;
    for (size_t k = poly.size(); k-- > 0;) acc = acc * m + poly[k];
    return acc;
  }
  cplx delta_prime(cplx m) const {
    cplx acc = 0.0;
    for (size_t k = poly.size(); k-- > 1;) acc = acc * m + poly[k] * double(k);
    return acc;
  }
};

/// Monic coefficients of Delta(mu); nu holds nu_0..nu_{n-2}.
cvector build_char_poly(const cvector& nu, int n);

/// Roots of a monic polynomial via companion-matrix eigenvalues polished by
/// Newton; rejects inadmissible configurations.
CharData compute_char_roots(const cvector& poly);

/// Convenience: build_char_poly followed by compute_char_roots.
CharData build_char_data(const cvector& nu, int n);

/// prod_{i<j} (mu_j - mu_i) = det[mu_j^{nu-1}].
cplx vandermonde_det(const cvector& mu);

}  // namespace starweyl
