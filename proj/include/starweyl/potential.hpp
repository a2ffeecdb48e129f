#pragma once

#include <functional>

#include "starweyl/types.hpp"

namespace starweyl {

/// One coefficient function q(x) on an edge, evaluable on (0, l].
/// Representations: identically zero, a polynomial in x, or a sample table
/// interpolated by a piecewise cubic (Catmull-Rom slopes, clamped ends).
struct PotentialSpec {
  enum class Kind { zero, polynomial, samples };

  Kind kind = Kind::zero;
  cvector coeffs;                // polynomial: q(x) = sum_k coeffs[k] x^k
  std::vector<double> sample_x;  // samples: strictly increasing, > 0
  cvector sample_q;

  static PotentialSpec zero();
  static PotentialSpec polynomial(cvector c);
  static PotentialSpec table(std::vector<double> x, cvector q);

  bool is_zero() const;
  cplx eval(double x) const;

  /// mu-th derivative. Exact for polynomials; for tables only mu <= 1 is
  /// supported (cubic pieces differentiate once reliably).
  cplx eval_deriv(double x, int mu) const;
};

/// Integrates f over (0, l] on a mesh graded toward 0 (x_i = l (i/M)^grade),
/// Gauss-Legendre panels. Handles integrable endpoint singularities.
double integrate_graded(const std::function<double(double)>& f, double l,
                        double grade = 3.0, int panels = 200);
cplx integrate_graded_c(const std::function<cplx(double)>& f, double l,
                        double grade = 3.0, int panels = 200);

/// Checks q_mu^{(mu)}(x) x^theta in L(0, l): symbolically for polynomials,
/// by dyadic-refinement quadrature for tables.
bool weighted_integrable(const PotentialSpec& q, int mu, double theta, double l);

/// int_0^l |q(x)| x^w dx.
double l1_weighted(const PotentialSpec& q, double w, double l);

}  // namespace starweyl
