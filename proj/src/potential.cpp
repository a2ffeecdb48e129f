#include "starweyl/potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace starweyl {

namespace {

// Gauss-Legendre 7-point rule on [-1, 1].
constexpr std::array<double, 7> kGaussX = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
    0.0,
    0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
constexpr std::array<double, 7> kGaussW = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
    0.4179591836734694,
    0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

}  // namespace

PotentialSpec PotentialSpec::zero() { return PotentialSpec{}; }

PotentialSpec PotentialSpec::polynomial(cvector c) {
  PotentialSpec p;
  p.kind = Kind::polynomial;
  p.coeffs = std::move(c);
  return p;
}

PotentialSpec PotentialSpec::table(std::vector<double> x, cvector q) {
  if (x.size() != q.size() || x.size() < 2)
    throw error(errc::config_error, "potential table needs >= 2 matched samples");
  for (size_t i = 0; i + 1 < x.size(); ++i)
    if (!(x[i] < x[i + 1]))
      throw error(errc::config_error, "potential table abscissae must increase");
  if (x.front() < 0.0)
    throw error(errc::config_error, "potential table abscissae must be >= 0");
  PotentialSpec p;
  p.kind = Kind::samples;
  p.sample_x = std::move(x);
  p.sample_q = std::move(q);
  return p;
}

bool PotentialSpec::is_zero() const {
  if (kind == Kind::zero) return true;
  if (kind == Kind::polynomial)
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](cplx c) { return c == cplx(0.0); });
  return false;
}

cplx PotentialSpec::eval(double x) const {
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::polynomial: {
      cplx acc = 0.0;
      for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
      return acc;
    }
    case Kind::samples: {
      const auto& xs = sample_x;
      const auto& qs = sample_q;
      // Clamp outside the table; interior via cubic Hermite with
      // central-difference slopes.
      if (x <= xs.front()) return qs.front();
      if (x >= xs.back()) return qs.back();
      size_t i =
          std::upper_bound(xs.begin(), xs.end(), x) - xs.begin() - 1;
      const double h = xs[i + 1] - xs[i];
      const double t = (x - xs[i]) / h;
      auto slope = [&](size_t j) -> cplx {
        if (j == 0) return (qs[1] - qs[0]) / (xs[1] - xs[0]);
        if (j + 1 == xs.size())
          return (qs[j] - qs[j - 1]) / (xs[j] - xs[j - 1]);
        return (qs[j + 1] - qs[j - 1]) / (xs[j + 1] - xs[j - 1]);
      };
      const cplx m0 = slope(i) * h, m1 = slope(i + 1) * h;
      const double t2 = t * t, t3 = t2 * t;
      return qs[i] * (2 * t3 - 3 * t2 + 1) + m0 * (t3 - 2 * t2 + t) +
             qs[i + 1] * (-2 * t3 + 3 * t2) + m1 * (t3 - t2);
    }
  }
  return 0.0;
}

cplx PotentialSpec::eval_deriv(double x, int mu) const {
  if (mu == 0) return eval(x);
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::polynomial: {
      cplx acc = 0.0;
      for (size_t k = coeffs.size(); k-- > size_t(mu);) {
        double f = 1.0;
        for (int d = 0; d < mu; ++d) f *= double(k - d);
        acc = acc * x + coeffs[k] * f;
      }
      return acc;
    }
    case Kind::samples: {
      if (mu > 1)
        throw error(errc::config_error,
                    "sampled potentials support at most one derivative");
      const double h = 1e-6 * std::max(1.0, std::abs(x));
      return (eval(x + h) - eval(x - h)) / (2 * h);
    }
  }
  return 0.0;
}

double integrate_graded(const std::function<double(double)>& f, double l,
                        double grade, int panels) {
  double acc = 0.0;
  double a = 0.0;
  for (int i = 1; i <= panels; ++i) {
    const double b = l * std::pow(double(i) / panels, grade);
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    for (size_t g = 0; g < kGaussX.size(); ++g)
      acc += r * kGaussW[g] * f(c + r * kGaussX[g]);
    a = b;
  }
  return acc;
}

cplx integrate_graded_c(const std::function<cplx(double)>& f, double l,
                        double grade, int panels) {
  cplx acc = 0.0;
  double a = 0.0;
  for (int i = 1; i <= panels; ++i) {
    const double b = l * std::pow(double(i) / panels, grade);
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    for (size_t g = 0; g < kGaussX.size(); ++g)
      acc += r * kGaussW[g] * f(c + r * kGaussX[g]);
    a = b;
  }
  return acc;
}

bool weighted_integrable(const PotentialSpec& q, int mu, double theta, double l) {
  if (q.is_zero()) return true;
  if (q.kind == PotentialSpec::Kind::polynomial) {
    // q^{(mu)} has lowest surviving power k0 - mu; x^{k0-mu+theta} is
    // integrable near 0 iff the exponent exceeds -1.
    int k0 = -1;
    for (size_t k = mu; k < q.coeffs.size(); ++k)
      if (q.coeffs[k] != cplx(0.0)) {
        k0 = int(k);
        break;
      }
    if (k0 < 0) return true;  // derivative vanishes identically
    return double(k0 - mu) + theta > -1.0 + 1e-12;
  }
  // Tables: integrate |q^{(mu)}| x^theta on dyadically shrinking inner
  // segments; convergence of the running total decides.
  auto f = [&](double x) { return std::abs(q.eval_deriv(x, mu)) * std::pow(x, theta); };
  double prev = integrate_graded(f, l, 2.0, 100);
  for (int level = 0; level < 4; ++level) {
    double next = integrate_graded(f, l, 2.0, 200 << level);
    if (std::abs(next - prev) <= 1e-6 * std::max(1.0, std::abs(next)))
      return std::isfinite(next);
    prev = next;
  }
  return false;
}

double l1_weighted(const PotentialSpec& q, double w, double l) {
  if (q.is_zero()) return 0.0;
  return integrate_graded(
      [&](double x) { return std::abs(q.eval(x)) * std::pow(x, w); }, l, 3.0,
      300);
}

}  // namespace starweyl
