#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "starweyl/potential.hpp"
#include "starweyl/series.hpp"
#include "test_util.hpp"

using namespace starweyl;
using doctest::Approx;

namespace {
cplx cosh_c(cplx z) { return std::cosh(z); }
cplx sinh_c(cplx z) { return std::sinh(z); }

// Closed forms for n = 2, nu_0 = -2 (exponents -1 and 2), u = rho x:
//   C_1(x, lambda) = rho [ e^{-u}(1 + 1/u) - cosh u + sinh u / u ]
//   C_2(x, lambda) = [ cosh u - sinh u / u ] / rho^2
// (both even in rho, so the branch of rho = sqrt(lambda) is immaterial).
cplx bessel_C1(cplx x, cplx rho) {
  const cplx u = rho * x;
  return rho * (std::exp(-u) * (1.0 + 1.0 / u) - std::cosh(u) + std::sinh(u) / u);
}
cplx bessel_C2(cplx x, cplx rho) {
  const cplx u = rho * x;
  return (std::cosh(u) - std::sinh(u) / u) / (rho * rho);
}
}  // namespace

TEST_CASE("characteristic polynomial expansion") {
  // n=2, nu_0=0: mu^2 - mu
  auto p = build_char_poly({0.0}, 2);
  CHECK(p.size() == 3);
  CHECK(std::abs(p[0]) == 0.0);
  CHECK(p[1] == cplx(-1.0));
  CHECK(p[2] == cplx(1.0));

  // n=2, nu_0=-2: mu^2 - mu - 2
  p = build_char_poly({-2.0}, 2);
  CHECK(p[0] == cplx(-2.0));
  CHECK(p[1] == cplx(-1.0));

  // n=3, nu_0=nu_1=0: mu^3 - 3 mu^2 + 2 mu
  p = build_char_poly({0.0, 0.0}, 3);
  CHECK(std::abs(p[0]) == 0.0);
  CHECK(p[1] == cplx(2.0));
  CHECK(p[2] == cplx(-3.0));
  CHECK(p[3] == cplx(1.0));

  CHECK_THROWS_AS(build_char_poly({0.0, 0.0}, 2), error);
}

TEST_CASE("root computation and admissibility") {
  auto cd = compute_char_roots(build_char_poly({-2.0}, 2));
  CHECK(std::abs(cd.mu[0] - cplx(-1.0)) < 1e-12);
  CHECK(std::abs(cd.mu[1] - cplx(2.0)) < 1e-12);
  CHECK(cd.theta_n == Approx(2.0 - 1.0 - 3.0));
  CHECK(std::abs(cd.nu[0] - cplx(-2.0)) < 1e-12);

  // double root 1/2
  CHECK_THROWS_WITH_AS(compute_char_roots({0.25, -1.0, 1.0}), doctest::Contains("EqualRealParts"),
                       error);
  // root 0 lies in {0,...,n-3} for n=3
  CHECK_THROWS_WITH_AS(compute_char_roots(build_char_poly({0.0, 0.0}, 3)),
                       doctest::Contains("RootInForbiddenIntegerSet"), error);
  // roots differing by a multiple of n: mu = (-1/2, 3/2), diff = 2 = n
  // poly (mu + 1/2)(mu - 3/2) = mu^2 - mu - 3/4
  CHECK_THROWS_WITH_AS(compute_char_roots({-0.75, -1.0, 1.0}),
                       doctest::Contains("RootsDifferByMultipleOfN"), error);
}

TEST_CASE("series coefficients and normalization") {
  CBasis basis(build_char_data({0.0}, 2));
  const auto& s1 = basis.series()[0];
  const auto& s2 = basis.series()[1];
  // c_{1k} = 1/(2k)!, c_{2k} = 1/(2k+1)! with c_{j0} = 1.
  CHECK(s1.c0 == cplx(1.0));
  CHECK(s2.c0 == cplx(1.0));
  cplx c1k = s1.c0, c2k = s2.c0;
  double f1 = 1.0, f2 = 1.0;
  for (int k = 1; k <= 6; ++k) {
    c1k *= s1.inv_delta[k - 1];
    c2k *= s2.inv_delta[k - 1];
    f1 *= (2.0 * k) * (2.0 * k - 1.0);
    f2 *= (2.0 * k + 1.0) * (2.0 * k);
    CHECK(std::abs(c1k - 1.0 / f1) < 1e-15 * std::abs(c1k));
    CHECK(std::abs(c2k - 1.0 / f2) < 1e-15 * std::abs(c2k));
  }

  // n=2, nu_0=-2: c_{11} = c_{10}/Delta(1) = -c_{10}/2.
  CBasis bb(build_char_data({-2.0}, 2));
  CHECK(std::abs(bb.series()[0].inv_delta[0] - cplx(-0.5)) < 1e-14);

  // prod c_{j0} * det[mu_j^{nu-1}] = 1 for random admissible data.
  auto eng = testutil::rng();
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + int(trial % 2);
    CharData cd = testutil::random_admissible(eng, n);
    CBasis b(cd);
    cplx prod = 1.0;
    for (const auto& s : b.series()) prod *= s.c0;
    CHECK(std::abs(prod * vandermonde_det(cd.mu) - 1.0) < 1e-12);
  }
}

TEST_CASE("series evaluation against hyperbolic closed forms") {
  CBasis basis(build_char_data({0.0}, 2));
  auto v1 = basis.eval(1, 1.0, 1.0);
  auto v2 = basis.eval(2, 1.0, 1.0);
  CHECK(std::abs(v1[0] - std::cosh(1.0)) < 1e-14);
  CHECK(std::abs(v1[1] - std::sinh(1.0)) < 1e-14);
  CHECK(std::abs(v2[0] - std::sinh(1.0)) < 1e-14);
  CHECK(std::abs(v2[1] - std::cosh(1.0)) < 1e-14);

  // C_1 = cosh(rho x), C_2 = sinh(rho x)/rho at complex lambda.
  const cplx lambda(2.0, 3.0);
  const cplx rho = std::sqrt(lambda);
  for (double x : {0.2, 0.9, 1.7}) {
    auto a = basis.eval(1, x, lambda);
    auto b = basis.eval(2, x, lambda);
    CHECK(rel_err(a[0], cosh_c(rho * x)) < 1e-13);
    CHECK(rel_err(a[1], rho * sinh_c(rho * x)) < 1e-13);
    CHECK(rel_err(b[0], sinh_c(rho * x) / rho) < 1e-13);
    CHECK(rel_err(b[1], cosh_c(rho * x)) < 1e-13);
  }
}

TEST_CASE("series evaluation against Bessel-type closed forms") {
  CBasis basis(build_char_data({-2.0}, 2));
  const cplx lambda(1.5, 0.8);
  const cplx rho = std::sqrt(lambda);
  for (double x : {0.3, 1.0, 2.1}) {
    auto a = basis.eval(1, x, lambda);
    auto b = basis.eval(2, x, lambda);
    CHECK(rel_err(a[0], bessel_C1(x, rho)) < 1e-12);
    CHECK(rel_err(b[0], bessel_C2(x, rho)) < 1e-12);
  }
}

TEST_CASE("unit Wronskian of the C basis") {
  // Spec point: det == 1 at n=2, nu_0=-2, lambda=0, x=0.5.
  CBasis bb(build_char_data({-2.0}, 2));
  auto t = bb.eval_all(0.5, 0.0);
  cplx det = t[0][0] * t[1][1] - t[0][1] * t[1][0];
  CHECK(std::abs(det - 1.0) < 1e-12);

  auto eng = testutil::rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + int(trial % 2);
    CharData cd = testutil::random_admissible(eng, n);
    CBasis b(cd);
    const cplx lambda = testutil::random_cplx(eng, 10.0);
    std::uniform_real_distribution<double> ux(0.1, 2.0);
    const double x = ux(eng);
    auto table = b.eval_all(x, lambda);
    Eigen::MatrixXcd w(n, n);
    for (int j = 0; j < n; ++j)
      for (int nu = 0; nu < n; ++nu) w(j, nu) = table[j][nu];
    CHECK(std::abs(w.determinant() - 1.0) < 1e-8);
  }
}

TEST_CASE("leading behavior x^{-mu_j} C_j -> c_j0") {
  auto eng = testutil::rng(11);
  CharData cd = testutil::random_admissible(eng, 3);
  CBasis b(cd);
  const cplx lambda(1.0, 1.0);
  for (int j = 1; j <= 3; ++j) {
    const cplx lead = b.series()[j - 1].c0;
    const cplx got = b.eval(j, 1e-6, lambda)[0] * std::pow(cplx(1e-6), -cd.mu[j - 1]);
    CHECK(rel_err(got, lead) < 1e-9);
  }
}

TEST_CASE("Green's function of the Cauchy problem") {
  CBasis basis(build_char_data({0.0}, 2));
  const cplx lambda(3.0, -1.0);
  const cplx rho = std::sqrt(lambda);
  for (auto [x, t] : {std::pair{0.8, 0.3}, {1.5, 1.49}, {0.5, 0.1}}) {
    const cplx want = sinh_c(rho * (x - t)) / rho;
    CHECK(rel_err(basis.green(x, t, lambda, 0), want) < 1e-12);
    CHECK(rel_err(basis.green(x, t, lambda, 1), cosh_c(rho * (x - t))) < 1e-12);
  }
  // Cauchy kernel vanishes on the diagonal.
  CHECK(std::abs(basis.green(0.7, 0.7, lambda, 0)) < 1e-13);

  // Growth bound: |d^nu g| <= M2 sum_j |x^{mu_j - nu} t^{n-1-mu_j}|, |rho x| <= 1.
  auto eng = testutil::rng(13);
  for (int n : {2, 3}) {
    CharData cd = testutil::random_admissible(eng, n);
    CBasis b(cd);
    // Calibrate M2 on one sample set, then check the bound on another.
    auto bound = [&](double x, double t, int nu) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        s += std::pow(x, cd.mu[j].real() - nu) * std::pow(t, n - 1 - cd.mu[j].real());
      return s;
    };
    const cplx lam(0.4, 0.2);
    double m2 = 0.0;
    for (double x : {0.2, 0.5, 0.9})
      for (double frac : {0.2, 0.7})
        for (int nu = 0; nu < n; ++nu)
          m2 = std::max(m2, std::abs(b.green(x, x * frac, lam, nu)) / bound(x, x * frac, nu));
    CHECK(m2 < 1e3);
    for (double x : {0.3, 0.8})
      for (double frac : {0.4, 0.95})
        for (int nu = 0; nu < n; ++nu) {
          const double g = std::abs(b.green(x, x * frac, lam, nu));
          CHECK(g <= 1.05 * std::max(m2, 1e-8) * bound(x, x * frac, nu) + 1e-12);
        }
  }
}

TEST_CASE("weighted integrability checks") {
  const double theta = -2.0;  // Bessel-type edge
  CHECK_FALSE(weighted_integrable(PotentialSpec::polynomial({1.0}), 0, theta, 1.0));
  CHECK_FALSE(weighted_integrable(PotentialSpec::polynomial({0.0, 1.0}), 0, theta, 1.0));
  CHECK(weighted_integrable(PotentialSpec::polynomial({0.0, 0.0, 1.0}), 0, theta, 1.0));
  CHECK(weighted_integrable(PotentialSpec::zero(), 0, theta, 1.0));
  CHECK(weighted_integrable(PotentialSpec::polynomial({0.3}), 0, 0.0, 1.0));
}
