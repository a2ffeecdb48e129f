#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <memory>

#include "starweyl/volterra.hpp"
#include "test_util.hpp"

using namespace starweyl;

namespace {
std::shared_ptr<CBasis> make_basis(cvector nu, int n) {
  return std::make_shared<CBasis>(build_char_data(std::move(nu), n));
}
}  // namespace

TEST_CASE("zero potential reproduces the series basis") {
  auto cb = make_basis({-2.0}, 2);
  RegularBasis rb(cb, {PotentialSpec::zero()}, 1.0, cplx(2.0, 1.0));
  for (double x : {0.05, 0.33, 1.0}) {
    auto s = rb.eval_all(x);
    auto c = cb->eval_all(x, rb.lambda());
    for (int j = 0; j < 2; ++j)
      for (int nu = 0; nu < 2; ++nu) CHECK(rel_err(s[j][nu], c[j][nu]) < 1e-14);
  }
}

TEST_CASE("constant potential shift oracle") {
  auto cb = make_basis({0.0}, 2);
  const cplx c(0.7, -0.2);
  RegularBasis rb(cb, {PotentialSpec::polynomial({c})}, 1.0, cplx(3.0, 1.5));
  const cplx rs = std::sqrt(rb.lambda() - c);
  for (double x : {0.21, 0.5, 0.77, 1.0}) {
    auto s = rb.eval_all(x);
    CHECK(rel_err(s[0][0], std::cosh(rs * x)) < 1e-8);
    CHECK(rel_err(s[0][1], rs * std::sinh(rs * x)) < 1e-8);
    CHECK(rel_err(s[1][0], std::sinh(rs * x) / rs) < 1e-8);
    CHECK(rel_err(s[1][1], std::cosh(rs * x)) < 1e-8);
  }
  CHECK(rb.error_estimate() < 1e-10);
}

TEST_CASE("unit Wronskian of S with nonzero potentials") {
  auto eng = testutil::rng(3);
  for (int n : {2, 3}) {
    CharData cd = testutil::random_admissible(eng, n);
    auto cb = std::make_shared<CBasis>(cd);
    // Potentials shaped x^k q(x) with k chosen to satisfy the weighted
    // integrability assumption with margin.
    std::vector<PotentialSpec> q;
    for (int m = 0; m <= n - 2; ++m) {
      const int k = std::max(0, int(std::floor(m - cd.theta_n)) + 1);
      cvector coeffs(k + 2, 0.0);
      coeffs[k] = testutil::random_cplx(eng, 0.5);
      coeffs[k + 1] = testutil::random_cplx(eng, 0.5);
      q.push_back(PotentialSpec::polynomial(coeffs));
      REQUIRE(weighted_integrable(q.back(), m, cd.theta_n, 1.0));
    }
    RegularBasis rb(cb, q, 1.0, testutil::random_cplx(eng, 8.0));
    for (double x : {0.1, 0.52, 1.0}) CHECK(rb.wronskian_defect(x) < 1e-6);
  }
}

TEST_CASE("S matches C to o(x^{mu_n - mu_1}) near the singular endpoint") {
  auto cb = make_basis({-2.0}, 2);
  RegularBasis rb(cb, {PotentialSpec::polynomial({0.0, 0.0, cplx(0.5, 0.1)})},
                  1.0, cplx(1.0, 2.0));
  const auto& cd = cb->chardata();
  const double spread = (cd.mu[1] - cd.mu[0]).real();
  const auto& mesh = rb.mesh();
  double prev_ratio = -1.0;
  for (size_t idx : {size_t(0), size_t(1)}) {
    const double x = mesh[idx];
    auto s = rb.eval_all(x);
    auto c = cb->eval_all(x, rb.lambda());
    for (int j = 0; j < 2; ++j) {
      const cplx defect = (s[j][0] - c[j][0]) * std::pow(cplx(x), -cd.mu[j]);
      const double ratio = std::abs(defect) / std::pow(x, spread);
      if (j == 0) {
        if (prev_ratio >= 0.0) CHECK(ratio < prev_ratio + 1e-9);
        prev_ratio = ratio;
      }
      CHECK(std::abs(defect) < 1e-3 * std::pow(x, spread));
    }
  }
}

TEST_CASE("equation residual via numerical differentiation") {
  auto eng = testutil::rng(5);
  for (int n : {2, 3}) {
    CharData cd = testutil::random_admissible(eng, n);
    auto cb = std::make_shared<CBasis>(cd);
    std::vector<PotentialSpec> q;
    for (int m = 0; m <= n - 2; ++m) {
      const int k = std::max(0, int(std::floor(m - cd.theta_n)) + 1);
      cvector coeffs(k + 1, 0.0);
      coeffs[k] = testutil::random_cplx(eng, 0.4);
      q.push_back(PotentialSpec::polynomial(coeffs));
    }
    const cplx lambda(2.5, 1.0);
    RegularBasis rb(cb, q, 1.0, lambda);
    for (double x : {0.4, 0.8}) {
      const double h = 1e-5;
      for (int j = 1; j <= n; ++j) {
        auto sm = rb.eval(j, x - h);
        auto s0 = rb.eval(j, x);
        auto sp = rb.eval(j, x + h <= 1.0 ? x + h : 1.0);
        const double hh = (x + h <= 1.0) ? h : 1.0 - x;
        const cplx top = (sp[n - 1] - sm[n - 1]) / (h + hh);
        cplx res = top - lambda * s0[0];
        double scale = std::abs(lambda * s0[0]) + std::abs(top);
        for (int m = 0; m <= n - 2; ++m) {
          const cplx coeff = cd.nu[m] / std::pow(x, double(n - m)) + q[m].eval(x);
          res += coeff * s0[m];
          scale += std::abs(coeff * s0[m]);
        }
        CHECK(std::abs(res) < 1e-5 * std::max(1.0, scale));
      }
    }
  }
}

TEST_CASE("entirety proxy: discrete mean value over a lambda circle") {
  auto cb = make_basis({-2.0}, 2);
  const cplx center(2.0, 2.0);
  const double radius = 0.5;
  const int K = 24;
  std::vector<PotentialSpec> q = {PotentialSpec::polynomial({0.0, 0.0, 0.3})};
  const double x = 0.7;
  cvector mean(2, 0.0);
  for (int k = 0; k < K; ++k) {
    const cplx lam = center + radius * std::exp(cplx(0.0, 2.0 * PI * k / K));
    RegularBasis rb(cb, q, 1.0, lam);
    auto s = rb.eval_all(x);
    mean[0] += s[0][0] / double(K);
    mean[1] += s[1][0] / double(K);
  }
  RegularBasis rb0(cb, q, 1.0, center);
  auto s0 = rb0.eval_all(x);
  CHECK(rel_err(mean[0], s0[0][0]) < 1e-6);
  CHECK(rel_err(mean[1], s0[1][0]) < 1e-6);
}

TEST_CASE("Bessel-type closed forms through the solver interface") {
  auto cb = make_basis({-2.0}, 2);
  RegularBasis rb(cb, {PotentialSpec::zero()}, 2.0, cplx(1.5, 0.8));
  const cplx rho = std::sqrt(rb.lambda());
  for (double x : {0.3, 1.0, 2.0}) {
    const cplx u = rho * x;
    const cplx w1 = std::exp(-u) * (1.0 + 1.0 / u);
    const cplx w2 = std::cosh(u) - std::sinh(u) / u;
    CHECK(rel_err(rb.eval(1, x)[0], rho * (w1 - w2)) < 1e-8);
    CHECK(rel_err(rb.eval(2, x)[0], w2 / (rho * rho)) < 1e-8);
  }
}
