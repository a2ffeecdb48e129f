#pragma once

#include <array>
#include <cmath>

#include "starweyl/types.hpp"

namespace starweyl::detail {

/// Moments m_p = int_0^h e^{beta tau} tau^p dtau, p = 0..3; series branch for
/// small |beta h| avoids the cancellation in the recurrence.
inline std::array<cplx, 4> exp_moments(cplx beta, double h) {
  std::array<cplx, 4> m;
  const cplx bh = beta * h;
  if (std::abs(bh) < 0.5) {
    for (int p = 0; p < 4; ++p) {
      cplx term = 1.0 / double(p + 1), sum = term;
      for (int q = 1; q < 30; ++q) {
        term *= bh / double(q);
        const cplx add = term * (double(p + 1) / double(p + q + 1));
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
      }
      m[p] = sum * std::pow(h, p + 1);
    }
  } else {
    const cplx E = std::exp(bh);
    m[0] = (E - 1.0) / beta;
    double hp = 1.0;
    for (int p = 1; p < 4; ++p) {
      hp *= h;
      m[p] = (hp * E - double(p) * m[p - 1]) / beta;
    }
  }
  return m;
}

/// Power-basis coefficients of the cubic Lagrange basis over tau nodes.
inline std::array<std::array<double, 4>, 4> lagrange_pow(
    const std::array<double, 4>& tau) {
  std::array<std::array<double, 4>, 4> c{};
  for (int r = 0; r < 4; ++r) {
    std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};
    double denom = 1.0;
    int deg = 0;
    for (int s = 0; s < 4; ++s) {
      if (s == r) continue;
      denom *= tau[r] - tau[s];
      for (int d = deg; d >= 0; --d) {
        p[d + 1] += p[d];
        p[d] *= -tau[s];
      }
      ++deg;
    }
    for (int d = 0; d < 4; ++d) c[r][d] = p[d] / denom;
  }
  return c;
}

/// Panel weights w_r with int_a^b e^{beta (t-a)} f(t) dt ~ sum_r w_r f(t_r)
/// for f interpolated cubically over the four stencil abscissae.
inline std::array<cplx, 4> panel_weights(cplx beta, double a, double b,
                                         const std::array<double, 4>& nodes) {
  std::array<double, 4> tau;
  for (int r = 0; r < 4; ++r) tau[r] = nodes[r] - a;
  const auto lag = lagrange_pow(tau);
  const auto m = exp_moments(beta, b - a);
  std::array<cplx, 4> w;
  for (int r = 0; r < 4; ++r) {
    cplx acc = 0.0;
    for (int p = 0; p < 4; ++p) acc += lag[r][p] * m[p];
    w[r] = acc;
  }
  return w;
}

}  // namespace starweyl::detail
