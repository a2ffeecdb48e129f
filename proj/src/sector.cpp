#include "starweyl/sector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace starweyl {

cvector unit_roots(int n) {
  cvector eps(n);
  for (int k = 1; k <= n; ++k)
    eps[k - 1] = std::exp(cplx(0.0, 2.0 * PI * (k - 1) / n));
  return eps;
}

cplx unit_root_pow(int n, int k, cplx mu) {
  return std::exp(mu * cplx(0.0, 2.0 * PI * (k - 1) / n));
}

std::pair<double, double> sstar_interval(int n, int k) {
  if (k == 1) return {(n - 1) * PI / n, PI};
  const int a = n - 2 * k + 1;
  return {a * PI / n, (a + 2) * PI / n};
}

double sstar_midray(int n, int k) {
  auto [lo, hi] = sstar_interval(n, k);
  return 0.5 * (lo + hi);
}

bool in_sstar(int n, int k, double arg, double tol) {
  auto [lo, hi] = sstar_interval(n, k);
  return arg >= lo - tol && arg <= hi + tol;
}

std::pair<double, double> q_interval(int n, int k) {
  return {std::max(-PI, (-2.0 * k + 2.0) * PI / n),
          std::min(PI, (2.0 * n - 2.0 * k + 2.0) * PI / n)};
}

bool z_ray_convergent(int n, int k, double arg, double tol) {
  const cvector eps = unit_roots(n);
  const cplx u = std::exp(cplx(0.0, arg));
  const double mine = (eps[k - 1] * u).real();
  for (int j = 0; j < n; ++j)
    if ((eps[j] * u).real() < mine - tol) return false;
  return true;
}

bool SectorData::contains(cplx rho, double tol) const {
  double a = std::arg(rho);
  // Allow the 2 pi wrap for sectors touching the cut.
  for (double shift : {0.0, 2.0 * PI, -2.0 * PI})
    if (a + shift >= arg_lo - tol && a + shift <= arg_hi + tol) return true;
  return false;
}

SectorData build_sector(int n, int k0) {
  if (k0 < 0 || k0 >= 2 * n)
    throw error(errc::invalid_sector_for_ray, "sector index out of [0, 2n)");
  SectorData sd;
  sd.n = n;
  sd.k0 = k0;
  sd.eps = unit_roots(n);
  sd.arg_lo = k0 * PI / n;
  sd.arg_hi = (k0 + 1) * PI / n;

  auto order_at = [&](double phi) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 1);
    const cplx u = std::exp(cplx(0.0, phi));
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return (sd.eps[a - 1] * u).real() < (sd.eps[b - 1] * u).real();
    });
    return idx;
  };

  const double span = sd.arg_hi - sd.arg_lo;
  sd.perm = order_at(sd.arg_lo + 0.5 * span);
  // The ordering must be a property of the whole open sector.
  for (double f : {0.25, 0.75})
    if (order_at(sd.arg_lo + f * span) != sd.perm)
      throw error(errc::invalid_sector_for_ray,
                  "root ordering not constant across the sector");

  sd.R.resize(n);
  for (int k = 1; k <= n; ++k) sd.R[k - 1] = sd.eps[sd.perm[k - 1] - 1];

  // Omega = det[R_k^{nu-1}] = Vandermonde of the permuted roots.
  sd.omega = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) sd.omega *= sd.R[j] - sd.R[i];
  if (std::abs(sd.omega) < 1e-12)
    throw error(errc::invalid_sector_for_ray, "degenerate sector determinant");
  return sd;
}

}  // namespace starweyl
