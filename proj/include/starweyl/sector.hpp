#pragma once

#include "starweyl/types.hpp"

namespace starweyl {

/// n-th roots of unity eps_k = exp(2 pi i (k-1)/n), k = 1..n.
cvector unit_roots(int n);

/// Natural power eps_k^mu = exp(mu * 2 pi i (k-1)/n). The rotation argument
/// is taken literally (not reduced to the principal branch); this is the
/// convention under which the Stokes relations close.
cplx unit_root_pow(int n, int k, cplx mu);

/// Closed argument interval of S*_k in the x plane: S*_1 = cl(S_{n-1}),
/// S*_k = cl(S_{n-2k+1}) cup cl(S_{n-2k+2}) for k >= 2 (contiguous).
std::pair<double, double> sstar_interval(int n, int k);
double sstar_midray(int n, int k);
bool in_sstar(int n, int k, double arg, double tol = 1e-12);

/// Closed argument interval of Q_k (wider than S*_k).
std::pair<double, double> q_interval(int n, int k);

/// Rays along which the from-infinity integral equation for e_k converges:
/// Re(eps_k u) must be minimal among all roots for u = e^{i arg}.
bool z_ray_convergent(int n, int k, double arg, double tol = 1e-9);

/// Sector bookkeeping for rho in S_{k0} = {arg rho in (k0 pi/n, (k0+1) pi/n)}:
/// the permutation R_1..R_n of the unit roots with Re(rho R_1) < ... <
/// Re(rho R_n) throughout the sector, and Omega = det[R_k^{nu-1}].
struct SectorData {
  int n = 0;
  int k0 = 0;
  cvector eps;
  std::vector<int> perm;  // 1-based root indices: R_k = eps_{perm[k-1]}
  cvector R;
  cplx omega;
  double arg_lo = 0.0, arg_hi = 0.0;

  double midray() const { return 0.5 * (arg_lo + arg_hi); }
  /// R_k^mu with the natural rotation argument of the underlying root.
  cplx R_pow(int k, cplx mu) const { return unit_root_pow(n, perm[k - 1], mu); }
  bool contains(cplx rho, double tol = 1e-12) const;
};

SectorData build_sector(int n, int k0);

}  // namespace starweyl
