#include "starweyl/zsolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "starweyl/sector.hpp"
#include "prodquad.hpp"

namespace starweyl {



ZSolution::ZSolution(const CharData& cd, int k, double phi, ZSolveOptions opt)
    : cd_(cd), k_(k), phi_(phi), opt_(opt) {
  const int n = cd_.n;
  if (k < 1 || k > n) throw error(errc::ray_outside_sector, "mode index out of range");
  if (!z_ray_convergent(n, k, phi, 1e-9))
    throw error(errc::ray_outside_sector,
                "ray does not keep Re(eps_k x) minimal; integral equation diverges");
  u_ = std::exp(cplx(0.0, phi));
  eps_ = unit_roots(n);

  // Geometric mesh: fine to x_far, coarse frozen tail beyond.
  mesh_.push_back(opt_.r0);
  while (mesh_.back() < opt_.x_far) mesh_.push_back(mesh_.back() * (1.0 + opt_.delta));
  solved_ = mesh_.size();
  const double far_end = opt_.x_far * opt_.tail_extent;
  while (mesh_.back() < far_end) mesh_.push_back(mesh_.back() * (1.0 + opt_.delta_tail));
  const size_t N = mesh_.size();

  // alpha_j = eps_k - eps_j; beta_j = alpha_j * u must have Re <= 0.
  cvector beta(n);
  for (int j = 0; j < n; ++j) {
    beta[j] = (eps_[k - 1] - eps_[j]) * u_;
    if (beta[j].real() > 1e-8)
      throw error(errc::ray_outside_sector, "growing kernel mode on this ray");
    beta[j] = cplx(std::min(beta[j].real(), 0.0), beta[j].imag());
  }

  // Per-panel, per-mode stencil weights and the panel propagation factor.
  // Panel i spans [mesh_[i], mesh_[i+1]], stencil nodes i-1..i+2 clamped.
  struct Panel {
    int lo;
    std::array<cplx, 4> w[8];  // w[j][r], j < n <= 8
    cplx prop[8];
  };
  std::vector<Panel> panels(N - 1);
  for (size_t i = 0; i + 1 < N; ++i) {
    const double h = mesh_[i + 1] - mesh_[i];
    int lo = int(i) - 1;
    lo = std::max(0, std::min(lo, int(N) - 4));
    std::array<double, 4> tau;
    for (int r = 0; r < 4; ++r) tau[r] = mesh_[lo + r] - mesh_[i];
    const auto lag = detail::lagrange_pow(tau);
    panels[i].lo = lo;
    for (int j = 0; j < n; ++j) {
      const auto m = detail::exp_moments(beta[j], h);
      panels[i].prop[j] = std::exp(beta[j] * h);
      for (int r = 0; r < 4; ++r) {
        cplx w = 0.0;
        for (int p = 0; p < 4; ++p) w += lag[r][p] * m[p];
        panels[i].w[j][r] = w;
      }
    }
  }

  // Phi(s) = sum_m nu_m eps_k^m (s u)^{m-n} z_m(s); frozen z = 1 beyond x_far.
  zval_.assign(N, cvector(n, 1.0));
  cvector phiv(N);
  auto compute_phi = [&](size_t i) {
    const cplx su = mesh_[i] * u_;
    cplx inv = 1.0;
    for (int p = 0; p < n; ++p) inv /= su;  // (su)^{-n}
    cplx acc = 0.0;
    cplx fac = 1.0;  // eps_k^m (su)^m accumulates
    for (int m = 0; m <= n - 2; ++m) {
      acc += cd_.nu[m] * fac * inv * zval_[i][m];
      fac *= eps_[k - 1] * su;
    }
    return acc;
  };
  for (size_t i = 0; i < N; ++i) phiv[i] = compute_phi(i);

  std::vector<cvector> J(N, cvector(n, 0.0));
  const double kfac = 1.0 / n;
  for (int sweep = 0; sweep < opt_.max_sweeps; ++sweep) {
    // Backward recursion for all modes.
    for (int j = 0; j < n; ++j) J[N - 1][j] = 0.0;
    for (size_t i = N - 1; i-- > 0;) {
      const Panel& P = panels[i];
      for (int j = 0; j < n; ++j) {
        cplx panel = 0.0;
        for (int r = 0; r < 4; ++r) panel += P.w[j][r] * phiv[P.lo + r];
        J[i][j] = P.prop[j] * J[i + 1][j] + panel;
      }
    }
    // Update z on the solved zone.
    double change = 0.0;
    for (size_t i = 0; i < solved_; ++i) {
      for (int d = 0; d < n; ++d) {
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j) {
          // eps_j^{d+1} eps_k^{-d}
          const cplx w = unit_root_pow(cd_.n, j + 1, double(d + 1)) *
                         unit_root_pow(cd_.n, k_, -double(d));
          acc += w * J[i][j];
        }
        const cplx znew = 1.0 + u_ * kfac * acc;
        change = std::max(change, std::abs(znew - zval_[i][d]));
        zval_[i][d] = znew;
      }
      phiv[i] = compute_phi(i);
    }
    residual_ = change;
    sweeps_ = sweep + 1;
    if (change < opt_.tol) return;
  }
  throw error(errc::picard_divergence, "z iteration did not reach tolerance");
}

cvector ZSolution::z(double r) const {
  if (r < opt_.r0 * (1 - 1e-12) || r > opt_.x_far * (1 + 1e-12))
    throw error(errc::ray_outside_sector, "radius outside the solved zone");
  const int n = cd_.n;
  // Locate and interpolate with a local cubic.
  size_t i = size_t(std::lower_bound(mesh_.begin(), mesh_.begin() + solved_, r) -
                    mesh_.begin());
  if (i > 0) --i;
  size_t lo = (i == 0) ? 0 : i - 1;
  lo = std::min(lo, solved_ - 4);
  cvector out(n, 0.0);
  for (int r4 = 0; r4 < 4; ++r4) {
    double L = 1.0;
    for (int s = 0; s < 4; ++s) {
      if (s == r4) continue;
      L *= (r - mesh_[lo + s]) / (mesh_[lo + r4] - mesh_[lo + s]);
    }
    for (int d = 0; d < n; ++d) out[d] += L * zval_[lo + r4][d];
  }
  return out;
}

cvector ZSolution::e(double r) const {
  const int n = cd_.n;
  cvector out = z(r);
  const cplx ek = eps_[k_ - 1];
  const cplx grow = std::exp(ek * r * u_);
  cplx p = 1.0;
  for (int d = 0; d < n; ++d) {
    out[d] *= p * grow;
    p *= ek;
  }
  return out;
}

}  // namespace starweyl
