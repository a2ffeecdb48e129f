#include "starweyl/volterra.hpp"
#include <cstdio>

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

namespace starweyl {

namespace {

constexpr std::array<double, 6> kGx = {
    -0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
    0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
constexpr std::array<double, 6> kGw = {
    0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
    0.4679139345726910, 0.3607615730481386, 0.1713244923791704};

double lagrange(const std::vector<double>& xs, size_t r, double t) {
  double v = 1.0;
  for (size_t s = 0; s < xs.size(); ++s) {
    if (s == r) continue;
    v *= (t - xs[s]) / (xs[r] - xs[s]);
  }
  return v;
}

}  // namespace

struct RegularBasis::March {
  std::vector<double> mesh;                  // x_1..x_M
  std::vector<std::vector<cvector>> values;  // [j][i][nu]
  std::vector<std::vector<cvector>> accum;   // [j][i][i0] = B after node i
};

RegularBasis::RegularBasis(std::shared_ptr<const CBasis> basis,
                           std::vector<PotentialSpec> potentials,
                           double length, cplx lambda, VolterraOptions opt)
    : basis_(std::move(basis)),
      q_(std::move(potentials)),
      length_(length),
      lambda_(lambda),
      opt_(opt) {
  const int n = basis_->chardata().n;
  if (length_ <= 0.0) throw error(errc::config_error, "edge length must be positive");
  q_.resize(n - 1);  // missing entries are zero potentials
  trivial_ = std::all_of(q_.begin(), q_.end(),
                         [](const PotentialSpec& p) { return p.is_zero(); });

  // Grading: the spec formula 2/(1 + Re mu_1) targets interpolation of the
  // roughest solution; the floor of 3 keeps the mass of the first panel
  // below the residual target even for strongly singular exponents.
  const double re_mu1 = basis_->chardata().mu.front().real();
  double g = (1.0 + re_mu1 > 0.05) ? 2.0 / (1.0 + re_mu1) : 4.0;
  grade_ = std::clamp(std::max(g, 3.0), 3.0, 4.0);
  if (opt_.grade > 0.0) grade_ = opt_.grade;

  March full;
  run(full, opt_.mesh_size);
  if (!trivial_ && opt_.verify) {
    for (int attempt = 0;; ++attempt) {
      March half;
      run(half, int(full.mesh.size()) / 2);
      double diff = 0.0;
      for (size_t k = 1; k <= half.mesh.size(); ++k)
        for (int j = 0; j < n; ++j)
          for (int nu = 0; nu < n; ++nu) {
            const cplx a = full.values[j][2 * k - 1][nu];
            const cplx b = half.values[j][k - 1][nu];
            diff = std::max(diff, std::abs(a - b) / std::max(1.0, std::abs(a)));
          }
      // Fourth-order march: error(fine) ~ diff(fine, half) / (2^4 - 1).
      err_estimate_ = diff / 15.0;
      if (err_estimate_ <= opt_.tol || attempt >= opt_.max_refinements) {
        if (err_estimate_ > opt_.tol) {
          char buf[64];
          std::snprintf(buf, sizeof buf, "march residual %.3e above tol %.1e",
                        err_estimate_, opt_.tol);
          throw error(errc::quadrature_nonconvergence, buf);
        }
        break;
      }
      March finer;
      run(finer, int(full.mesh.size()) * 2);
      full = std::move(finer);
    }
  }
  mesh_ = std::move(full.mesh);
  values_ = std::move(full.values);
  accum_ = std::move(full.accum);
  endpoint_.resize(n);
  for (int j = 0; j < n; ++j) endpoint_[j] = values_[j].back();
}

void RegularBasis::run(March& m, int mesh_size) const {
  const int n = basis_->chardata().n;
  const int M = std::max(mesh_size, 16);
  m.mesh.resize(M);
  for (int i = 1; i <= M; ++i)
    m.mesh[i - 1] = length_ * std::pow(double(i) / M, grade_);
  m.values.assign(n, std::vector<cvector>(M));
  m.accum.assign(n, std::vector<cvector>(M));

  if (trivial_) {
    for (int i = 0; i < M; ++i) {
      auto table = basis_->eval_all(m.mesh[i], lambda_);
      for (int j = 0; j < n; ++j) {
        m.values[j][i] = table[j];
        m.accum[j][i].assign(n, 0.0);
      }
    }
    return;
  }

  std::vector<double> sgn(n);
  for (int i0 = 0; i0 < n; ++i0) sgn[i0] = ((n - 1 - i0) % 2 == 0) ? 1.0 : -1.0;

  std::vector<cvector> B(n, cvector(n, 0.0));   // B[j][i0]
  std::vector<cvector> F(n);                    // nodal F values, F[j][node]
  for (auto& f : F) f.resize(M);

  Eigen::MatrixXcd T(n - 1, n - 1);
  Eigen::VectorXcd rhs(n - 1);

  for (int p = 1; p <= M; ++p) {
    const double a = (p == 1) ? 0.0 : m.mesh[p - 2];
    const double b = m.mesh[p - 1];
    const int lo = std::max(1, p - 3);
    const int cnt = p - lo + 1;
    std::vector<double> sx(cnt);
    for (int r = 0; r < cnt; ++r) sx[r] = m.mesh[lo + r - 1];

    // W[i0][r] = sum_g w_g C*_{n-i0}(t_g) L_r(t_g)
    std::vector<cvector> W(n, cvector(cnt, 0.0));
    const double c = 0.5 * (a + b), rad = 0.5 * (b - a);
    for (size_t g = 0; g < kGx.size(); ++g) {
      const double t = c + rad * kGx[g];
      const cvector dual = basis_->duals(t, lambda_);
      for (int i0 = 0; i0 < n; ++i0) {
        const cplx dv = rad * kGw[g] * dual[n - 1 - i0];
        for (int r = 0; r < cnt; ++r) W[i0][r] += dv * lagrange(sx, r, t);
      }
    }

    const auto ctab = basis_->eval_all(b, lambda_);
    cvector qb(n - 1);
    for (int mu = 0; mu < n - 1; ++mu) qb[mu] = q_[mu].eval(b);

    // Known part of the panel sum (stencil nodes before p) and G_nu weights.
    cvector G(n, 0.0);
    for (int j = 0; j < n; ++j) {
      cvector R(n, 0.0);
      for (int nu = 0; nu < n; ++nu) {
        cplx acc = ctab[j][nu];
        for (int i0 = 0; i0 < n; ++i0) {
          cplx part = B[j][i0];
          for (int r = 0; r + 1 < cnt; ++r) part += W[i0][r] * F[j][lo + r - 1];
          acc -= sgn[i0] * ctab[i0][nu] * part;
        }
        R[nu] = acc;
      }
      if (j == 0) {
        for (int nu = 0; nu < n; ++nu) {
          cplx gv = 0.0;
          for (int i0 = 0; i0 < n; ++i0)
            gv += sgn[i0] * ctab[i0][nu] * W[i0][cnt - 1];
          G[nu] = gv;
        }
        for (int nu = 0; nu < n - 1; ++nu)
          for (int mu = 0; mu < n - 1; ++mu)
            T(nu, mu) = (nu == mu ? cplx(1.0) : cplx(0.0)) + G[nu] * qb[mu];
      }
      // Solve (I + G q) S = R for derivatives 0..n-2, then the top one.
      for (int nu = 0; nu < n - 1; ++nu) rhs(nu) = R[nu];
      Eigen::VectorXcd sol = T.partialPivLu().solve(rhs);
      cvector& val = m.values[j][p - 1];
      val.resize(n);
      cplx f = 0.0;
      for (int mu = 0; mu < n - 1; ++mu) {
        val[mu] = sol(mu);
        f += qb[mu] * sol(mu);
      }
      val[n - 1] = R[n - 1] - G[n - 1] * f;
      F[j][p - 1] = f;
      for (int i0 = 0; i0 < n; ++i0) {
        for (int r = 0; r < cnt; ++r) B[j][i0] += W[i0][r] * F[j][lo + r - 1];
      }
      m.accum[j][p - 1] = B[j];
    }
  }
}

cvector RegularBasis::eval(int j, double x) const {
  return eval_all(x)[j - 1];
}

std::vector<cvector> RegularBasis::eval_all(double x) const {
  const int n = basis_->chardata().n;
  if (!(x > 0.0) || x > length_ * (1.0 + 1e-12))
    throw error(errc::out_of_convergence_budget, "x outside (0, length]");
  auto ctab = basis_->eval_all(x, lambda_);
  if (trivial_) return ctab;

  const int M = int(mesh_.size());
  // Locate the panel (x_{p-1}, x_p] containing x.
  int p = int(std::lower_bound(mesh_.begin(), mesh_.end(), x * (1.0 - 1e-14)) -
              mesh_.begin()) +
          1;
  p = std::min(p, M);
  const double a = (p == 1) ? 0.0 : mesh_[p - 2];
  const bool at_node = std::abs(mesh_[p - 1] - x) <= 1e-14 * length_;

  std::vector<double> sgn(n);
  for (int i0 = 0; i0 < n; ++i0) sgn[i0] = ((n - 1 - i0) % 2 == 0) ? 1.0 : -1.0;

  std::vector<cvector> out(n, cvector(n, 0.0));
  if (at_node) {
    for (int j = 0; j < n; ++j) out[j] = values_[j][p - 1];
    return out;
  }

  // Partial panel [a, x] with fully known stencil around panel p.
  const int lo = std::max(1, std::min(p - 2, M - 3));
  const int cnt = std::min(4, M - lo + 1);
  std::vector<double> sx(cnt);
  for (int r = 0; r < cnt; ++r) sx[r] = mesh_[lo + r - 1];

  std::vector<cvector> W(n, cvector(cnt, 0.0));
  const double c = 0.5 * (a + x), rad = 0.5 * (x - a);
  for (size_t g = 0; g < kGx.size(); ++g) {
    const double t = c + rad * kGx[g];
    const cvector dual = basis_->duals(t, lambda_);
    for (int i0 = 0; i0 < n; ++i0) {
      const cplx dv = rad * kGw[g] * dual[n - 1 - i0];
      for (int r = 0; r < cnt; ++r) W[i0][r] += dv * lagrange(sx, r, t);
    }
  }

  for (int j = 0; j < n; ++j) {
    // Nodal F values over the stencil.
    cvector fv(cnt, 0.0);
    for (int r = 0; r < cnt; ++r) {
      const int node = lo + r - 1;
      cplx f = 0.0;
      for (int mu = 0; mu < n - 1; ++mu)
        f += q_[mu].eval(mesh_[node]) * values_[j][node][mu];
      fv[r] = f;
    }
    for (int nu = 0; nu < n; ++nu) {
      cplx acc = ctab[j][nu];
      for (int i0 = 0; i0 < n; ++i0) {
        cplx part = (p == 1) ? cplx(0.0) : accum_[j][p - 2][i0];
        for (int r = 0; r < cnt; ++r) part += W[i0][r] * fv[r];
        acc -= sgn[i0] * ctab[i0][nu] * part;
      }
      out[j][nu] = acc;
    }
  }
  return out;
}

double RegularBasis::wronskian_defect(double x) const {
  const int n = basis_->chardata().n;
  auto table = eval_all(x);
  Eigen::MatrixXcd w(n, n);
  for (int j = 0; j < n; ++j)
    for (int nu = 0; nu < n; ++nu) w(j, nu) = table[j][nu];
  return std::abs(w.determinant() - 1.0);
}

RegularBasis solve_volterra(std::shared_ptr<const CBasis> basis,
                            std::vector<PotentialSpec> potentials,
                            double length, cplx lambda, VolterraOptions opt) {
  return RegularBasis(std::move(basis), std::move(potentials), length, lambda,
                      opt);
}

}  // namespace starweyl
