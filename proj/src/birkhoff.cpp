#include "starweyl/birkhoff.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "prodquad.hpp"

namespace starweyl {

BirkhoffEvaluator::BirkhoffEvaluator(std::shared_ptr<const CBasis> cb,
                                     SectorData sd, StokesData st)
    : cb_(std::move(cb)), sd_(std::move(sd)), st_(std::move(st)) {}

double BirkhoffEvaluator::series_error(int k, double x, cplx rho) const {
  // Terms of the connection sum peak near e^{|rho x|}; the target magnitude
  // is e^{Re(rho R_k) x}. The quotient bounds the relative rounding noise.
  const double xi = std::abs(rho) * x;
  const double target = (rho * sd_.R[k - 1]).real() * x;
  return 1e-15 * std::exp(std::min(700.0, xi - target));
}

const ZSolution& BirkhoffEvaluator::zmode(int root_index, double phi) const {
  std::lock_guard<std::mutex> lock(mu_);
  const long long key = llround(phi * 1e12);
  auto it = zcache_.find({root_index, key});
  if (it == zcache_.end()) {
    ZSolveOptions opt;
    opt.r0 = 0.5;
    it = zcache_
             .emplace(std::make_pair(root_index, key),
                      std::make_unique<ZSolution>(cb_->chardata(), root_index,
                                                  phi, opt))
             .first;
  }
  return *it->second;
}

std::vector<cvector> BirkhoffEvaluator::eval_y(double x, cplx rho) const {
  const int n = sd_.n;
  const CharData& cd = cb_->chardata();
  std::vector<cvector> out(n, cvector(n, 0.0));
  const double xi = std::abs(rho) * x;

  std::vector<cvector> ctab;
  cvector rho_mu(n);
  bool have_series = false;

  for (int k = 1; k <= n; ++k) {
    if (series_error(k, x, rho) < series_guard_ && xi <= cb_->r_max()) {
      if (!have_series) {
        ctab = cb_->eval_all(x, rho == cplx(0.0) ? cplx(0.0)
                                                 : std::pow(rho, double(n)));
        for (int j = 0; j < n; ++j) rho_mu[j] = std::pow(rho, cd.mu[j]);
        have_series = true;
      }
      for (int nu = 0; nu < n; ++nu) {
        cplx acc = 0.0;
        for (int j = 1; j <= n; ++j)
          acc += st_.b0(sd_, k, j) * rho_mu[j - 1] * ctab[j - 1][nu];
        out[k - 1][nu] = acc;
      }
      continue;
    }
    // z route: y_k(x, rho) = e_{sigma(k)}(rho x) along arg(rho).
    const int sigma = sd_.perm[k - 1];
    const double phi = std::arg(rho);
    if (!z_ray_convergent(n, sigma, phi))
      throw error(errc::gap_region,
                  "series budget exhausted and mode is not minimal on the ray");
    const ZSolution& zs = zmode(sigma, phi);
    if (xi < zs.r0() || xi > zs.r_max())
      throw error(errc::gap_region, "|rho x| outside both evaluation regimes");
    const cvector ek = zs.e(xi);
    cplx rp = 1.0;
    for (int nu = 0; nu < n; ++nu) {
      out[k - 1][nu] = rp * ek[nu];
      rp *= rho;
    }
  }
  return out;
}

cvector BirkhoffEvaluator::eval_ystar(double t, cplx rho) const {
  const int n = sd_.n;
  const auto ytab = eval_y(t, rho);
  cvector out(n);
  const cplx norm =
      std::pow(rho, double((n - 1) * (n - 2)) / 2.0) * sd_.omega;
  if (n == 2) {
    out[0] = -ytab[1][0] / norm;
    out[1] = ytab[0][0] / norm;
    return out;
  }
  Eigen::MatrixXcd minor(n - 1, n - 1);
  for (int j = 1; j <= n; ++j) {
    int cc = 0;
    for (int k = 0; k < n; ++k) {
      if (k == j - 1) continue;
      for (int nu = 0; nu <= n - 2; ++nu) minor(nu, cc) = ytab[k][nu];
      ++cc;
    }
    const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
    out[j - 1] = sign * minor.determinant() / norm;
  }
  return out;
}

cplx BirkhoffEvaluator::F(int k, int nu, cplx rho, double x) const {
  const CharData& cd = cb_->chardata();
  if (std::abs(rho) * x > 1.0) {
    const cplx rk = sd_.R[k - 1];
    return std::pow(rk, double(nu)) * std::exp(rho * rk * x);
  }
  return std::pow(rho * x, cd.mu[0] - double(nu));
}

cplx BirkhoffEvaluator::Fstar(int k, cplx rho, double x) const {
  const CharData& cd = cb_->chardata();
  const int n = sd_.n;
  if (std::abs(rho) * x > 1.0) return std::exp(-rho * sd_.R[k - 1] * x);
  return std::pow(rho * x, double(n - 1) - cd.mu[n - 1]);
}

std::vector<cvector> BirkhoffEvaluator::U0(double x, cplx rho) const {
  const int n = sd_.n;
  auto ytab = eval_y(x, rho);
  std::vector<cvector> out(n, cvector(n));
  for (int k = 1; k <= n; ++k) {
    cplx rp = 1.0;
    for (int nu = 0; nu < n; ++nu) {
      out[k - 1][nu] = ytab[k - 1][nu] / (rp * F(k, nu, rho, x));
      rp *= rho;
    }
  }
  return out;
}

cvector BirkhoffEvaluator::U0star(double x, cplx rho) const {
  const int n = sd_.n;
  cvector ys = eval_ystar(x, rho);
  cvector out(n);
  for (int k = 1; k <= n; ++k) out[k - 1] = ys[k - 1] / Fstar(k, rho, x);
  return out;
}

JEstimate estimate_J(const CharData& cd, const std::vector<PotentialSpec>& q,
                     double supp, double rho_abs) {
  const int n = cd.n;
  JEstimate je;
  je.Jm.resize(n - 1, 0.0);
  const double split = std::min(1.0 / rho_abs, supp);
  const double re_spread = cd.mu[0].real() - cd.mu[n - 1].real();
  for (int m = 0; m <= n - 2; ++m) {
    if (size_t(m) >= q.size() || q[m].is_zero()) continue;
    double inner = integrate_graded(
        [&](double t) {
          return std::pow(t, cd.theta_n - m) * std::abs(q[m].eval(t));
        },
        split, 3.0, 200);
    double outer = 0.0;
    if (supp > split) {
      const int panels = 200;
      for (int i = 0; i < panels; ++i) {
        const double a = split + (supp - split) * i / panels;
        const double b = split + (supp - split) * (i + 1) / panels;
        const double mid = 0.5 * (a + b);
        outer += (b - a) * std::abs(q[m].eval(mid));
      }
    }
    je.Jm[m] = std::pow(rho_abs, re_spread) * inner +
               std::pow(rho_abs, double(m - n + 1)) * outer;
    je.J += je.Jm[m];

    const double qsplit = std::min(1.0, supp);
    double qinner = integrate_graded(
        [&](double t) {
          return std::pow(t, std::min(cd.theta_n - m, 0.0)) *
                 std::abs(q[m].eval(t));
        },
        qsplit, 3.0, 200);
    double qouter = 0.0;
    if (supp > qsplit) {
      const int panels = 200;
      for (int i = 0; i < panels; ++i) {
        const double a = qsplit + (supp - qsplit) * i / panels;
        const double b = qsplit + (supp - qsplit) * (i + 1) / panels;
        qouter += (b - a) * std::abs(q[m].eval(0.5 * (a + b)));
      }
    }
    je.Q += qinner + qouter;
  }
  return je;
}

BirkhoffConstants measure_constants(const BirkhoffEvaluator& be,
                                    const std::vector<double>& rho_abs,
                                    const std::vector<double>& xs) {
  BirkhoffConstants c;
  const double phi = be.sector().midray();
  for (double ra : rho_abs) {
    const cplx rho = ra * std::exp(cplx(0.0, phi));
    for (double x : xs) {
      const auto u0 = be.U0(x, rho);
      const auto u0s = be.U0star(x, rho);
      for (int k = 1; k <= be.n(); ++k) {
        c.M1 = std::max(c.M1, std::abs(u0s[k - 1]));
        for (int nu = 0; nu < be.n(); ++nu) {
          c.M1 = std::max(c.M1, std::abs(u0[k - 1][nu]));
          if (ra * x >= 1.0)
            c.M0 = std::max(c.M0, std::abs(u0[k - 1][nu] - 1.0) * ra * x);
        }
      }
    }
  }
  return c;
}

YSolution::YSolution(const BirkhoffEvaluator& be,
                     const std::vector<PotentialSpec>& q, double supp,
                     cplx rho, YOptions opt)
    : be_(be), n_(be.n()), rho_(rho) {
  const double ra = std::abs(rho);
  std::vector<PotentialSpec> qq = q;
  qq.resize(n_ - 1);
  const JEstimate je = estimate_J(be.cbasis().chardata(), qq, supp, ra);
  if (opt.m1 > 0.0) {
    const double rho0 = 2.0 * opt.m1 * je.Q + 1.0;
    if (ra < rho0)
      throw error(errc::rho_below_threshold,
                  "|rho| below the contraction threshold rho_0");
  }

  // Collocation grid over the support, graded toward 0, with the F branch
  // switch point 1/|rho| inserted as a node.
  const int M = std::max(opt.grid, 32);
  grid_.resize(M);
  for (int i = 1; i <= M; ++i)
    grid_[i - 1] = supp * std::pow(double(i) / M, opt.grade);
  const double tstar = 1.0 / ra;
  if (tstar < supp) {
    auto it = std::lower_bound(grid_.begin(), grid_.end(), tstar);
    if (it != grid_.end() && std::abs(*it - tstar) > 1e-14) grid_.insert(it, tstar);
  }
  const size_t N = grid_.size();

  // U0 tables and weight functions at the nodes.
  U0_.assign(n_, std::vector<cvector>(N));
  Fk_.assign(n_, std::vector<cvector>(N));
  std::vector<cvector> u0s(N);  // [i][j]
  for (size_t i = 0; i < N; ++i) {
    auto u0 = be.U0(grid_[i], rho);
    u0s[i] = be.U0star(grid_[i], rho);
    for (int k = 0; k < n_; ++k) {
      U0_[k][i] = u0[k];
      Fk_[k][i].resize(n_);
      for (int nu = 0; nu < n_; ++nu)
        Fk_[k][i][nu] = be.F(k + 1, nu, rho, grid_[i]);
    }
  }
  U_ = U0_;

  // Per-k Picard iteration.
  for (int k = 1; k <= n_; ++k) {
    // P_{jm}(t) = q_m(t) F_{km}(rho t) F*_j(rho t) U0*_j(t) / rho^{n-1-m}.
    std::vector<std::vector<cvector>> P(n_, std::vector<cvector>(n_ - 1, cvector(N)));
    for (int j = 1; j <= n_; ++j)
      for (int m = 0; m <= n_ - 2; ++m) {
        if (qq[m].is_zero()) continue;
        const cplx rpow = std::pow(rho, double(n_ - 1 - m));
        for (size_t i = 0; i < N; ++i) {
          P[j - 1][m][i] = qq[m].eval(grid_[i]) * Fk_[k - 1][i][m] *
                           be.Fstar(j, rho, grid_[i]) * u0s[i][j - 1] / rpow;
        }
      }

    // Panel weights with the known exponential factor; exponent of panel i
    // for pair (k, j) is rho (R_k - R_j) in the outer region, 0 inside.
    std::vector<double> change_hist;
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
      // prefix[j][m][i] = int_0^{x_i}, suffix[j][m][i] = int_{x_i}^{supp}
      std::vector<std::vector<cvector>> pre(n_, std::vector<cvector>(n_ - 1, cvector(N, 0.0)));
      std::vector<std::vector<cvector>> suf = pre;
      for (int j = 1; j <= n_; ++j) {
        const cplx beta_out = rho * (be.sector().R[k - 1] - be.sector().R[j - 1]);
        for (int m = 0; m <= n_ - 2; ++m) {
          if (qq[m].is_zero()) continue;
          // integrand nodal values: P * U_{km}
          cvector f(N);
          for (size_t i = 0; i < N; ++i) f[i] = P[j - 1][m][i] * U_[k - 1][i][m];
          // panel-by-panel with exponential weight where |rho| t > 1
          cvector panel(N, 0.0);  // panel[i] = int_{x_{i-1}}^{x_i}
          for (size_t i = 0; i < N; ++i) {
            const double a = (i == 0) ? 0.0 : grid_[i - 1];
            const double b = grid_[i];
            const cplx beta = (ra * a >= 1.0) ? beta_out : cplx(0.0);
            size_t lo = (i >= 2) ? i - 2 : 0;
            lo = std::min(lo, N - 4);
            std::array<double, 4> nodes;
            for (int r = 0; r < 4; ++r) nodes[r] = grid_[lo + r];
            const auto w = detail::panel_weights(beta, a, b, nodes);
            cplx acc = 0.0;
            for (int r = 0; r < 4; ++r) {
              const cplx damp = std::exp(-beta * (nodes[r] - a));
              acc += w[r] * (f[lo + r] * damp);
            }
            panel[i] = acc;
          }
          for (size_t i = 0; i < N; ++i)
            pre[j - 1][m][i] = (i == 0 ? cplx(0.0) : pre[j - 1][m][i - 1]) + panel[i];
          suf[j - 1][m][N - 1] = 0.0;
          for (size_t i = N - 1; i-- > 0;)
            suf[j - 1][m][i] = suf[j - 1][m][i + 1] + panel[i + 1];
        }
      }

      double change = 0.0;
      for (size_t i = 0; i < N; ++i) {
        auto ytab = be.eval_y(grid_[i], rho);
        for (int nu = 0; nu < n_; ++nu) {
          cplx acc = U0_[k - 1][i][nu];
          for (int m = 0; m <= n_ - 2; ++m) {
            if (qq[m].is_zero()) continue;
            for (int j = 1; j <= n_; ++j) {
              const cplx phi_x = ytab[j - 1][nu] /
                                 (std::pow(rho, double(nu)) * Fk_[k - 1][i][nu]);
              if (j <= k)
                acc -= phi_x * pre[j - 1][m][i];
              else
                acc += phi_x * suf[j - 1][m][i];
            }
          }
          change = std::max(change, std::abs(acc - U_[k - 1][i][nu]));
          U_[k - 1][i][nu] = acc;
        }
      }
      change_hist.push_back(change);
      sweeps_ = sweep + 1;
      residual_ = change;
      if (change < opt.tol) break;
      if (change_hist.size() >= 3 &&
          change > change_hist[change_hist.size() - 2] &&
          change_hist[change_hist.size() - 2] > change_hist[change_hist.size() - 3])
        throw error(errc::contraction_failure, "U iteration diverging");
      if (sweep + 1 == opt.max_sweeps)
        throw error(errc::contraction_failure, "U iteration did not converge");
    }
  }
}

cplx YSolution::Y(int k, int nu, size_t i) const {
  return std::pow(rho_, double(nu)) * Fk_[k - 1][i][nu] * U_[k - 1][i][nu];
}

double YSolution::u_deviation() const {
  double d = 0.0;
  for (int k = 0; k < n_; ++k)
    for (size_t i = 0; i < grid_.size(); ++i)
      for (int nu = 0; nu < n_; ++nu)
        d = std::max(d, std::abs(U_[k][i][nu] - U0_[k][i][nu]));
  return d;
}

}  // namespace starweyl
