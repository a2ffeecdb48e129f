#include "starweyl/stokes.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "starweyl/sector.hpp"

namespace starweyl {

cplx StokesData::b0(const SectorData& sd, int k, int j) const {
  return beta1[j - 1] * sd.R_pow(k, mu[j - 1]);
}

StokesData stokes_from_e(const CBasis& cb, double match_radius,
                         ZSolveOptions zopt) {
  const CharData& cd = cb.chardata();
  const int n = cd.n;
  StokesData st;
  st.n = n;
  st.mu = cd.mu;
  st.beta.resize(n);
  zopt.r0 = std::min(zopt.r0, 0.8 * match_radius);

  Eigen::MatrixXcd A(n, n);
  Eigen::VectorXcd rhs(n);
  for (int k = 1; k <= n; ++k) {
    const double phi = sstar_midray(n, k);
    ZSolution zs(cd, k, phi, zopt);
    const cplx x0 = match_radius * std::exp(cplx(0.0, phi));
    const auto ctab = cb.eval_all(x0, 1.0);
    const cvector ek = zs.e(match_radius);
    for (int nu = 0; nu < n; ++nu) {
      for (int j = 0; j < n; ++j) A(nu, j) = ctab[j][nu];
      rhs(nu) = ek[nu];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
    st.cond_max = std::max(st.cond_max, cond);
    if (cond > 1e8)
      throw error(errc::ill_conditioned_basis,
                  "series matching system has condition number > 1e8");
    Eigen::VectorXcd b = svd.solve(rhs);
    st.beta[k - 1].resize(n);
    for (int j = 0; j < n; ++j) st.beta[k - 1][j] = b(j);
  }
  st.beta1 = st.beta[0];

  // Relation (rotation): beta_{kj} = beta_{1j} eps_k^{mu_j}.
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= n; ++j) {
      const cplx want = st.beta1[j - 1] * unit_root_pow(n, k, cd.mu[j - 1]);
      st.rel7 = std::max(st.rel7, std::abs(st.beta[k - 1][j - 1] - want) /
                                      std::max(1.0, std::abs(want)));
    }

  // Relation (product): prod beta_{1j} = det[eps_k^{mu_j}]^{-1} det[eps_k^{j-1}].
  Eigen::MatrixXcd Emu(n, n), Epow(n, n);
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= n; ++j) {
      Emu(k - 1, j - 1) = unit_root_pow(n, k, cd.mu[j - 1]);
      Epow(k - 1, j - 1) = unit_root_pow(n, k, double(j - 1));
    }
  cplx prod = 1.0;
  for (int j = 0; j < n; ++j) prod *= st.beta1[j];
  const cplx want = Epow.determinant() / Emu.determinant();
  st.rel8 = std::abs(prod - want) / std::max(1.0, std::abs(want));
  return st;
}

}  // namespace starweyl
