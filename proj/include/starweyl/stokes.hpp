#pragma once

#include "starweyl/series.hpp"
#include "starweyl/zsolve.hpp"

namespace starweyl {

/// Stokes multipliers beta0_{kj} connecting the exponential solutions e_k to
/// the series basis: e_k = sum_j beta0_{kj} C_j. Each e_k is matched against
/// the C basis at |x| = match_radius on the midray of its own S*_k sector;
/// the relations beta0_{kj} = beta0_{1j} eps_k^{mu_j} and
/// prod_j beta0_{1j} = det[eps_k^{mu_j}]^{-1} det[eps_k^{j-1}] are then
/// measured and stored as diagnostics.
struct StokesData {
  int n = 0;
  cvector mu;                 // characteristic roots (copied for b0)
  std::vector<cvector> beta;  // beta[k-1][j-1]
  cvector beta1;              // row k = 1
  double rel7 = 0.0;          // max deviation of the rotation relation
  double rel8 = 0.0;          // deviation of the product relation
  double cond_max = 0.0;      // worst conditioning of the matching systems

  /// b0_{kj} = beta_j^0 R_k^{mu_j} for the given rho sector.
  cplx b0(const struct SectorData& sd, int k, int j) const;
};

StokesData stokes_from_e(const CBasis& cb, double match_radius = 0.5,
                         ZSolveOptions zopt = {});

}  // namespace starweyl
