#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "starweyl/potential.hpp"
#include "starweyl/sector.hpp"
#include "starweyl/stokes.hpp"
#include "starweyl/volterra.hpp"
#include "starweyl/zsolve.hpp"

namespace starweyl {

/// Sector-wise solutions y_k(x, rho) = e_{sigma(k)}(rho x) of the
/// unperturbed equation with lambda = rho^n, their duals y*_k, and the
/// normalized quantities U0. Evaluation picks per mode between the series
/// connection y_k = sum_j beta_j^0 R_k^{mu_j} rho^{mu_j} C_j(x, lambda)
/// (safe while the cancellation budget holds) and the z-equation route
/// (subdominant modes at large |rho x|); a request neither route can serve
/// raises GapRegion.
class BirkhoffEvaluator {
 public:
  BirkhoffEvaluator(std::shared_ptr<const CBasis> cb, SectorData sd,
                    StokesData st);

  int n() const { return sd_.n; }
  const SectorData& sector() const { return sd_; }
  const StokesData& stokes() const { return st_; }
  const CBasis& cbasis() const { return *cb_; }

  /// y_k^{(nu)}(x, rho), k = 1..n (rows), nu = 0..n-1.
  std::vector<cvector> eval_y(double x, cplx rho) const;

  /// y*_k(t, rho), k = 1..n.
  cvector eval_ystar(double t, cplx rho) const;

  /// Weight functions of the normalized system.
  cplx F(int k, int nu, cplx rho, double x) const;
  cplx Fstar(int k, cplx rho, double x) const;

  /// U0_{k nu} = y_k^{(nu)} (rho^nu F_{k nu})^{-1} and U0*_k = y*_k / F*_k.
  std::vector<cvector> U0(double x, cplx rho) const;
  cvector U0star(double x, cplx rho) const;

  /// Relative cancellation estimate of the series route for mode k.
  double series_error(int k, double x, cplx rho) const;

 private:
  const ZSolution& zmode(int root_index, double phi) const;

  std::shared_ptr<const CBasis> cb_;
  SectorData sd_;
  StokesData st_;
  double series_guard_ = 1e-7;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, long long>, std::unique_ptr<ZSolution>> zcache_;
};

/// Q = sum_m int |q_{0m}| and the split integrals J_m(rho) of the kernel
/// estimate; the bound J(rho) <= Q/|rho| for |rho| >= 1 is the contraction
/// budget of the perturbed system.
struct JEstimate {
  std::vector<double> Jm;
  double J = 0.0;
  double Q = 0.0;
};
JEstimate estimate_J(const CharData& cd, const std::vector<PotentialSpec>& q,
                     double supp, double rho_abs);

/// Empirical constants over a calibration sweep: M1 bounds |U0|, |U0*|;
/// M0 bounds |U0 - 1| |rho| x over |rho| x >= 1.
struct BirkhoffConstants {
  double M0 = 0.0;
  double M1 = 0.0;
};
BirkhoffConstants measure_constants(const BirkhoffEvaluator& be,
                                    const std::vector<double>& rho_abs,
                                    const std::vector<double>& xs);

struct YOptions {
  int grid = 400;
  double grade = 3.0;
  double tol = 1e-11;
  int max_sweeps = 80;
  double m1 = 0.0;  // measured M1 for the rho_0 threshold; 0 skips the check
};

/// Solution of the normalized perturbed system for one rho: U_{k nu} on the
/// collocation grid over the potential support, with Y_k^{(nu)} = rho^nu
/// F_{k nu} U_{k nu}. Solved by Picard iteration; the contraction constant
/// M1 Q / |rho| < 1/2 is guaranteed above rho_0 = 2 M1 Q + 1.
class YSolution {
 public:
  YSolution(const BirkhoffEvaluator& be, const std::vector<PotentialSpec>& q,
            double supp, cplx rho, YOptions opt = {});

  int n() const { return n_; }
  cplx rho() const { return rho_; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<std::vector<cvector>>& U() const { return U_; }
  const std::vector<std::vector<cvector>>& U0() const { return U0_; }

  /// Y_k^{(nu)} at grid node i.
  cplx Y(int k, int nu, size_t i) const;
  /// sup over the grid of |U_{k nu} - U0_{k nu}|.
  double u_deviation() const;

  double residual() const { return residual_; }
  int sweeps() const { return sweeps_; }

 private:
  const BirkhoffEvaluator& be_;
  int n_;
  cplx rho_;
  std::vector<double> grid_;
  std::vector<std::vector<cvector>> U_, U0_;
  std::vector<std::vector<cvector>> Fk_;  // F_{k nu}(rho x_i)
  double residual_ = 0.0;
  int sweeps_ = 0;
};

}  // namespace starweyl
