#pragma once

#include "starweyl/charpoly.hpp"

namespace starweyl {

struct ZSolveOptions {
  double r0 = 0.4;          // inner end of the solved ray
  double x_far = 3e4;       // outer end of the solved zone
  double delta = 0.004;     // geometric mesh ratio - 1 (solved zone)
  double delta_tail = 0.05; // coarser ratio on the frozen tail
  double tail_extent = 1e8; // tail reaches x_far * tail_extent
  double tol = 1e-11;       // Picard fixed-point target (sup change)
  int max_sweeps = 60;
};

/// Solutions z_{k d} of the from-infinity integral equations on the ray
/// x = r e^{i phi}: e_k^{(d)}(x) = eps_k^d exp(eps_k x) z_{k d}(x), with
/// z -> 1 at infinity. Backward product integration with exponential panel
/// moments; beyond x_far the unknowns are frozen at 1 (the neglected
/// correction there is second order in the kernel tail), and the integral
/// itself continues to x_far * tail_extent.
///
/// The ray must make Re(eps_k u) minimal among all roots (the closed S*_k
/// sectors satisfy this); otherwise the equation diverges and the request
/// is rejected.
class ZSolution {
 public:
  ZSolution(const CharData& cd, int k, double phi, ZSolveOptions opt = {});

  int k() const { return k_; }
  double phi() const { return phi_; }
  int n() const { return cd_.n; }
  double r0() const { return opt_.r0; }
  double r_max() const { return opt_.x_far; }

  /// z_{k,0..n-1} at radius r in [r0, x_far] (cubic between mesh nodes).
  cvector z(double r) const;

  /// e_k^{(0..n-1)}(r e^{i phi}).
  cvector e(double r) const;

  double residual() const { return residual_; }
  int sweeps() const { return sweeps_; }

 private:
  CharData cd_;
  int k_;
  double phi_;
  ZSolveOptions opt_;
  cplx u_;                      // e^{i phi}
  cvector eps_;
  std::vector<double> mesh_;    // ascending radii, mesh_[0] = r0
  size_t solved_;               // nodes with solved z (rest frozen at 1)
  std::vector<cvector> zval_;   // [node][d]
  double residual_ = 0.0;
  int sweeps_ = 0;
};

}  // namespace starweyl
