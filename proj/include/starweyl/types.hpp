#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace starweyl {

using cplx = std::complex<double>;
using cvector = std::vector<cplx>;

inline constexpr double PI = 3.14159265358979323846;

/// Failure codes surfaced by the library. Grid sweeps flag-and-skip
/// SingularAtLambda style conditions instead of throwing; everything else
/// is a hard error.
enum class errc {
  // model
  nonmonotone_orders,
  invalid_w,
  gamma_diagonal_zero,
  empty_range,
  invalid_sector_for_ray,
  // singular_ode
  wrong_coefficient_count,
  roots_differ_by_multiple_of_n,
  equal_real_parts,
  root_in_forbidden_integer_set,
  out_of_convergence_budget,
  quadrature_nonconvergence,
  potential_not_integrable,
  // birkhoff
  ray_outside_sector,
  picard_divergence,
  ill_conditioned_basis,
  gap_region,
  rho_below_threshold,
  contraction_failure,
  // graph_forward
  singular_at_lambda,
  ill_conditioned,
  // inverse
  missing_weyl_data,
  form_inversion_failure,
  sigma_singular,
  range_mismatch,
  incomplete_table,
  denominator_near_zero,
  non_convergence,
  ambiguous_fit,
  // cli / io
  config_error,
  io_error,
};

const char* errc_name(errc c);

struct error : std::runtime_error {
  errc code;
  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code(c) {}
};

/// Tolerance knobs shared across modules; defaults match the config schema.
struct Tolerances {
  double series = 1e-12;    // series tail target
  double volterra = 1e-10;  // Volterra residual target
  double linear = 1e-10;    // singular-system detection factor
  double roundtrip = 1e-6;  // Algorithm-1 comparison target
};

inline double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace starweyl
