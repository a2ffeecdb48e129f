#include "starweyl/types.hpp"

namespace starweyl {

const char* errc_name(errc c) {
  switch (c) {
    case errc::nonmonotone_orders: return "NonmonotoneOrders";
    case errc::invalid_w: return "InvalidW";
    case errc::gamma_diagonal_zero: return "GammaDiagonalZero";
    case errc::empty_range: return "EmptyRange";
    case errc::invalid_sector_for_ray: return "InvalidSectorForRay";
    case errc::wrong_coefficient_count: return "WrongCoefficientCount";
    case errc::roots_differ_by_multiple_of_n: return "RootsDifferByMultipleOfN";
    case errc::equal_real_parts: return "EqualRealParts";
    case errc::root_in_forbidden_integer_set: return "RootInForbiddenIntegerSet";
    case errc::out_of_convergence_budget: return "OutOfConvergenceBudget";
    case errc::quadrature_nonconvergence: return "QuadratureNonconvergence";
    case errc::potential_not_integrable: return "PotentialNotIntegrable";
    case errc::ray_outside_sector: return "RayOutsideSector";
    case errc::picard_divergence: return "PicardDivergence";
    case errc::ill_conditioned_basis: return "IllConditionedBasis";
    case errc::gap_region: return "GapRegion";
    case errc::rho_below_threshold: return "RhoBelowThreshold";
    case errc::contraction_failure: return "ContractionFailure";
    case errc::singular_at_lambda: return "SingularAtLambda";
    case errc::ill_conditioned: return "IllConditioned";
    case errc::missing_weyl_data: return "MissingWeylData";
    case errc::form_inversion_failure: return "FormInversionFailure";
    case errc::sigma_singular: return "SigmaSingular";
    case errc::range_mismatch: return "RangeMismatch";
    case errc::incomplete_table: return "IncompleteTable";
    case errc::denominator_near_zero: return "DenominatorNearZero";
    case errc::non_convergence: return "NonConvergence";
    case errc::ambiguous_fit: return "AmbiguousFit";
    case errc::config_error: return "ConfigError";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

}  // namespace starweyl
