#pragma once

#include <stdexcept>
#include <string>

namespace ks {

enum class errc {
  blow_up,
  step_underflow,
  degenerate_interval,
  normalization_failure,
  out_of_domain,
  no_interior_zero,
  singular_system,
  below_threshold,
  shooting_collapse,
  zero_function,
  bracket_failure,
  no_bracket,
  infeasible_order,
  window_too_wide,
  eig_solver_failure,
  bad_config,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::blow_up: return "BlowUp";
    case errc::step_underflow: return "StepUnderflow";
    case errc::degenerate_interval: return "DegenerateInterval";
    case errc::normalization_failure: return "NormalizationFailure";
    case errc::out_of_domain: return "OutOfDomain";
    case errc::no_interior_zero: return "NoInteriorZero";
    case errc::singular_system: return "SingularSystem";
    case errc::below_threshold: return "BelowThreshold";
    case errc::shooting_collapse: return "ShootingCollapse";
    case errc::zero_function: return "ZeroFunction";
    case errc::bracket_failure: return "BracketFailure";
    case errc::no_bracket: return "NoBracket";
    case errc::infeasible_order: return "InfeasibleOrder";
    case errc::window_too_wide: return "WindowTooWide";
    case errc::eig_solver_failure: return "EigSolverFailure";
    case errc::bad_config: return "BadConfig";
  }
  return "SolverError";
}

/// Error type shared by all solvers.  `where` carries the last valid radius
/// (or other scalar diagnostic) when one is meaningful.
class SolverError : public std::runtime_error {
 public:
  SolverError(errc code, const std::string& what, double where = 0.0)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        where_(where) {}

  errc code() const { return code_; }
  double where() const { return where_; }

 private:
  errc code_;
  double where_;
};

}  // namespace ks
