#pragma once

#include <string>
#include <vector>

#include "kellerpath/profile.hpp"

namespace ks {

/// One classified point of a bifurcation branch.
struct BranchRecord {
  double mu = 0.0;
  double u0 = 0.0;        // u at r = a (r = 0 on the ball)
  double sup_norm = 0.0;
  double c1_norm = 0.0;   // sup|u| + sup|u'|
  int zeros_of_u_minus_1 = 0;
  int zeros_of_du = 0;    // interior critical points
  double min_linearized_eig = 0.0;
  bool non_simple_zero = false;  // flagged, not fatal
  std::string profile_ref;
};

enum class BranchSign { minus, plus };  // u(0) < 1 resp. > 1

struct Branch {
  int index = 2;  // bifurcates from (lambda_i^rad, 1)
  BranchSign sign = BranchSign::minus;
  std::vector<BranchRecord> records;
  std::vector<Profile> profiles;
  Params params;
  std::string stop_reason;
};

struct TraceOptions {
  int max_steps = 400;
  double ds_min = 1e-4;
  double ds_max = 0.5;
  double newton_tol = 1e-9;
  double sup_ceiling = 10.0;  // plus branches may blow up; stop and report
  double start_amplitude = 0.05;  // sup-norm scale of u - 1 at the first point
  std::size_t nodes = static_cast<std::size_t>(defaults::collocation_nodes);
  bool keep_profiles = true;
};

/// Trace the branch B_i^± of the discretized problem from (lambda_i^rad, 1):
/// first points by amplitude-pinned Newton in the known eigenfunction
/// direction, then pseudo-arclength predictor-corrector.  `params.mu` is
/// ignored; the trace stops at mu_max, at the sup-norm ceiling, or after
/// max_steps, and `stop_reason` records which.
Branch trace_branch(const Params& params, int i, BranchSign sign, double mu_max,
                    const TraceOptions& opt = {});

/// Bifurcation abscissas of the trivial branch in (mu_lo, mu_hi): the
/// radial Neumann eigenvalues lambda_i^rad, i >= 2 (analytic route),
/// cross-checked against sign changes of the discretized Jacobian
/// determinant at u == 1 (Sturm pivot counts).  Throws when the two
/// disagree beyond `cross_tol`.
std::vector<double> detect_bifurcation(const Params& params, double mu_lo,
                                       double mu_hi, double cross_tol = 1e-4);

/// Classify a converged solution profile: zero counts of u - 1 and u',
/// norms, and the smallest-magnitude eigenvalue of the linearization.
/// Rejects constant profiles.
BranchRecord classify(const Profile& profile, double mu);

}  // namespace ks
