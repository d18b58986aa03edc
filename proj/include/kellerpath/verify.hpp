#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "kellerpath/gluing.hpp"
#include "kellerpath/green.hpp"
#include "kellerpath/monotone.hpp"

namespace ks {

/// Quantitative verification record.  Asymptotic statements are tested as
/// monotone-trend assertions on a mu ladder, never as finite-mu equalities.
struct CheckReport {
  std::string name;
  std::map<std::string, double> inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  std::vector<std::pair<double, double>> trend;  // (mu, gap)
  bool pass = false;
  std::string note;
};

nlohmann::json to_json(const CheckReport& r);
nlohmann::json to_json(const std::vector<CheckReport>& reports);

/// Boundary-flux limit: lhs = e^{mu(u(b)-1)}/mu, rhs = (u_inf'(b))^2/2 from
/// the boundary-normalized Green profile (mirrored at a for decreasing).
CheckReport pohozaev_check(const MonotoneSolution& sol);

/// Finite-mu Pohozaev balance (integration-by-parts identity, valid at
/// every mu) evaluated by quadrature; gap is the relative imbalance.
CheckReport pohozaev_balance(const MonotoneSolution& sol);

/// Same identity for the limit profile u_inf = xi/xi(b).
CheckReport pohozaev_balance_limit(const GreenPair& pair);

/// Rescaled boundary layer vs the one-dimensional bubble
/// log(4 e^{sqrt2 r} / (1+e^{sqrt2 r})^2) on [-R, 0].
CheckReport blowup_profile(const MonotoneSolution& sol, double window);

/// Layer-scale consistency: transition width of u near the peak vs 1/(k mu).
CheckReport layer_width_check(const MonotoneSolution& sol);

/// sup-distance of the glued profile to sum_j A_j G(., alpha_j) away from
/// the layers (distance >= 0.1 from every alpha).
CheckReport limit_profile_check(const LayerSolution& layer);

/// mu * d u_{mu,+}/db (b; a, b) by domain finite differences vs the Green
/// limit 2 (u_inf''(b) - u_inf'(b)^2) / u_inf'(b).
CheckReport boundary_sensitivity(const Params& params, double delta = 1e-4);

/// Smallest-magnitude eigenvalue of -Delta + 1 - mu e^{mu(u-1)} with
/// Neumann conditions; pass iff |sigma_min| > 1e-3 (kernel-free).
CheckReport nondegeneracy_check(const MonotoneSolution& sol);

/// Integral identities of the limit profile evaluated by quadrature.
CheckReport green_identity_check(const GreenPair& pair);

/// Named suites; "all" concatenates everything.  Deterministic output for
/// byte-identical reports across runs.
std::vector<CheckReport> run_suite(const std::string& name, const Params& params);
std::vector<std::string> suite_names();

}  // namespace ks
