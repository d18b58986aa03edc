#pragma once

#include <vector>

#include "kellerpath/green.hpp"
#include "kellerpath/monotone.hpp"
#include "kellerpath/profile.hpp"

namespace ks {

/// A glued k-layer solution: interfaces betas (betas[0] = a, betas[k] = b),
/// one maximum alpha_j per piece, the assembled profile, and the limit
/// configuration from the Green machinery.
struct LayerSolution {
  int k = 1;
  std::vector<double> betas;
  std::vector<double> alphas;
  bool boundary_layer = false;  // last maximum sits at r = b
  bool annulus_left = false;    // first maximum sits at r = a (annuli only)
  Profile profile;
  double mu = 0.0;
  double match_residual = 0.0;  // ||M_mu||_inf (k = 1: the C0 gap at s_bar)
  LayerLimit limit;
  double s_bar_infty = 0.0;     // diagonal critical point of the full pair
  bool converged = true;
};

/// L_mu(s; a, b) = (e^{mu(u_{mu,+}(s;a,s)-1)} - e^{mu(u_{mu,-}(s;s,b)-1)})/mu.
/// Its zero is the C0 matching radius of the one-layer solution.
double L_mu(double s, const Params& params);

/// One interior layer: Brent root of L_mu, then the glued profile
/// u_{mu,+}(.;a,s_bar) | u_{mu,-}(.;s_bar,b).
LayerSolution one_layer(const Params& params);

/// k layers via the matching system M_mu(beta) = 0 (variants: boundary
/// layer at b, boundary maximum at a on annuli), Newton-corrected from the
/// limit system M_infty built on Green functions.
LayerSolution k_layer(const Params& params, int k, bool boundary_layer = false,
                      bool annulus_left = false);

/// Root of the limit system M_infty(beta) = 0 (the Newton initial guess);
/// exposed for the verify module.
std::vector<double> limit_interfaces(const Params& params, int k,
                                     bool boundary_layer, bool annulus_left);

/// Limit maxima for given interfaces (diagonal critical points per piece,
/// or the boundary radii for the flagged end pieces).
std::vector<double> limit_maxima(const Params& params,
                                 const std::vector<double>& betas,
                                 bool boundary_layer, bool annulus_left);

}  // namespace ks
