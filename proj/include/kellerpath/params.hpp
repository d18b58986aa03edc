#pragma once

#include <cmath>

namespace ks {

/// Problem descriptor for -Delta u + u = e^{mu(u-1)} with Neumann boundary
/// conditions on the ball (a = 0) or annulus B_b \ B_a in R^N.
///
/// The parameter pair (mu, lambda) is tied by lambda e^mu = mu, mu > 1,
/// so lambda = mu e^{-mu} < 1/e.
struct Params {
  int dim = 3;
  double mu = 100.0;
  double a = 0.0;
  double b = 1.0;

  double lambda() const { return mu * std::exp(-mu); }
  double length() const { return b - a; }
  bool ball() const { return a == 0.0; }

  /// Surface measure of the unit (N-1)-sphere, 2 pi^{N/2} / Gamma(N/2).
  double omega() const;

  /// Throws std::invalid_argument if the descriptor violates its invariants
  /// (N >= 2, 0 <= a < b, mu > 1).
  void validate() const;

  Params with_interval(double lo, double hi) const {
    Params p = *this;
    p.a = lo;
    p.b = hi;
    return p;
  }
  Params with_mu(double m) const {
    Params p = *this;
    p.mu = m;
    return p;
  }
};

double surface_measure(int dim);

namespace defaults {
// Integrator tolerances; the layer at desk scale (mu <= 500) is resolved by
// step adaptivity alone.
inline constexpr double ode_rtol = 1e-10;
inline constexpr double ode_atol = 1e-12;
// Overshooting trajectories are cut off here; e^{mu(u-1)} overflows long
// before u reaches this.
inline constexpr double u_cap = 50.0;
// Below this radius the origin singularity is stepped over with the
// two-term Taylor series.
inline constexpr double series_radius = 1e-4;
// zeta (the right homogeneous solution) is singular at r = 0 and is only
// ever evaluated for arguments >= s_min on balls.
inline constexpr double green_s_min = 1e-3;
// Smallest admissible interval; degenerate annuli are rejected.
inline constexpr double min_interval = 1e-3;
// Desk-scale cap on mu: beyond this the layer width ~1/mu needs >1e5 nodes.
inline constexpr double mu_cap = 500.0;
// Interfaces of glued solutions are kept this far from the domain ends.
inline constexpr double glue_margin = 0.02;
// Default node count of the shared collocation discretization.
inline constexpr int collocation_nodes = 4001;
}  // namespace defaults

}  // namespace ks
