#pragma once

#include <vector>

#include "kellerpath/profile.hpp"

namespace ks {

/// The two constant solutions of u = e^{mu(u-1)}: the small one
/// underline{u}_mu in (0,1) and u = 1.
struct ConstantStates {
  double mu = 0.0;
  double lower = 0.0;
  double upper = 1.0;
};

/// Safeguarded Newton on x - e^{mu(x-1)} from x = 0, converged to 1e-14.
ConstantStates constant_states(double mu);

enum class Direction { increasing, decreasing };

struct MonotoneSolution {
  Direction direction = Direction::increasing;
  Profile profile;
  double mu = 0.0;
  double boundary_value = 0.0;  // u at the extremum end (b for +, a for -)
  double energy = 0.0;          // c_{mu,+-} = E_mu(u - underline{u}_mu)
  double residual = 0.0;        // sup-norm defect on the stored grid
  int iterations = 0;
  double shoot_param = 0.0;     // converged start value u at the low end
};

/// The increasing solution u_{mu,+}(.;a,b): two-stage shooting (bisection on
/// the start value u(a) in (underline{u}_mu, 1), then a secant polish on
/// u'(b)), sampled on a layer-graded grid.
MonotoneSolution solve_increasing(const Params& params);

/// The decreasing solution u_{mu,-}(.;a,b) on annuli (a > 0); mirror of
/// solve_increasing, shot leftward from b.
MonotoneSolution solve_decreasing(const Params& params);

/// Boundary data of the monotone solution without assembling the profile;
/// this is what the gluing root loops iterate on.
struct ShootSummary {
  double low_value = 0.0;   // u at the flat end (< 1)
  double peak_value = 0.0;  // u at the extremum end (> 1)
  double end_slope = 0.0;   // u' at the far end after the polish
  int iterations = 0;
};
ShootSummary monotone_summary(const Params& params, Direction dir);

/// E_mu(z; a, b) in the reduced omega r^{N-1} convention, for z >= 0.
double energy_of(const Profile& z, double mu);

/// The unique t > 0 maximizing t -> E_mu(t z); throws ZeroFunction on z == 0.
double nehari_project(const Profile& z, double mu);

/// omega int (u - e^{mu(u-1)}) r^{N-1} dr; vanishes on solutions.
double mass_balance(const Profile& u, double mu);

/// Largest increase of L(r) = u'^2/2 - u^2/2 + e^{mu(u-1)}/mu between
/// consecutive grid points (&lt;= 0 up to roundoff for radial solutions).
double lyapunov_max_increase(const Profile& u, double mu);

/// max(underline{u}_mu - u) over the grid (&lt;= 0: lower barrier).
double barrier_violation(const Profile& u, double mu);

/// z = u - underline{u}_mu as a profile.
Profile shifted_down(const Profile& u, double mu);

}  // namespace ks
