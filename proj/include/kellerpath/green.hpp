#pragma once

#include <span>
#include <string>
#include <vector>

#include "kellerpath/profile.hpp"

namespace ks {

/// Homogeneous pair of L u = -u'' - ((N-1)/r) u' + u on [a,b]:
/// xi grows from the left boundary condition (u'(a) = 0, or bounded with
/// xi(0) = 1 on the ball), zeta decays from zeta'(b) = 0.  After
/// construction the pair is rescaled so that r^{N-1}(xi' zeta - xi zeta')
/// is identically 1; `wronskian` keeps the pre-normalization constant.
///
/// On the ball zeta is singular at the origin and is stored only down to
/// `zmin`; Green evaluations always have their singular argument >= s_min
/// by the layer geometry.
struct GreenPair {
  Params params;
  Profile xi, zeta;
  double wronskian = 0.0;
  double zmin = 0.0;

  double xi_at(double r) const { return xi.eval(r); }
  double dxi_at(double r) const { return xi.eval_deriv(r); }
  double zeta_at(double r) const { return zeta.eval(r); }
  double dzeta_at(double r) const { return zeta.eval_deriv(r); }

  /// Boundary-normalized limit profiles xi(r)/xi(b) and zeta(r)/zeta(a)
  /// (unit value at the layer end) and their log-derivatives.
  double u_plus(double r) const { return xi.eval(r) / xi.u.back(); }
  double du_plus(double r) const { return xi.eval_deriv(r) / xi.u.back(); }
  double u_minus(double r) const { return zeta.eval(r) / zeta.u.front(); }
  double du_minus(double r) const { return zeta.eval_deriv(r) / zeta.u.front(); }
};

GreenPair homogeneous_pair(const Params& params);

/// G(r,s) = s^{N-1} xi(min(r,s)) zeta(max(r,s)).
double green_eval(const GreenPair& pair, double r, double s);
/// d/dr of G(r,s) (one-sided at r = s: the r < s branch).
double green_eval_dr(const GreenPair& pair, double r, double s);

/// Max deviation of r^{N-1}(xi' zeta - xi zeta') from 1 on the stored grid.
double wronskian_deviation(const GreenPair& pair);

/// The interior critical point of G(s,s)/s^{N-1} = xi(s) zeta(s): unique
/// sign change of (xi zeta)'.  Throws NoInteriorZero with the endpoint
/// signs if the scan finds none.
double diag_critical_point(const GreenPair& pair);

/// Limit k-layer data: peaks alphas, amplitudes A solving
/// sum_j A_j G(alpha_i, alpha_j) = 1.
struct LayerLimit {
  std::vector<double> alphas;
  std::vector<double> amps;
  GreenPair pair;
  double residual = 0.0;  // max |sum_j A_j G(a_i,a_j) - 1|
};

LayerLimit solve_amplitudes(const GreenPair& pair, std::span<const double> alphas);

/// Optimal-partition functional phi(s_1..s_k) = omega sum_i A_i s_i^{N-1}
/// (the squared H^1 norm of the constrained minimizer sum_j A_j G(.,s_j)),
/// with a central finite-difference gradient.
struct PhiValue {
  double value = 0.0;
  std::vector<double> grad;
};
PhiValue phi_functional(const GreenPair& pair, std::span<const double> s);
double phi_value(const GreenPair& pair, std::span<const double> s);

/// L_infty(s; a, b) built from the sub-interval pairs on (a,s) and (s,b):
/// ((d/dr of xi/xi(s) at s)^2 - (d/dr of zeta/zeta(s) at s)^2) / 2.
double L_infinity(const Params& params, double s);

/// JSON manifest {N, a, b, wronskian, grid sizes} plus two profile CSVs.
void export_pair(const GreenPair& pair, const std::string& dir);

}  // namespace ks
