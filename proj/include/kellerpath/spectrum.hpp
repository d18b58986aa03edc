#pragma once

#include <vector>

#include "kellerpath/profile.hpp"

namespace ks {

/// Radial Neumann eigenpair of -Delta + Id on B_b \ B_a: the i-th
/// eigenvalue lam (lam_1 = 1 with constant eigenfunction) and the
/// L^2-normalized eigenfunction with phi > 0 at the inner end.
struct EigenPair {
  int index = 1;
  double lam = 1.0;
  Profile phi;
  Params params;
};

/// First `count` radial Neumann eigenpairs by shooting: integrate
/// -phi'' - ((N-1)/r) phi' + phi = lam phi from r = a with phi(a) = 1,
/// phi'(a) = 0 and find the roots of phi'(b) in lam.  Brackets come from a
/// unit-step scan separated by interior-zero counts.
std::vector<EigenPair> radial_neumann_eigs(const Params& params, int count);

/// omega * int phi^3 r^{N-1} dr.  The transcriticality coefficient of the
/// i-th bifurcation is b = -(1/2) (lam_i)^2 * (this value).
double cubic_integral(const EigenPair& e);

/// Second radial Neumann eigenvalue (the first nonconstant one); fast path
/// used as the solvability threshold mu > lambda_2^rad(a,b).
double lambda2_radial(const Params& params);

/// Cheap 1-D lower-bound style estimate 1 + (pi/(b-a))^2, used to skip the
/// exact threshold computation when mu is far above it.
double lambda2_estimate(const Params& params);

}  // namespace ks
