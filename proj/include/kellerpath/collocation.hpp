#pragma once

#include <functional>
#include <vector>

#include "kellerpath/linalg.hpp"
#include "kellerpath/profile.hpp"

namespace ks {

/// Conservative finite-volume discretization of
///   -(r^{N-1} u')' / r^{N-1} + u = g(u)
/// on a uniform grid with Neumann ends.  Fluxes telescope, so the discrete
/// mass balance holds exactly.  Shared by the continuation corrector and
/// the linearized eigenproblems.
struct FvGrid {
  Params params;
  std::vector<double> r;     // nodes, uniform
  std::vector<double> vol;   // cell volumes int r^{N-1} over the dual cell
  std::vector<double> face;  // face coefficients r_{i+1/2}^{N-1} / h
  double h = 0.0;

  std::size_t size() const { return r.size(); }
};

FvGrid make_fv_grid(const Params& params, std::size_t n);

/// res_i = (S u)_i / vol_i + u_i - g(u_i)
void fv_residual(const FvGrid& g, const std::vector<double>& u, double mu,
                 std::vector<double>& res);

/// Tridiagonal Jacobian of fv_residual at u.
void fv_jacobian(const FvGrid& g, const std::vector<double>& u, double mu,
                 Tridiag& J);

/// d res / d mu = -(u-1) e^{mu(u-1)}
void fv_dresidual_dmu(const FvGrid& g, const std::vector<double>& u, double mu,
                      std::vector<double>& out);

/// Damped Newton on the discretized BVP at fixed mu.  Returns the final
/// max-norm residual (negative when Newton failed to converge).
double fv_newton(const FvGrid& g, std::vector<double>& u, double mu,
                 double tol = 1e-9, int max_iter = 60);

/// Symmetric pencil (S, M) of the linearized radial operator
/// -Delta + 1 - V(r) with Neumann conditions on the FV grid:
/// eigenproblem S x = sigma M x.  V is evaluated at the nodes.
SymTriPencil linearized_pencil(const FvGrid& g, const std::vector<double>& V);

Profile fv_to_profile(const FvGrid& g, const std::vector<double>& u);

}  // namespace ks
