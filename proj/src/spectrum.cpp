#include "kellerpath/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kellerpath/errors.hpp"
#include "kellerpath/ode.hpp"

namespace ks {

namespace {

struct ShootOut {
  double miss = 0.0;  // phi'(b)
  int zeros = 0;      // interior zeros of phi
};

// One eigen-shot at trial eigenvalue lam; counts interior sign changes.
ShootOut eig_shoot(const Params& p, double lam) {
  OdeOptions opt;
  opt.u_cap = 1e30;  // linear problem, no blow-up classification
  auto rhs = [lam](double u) { return lam * u; };
  ShootOut out;
  double prev_u = 1.0;
  State from{p.a, 1.0, 0.0};
  ShotResult res = integrate_driver(p.dim, rhs, from, p.b, opt, false,
                                    [&](const State& y) {
                                      if ((y.u > 0) != (prev_u > 0)) ++out.zeros;
                                      prev_u = y.u;
                                    });
  out.miss = res.state.du;
  return out;
}

Profile eig_profile(const Params& p, double lam, std::size_t n) {
  auto rhs = [lam](double u) { return lam * u; };
  OdeOptions opt;
  opt.u_cap = 1e30;
  std::vector<double> nodes = linspace(p.a, p.b, n);
  return integrate_nodes(p, rhs, State{p.a, 1.0, 0.0}, nodes, opt);
}

double bisect_eig(const Params& p, double lo, double hi) {
  double flo = eig_shoot(p, lo).miss;
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = eig_shoot(p, mid).miss;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<EigenPair> radial_neumann_eigs(const Params& params, int count) {
  params.validate();
  if (count < 1) throw SolverError(errc::out_of_domain, "count must be >= 1");

  std::vector<EigenPair> out;
  const double omega = params.omega();

  // lambda_1 = 1, constant eigenfunction (exact)
  {
    EigenPair e;
    e.index = 1;
    e.lam = 1.0;
    e.params = params;
    const double vol =
        (std::pow(params.b, params.dim) - std::pow(params.a, params.dim)) /
        params.dim;
    const double c = 1.0 / std::sqrt(omega * vol);
    e.phi.params = params;
    e.phi.grid = linspace(params.a, params.b, 1025);
    e.phi.u.assign(e.phi.grid.size(), c);
    e.phi.du.assign(e.phi.grid.size(), 0.0);
    out.push_back(std::move(e));
  }

  // unit-step scan in lambda; sign changes of phi'(b) bracket eigenvalues
  // and the interior-zero count separates them
  double lam = 1.0 + 1e-6;
  ShootOut prev = eig_shoot(params, lam);
  std::ostringstream scan_log;
  const double dlam = 1.0;
  int guard = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++guard > 2000000)
      throw SolverError(errc::bracket_failure,
                        "eigenvalue scan exhausted; table:\n" + scan_log.str());
    const double next = lam + dlam;
    const ShootOut cur = eig_shoot(params, next);
    scan_log << next << " miss=" << cur.miss << " zeros=" << cur.zeros << "\n";
    if ((cur.miss > 0) != (prev.miss > 0)) {
      const double lam_i = bisect_eig(params, lam, next);
      EigenPair e;
      e.index = static_cast<int>(out.size()) + 1;
      e.lam = lam_i;
      e.params = params;
      e.phi = eig_profile(params, lam_i, 4097);
      // normalize omega * int phi^2 r^{N-1} dr = 1 with phi(a) > 0
      const double n2 = omega * integrate_profile(e.phi, [&](double r, double u,
                                                             double) {
        return u * u * std::pow(r, params.dim - 1);
      });
      const double scale = 1.0 / std::sqrt(n2);
      for (double& v : e.phi.u) v *= scale;
      for (double& v : e.phi.du) v *= scale;
      out.push_back(std::move(e));
    }
    lam = next;
    prev = cur;
  }
  return out;
}

double cubic_integral(const EigenPair& e) {
  const int dim = e.params.dim;
  return e.params.omega() * integrate_profile(e.phi, [dim](double r, double u, double) {
           return u * u * u * std::pow(r, dim - 1);
         });
}

double lambda2_estimate(const Params& params) {
  const double ell = params.length();
  return 1.0 + std::pow(std::numbers::pi / ell, 2);
}

double lambda2_radial(const Params& params) {
  // scan as in radial_neumann_eigs but stop at the first bracket
  double lam = 1.0 + 1e-6;
  ShootOut prev = eig_shoot(params, lam);
  for (int step = 0; step < 2000000; ++step) {
    const double next = lam + 1.0;
    const ShootOut cur = eig_shoot(params, next);
    if ((cur.miss > 0) != (prev.miss > 0)) return bisect_eig(params, lam, next);
    lam = next;
    prev = cur;
  }
  throw SolverError(errc::bracket_failure, "lambda_2 scan exhausted");
}

}  // namespace ks
