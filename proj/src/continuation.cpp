#include "kellerpath/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kellerpath/collocation.hpp"
#include "kellerpath/errors.hpp"
#include "kellerpath/linalg.hpp"
#include "kellerpath/spectrum.hpp"

namespace ks {

namespace {

// weighted inner product sum_i vol_i x_i y_i (the discrete omega r^{N-1} dr,
// up to the constant omega)
double dotw(const FvGrid& g, const std::vector<double>& x,
            const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.vol[i] * x[i] * y[i];
  return s;
}

double min_linearized_eig(const FvGrid& g, const std::vector<double>& u, double mu) {
  std::vector<double> V(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    V[i] = 1.0 - mu * std::exp(mu * (u[i] - 1.0));
  const SymTriPencil P = linearized_pencil(g, V);
  return inverse_iteration(P, 0.0);
}

struct ZeroCount {
  int zeros_u = 0;
  int zeros_du = 0;
  bool non_simple = false;
  bool interlaced = true;
};

ZeroCount count_zeros(const Profile& p) {
  ZeroCount out;
  std::vector<double> zu, zdu;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double f0 = p.u[i] - 1.0, f1 = p.u[i + 1] - 1.0;
    if (f0 == 0.0 || (f0 > 0) != (f1 > 0)) {
      const double t = f0 / (f0 - f1);
      const double r = p.grid[i] + t * (p.grid[i + 1] - p.grid[i]);
      zu.push_back(r);
      if (std::abs(p.eval_deriv(r)) < 1e-10) out.non_simple = true;
    }
    // interior critical points (skip the Neumann ends)
    if (i > 0 && (p.du[i] > 0) != (p.du[i + 1] > 0) && i + 2 < p.size())
      zdu.push_back(0.5 * (p.grid[i] + p.grid[i + 1]));
  }
  out.zeros_u = static_cast<int>(zu.size());
  out.zeros_du = static_cast<int>(zdu.size());
  for (const double rc : zdu) {
    bool between = false;
    for (std::size_t i = 0; i + 1 < zu.size(); ++i)
      if (zu[i] < rc && rc < zu[i + 1]) between = true;
    if (!between) out.interlaced = false;
  }
  return out;
}

BranchRecord classify_on_grid(const FvGrid& g, const std::vector<double>& u,
                              double mu) {
  Profile p = fv_to_profile(g, u);
  BranchRecord rec;
  rec.mu = mu;
  rec.u0 = u.front();
  rec.sup_norm = p.max_abs_u();
  rec.c1_norm = p.max_abs_u() + p.max_abs_du();
  const ZeroCount zc = count_zeros(p);
  rec.zeros_of_u_minus_1 = zc.zeros_u;
  rec.zeros_of_du = zc.zeros_du;
  rec.non_simple_zero = zc.non_simple;
  rec.min_linearized_eig = min_linearized_eig(g, u, mu);
  return rec;
}

// Solve the bordered system [J, b; c^T, d] [x; y] = [f; h] by block
// elimination with two tridiagonal solves.
bool bordered_solve(const Tridiag& J, const std::vector<double>& b,
                    const std::vector<double>& c, double d,
                    const std::vector<double>& f, double h,
                    std::vector<double>& x, double& y) {
  std::vector<double> s1 = f, s2 = b;
  if (!solve_tridiag(J, s1)) return false;
  if (!solve_tridiag(J, s2)) return false;
  double cs1 = 0.0, cs2 = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    cs1 += c[i] * s1[i];
    cs2 += c[i] * s2[i];
  }
  const double denom = d - cs2;
  if (denom == 0.0) return false;
  y = (h - cs1) / denom;
  x.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) x[i] = s1[i] - y * s2[i];
  return true;
}

// Newton on F(u, mu) = 0 with the amplitude constraint <phi, u-1>_w = s0;
// both u and mu move.  Used to land on the branch next to the bifurcation
// point without collapsing onto the trivial solution.
bool pinned_solve(const FvGrid& g, const std::vector<double>& phi, double s0,
                  std::vector<double>& u, double& mu, double tol, int max_iter) {
  // The raw FV residual rows carry a 1/h^2 scale, so their roundoff floor
  // sits near 4 eps/h^2; convergence is judged by the Newton step with the
  // residual as a sanity bound.
  const std::size_t n = g.size();
  const double floor =
      64.0 * std::numeric_limits<double>::epsilon() / (g.h * g.h);
  std::vector<double> res, fmu, x;
  Tridiag J;
  for (int it = 0; it < max_iter; ++it) {
    fv_residual(g, u, mu, res);
    double amp = -s0;
    for (std::size_t i = 0; i < n; ++i) amp += g.vol[i] * phi[i] * (u[i] - 1.0);
    double rn = std::abs(amp);
    for (double v : res) rn = std::max(rn, std::abs(v));
    if (rn < std::max(tol, floor) && it > 0) return true;
    fv_jacobian(g, u, mu, J);
    fv_dresidual_dmu(g, u, mu, fmu);
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = g.vol[i] * phi[i];
    double dmu = 0.0;
    if (!bordered_solve(J, fmu, c, 0.0, res, amp, x, dmu)) return false;
    double step = std::abs(dmu);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] -= x[i];
      step = std::max(step, std::abs(x[i]));
    }
    mu -= dmu;
    if (!std::isfinite(mu)) return false;
    if (step < 1e-11 * (1.0 + std::abs(mu))) return rn < 1e-5;
  }
  return false;
}

}  // namespace

BranchRecord classify(const Profile& profile, double mu) {
  profile.check_consistent();
  double dev = 0.0;
  for (double v : profile.u) dev = std::max(dev, std::abs(v - 1.0));
  if (dev < 1e-9)
    throw SolverError(errc::out_of_domain,
                      "constant profiles belong to the trivial branch");
  Params p = profile.params;
  p.mu = mu;
  FvGrid g = make_fv_grid(p, static_cast<std::size_t>(defaults::collocation_nodes));
  Profile rs = resample_uniform(profile, g.size());
  return classify_on_grid(g, rs.u, mu);
}

std::vector<double> detect_bifurcation(const Params& params, double mu_lo,
                                       double mu_hi, double cross_tol) {
  params.validate();
  if (!(mu_hi > mu_lo))
    throw SolverError(errc::out_of_domain, "empty bifurcation range");

  // analytic route: eigenvalues of the linearization at u == 1 are
  // lambda_i^rad - mu, so crossings sit exactly at the lambda_i^rad
  std::vector<double> analytic;
  Params scan = params;
  scan.mu = std::max(params.mu, 2.0);
  for (int count = 2;; ++count) {
    const std::vector<EigenPair> eigs = radial_neumann_eigs(scan, count);
    const double lam = eigs.back().lam;
    if (lam >= mu_hi) break;
    if (lam > mu_lo && lam > 1.0 + 1e-9) analytic.push_back(lam);
    if (count > 64) break;
  }

  // cross-check: Sturm negative-eigenvalue count of the discretized
  // Jacobian at u == 1 jumps exactly at the discrete eigenvalues
  FvGrid g = make_fv_grid(scan, static_cast<std::size_t>(defaults::collocation_nodes));
  SymTriPencil P = linearized_pencil(g, std::vector<double>(g.size(), 1.0));
  // J(mu) = S/M + (1 - mu): eigenvalues sigma_i(J) = lambda_i^disc - mu
  auto negatives = [&](double mu) {
    // eigenvalues of the pencil are lambda_i^disc; count those below mu
    return sturm_count_below(P, mu);
  };
  for (double lam : analytic) {
    double lo = lam - 0.5, hi = lam + 0.5;
    const int base = negatives(lo);
    if (negatives(hi) <= base)
      throw SolverError(errc::eig_solver_failure,
                        "discretized Jacobian shows no crossing near " +
                            std::to_string(lam));
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (negatives(mid) > base)
        hi = mid;
      else
        lo = mid;
    }
    const double disc = 0.5 * (lo + hi);
    if (std::abs(disc - lam) > cross_tol)
      throw SolverError(errc::eig_solver_failure,
                        "analytic and discretized crossings disagree: " +
                            std::to_string(lam) + " vs " + std::to_string(disc));
  }
  return analytic;
}

Branch trace_branch(const Params& params, int i, BranchSign sign, double mu_max,
                    const TraceOptions& opt) {
  params.validate();
  if (i < 2) throw SolverError(errc::out_of_domain, "branches start at i = 2");

  Branch branch;
  branch.index = i;
  branch.sign = sign;
  branch.params = params;

  // eigenpair feeding the branch-switching direction
  const std::vector<EigenPair> eigs = radial_neumann_eigs(params, i);
  const EigenPair& ep = eigs.back();
  const double lam = ep.lam;
  if (!(mu_max > lam))
    throw SolverError(errc::out_of_domain, "mu_max below the bifurcation point", lam);

  FvGrid g = make_fv_grid(params, opt.nodes);
  std::vector<double> phi(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) phi[j] = ep.phi.eval(g.r[j]);
  double phi_sup = 0.0;
  for (double v : phi) phi_sup = std::max(phi_sup, std::abs(v));

  // keep the first point within |mu - lam| ~ 0.1 of the bifurcation: the
  // branch slope there is the transcritical coefficient b = -lam^2 int
  // phi^3 / 2, which grows quickly with i
  const double b_coef =
      0.5 * lam * lam * std::max(std::abs(cubic_integral(ep)), 1e-8);
  const double eps = std::min(opt.start_amplitude / phi_sup, 0.1 / b_coef);
  const double s_dir = (sign == BranchSign::minus) ? -eps : eps;

  auto pinned_point = [&](double s0, double mu_guess, std::vector<double>& u,
                          double& mu) -> bool {
    u.assign(g.size(), 1.0);
    for (std::size_t j = 0; j < g.size(); ++j) u[j] += s0 * phi[j] / 1.0;
    mu = mu_guess;
    return pinned_solve(g, phi, s0 * dotw(g, phi, phi), u, mu, opt.newton_tol, 50);
  };

  std::vector<double> u1, u2;
  double mu1 = 0.0, mu2 = 0.0;
  if (!pinned_point(0.5 * s_dir, lam, u1, mu1) || !pinned_point(s_dir, mu1, u2, mu2))
    throw SolverError(errc::shooting_collapse, "branch switching failed at i = " +
                                                   std::to_string(i));

  auto push_record = [&](const std::vector<double>& u, double mu) {
    BranchRecord rec = classify_on_grid(g, u, mu);
    rec.profile_ref = "branch_i" + std::to_string(i) +
                      (sign == BranchSign::minus ? "m" : "p") + "_" +
                      std::to_string(branch.records.size());
    branch.records.push_back(rec);
    if (opt.keep_profiles) branch.profiles.push_back(fv_to_profile(g, u));
  };
  push_record(u1, mu1);
  push_record(u2, mu2);

  // pseudo-arclength continuation; tangent in the (u, mu) product space
  // with the discrete weighted metric
  const std::size_t n = g.size();
  std::vector<double> uprev = u1, ucur = u2;
  double muprev = mu1, mucur = mu2;
  double ds = 4.0 * opt.ds_min;
  std::string stop = "mu_max";
  for (int step = 0; step < opt.max_steps; ++step) {
    if (branch.records.size() >= static_cast<std::size_t>(opt.max_steps)) {
      stop = "max_steps";
      break;
    }
    // secant tangent, normalized in the weighted metric
    std::vector<double> tu(n);
    for (std::size_t j = 0; j < n; ++j) tu[j] = ucur[j] - uprev[j];
    double tmu = mucur - muprev;
    double tn = std::sqrt(dotw(g, tu, tu) + tmu * tmu);
    if (!(tn > 0)) {
      stop = "stalled";
      break;
    }
    for (double& v : tu) v /= tn;
    tmu /= tn;

    bool accepted = false;
    while (!accepted) {
      std::vector<double> u = ucur;
      double mu = mucur + ds * tmu;
      for (std::size_t j = 0; j < n; ++j) u[j] += ds * tu[j];
      // corrector: F(u,mu) = 0 and tangent . ((u,mu)-(ucur,mucur)) = ds
      bool ok = false;
      const double floor =
          64.0 * std::numeric_limits<double>::epsilon() / (g.h * g.h);
      for (int it = 0; it < 25; ++it) {
        std::vector<double> res, fmu, x;
        Tridiag J;
        fv_residual(g, u, mu, res);
        double arc = -ds + tmu * (mu - mucur);
        for (std::size_t j = 0; j < n; ++j)
          arc += g.vol[j] * tu[j] * (u[j] - ucur[j]);
        double rn = std::abs(arc);
        for (double v : res) rn = std::max(rn, std::abs(v));
        if (rn < std::max(opt.newton_tol, floor) && it > 0) {
          ok = true;
          break;
        }
        fv_jacobian(g, u, mu, J);
        fv_dresidual_dmu(g, u, mu, fmu);
        std::vector<double> c(n);
        for (std::size_t j = 0; j < n; ++j) c[j] = g.vol[j] * tu[j];
        double dmu = 0.0;
        if (!bordered_solve(J, fmu, c, tmu, res, arc, x, dmu)) break;
        double step = std::abs(dmu);
        for (std::size_t j = 0; j < n; ++j) {
          u[j] -= x[j];
          step = std::max(step, std::abs(x[j]));
        }
        mu -= dmu;
        if (!std::isfinite(mu)) break;
        if (step < 1e-11 * (1.0 + std::abs(mu))) {
          ok = rn < 1e-5;
          break;
        }
      }
      if (ok) {
        accepted = true;
        uprev = ucur;
        muprev = mucur;
        ucur = u;
        mucur = mu;
        push_record(ucur, mucur);
        ds = std::min(ds * 1.5, opt.ds_max);
      } else {
        ds *= 0.5;  // corrector divergence: halve the step
        if (ds < opt.ds_min) {
          stop = "corrector_divergence";
          branch.stop_reason = stop;
          return branch;
        }
      }
    }
    if (mucur > mu_max) {
      stop = "mu_max";
      break;
    }
    if (mucur < 1.0 + 1e-3) {
      stop = "mu_lower_bound";
      break;
    }
    if (branch.records.back().sup_norm > opt.sup_ceiling) {
      stop = "sup_norm_ceiling";
      break;
    }
  }
  branch.stop_reason = stop;
  return branch;
}

}  // namespace ks
