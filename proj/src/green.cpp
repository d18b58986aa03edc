#include "kellerpath/green.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "kellerpath/errors.hpp"
#include "kellerpath/linalg.hpp"
#include "kellerpath/ode.hpp"

namespace ks {

namespace {

// Shared node set for xi and zeta: uniform over [lo, b] with geometric
// clustering below `lo` down to zmin when the domain is a ball (zeta grows
// like -log r resp. r^{2-N} there).
std::vector<double> pair_grid(const Params& p, double zmin) {
  const std::size_t n_uniform = 4097;
  if (!p.ball()) return linspace(p.a, p.b, n_uniform);
  const double knee = std::min(0.1, 0.5 * p.b);
  std::vector<double> g;
  const double ratio = 1.005;
  for (double r = zmin; r < knee; r *= ratio) g.push_back(r);
  std::vector<double> rest = linspace(knee, p.b, n_uniform);
  g.insert(g.end(), rest.begin(), rest.end());
  g.erase(std::unique(g.begin(), g.end(),
                      [&](double a, double bb) { return bb - a < 1e-15; }),
          g.end());
  return g;
}

}  // namespace

GreenPair homogeneous_pair(const Params& params) {
  params.validate();
  if (params.length() < 1e-6)
    throw SolverError(errc::degenerate_interval, "interval shorter than 1e-6",
                      params.length());

  GreenPair pair;
  pair.params = params;
  pair.zmin = params.ball() ? std::min(defaults::series_radius, 0.1 * params.b)
                            : params.a;

  auto zero_rhs = [](double) { return 0.0; };
  OdeOptions opt;
  opt.u_cap = 1e300;  // zeta is singular at the origin; no blow-up guard here
  std::vector<double> nodes = pair_grid(params, pair.zmin);

  // xi: left boundary condition, integrated left -> right
  if (params.ball()) {
    std::vector<double> xi_nodes;
    xi_nodes.push_back(0.0);
    xi_nodes.insert(xi_nodes.end(), nodes.begin(), nodes.end());
    pair.xi = integrate_nodes(params, zero_rhs, State{0.0, 1.0, 0.0}, xi_nodes, opt);
  } else {
    pair.xi = integrate_nodes(params, zero_rhs, State{params.a, 1.0, 0.0}, nodes, opt);
  }

  // zeta: Neumann at b, integrated right -> left over the same nodes
  {
    std::vector<double> back(nodes.rbegin(), nodes.rend());
    pair.zeta = integrate_nodes(params, zero_rhs, State{params.b, 1.0, 0.0}, back, opt);
  }

  // r^{N-1} W evaluated at b, where zeta'(b) = 0 exactly
  const double w0 = std::pow(params.b, params.dim - 1) * pair.xi.du.back() *
                    pair.zeta.u.back();
  pair.wronskian = w0;
  if (!(std::abs(w0) > 1e-14))
    throw SolverError(errc::normalization_failure,
                      "vanishing Wronskian, integrator inconsistency", w0);
  for (double& v : pair.zeta.u) v /= w0;
  for (double& v : pair.zeta.du) v /= w0;
  return pair;
}

double wronskian_deviation(const GreenPair& pair) {
  const Profile& z = pair.zeta;
  const Profile& x = pair.xi;
  const std::size_t off = x.size() - z.size();  // xi may carry the r = 0 node
  double worst = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double r = z.grid[i];
    const double w = std::pow(r, pair.params.dim - 1) *
                     (x.du[i + off] * z.u[i] - x.u[i + off] * z.du[i]);
    worst = std::max(worst, std::abs(w - 1.0));
  }
  return worst;
}

namespace {
void check_green_args(const GreenPair& pair, double r, double s) {
  const Params& p = pair.params;
  // s == a is the punctual limit G(r,a;a,b), defined on annuli (a > 0)
  const bool s_ok = (s > p.a) || (s == p.a && p.a > 0.0);
  if (r < p.a - 1e-12 || r > p.b + 1e-12 || s > p.b + 1e-12 || !s_ok)
    throw SolverError(errc::out_of_domain, "green_eval argument outside [a,b]", s);
  const double smax = std::max(r, s);
  if (smax < pair.zmin)
    throw SolverError(errc::out_of_domain,
                      "zeta not resolved below s_min near the origin", smax);
}
}  // namespace

double green_eval(const GreenPair& pair, double r, double s) {
  check_green_args(pair, r, s);
  const double lo = std::min(r, s), hi = std::max(r, s);
  return std::pow(s, pair.params.dim - 1) * pair.xi_at(lo) * pair.zeta_at(hi);
}

double green_eval_dr(const GreenPair& pair, double r, double s) {
  check_green_args(pair, r, s);
  const double w = std::pow(s, pair.params.dim - 1);
  if (r <= s) return w * pair.dxi_at(r) * pair.zeta_at(s);
  return w * pair.xi_at(s) * pair.dzeta_at(r);
}

double diag_critical_point(const GreenPair& pair) {
  const Params& p = pair.params;
  const double lo = p.ball() ? std::max(defaults::green_s_min, pair.zmin) : p.a + 1e-9;
  const double hi = p.b - 1e-12 * std::max(1.0, p.b);
  auto slope = [&](double r) {
    return pair.dxi_at(r) * pair.zeta_at(r) + pair.xi_at(r) * pair.dzeta_at(r);
  };
  const int n_scan = 2048;
  double prev_r = lo, prev_v = slope(lo);
  double root_lo = 0.0, root_hi = 0.0;
  bool found = false;
  for (int i = 1; i <= n_scan; ++i) {
    const double r = lo + (hi - lo) * static_cast<double>(i) / n_scan;
    const double v = slope(r);
    if (prev_v == 0.0) {
      root_lo = root_hi = prev_r;
      found = true;
      break;
    }
    if ((prev_v > 0) != (v > 0)) {
      root_lo = prev_r;
      root_hi = r;
      found = true;
      break;
    }
    prev_r = r;
    prev_v = v;
  }
  if (!found)
    throw SolverError(errc::no_interior_zero,
                      "(xi zeta)' has no interior sign change; endpoint slopes " +
                          std::to_string(slope(lo)) + ", " + std::to_string(slope(hi)),
                      lo);
  if (root_lo == root_hi) return root_lo;
  double flo = slope(root_lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (root_lo + root_hi);
    const double fm = slope(mid);
    if (std::abs(fm) < 1e-13 || root_hi - root_lo < 1e-14 * std::max(1.0, mid)) {
      return mid;
    }
    if ((fm > 0) == (flo > 0)) {
      root_lo = mid;
      flo = fm;
    } else {
      root_hi = mid;
    }
  }
  return 0.5 * (root_lo + root_hi);
}

LayerLimit solve_amplitudes(const GreenPair& pair, std::span<const double> alphas) {
  const std::size_t k = alphas.size();
  if (k == 0) throw SolverError(errc::out_of_domain, "no layer radii given");
  for (std::size_t i = 0; i + 1 < k; ++i)
    if (!(alphas[i] < alphas[i + 1]))
      throw SolverError(errc::out_of_domain, "layer radii not increasing", alphas[i]);
  // a boundary peak at r = a is admissible on annuli (punctual Green limit)
  const bool lo_ok = (alphas.front() > pair.params.a) ||
                     (alphas.front() == pair.params.a && pair.params.a > 0.0);
  if (!lo_ok || !(alphas.back() <= pair.params.b))
    throw SolverError(errc::out_of_domain, "layer radii outside (a,b]");

  std::vector<double> G(k * k), rhs(k, 1.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      G[i * k + j] = green_eval(pair, alphas[i], alphas[j]);

  const double cond = cond_estimate_1(G, k);
  if (!(cond < 1e12))
    throw SolverError(errc::singular_system,
                      "amplitude system condition estimate " + std::to_string(cond));
  std::vector<double> A = G, x = rhs;
  if (!solve_dense(A, k, x))
    throw SolverError(errc::singular_system, "amplitude system is singular");

  LayerLimit lim;
  lim.alphas.assign(alphas.begin(), alphas.end());
  lim.amps = x;
  lim.pair = pair;
  double res = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double s = -1.0;
    for (std::size_t j = 0; j < k; ++j) s += G[i * k + j] * x[j];
    res = std::max(res, std::abs(s));
  }
  lim.residual = res;
  return lim;
}

double phi_value(const GreenPair& pair, std::span<const double> s) {
  LayerLimit lim = solve_amplitudes(pair, s);
  double v = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    v += lim.amps[i] * std::pow(s[i], pair.params.dim - 1);
  return pair.params.omega() * v;
}

PhiValue phi_functional(const GreenPair& pair, std::span<const double> s) {
  PhiValue out;
  out.value = phi_value(pair, s);
  const double h = 1e-5;
  out.grad.resize(s.size());
  std::vector<double> work(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double si = work[i];
    double hi_step = h, lo_step = h;
    if (si + h > pair.params.b) hi_step = 0.0;  // one-sided at the outer boundary
    const double lo_lim = (i == 0) ? pair.params.a : work[i - 1];
    if (si - h <= lo_lim) lo_step = 0.0;
    if (hi_step == 0.0 && lo_step == 0.0)
      throw SolverError(errc::out_of_domain, "no room for gradient stencil", si);
    work[i] = si + hi_step;
    const double fp = phi_value(pair, work);
    work[i] = si - lo_step;
    const double fm = phi_value(pair, work);
    work[i] = si;
    out.grad[i] = (fp - fm) / (hi_step + lo_step);
  }
  return out;
}

double L_infinity(const Params& params, double s) {
  if (!(s > params.a && s < params.b))
    throw SolverError(errc::out_of_domain, "L_infinity argument outside (a,b)", s);
  GreenPair left = homogeneous_pair(params.with_interval(params.a, s));
  GreenPair right = homogeneous_pair(params.with_interval(s, params.b));
  const double dplus = left.du_plus(s);    // xi'(s)/xi(s) on (a,s)
  const double dminus = right.du_minus(s); // zeta'(s)/zeta(s) on (s,b)
  return 0.5 * (dplus * dplus - dminus * dminus);
}

void export_pair(const GreenPair& pair, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  write_csv(pair.xi, dir + "/xi.csv");
  write_csv(pair.zeta, dir + "/zeta.csv");
  nlohmann::json j{{"N", pair.params.dim},
                   {"a", pair.params.a},
                   {"b", pair.params.b},
                   {"wronskian", pair.wronskian},
                   {"xi_nodes", pair.xi.size()},
                   {"zeta_nodes", pair.zeta.size()}};
  std::ofstream out(dir + "/green.json");
  out << j.dump(2) << "\n";
}

}  // namespace ks
