#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "kellerpath/errors.hpp"
#include "kellerpath/par.hpp"
#include "kellerpath/profile.hpp"

namespace ks {

/// Options for the embedded Dormand-Prince 5(4) integrator.
struct OdeOptions {
  double rtol = defaults::ode_rtol;
  double atol = defaults::ode_atol;
  double max_step = std::numeric_limits<double>::infinity();
  double u_cap = defaults::u_cap;
  // Radius below which integration from r = 0 starts with the two-term
  // Taylor series u(h) = u0 + (u0 - g(u0)) h^2 / (2N).
  double series_radius = defaults::series_radius;
};

/// Two-term series start from the origin: with u''(0) = (u(0) - g(u(0)))/N,
///   u(h)  = u0 + (u0 - g(u0)) h^2 / (2N),
///   u'(h) = (u0 - g(u0)) h / N.
template <class G>
State series_start(int dim, G&& g, double u0, double h) {
  const double c = (u0 - g(u0)) / static_cast<double>(dim);
  return {h, u0 + 0.5 * c * h * h, c * h};
}

namespace detail {

// u'' = -((N-1)/r) u' + u - g(u); at r = 0 (with u' = 0) the limit is
// u'' = (u - g(u))/N.
template <class G>
inline double accel(int dim, G&& g, double r, double u, double du) {
  if (r == 0.0) return (u - g(u)) / static_cast<double>(dim);
  return -(dim - 1) / r * du + u - g(u);
}

struct StepOut {
  State y;
  double err = 0.0;  // scaled error estimate
};

// One Dormand-Prince 5(4) step of (signed) size h.  k1 in == f(y), k1 out ==
// f(y_new) (FSAL).
template <class G>
StepOut dp5_step(int dim, G&& g, const State& y, double h, double atol,
                 double rtol, double k1[2]) {
  auto f = [&](double r, double u, double du, double out[2]) {
    out[0] = du;
    out[1] = accel(dim, g, r, u, du);
  };
  double k2[2], k3[2], k4[2], k5[2], k6[2], k7[2];
  const double r = y.r, u = y.u, v = y.du;

  f(r + h / 5, u + h * (k1[0] / 5), v + h * (k1[1] / 5), k2);
  f(r + 3 * h / 10, u + h * (3 * k1[0] / 40 + 9 * k2[0] / 40),
    v + h * (3 * k1[1] / 40 + 9 * k2[1] / 40), k3);
  f(r + 4 * h / 5, u + h * (44 * k1[0] / 45 - 56 * k2[0] / 15 + 32 * k3[0] / 9),
    v + h * (44 * k1[1] / 45 - 56 * k2[1] / 15 + 32 * k3[1] / 9), k4);
  f(r + 8 * h / 9,
    u + h * (19372 * k1[0] / 6561 - 25360 * k2[0] / 2187 + 64448 * k3[0] / 6561 -
             212 * k4[0] / 729),
    v + h * (19372 * k1[1] / 6561 - 25360 * k2[1] / 2187 + 64448 * k3[1] / 6561 -
             212 * k4[1] / 729),
    k5);
  f(r + h,
    u + h * (9017 * k1[0] / 3168 - 355 * k2[0] / 33 + 46732 * k3[0] / 5247 +
             49 * k4[0] / 176 - 5103 * k5[0] / 18656),
    v + h * (9017 * k1[1] / 3168 - 355 * k2[1] / 33 + 46732 * k3[1] / 5247 +
             49 * k4[1] / 176 - 5103 * k5[1] / 18656),
    k6);

  const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
               b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  State ynew;
  ynew.r = r + h;
  ynew.u = u + h * (b1 * k1[0] + b3 * k3[0] + b4 * k4[0] + b5 * k5[0] + b6 * k6[0]);
  ynew.du = v + h * (b1 * k1[1] + b3 * k3[1] + b4 * k4[1] + b5 * k5[1] + b6 * k6[1]);
  f(ynew.r, ynew.u, ynew.du, k7);

  // difference between the 5th and the embedded 4th order result
  const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
               e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  const double eu =
      h * (e1 * k1[0] + e3 * k3[0] + e4 * k4[0] + e5 * k5[0] + e6 * k6[0] + e7 * k7[0]);
  const double ev =
      h * (e1 * k1[1] + e3 * k3[1] + e4 * k4[1] + e5 * k5[1] + e6 * k6[1] + e7 * k7[1]);

  const double su = atol + rtol * std::max(std::abs(u), std::abs(ynew.u));
  const double sv = atol + rtol * std::max(std::abs(v), std::abs(ynew.du));
  StepOut out;
  out.y = ynew;
  out.err = std::sqrt(0.5 * ((eu / su) * (eu / su) + (ev / sv) * (ev / sv)));
  k1[0] = k7[0];
  k1[1] = k7[1];
  return out;
}

}  // namespace detail

/// What stopped a shot.
enum class ShotStop {
  reached_end,  // integrated to `to`; state holds the endpoint
  peak,         // u' changed sign with u > 1 (interior extremum)
  dip,          // u' changed sign with u < 1
  blow_up,      // |u| exceeded u_cap; state holds the last valid point
};

struct ShotResult {
  ShotStop stop = ShotStop::reached_end;
  State state;  // endpoint or event location
};

/// Adaptive driver.  Integrates -u'' - ((N-1)/r) u' + u = g(u) written as a
/// first-order system from `from` to `to` (either direction).  Calls
/// `on_node(state)` after every accepted step.  When `events` is true the
/// shot stops at the first sign change of u' (classified by the value of u)
/// or at the blow-up cap; otherwise only the cap is honored.
template <class G, class NodeFn>
ShotResult integrate_driver(int dim, G&& g, State from, double to,
                            const OdeOptions& opt, bool events, NodeFn&& on_node) {
  if (from.r == to)
    throw SolverError(errc::out_of_domain, "empty integration interval", to);
  const double dir = (to > from.r) ? 1.0 : -1.0;

  State y = from;
  if (y.r == 0.0) {
    if (y.du != 0.0)
      throw SolverError(errc::out_of_domain, "u'(0) must vanish at the origin");
    if (dir < 0) throw SolverError(errc::out_of_domain, "cannot integrate left of 0");
    const double h0 = std::min(opt.series_radius, 0.5 * std::abs(to - y.r));
    y = series_start(dim, g, y.u, h0);
    on_node(y);
  }

  double k1[2] = {y.du, detail::accel(dim, g, y.r, y.u, y.du)};
  double h = dir * std::min({0.05 * std::abs(to - y.r), opt.max_step, 1e-2});
  const double hmin_scale = 16.0 * std::numeric_limits<double>::epsilon();

  int prev_du_sign = (y.du > 0) - (y.du < 0);
  while (dir * (to - y.r) > 0) {
    const double hmin = hmin_scale * std::max(std::abs(y.r), 1.0);
    if (dir * (to - y.r) <= hmin) {  // roundoff-level remainder: snap
      y.r = to;
      break;
    }
    if (dir * (y.r + h) > dir * to) h = to - y.r;
    if (std::abs(h) > opt.max_step) h = dir * opt.max_step;
    if (std::abs(h) < hmin) {
      if (std::abs(y.u) > 1.5) return {ShotStop::blow_up, y};
      throw SolverError(errc::step_underflow, "step size underflow", y.r);
    }

    double ksave[2] = {k1[0], k1[1]};
    detail::StepOut s = detail::dp5_step(dim, g, y, h, opt.atol, opt.rtol, ksave);
    if (s.err > 1.0 || !std::isfinite(s.err)) {
      double shrink = std::isfinite(s.err) ? std::max(0.2, 0.9 * std::pow(s.err, -0.2)) : 0.2;
      h *= shrink;
      continue;
    }

    const State yprev = y;
    y = s.y;
    k1[0] = ksave[0];
    k1[1] = ksave[1];

    if (std::abs(y.u) > opt.u_cap) return {ShotStop::blow_up, y};

    if (events) {
      const int sgn = (y.du > 0) - (y.du < 0);
      if (prev_du_sign != 0 && sgn != 0 && sgn != prev_du_sign) {
        // locate the zero of the Hermite cubic of u' inside the step
        double lo = yprev.r, hi = y.r;
        const double hh = y.r - yprev.r;
        auto du_at = [&](double r) {
          const double t = (r - yprev.r) / hh;
          const double h00 = 2 * t * t * t - 3 * t * t + 1;
          const double h10 = t * t * t - 2 * t * t + t;
          const double h01 = -2 * t * t * t + 3 * t * t;
          const double h11 = t * t * t - t * t;
          const double a0 = detail::accel(dim, g, yprev.r, yprev.u, yprev.du);
          const double a1 = detail::accel(dim, g, y.r, y.u, y.du);
          return h00 * yprev.du + h10 * hh * a0 + h01 * y.du + h11 * hh * a1;
        };
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (lo + hi);
          if ((du_at(mid) > 0) == (yprev.du > 0))
            lo = mid;
          else
            hi = mid;
        }
        const double re = 0.5 * (lo + hi);
        const double t = (re - yprev.r) / hh;
        const double h00 = 2 * t * t * t - 3 * t * t + 1;
        const double h10 = t * t * t - 2 * t * t + t;
        const double h01 = -2 * t * t * t + 3 * t * t;
        const double h11 = t * t * t - t * t;
        State ev;
        ev.r = re;
        ev.u = h00 * yprev.u + h10 * hh * yprev.du + h01 * y.u + h11 * hh * y.du;
        ev.du = 0.0;
        return {(ev.u > 1.0) ? ShotStop::peak : ShotStop::dip, ev};
      }
      if (sgn != 0) prev_du_sign = sgn;
    }

    on_node(y);
    h = h * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(s.err, 1e-10), -0.2)));
  }
  return {ShotStop::reached_end, y};
}

/// Endpoint-only integration; throws on blow-up.
template <class G>
State integrate_to(int dim, G&& g, State from, double to,
                   const OdeOptions& opt = {}) {
  ShotResult r = integrate_driver(dim, g, from, to, opt, false, [](const State&) {});
  if (r.stop == ShotStop::blow_up)
    throw SolverError(errc::blow_up, "|u| exceeded cap", r.state.r);
  return r.state;
}

/// Shot with event detection (no trajectory recording).
template <class G>
ShotResult shoot(int dim, G&& g, State from, double to, const OdeOptions& opt = {}) {
  return integrate_driver(dim, g, from, to, opt, true, [](const State&) {});
}

/// Full trajectory on the integrator-chosen (non-uniform) grid.
template <class G>
Profile integrate(const Params& params, G&& g, State from, double to,
                  const OdeOptions& opt = {}) {
  Profile p;
  p.params = params;
  p.grid.push_back(from.r);
  p.u.push_back(from.u);
  p.du.push_back(from.du);
  ShotResult r = integrate_driver(params.dim, g, from, to, opt, false,
                                  [&](const State& y) {
                                    p.grid.push_back(y.r);
                                    p.u.push_back(y.u);
                                    p.du.push_back(y.du);
                                  });
  if (r.stop == ShotStop::blow_up)
    throw SolverError(errc::blow_up, "|u| exceeded cap", r.state.r);
  if (to < from.r) {
    std::reverse(p.grid.begin(), p.grid.end());
    std::reverse(p.u.begin(), p.u.end());
    std::reverse(p.du.begin(), p.du.end());
  }
  return p;
}

/// Trajectory sampled exactly at the given nodes (ascending or descending,
/// nodes.front() == from.r).  Adaptive sub-steps land on every node.
template <class G>
Profile integrate_nodes(const Params& params, G&& g, State from,
                        std::span<const double> nodes, const OdeOptions& opt = {}) {
  if (nodes.size() < 2 || nodes.front() != from.r)
    throw SolverError(errc::out_of_domain, "node list must start at from.r");
  Profile p;
  p.params = params;
  p.grid.reserve(nodes.size());
  p.u.reserve(nodes.size());
  p.du.reserve(nodes.size());
  p.grid.push_back(from.r);
  p.u.push_back(from.u);
  p.du.push_back(from.du);
  State y = from;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    y = integrate_to(params.dim, g, y, nodes[i], opt);
    p.grid.push_back(y.r);
    p.u.push_back(y.u);
    p.du.push_back(y.du);
  }
  if (nodes.front() > nodes.back()) {
    std::reverse(p.grid.begin(), p.grid.end());
    std::reverse(p.u.begin(), p.u.end());
    std::reverse(p.du.begin(), p.du.end());
  }
  return p;
}

/// Composite Simpson over the profile cells with midpoint values taken from
/// the cubic Hermite interpolant; 4th-order accurate on smooth data.
/// f(r, u, du) is the integrand.
template <class F>
double integrate_profile(const Profile& p, F&& f) {
  const std::size_t n = p.size();
  if (n < 2) throw SolverError(errc::out_of_domain, "profile too short");
  return par::sum(n - 1, [&](std::size_t i) {
    const double h = p.grid[i + 1] - p.grid[i];
    const double rm = 0.5 * (p.grid[i] + p.grid[i + 1]);
    const double um = 0.5 * (p.u[i] + p.u[i + 1]) + 0.125 * h * (p.du[i] - p.du[i + 1]);
    const double dum =
        1.5 * (p.u[i + 1] - p.u[i]) / h - 0.25 * (p.du[i] + p.du[i + 1]);
    const double fl = f(p.grid[i], p.u[i], p.du[i]);
    const double fm = f(rm, um, dum);
    const double fr = f(p.grid[i + 1], p.u[i + 1], p.du[i + 1]);
    return h / 6.0 * (fl + 4.0 * fm + fr);
  });
}

/// int u(r) r^m dr over the profile's interval.
double quadrature(const Profile& p, double m);

/// Composite Simpson of a plain function (n subintervals).
template <class F>
double integrate_fn(F&& f, double lo, double hi, std::size_t n) {
  const double h = (hi - lo) / static_cast<double>(n);
  return par::sum(n, [&](std::size_t i) {
    const double x0 = lo + i * h;
    return h / 6.0 * (f(x0) + 4.0 * f(x0 + 0.5 * h) + f(x0 + h));
  });
}

/// Per-cell Hermite-midpoint defect of the first-order system: a
/// posteriori residual measure of a stored trajectory.
template <class G>
void profile_cell_defects(const Profile& p, G&& g, std::vector<double>& out) {
  const int dim = p.params.dim;
  const double span = p.back() - p.front();
  out.assign(p.size() - 1, 0.0);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double h = p.grid[i + 1] - p.grid[i];
    const double rm = 0.5 * (p.grid[i] + p.grid[i + 1]);
    if (rm == 0.0 || h < 1e-10 * span) continue;
    const double a0 = detail::accel(dim, g, p.grid[i], p.u[i], p.du[i]);
    const double a1 = detail::accel(dim, g, p.grid[i + 1], p.u[i + 1], p.du[i + 1]);
    // midpoint values from the Hermite interpolants of u and of u'
    const double um = 0.5 * (p.u[i] + p.u[i + 1]) + 0.125 * h * (p.du[i] - p.du[i + 1]);
    const double dum = 0.5 * (p.du[i] + p.du[i + 1]) + 0.125 * h * (a0 - a1);
    const double ddum = 1.5 * (p.du[i + 1] - p.du[i]) / h - 0.25 * (a0 + a1);
    // second-order defect plus the first-order consistency u' == du
    const double d2 = std::abs(ddum - detail::accel(dim, g, rm, um, dum));
    const double d1 = std::abs(
        1.5 * (p.u[i + 1] - p.u[i]) / h - 0.25 * (p.du[i] + p.du[i + 1]) - dum);
    out[i] = std::max(d2, d1);
  }
}

/// Max defect over the cells.
template <class G>
double profile_defect(const Profile& p, G&& g) {
  std::vector<double> cells;
  profile_cell_defects(p, g, cells);
  double worst = 0.0;
  for (double d : cells) worst = std::max(worst, d);
  return worst;
}

}  // namespace ks
