#include "kellerpath/monotone.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "kellerpath/errors.hpp"
#include "kellerpath/ode.hpp"
#include "kellerpath/spectrum.hpp"

namespace ks {

ConstantStates constant_states(double mu) {
  if (!(mu > 1.0))
    throw SolverError(errc::out_of_domain, "constant states need mu > 1", mu);
  // the lower root of x - e^{mu(x-1)}; Newton is monotone from 0 on this side
  double x = 0.0;
  const double xbar = 1.0 - std::log(mu) / mu;  // f' > 0 strictly below xbar
  for (int it = 0; it < 100; ++it) {
    const double e = std::exp(mu * (x - 1.0));
    const double f = x - e;
    const double fp = 1.0 - mu * e;
    double next = x - f / fp;
    if (!(next > 0.0) || !(next < xbar)) next = 0.5 * (x + xbar);
    if (std::abs(next - x) < 1e-16) {
      x = next;
      break;
    }
    x = next;
  }
  return {mu, x, 1.0};
}

namespace {

struct ShootSetup {
  State start;
  double target = 0.0;
  double dir_sign = 1.0;  // +1 increasing (shoot a->b), -1 decreasing (b->a)
};

ShootSetup setup_for(const Params& p, Direction dir, double c) {
  if (dir == Direction::increasing) return {{p.a, c, 0.0}, p.b, 1.0};
  return {{p.b, c, 0.0}, p.a, -1.0};
}

// true  -> start value too high (interior peak fired before the far end)
// false -> too low (no peak; still rising at the far end)
template <class G>
bool classify_high(const Params& p, G&& g, Direction dir, double c) {
  ShootSetup s = setup_for(p, dir, c);
  ShotResult r = shoot(p.dim, g, s.start, s.target);
  switch (r.stop) {
    case ShotStop::peak:
      return true;
    case ShotStop::reached_end:
      return s.dir_sign * r.state.du < 0.0;
    case ShotStop::dip:
    case ShotStop::blow_up:
      return false;
  }
  return false;
}

// signed miss at the far end, positive when the start value is too low
template <class G>
double miss(const Params& p, G&& g, Direction dir, double c) {
  ShootSetup s = setup_for(p, dir, c);
  State end = integrate_to(p.dim, g, s.start, s.target);
  return s.dir_sign * end.du;
}

// normalized boundary log-derivative of the limit profile, used only to
// size the layer window of the output grid
double layer_scale(const Params& p, Direction dir) {
  auto zero = [](double) { return 0.0; };
  try {
    if (dir == Direction::increasing) {
      State s0 = p.ball() ? State{0.0, 1.0, 0.0} : State{p.a, 1.0, 0.0};
      State e = integrate_to(p.dim, zero, s0, p.b);
      return std::abs(e.du / e.u) / std::sqrt(2.0);
    }
    State e = integrate_to(p.dim, zero, State{p.b, 1.0, 0.0}, p.a);
    return std::abs(e.du / e.u) / std::sqrt(2.0);
  } catch (const SolverError&) {
    return 0.3;  // generous default window
  }
}

// lambda_2 thresholds are mu-independent; the gluing loops hit the same
// intervals repeatedly
double lambda2_cached(const Params& params) {
  struct Key {
    int dim;
    double a, b;
    bool operator==(const Key&) const = default;
  };
  struct Hash {
    std::size_t operator()(const Key& k) const {
      std::hash<double> h;
      return h(k.a) ^ (h(k.b) << 1) ^ std::hash<int>()(k.dim);
    }
  };
  static std::unordered_map<Key, double, Hash> cache;
  static std::mutex mtx;
  const Key key{params.dim, params.a, params.b};
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const double lam2 = lambda2_radial(params);
  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(key, lam2);
  return lam2;
}

struct ConvergedShot {
  double c_star = 0.0;
  State far_end;
  int iterations = 0;
};

ConvergedShot converge_shot(const Params& params, Direction dir) {
  params.validate();
  if (params.length() < defaults::min_interval)
    throw SolverError(errc::degenerate_interval,
                      "interval too short for the layer solver", params.length());
  if (dir == Direction::decreasing && params.ball())
    throw SolverError(errc::out_of_domain,
                      "decreasing solutions need an annulus (a > 0)");

  const double lam2 = lambda2_cached(params);
  if (!(params.mu > lam2))
    throw SolverError(errc::below_threshold,
                      "mu <= lambda_2^rad(a,b) = " + std::to_string(lam2), lam2);

  const double mu = params.mu;
  const ConstantStates cs = constant_states(mu);
  auto g = [mu](double u) { return std::exp(std::min(mu * (u - 1.0), 700.0)); };

  int iterations = 0;
  double c_lo = cs.lower + 1e-12;       // too low side
  double c_hi = 1.0 - 1e-12;            // too high side
  auto high = [&](double c) {
    ++iterations;
    return classify_high(params, g, dir, c);
  };
  const bool lo_high = high(c_lo);
  const bool hi_high = high(c_hi);
  if (lo_high || !hi_high) {
    std::ostringstream diag;
    diag << "bracket endpoints do not classify: high(" << c_lo << ")=" << lo_high
         << " high(" << c_hi << ")=" << hi_high << " lambda2=" << lam2
         << " mu=" << mu;
    throw SolverError(errc::shooting_collapse, diag.str(), mu);
  }
  for (int it = 0; it < 80 && c_hi - c_lo > 1e-9 * (1.0 - cs.lower); ++it) {
    const double mid = 0.5 * (c_lo + c_hi);
    if (mid == c_lo || mid == c_hi) break;
    if (high(mid))
      c_hi = mid;
    else
      c_lo = mid;
  }

  // secant polish on the endpoint derivative (trajectories reach the far
  // end without events this close to the root)
  double ca = c_lo, cb = c_hi;
  double fa, fb;
  try {
    fa = miss(params, g, dir, ca);
    fb = miss(params, g, dir, cb);
  } catch (const SolverError& e) {
    throw SolverError(errc::shooting_collapse,
                      std::string("polish integration failed: ") + e.what(), mu);
  }
  double c_best = (std::abs(fa) < std::abs(fb)) ? ca : cb;
  double f_best = std::min(std::abs(fa), std::abs(fb));
  for (int it = 0; it < 60 && f_best > 1e-13; ++it) {
    ++iterations;
    double cn;
    if (fa != fb) {
      cn = ca - fa * (cb - ca) / (fb - fa);
      if (!(cn > std::min(ca, cb)) || !(cn < std::max(ca, cb)))
        cn = 0.5 * (ca + cb);
    } else {
      cn = 0.5 * (ca + cb);
    }
    if (cn == ca || cn == cb) break;
    const double fn = miss(params, g, dir, cn);
    if (std::abs(fn) < f_best) {
      f_best = std::abs(fn);
      c_best = cn;
    }
    if ((fn > 0) == (fa > 0)) {
      ca = cn;
      fa = fn;
    } else {
      cb = cn;
      fb = fn;
    }
  }

  ConvergedShot out;
  out.c_star = c_best;
  ShootSetup s = setup_for(params, dir, c_best);
  out.far_end = integrate_to(params.dim, g, s.start, s.target);
  out.iterations = iterations;
  return out;
}

MonotoneSolution solve_monotone(const Params& params, Direction dir) {
  const ConvergedShot shot = converge_shot(params, dir);
  const double mu = params.mu;
  const double c_star = shot.c_star;
  const int iterations = shot.iterations;
  auto g = [mu](double u) { return std::exp(std::min(mu * (u - 1.0), 700.0)); };

  // final trajectory on a layer-graded grid, refined where the Hermite
  // defect is still above target
  const double k_hat = std::max(layer_scale(params, dir), 1e-3);
  const double width = std::min(1.0 / (k_hat * mu), 0.25 * params.length());
  std::vector<double> nodes =
      layer_graded_grid(params.a, params.b, defaults::collocation_nodes, width,
                        dir == Direction::increasing);
  const ShootSetup s = setup_for(params, dir, c_star);
  Profile prof;
  double defect = 0.0;
  for (int round = 0; round < 5; ++round) {
    std::vector<double> path = nodes;
    if (dir == Direction::decreasing) std::reverse(path.begin(), path.end());
    prof = integrate_nodes(params, g, s.start, path);
    std::vector<double> cells;
    profile_cell_defects(prof, g, cells);
    defect = 0.0;
    for (double d : cells) defect = std::max(defect, d);
    if (defect <= 5e-9) break;
    std::vector<double> refined;
    refined.reserve(prof.size() * 2);
    for (std::size_t i = 0; i + 1 < prof.size(); ++i) {
      refined.push_back(prof.grid[i]);
      if (cells[i] > 1.2e-9)
        refined.push_back(0.5 * (prof.grid[i] + prof.grid[i + 1]));
    }
    refined.push_back(prof.grid.back());
    nodes = std::move(refined);
  }

  MonotoneSolution sol;
  sol.direction = dir;
  sol.profile = std::move(prof);
  sol.mu = mu;
  sol.iterations = iterations;
  sol.shoot_param = c_star;
  sol.boundary_value =
      (dir == Direction::increasing) ? sol.profile.u.back() : sol.profile.u.front();
  sol.residual = defect;

  // structural invariants
  const Profile& u = sol.profile;
  const double low_end = (dir == Direction::increasing) ? u.u.front() : u.u.back();
  const double high_end = sol.boundary_value;
  const double sgn = (dir == Direction::increasing) ? 1.0 : -1.0;
  double worst_mono = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    worst_mono = std::min(worst_mono, sgn * u.du[i]);
  const double end_du = std::max(
      std::abs((dir == Direction::increasing) ? u.du.front() : u.du.back()),
      std::abs((dir == Direction::increasing) ? u.du.back() : u.du.front()));
  if (!(low_end < 1.0 && high_end > 1.0) || worst_mono < -1e-8 ||
      end_du > 1e-8 || barrier_violation(u, mu) > 1e-10 || sol.residual > 1e-7) {
    std::ostringstream diag;
    diag << "invariants violated: ends (" << low_end << ", " << high_end
         << ") monotonicity " << worst_mono << " end-derivative " << end_du
         << " residual " << sol.residual;
    throw SolverError(errc::shooting_collapse, diag.str(), mu);
  }

  sol.energy = energy_of(shifted_down(u, mu), mu);
  return sol;
}

}  // namespace

MonotoneSolution solve_increasing(const Params& params) {
  return solve_monotone(params, Direction::increasing);
}

MonotoneSolution solve_decreasing(const Params& params) {
  return solve_monotone(params, Direction::decreasing);
}

ShootSummary monotone_summary(const Params& params, Direction dir) {
  const ConvergedShot shot = converge_shot(params, dir);
  ShootSummary s;
  s.low_value = shot.c_star;
  s.peak_value = shot.far_end.u;
  s.end_slope = shot.far_end.du;
  s.iterations = shot.iterations;
  return s;
}

Profile shifted_down(const Profile& u, double mu) {
  const double ul = constant_states(mu).lower;
  Profile z = u;
  for (double& v : z.u) v -= ul;
  return z;
}

double energy_of(const Profile& z, double mu) {
  const ConstantStates cs = constant_states(mu);
  const double ul = cs.lower;
  const int N = z.params.dim;
  // underline * e^{mu z} is evaluated as e^{mu(z + underline - 1)} to stay
  // finite at layer amplitudes
  const double I = integrate_profile(z, [&](double r, double zz, double dz) {
    const double w = std::pow(r, N - 1);
    const double pen = std::exp(mu * (zz + ul - 1.0)) / mu;
    return w * (0.5 * dz * dz + 0.5 * zz * zz + ul * zz - pen + 0.5 * ul * ul);
  });
  return z.params.omega() * I;
}

double nehari_project(const Profile& z, double mu) {
  if (z.max_abs_u() < 1e-12)
    throw SolverError(errc::zero_function, "cannot project the zero function");
  const double ul = constant_states(mu).lower;
  const int N = z.params.dim;
  const double omega = z.params.omega();
  const double norm2 = omega * integrate_profile(z, [&](double r, double zz, double dz) {
    return std::pow(r, N - 1) * (dz * dz + zz * zz);
  });
  auto dE = [&](double t) {
    const double s = omega * integrate_profile(z, [&](double r, double zz, double) {
      return std::pow(r, N - 1) *
             (std::exp(std::min(mu * (t * zz + ul - 1.0), 700.0)) - ul) * zz;
    });
    return t * norm2 - s;
  };
  double t_hi = 1.0;
  for (int it = 0; it < 200 && dE(t_hi) > 0; ++it) t_hi *= 2.0;
  double t_lo = 0.5 * t_hi;
  for (int it = 0; it < 200 && dE(t_lo) < 0; ++it) t_lo *= 0.5;
  for (int it = 0; it < 200 && t_hi - t_lo > 1e-14 * t_hi; ++it) {
    const double mid = 0.5 * (t_lo + t_hi);
    if (dE(mid) > 0)
      t_lo = mid;
    else
      t_hi = mid;
  }
  return 0.5 * (t_lo + t_hi);
}

double mass_balance(const Profile& u, double mu) {
  const int N = u.params.dim;
  return u.params.omega() * integrate_profile(u, [&](double r, double uu, double) {
    return std::pow(r, N - 1) * (uu - std::exp(std::min(mu * (uu - 1.0), 700.0)));
  });
}

double lyapunov_max_increase(const Profile& u, double mu) {
  auto L = [&](std::size_t i) {
    return 0.5 * u.du[i] * u.du[i] - 0.5 * u.u[i] * u.u[i] +
           std::exp(std::min(mu * (u.u[i] - 1.0), 700.0)) / mu;
  };
  double worst = -1e300;
  double prev = L(0);
  for (std::size_t i = 1; i < u.size(); ++i) {
    const double cur = L(i);
    worst = std::max(worst, cur - prev);
    prev = cur;
  }
  return worst;
}

double barrier_violation(const Profile& u, double mu) {
  const double ul = constant_states(mu).lower;
  double worst = -1e300;
  for (double v : u.u) worst = std::max(worst, ul - v);
  return worst;
}

}  // namespace ks
