#include "kellerpath/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "kellerpath/errors.hpp"
#include "kellerpath/linalg.hpp"
#include "kellerpath/ode.hpp"
#include "kellerpath/spectrum.hpp"

namespace ks {

namespace {

enum PieceType { interior = 0, increasing_end = 1, decreasing_end = 2 };

double lam2_of(const Params& base, double lo, double hi) {
  return lambda2_radial(base.with_interval(lo, hi));
}

// largest s in (lo, hi) such that the decreasing solve on (s, hi) is
// feasible at mu (with a 5% margin); resp. smallest s for the increasing
// solve on (lo, s).  lambda_2 of a subinterval is decreasing in its length.
double feasible_smax(const Params& p, double lo, double hi) {
  const double mu_eff = p.mu / 1.05;
  if (lam2_of(p, lo, hi) >= mu_eff)
    throw SolverError(errc::below_threshold,
                      "mu below the lambda_2 threshold of the full interval", p.mu);
  double bad = hi, good = lo;  // (s, hi) feasible at s = good
  for (int it = 0; it < 40 && bad - good > 1e-4 * (hi - lo); ++it) {
    const double mid = 0.5 * (good + bad);
    if (lam2_of(p, mid, hi) < mu_eff)
      good = mid;
    else
      bad = mid;
  }
  return good;
}

double feasible_smin(const Params& p, double lo, double hi) {
  const double mu_eff = p.mu / 1.05;
  double bad = lo, good = hi;
  for (int it = 0; it < 40 && good - bad > 1e-4 * (hi - lo); ++it) {
    const double mid = 0.5 * (good + bad);
    if (lam2_of(p, lo, mid) < mu_eff)
      good = mid;
    else
      bad = mid;
  }
  return good;
}

struct PieceData {
  double lo = 0, hi = 0;
  PieceType type = interior;
  double s_bar = 0;     // peak radius
  double val_lo = 0;    // u at lo
  double val_hi = 0;    // u at hi
  double mismatch = 0;  // C0 gap at the interior glue point
  ShootSummary left, right;
};

double L_mu_impl(double s, const Params& p) {
  ShootSummary plus, minus;
  try {
    plus = monotone_summary(p.with_interval(p.a, s), Direction::increasing);
  } catch (const SolverError& e) {
    throw SolverError(e.code(), "left sub-solve (a,s): " + std::string(e.what()), s);
  }
  try {
    minus = monotone_summary(p.with_interval(s, p.b), Direction::decreasing);
  } catch (const SolverError& e) {
    throw SolverError(e.code(), "right sub-solve (s,b): " + std::string(e.what()), s);
  }
  const double mu = p.mu;
  return (std::exp(mu * (plus.peak_value - 1.0)) -
          std::exp(mu * (minus.peak_value - 1.0))) /
         mu;
}

// interior one-layer matching on (lo, hi): Brent-style root of L_mu
PieceData solve_interior_piece(const Params& base, double lo, double hi) {
  const Params p = base.with_interval(lo, hi);
  const double margin = defaults::glue_margin * std::min(1.0, (hi - lo));
  double s_lo = std::max(feasible_smin(p, lo, hi), lo + margin);
  double s_hi = std::min(feasible_smax(p, lo, hi), hi - margin);
  if (!(s_lo < s_hi))
    throw SolverError(errc::no_bracket,
                      "no feasible matching window inside (" + std::to_string(lo) +
                          ", " + std::to_string(hi) + ")",
                      p.mu);
  auto L = [&](double s) { return L_mu_impl(s, p); };
  double fl = L(s_lo), fh = L(s_hi);
  if ((fl > 0) == (fh > 0)) {
    // scan for a sign change before giving up
    bool found = false;
    const int n_scan = 12;
    double prev_s = s_lo, prev_f = fl;
    for (int i = 1; i <= n_scan && !found; ++i) {
      const double s = s_lo + (s_hi - s_lo) * i / n_scan;
      const double f = L(s);
      if ((f > 0) != (prev_f > 0)) {
        s_lo = prev_s;
        fl = prev_f;
        s_hi = s;
        fh = f;
        found = true;
      }
      prev_s = s;
      prev_f = f;
    }
    if (!found) {
      std::ostringstream diag;
      diag << "L_mu has equal signs on the feasible window [" << s_lo << ", "
           << s_hi << "]: L=" << fl << " .. " << fh << " at mu=" << p.mu;
      throw SolverError(errc::no_bracket, diag.str(), p.mu);
    }
  }
  // bisection with a secant accelerant on the bracket
  double sa = s_lo, sb = s_hi, fa = fl, fb = fh;
  double s_best = (std::abs(fa) < std::abs(fb)) ? sa : sb;
  double f_best = std::min(std::abs(fa), std::abs(fb));
  for (int it = 0; it < 90; ++it) {
    if (f_best < 1e-11 || sb - sa < 1e-13 * std::max(1.0, sb)) break;
    double sn = (it % 3 == 2 || fa == fb)
                    ? 0.5 * (sa + sb)
                    : sa - fa * (sb - sa) / (fb - fa);
    if (!(sn > sa) || !(sn < sb)) sn = 0.5 * (sa + sb);
    if (sn == sa || sn == sb) break;
    const double fn = L(sn);
    if (std::abs(fn) < f_best) {
      f_best = std::abs(fn);
      s_best = sn;
    }
    if ((fn > 0) == (fa > 0)) {
      sa = sn;
      fa = fn;
    } else {
      sb = sn;
      fb = fn;
    }
  }

  PieceData piece;
  piece.lo = lo;
  piece.hi = hi;
  piece.type = interior;
  piece.s_bar = s_best;
  piece.left = monotone_summary(p.with_interval(lo, s_best), Direction::increasing);
  piece.right = monotone_summary(p.with_interval(s_best, hi), Direction::decreasing);
  piece.val_lo = piece.left.low_value;
  piece.val_hi = piece.right.low_value;
  piece.mismatch = std::abs(piece.left.peak_value - piece.right.peak_value);
  return piece;
}

PieceData solve_piece(const Params& base, double lo, double hi, PieceType type) {
  if (type == interior) return solve_interior_piece(base, lo, hi);
  PieceData piece;
  piece.lo = lo;
  piece.hi = hi;
  piece.type = type;
  if (type == increasing_end) {
    piece.left = monotone_summary(base.with_interval(lo, hi), Direction::increasing);
    piece.s_bar = hi;
    piece.val_lo = piece.left.low_value;
    piece.val_hi = piece.left.peak_value;
  } else {
    piece.right = monotone_summary(base.with_interval(lo, hi), Direction::decreasing);
    piece.s_bar = lo;
    piece.val_lo = piece.right.peak_value;
    piece.val_hi = piece.right.low_value;
  }
  piece.mismatch = 0.0;
  return piece;
}

std::vector<PieceType> piece_types(int k, bool boundary_layer, bool annulus_left) {
  std::vector<PieceType> t(k, interior);
  if (annulus_left) t.front() = decreasing_end;
  if (boundary_layer) t.back() = increasing_end;
  return t;
}

// limit (Green-function) value of a piece at its lower/upper end
struct LimitPiece {
  GreenPair pair;
  double alpha = 0.0;
  PieceType type = interior;
};

LimitPiece limit_piece(const Params& base, double lo, double hi, PieceType type) {
  LimitPiece lp;
  lp.pair = homogeneous_pair(base.with_interval(lo, hi));
  lp.type = type;
  if (type == interior)
    lp.alpha = diag_critical_point(lp.pair);
  else
    lp.alpha = (type == increasing_end) ? hi : lo;
  return lp;
}

double limit_val_lo(const LimitPiece& lp, double r) {
  if (lp.type == decreasing_end) return 1.0;  // peak end
  return lp.pair.xi_at(r) / lp.pair.xi_at(lp.alpha);
}

double limit_val_hi(const LimitPiece& lp, double r) {
  if (lp.type == increasing_end) return 1.0;
  return lp.pair.zeta_at(r) / lp.pair.zeta_at(lp.alpha);
}

void validate_flags(const Params& p, int k, bool boundary_layer, bool annulus_left) {
  p.validate();
  if (k < 1) throw SolverError(errc::out_of_domain, "k must be >= 1");
  if (annulus_left && p.ball())
    throw SolverError(errc::out_of_domain,
                      "a boundary maximum at r = a needs an annulus (a > 0)");
  if (k == 1 && boundary_layer && annulus_left)
    throw SolverError(errc::out_of_domain,
                      "one layer cannot peak at both boundary components");
}

}  // namespace

double L_mu(double s, const Params& params) {
  params.validate();
  const double margin = defaults::glue_margin;
  if (!(s > params.a + margin) || !(s < params.b - margin))
    throw SolverError(errc::out_of_domain,
                      "matching radius outside (a + margin, b - margin)", s);
  return L_mu_impl(s, params);
}

std::vector<double> limit_maxima(const Params& params,
                                 const std::vector<double>& betas,
                                 bool boundary_layer, bool annulus_left) {
  const int k = static_cast<int>(betas.size()) - 1;
  std::vector<PieceType> types = piece_types(k, boundary_layer, annulus_left);
  std::vector<double> alphas(k);
  for (int j = 0; j < k; ++j)
    alphas[j] = limit_piece(params, betas[j], betas[j + 1], types[j]).alpha;
  return alphas;
}

std::vector<double> limit_interfaces(const Params& params, int k,
                                     bool boundary_layer, bool annulus_left) {
  validate_flags(params, k, boundary_layer, annulus_left);
  if (k == 1) return {};
  const std::vector<PieceType> types = piece_types(k, boundary_layer, annulus_left);
  const double a = params.a, b = params.b;
  const int m = k - 1;

  auto M_inf = [&](const std::vector<double>& beta) {
    std::vector<double> full(1, a);
    full.insert(full.end(), beta.begin(), beta.end());
    full.push_back(b);
    std::vector<LimitPiece> pieces(k);
    for (int j = 0; j < k; ++j)
      pieces[j] = limit_piece(params, full[j], full[j + 1], types[j]);
    std::vector<double> out(m);
    for (int j = 0; j < m; ++j)
      out[j] = limit_val_lo(pieces[j + 1], full[j + 1]) -
               limit_val_hi(pieces[j], full[j + 1]);
    return out;
  };
  auto norm_inf = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
  };

  // equispaced interior guess, refined by damped Newton with an FD Jacobian
  std::vector<double> beta(m);
  for (int j = 0; j < m; ++j)
    beta[j] = a + (b - a) * static_cast<double>(j + 1) / k;

  const double min_gap = 0.25 * (b - a) / k;
  auto project = [&](std::vector<double>& v) {
    for (int j = 0; j < m; ++j) {
      const double lo = a + min_gap * (j + 1);
      const double hi = b - min_gap * (m - j);
      v[j] = std::clamp(v[j], lo, hi);
    }
    std::sort(v.begin(), v.end());
  };

  std::vector<double> F = M_inf(beta);
  double fn = norm_inf(F);
  for (int it = 0; it < 60 && fn > 1e-11; ++it) {
    const double h = 1e-6 * (b - a);
    std::vector<double> J(m * m);
    for (int c = 0; c < m; ++c) {
      std::vector<double> bp = beta;
      bp[c] += h;
      const std::vector<double> Fp = M_inf(bp);
      for (int r = 0; r < m; ++r) J[r * m + c] = (Fp[r] - F[r]) / h;
    }
    std::vector<double> step = F, Jc = J;
    if (!solve_dense(Jc, m, step))
      throw SolverError(errc::singular_system, "singular limit-system Jacobian");
    double t = 1.0;
    bool accepted = false;
    for (int back = 0; back < 25; ++back) {
      std::vector<double> trial = beta;
      for (int j = 0; j < m; ++j) trial[j] -= t * step[j];
      project(trial);
      const std::vector<double> Ft = M_inf(trial);
      const double ft = norm_inf(Ft);
      if (ft < fn) {
        beta = trial;
        F = Ft;
        fn = ft;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
  }
  if (fn > 1e-8)
    throw SolverError(errc::no_bracket,
                      "limit matching system did not converge, |M_inf| = " +
                          std::to_string(fn));
  return beta;
}

namespace {

LayerSolution assemble(const Params& params, const std::vector<double>& betas,
                       const std::vector<PieceType>& types, double match_residual,
                       bool converged) {
  const int k = static_cast<int>(types.size());
  const double mu = params.mu;
  auto g = [mu](double u) { return std::exp(std::min(mu * (u - 1.0), 700.0)); };

  LayerSolution sol;
  sol.k = k;
  sol.betas = betas;
  sol.mu = mu;
  sol.boundary_layer = (types.back() == increasing_end);
  sol.annulus_left = (types.front() == decreasing_end);
  sol.converged = converged;
  sol.match_residual = match_residual;

  Profile glued;
  glued.params = params;
  double worst_gap = 0.0, worst_slope = 0.0;
  auto append = [&](const Profile& piece) {
    std::size_t start = 0;
    if (!glued.grid.empty()) {
      worst_gap = std::max(worst_gap, std::abs(glued.u.back() - piece.u.front()));
      worst_slope = std::max({worst_slope, std::abs(glued.du.back()),
                              std::abs(piece.du.front())});
      start = 1;
    }
    for (std::size_t i = start; i < piece.size(); ++i) {
      glued.grid.push_back(piece.grid[i]);
      glued.u.push_back(piece.u[i]);
      glued.du.push_back(piece.du[i]);
    }
  };

  for (int j = 0; j < k; ++j) {
    const Params sub = params.with_interval(betas[j], betas[j + 1]);
    if (types[j] == interior) {
      PieceData pd = solve_interior_piece(params, betas[j], betas[j + 1]);
      sol.alphas.push_back(pd.s_bar);
      MonotoneSolution up = solve_increasing(sub.with_interval(betas[j], pd.s_bar));
      MonotoneSolution dn = solve_decreasing(sub.with_interval(pd.s_bar, betas[j + 1]));
      sol.match_residual = std::max(sol.match_residual, pd.mismatch);
      append(up.profile);
      append(dn.profile);
    } else if (types[j] == increasing_end) {
      MonotoneSolution up = solve_increasing(sub);
      sol.alphas.push_back(betas[j + 1]);
      append(up.profile);
    } else {
      MonotoneSolution dn = solve_decreasing(sub);
      sol.alphas.push_back(betas[j]);
      append(dn.profile);
    }
  }
  sol.profile = std::move(glued);
  sol.profile.check_consistent();

  // C1 glue quality and the layer-structure invariants
  if (worst_gap > 1e-7 || worst_slope > 1e-8)
    throw SolverError(errc::shooting_collapse,
                      "glued profile is not C1: value gap " +
                          std::to_string(worst_gap) + ", slope " +
                          std::to_string(worst_slope));
  for (int j = 0; j < k; ++j) {
    if (!(sol.alphas[j] >= betas[j] && sol.alphas[j] <= betas[j + 1]))
      throw SolverError(errc::infeasible_order, "peak outside its interval",
                        sol.alphas[j]);
    if (types[j] == interior &&
        !(sol.alphas[j] > betas[j] && sol.alphas[j] < betas[j + 1]))
      throw SolverError(errc::infeasible_order, "interior peak on an interface",
                        sol.alphas[j]);
    const double peak_u = sol.profile.eval(sol.alphas[j]);
    if (!(peak_u > 1.0))
      throw SolverError(errc::shooting_collapse, "peak value not above 1", peak_u);
  }
  for (int j = 1; j < k; ++j) {
    const double iface_u = sol.profile.eval(betas[j]);
    if (!(iface_u < 1.0))
      throw SolverError(errc::shooting_collapse, "interface value not below 1",
                        iface_u);
  }
  const double mass = mass_balance(sol.profile, mu);
  if (std::abs(mass) > 1e-7)
    throw SolverError(errc::shooting_collapse,
                      "mass balance violated: " + std::to_string(mass));
  (void)g;

  GreenPair pair = homogeneous_pair(params);
  sol.s_bar_infty = diag_critical_point(pair);
  sol.limit = solve_amplitudes(pair, sol.alphas);
  return sol;
}

}  // namespace

LayerSolution one_layer(const Params& params) {
  validate_flags(params, 1, false, false);
  PieceData pd = solve_interior_piece(params, params.a, params.b);
  return assemble(params, {params.a, params.b}, {interior}, pd.mismatch, true);
}

LayerSolution k_layer(const Params& params, int k, bool boundary_layer,
                      bool annulus_left) {
  validate_flags(params, k, boundary_layer, annulus_left);
  const std::vector<PieceType> types = piece_types(k, boundary_layer, annulus_left);
  const double a = params.a, b = params.b;
  const int m = k - 1;

  if (m == 0) {
    if (types[0] == interior) return one_layer(params);
    return assemble(params, {a, b}, types, 0.0, true);
  }

  // initial guess from the limit system
  std::vector<double> beta = limit_interfaces(params, k, boundary_layer, annulus_left);

  // value cache: the matching map touches two pieces per perturbed interface
  std::map<std::pair<double, double>, PieceData> cache;
  auto piece_at = [&](double lo, double hi, PieceType type) -> const PieceData& {
    auto key = std::make_pair(lo, hi);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, solve_piece(params, lo, hi, type)).first;
    return it->second;
  };
  auto M_mu = [&](const std::vector<double>& bt) {
    std::vector<double> full(1, a);
    full.insert(full.end(), bt.begin(), bt.end());
    full.push_back(b);
    std::vector<double> out(m);
    for (int j = 0; j < m; ++j) {
      const PieceData& left = piece_at(full[j], full[j + 1], types[j]);
      const PieceData& right = piece_at(full[j + 1], full[j + 2], types[j + 1]);
      out[j] = right.val_lo - left.val_hi;
    }
    return out;
  };
  auto norm_inf = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
  };

  const double min_gap = 0.2 * (b - a) / k;
  int order_violations = 0;
  auto project = [&](std::vector<double>& v) {
    std::vector<double> before = v;
    for (int j = 0; j < m; ++j)
      v[j] = std::clamp(v[j], a + min_gap * (j + 1), b - min_gap * (m - j));
    std::sort(v.begin(), v.end());
    if (v != before && ++order_violations > 12)
      throw SolverError(errc::infeasible_order,
                        "interface ordering kept failing during Newton");
  };

  std::vector<double> F = M_mu(beta);
  double fn = norm_inf(F);
  double best_fn = fn;
  std::vector<double> best_beta = beta;
  int stall = 0;
  const double fd_step = 1e-5;  // per-interface Jacobian step
  for (int it = 0; it < 40 && fn > 1e-9; ++it) {
    std::vector<double> J(m * m);
    for (int c = 0; c < m; ++c) {
      std::vector<double> bp = beta;
      bp[c] += fd_step;
      const std::vector<double> Fp = M_mu(bp);
      for (int r = 0; r < m; ++r) J[r * m + c] = (Fp[r] - F[r]) / fd_step;
    }
    std::vector<double> step = F, Jc = J;
    if (!solve_dense(Jc, m, step))
      throw SolverError(errc::singular_system, "singular matching Jacobian");
    double t = 1.0;
    bool accepted = false;
    for (int back = 0; back < 20; ++back) {
      std::vector<double> trial = beta;
      for (int j = 0; j < m; ++j) trial[j] -= t * step[j];
      project(trial);
      const std::vector<double> Ft = M_mu(trial);
      const double ft = norm_inf(Ft);
      if (ft < fn) {
        beta = trial;
        F = Ft;
        fn = ft;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (fn < best_fn) {
      best_fn = fn;
      best_beta = beta;
      stall = 0;
    } else if (++stall >= 3) {
      break;
    }
    if (!accepted) break;
  }

  const bool converged = best_fn <= 1e-8;
  std::vector<double> betas(1, a);
  betas.insert(betas.end(), best_beta.begin(), best_beta.end());
  betas.push_back(b);
  return assemble(params, betas, types, best_fn, converged);
}

}  // namespace ks
