#include "kellerpath/collocation.hpp"

#include <cmath>

#include "kellerpath/errors.hpp"
#include "kellerpath/par.hpp"

namespace ks {

FvGrid make_fv_grid(const Params& params, std::size_t n) {
  FvGrid g;
  g.params = params;
  g.r = linspace(params.a, params.b, n);
  g.h = (params.b - params.a) / static_cast<double>(n - 1);
  const int N = params.dim;
  auto rpow = [N](double r) { return std::pow(r, N); };
  g.vol.resize(n);
  g.face.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double rf = 0.5 * (g.r[i] + g.r[i + 1]);
    g.face[i] = std::pow(rf, N - 1) / g.h;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = (i == 0) ? g.r[0] : 0.5 * (g.r[i - 1] + g.r[i]);
    const double hi = (i + 1 == n) ? g.r[n - 1] : 0.5 * (g.r[i] + g.r[i + 1]);
    g.vol[i] = (rpow(hi) - rpow(lo)) / N;
  }
  return g;
}

void fv_residual(const FvGrid& g, const std::vector<double>& u, double mu,
                 std::vector<double>& res) {
  const std::size_t n = g.size();
  res.resize(n);
  par::for_index(n, [&](std::size_t i) {
    double flux = 0.0;
    if (i > 0) flux += g.face[i - 1] * (u[i] - u[i - 1]);
    if (i + 1 < n) flux -= g.face[i] * (u[i + 1] - u[i]);
    res[i] = flux / g.vol[i] + u[i] - std::exp(mu * (u[i] - 1.0));
  });
}

void fv_jacobian(const FvGrid& g, const std::vector<double>& u, double mu,
                 Tridiag& J) {
  const std::size_t n = g.size();
  J.diag.resize(n);
  J.lower.assign(n - 1, 0.0);
  J.upper.assign(n - 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 1.0 - mu * std::exp(mu * (u[i] - 1.0));
    if (i > 0) {
      d += g.face[i - 1] / g.vol[i];
      J.lower[i - 1] = -g.face[i - 1] / g.vol[i];
    }
    if (i + 1 < n) {
      d += g.face[i] / g.vol[i];
      J.upper[i] = -g.face[i] / g.vol[i];
    }
    J.diag[i] = d;
  }
}

void fv_dresidual_dmu(const FvGrid& g, const std::vector<double>& u, double mu,
                      std::vector<double>& out) {
  const std::size_t n = g.size();
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = -(u[i] - 1.0) * std::exp(mu * (u[i] - 1.0));
}

double fv_newton(const FvGrid& g, std::vector<double>& u, double mu, double tol,
                 int max_iter) {
  const std::size_t n = g.size();
  std::vector<double> res, step;
  Tridiag J;
  auto norm_inf = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };
  fv_residual(g, u, mu, res);
  double rn = norm_inf(res);
  for (int it = 0; it < max_iter; ++it) {
    if (rn <= tol) return rn;
    fv_jacobian(g, u, mu, J);
    step = res;
    if (!solve_tridiag(J, step)) return -1.0;
    // Armijo backtracking on the residual norm
    double t = 1.0;
    std::vector<double> trial(n);
    for (int back = 0; back < 30; ++back) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] - t * step[i];
      fv_residual(g, trial, mu, res);
      const double rt = norm_inf(res);
      if (rt < (1.0 - 1e-4 * t) * rn || rt < tol) {
        u.swap(trial);
        rn = rt;
        break;
      }
      t *= 0.5;
      if (back == 29) return -rn;
    }
  }
  return rn <= tol ? rn : -rn;
}

SymTriPencil linearized_pencil(const FvGrid& g, const std::vector<double>& V) {
  const std::size_t n = g.size();
  SymTriPencil P;
  P.sdiag.resize(n);
  P.soff.resize(n - 1);
  P.m = g.vol;
  for (std::size_t i = 0; i < n; ++i) {
    double d = g.vol[i] * V[i];
    if (i > 0) d += g.face[i - 1];
    if (i + 1 < n) d += g.face[i];
    P.sdiag[i] = d;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) P.soff[i] = -g.face[i];
  return P;
}

Profile fv_to_profile(const FvGrid& g, const std::vector<double>& u) {
  Profile p;
  p.params = g.params;
  p.grid = g.r;
  p.u = u;
  const std::size_t n = g.size();
  p.du.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0)
      p.du[i] = 0.0;
    else if (i + 1 == n)
      p.du[i] = 0.0;
    else
      p.du[i] = (u[i + 1] - u[i - 1]) / (2.0 * g.h);
  }
  return p;
}

}  // namespace ks
