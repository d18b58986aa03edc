#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "kellerpath/green.hpp"
#include "kellerpath/ode.hpp"

using namespace ks;

namespace {

double i0_series(double r) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 30; ++k) {
    term *= (r * r / 4.0) / (k * k);
    sum += term;
  }
  return sum;
}

// reduction-of-order second solution with automatic Wronskian normalization:
// zeta(r) = xi(r) [ 1/(b^{N-1} xi(b) xi'(b)) + int_r^b ds/(s^{N-1} xi(s)^2) ]
double zeta_oracle(const GreenPair& pair, double r) {
  const Params& p = pair.params;
  const int N = p.dim;
  const double b = p.b;
  const double tail = 1.0 / (std::pow(b, N - 1) * pair.xi_at(b) * pair.dxi_at(b));
  const double integral = integrate_fn(
      [&](double s) { return 1.0 / (std::pow(s, N - 1) * pair.xi_at(s) * pair.xi_at(s)); },
      r, b, 4000);
  return pair.xi_at(r) * (tail + integral);
}

// p-linear finite elements with the r^{N-1} weight; nodes aligned with the
// pinned radii.  Independent route to the optimal-partition value.
double phi_fem_oracle(const Params& p, const std::vector<double>& pins,
                      std::size_t nodes_per_segment) {
  std::vector<double> mesh;
  std::vector<std::size_t> pin_idx;
  double lo = p.a;
  for (double s : pins) {
    std::vector<double> seg = linspace(lo, s, nodes_per_segment);
    if (!mesh.empty()) seg.erase(seg.begin());
    mesh.insert(mesh.end(), seg.begin(), seg.end());
    pin_idx.push_back(mesh.size() - 1);
    lo = s;
  }
  if (pins.back() < p.b) {
    std::vector<double> seg = linspace(lo, p.b, nodes_per_segment);
    seg.erase(seg.begin());
    mesh.insert(mesh.end(), seg.begin(), seg.end());
  }
  const std::size_t n = mesh.size();
  std::vector<double> diag(n, 0.0), off(n - 1, 0.0);
  // 3-point Gauss per cell for int r^{N-1} (phi_i' phi_j' + phi_i phi_j) dr
  const double gx[3] = {-std::sqrt(3.0 / 5.0), 0.0, std::sqrt(3.0 / 5.0)};
  const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  for (std::size_t e = 0; e + 1 < n; ++e) {
    const double h = mesh[e + 1] - mesh[e];
    double k00 = 0, k01 = 0, k11 = 0;
    for (int q = 0; q < 3; ++q) {
      const double r = 0.5 * (mesh[e] + mesh[e + 1]) + 0.5 * h * gx[q];
      const double w = 0.5 * h * gw[q] * std::pow(r, p.dim - 1);
      const double t = (r - mesh[e]) / h;
      k00 += w * ((1.0 / (h * h)) + (1 - t) * (1 - t));
      k11 += w * ((1.0 / (h * h)) + t * t);
      k01 += w * ((-1.0 / (h * h)) + t * (1 - t));
    }
    diag[e] += k00;
    diag[e + 1] += k11;
    off[e] += k01;
  }
  // pin u = 1 at the constraint nodes, solve for the rest (tridiagonal with
  // Dirichlet rows), then evaluate the quadratic form
  std::vector<double> u(n, 0.0);
  std::vector<char> pinned(n, 0);
  for (std::size_t i : pin_idx) {
    pinned[i] = 1;
    u[i] = 1.0;
  }
  // Gaussian elimination specialized to the tridiagonal structure with
  // pinned rows replaced by identity
  std::vector<double> dl(n - 1), d(n), du(n - 1), rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = pinned[i] ? 1.0 : diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // pinned unknowns move to the right-hand side and lose their couplings
    dl[i] = (pinned[i] || pinned[i + 1]) ? 0.0 : off[i];
    du[i] = (pinned[i] || pinned[i + 1]) ? 0.0 : off[i];
    if (!pinned[i] && pinned[i + 1]) rhs[i] -= off[i] * 1.0;
    if (!pinned[i + 1] && pinned[i]) rhs[i + 1] -= off[i] * 1.0;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (pinned[i]) rhs[i] = 1.0;
  // Thomas (no pivoting needed: diagonally dominant SPD rows)
  for (std::size_t i = 1; i < n; ++i) {
    const double m = dl[i - 1] / d[i - 1];
    d[i] -= m * du[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  u[n - 1] = rhs[n - 1] / d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) u[i] = (rhs[i] - du[i] * u[i + 1]) / d[i];
  double Q = 0.0;
  for (std::size_t i = 0; i < n; ++i) Q += diag[i] * u[i] * u[i];
  for (std::size_t i = 0; i + 1 < n; ++i) Q += 2.0 * off[i] * u[i] * u[i + 1];
  return p.omega() * Q;
}

}  // namespace

TEST_CASE("xi matches I0 (N=2) and sinh(r)/r (N=3) on the unit ball") {
  {
    GreenPair g = homogeneous_pair({2, 100.0, 0.0, 1.0});
    CHECK(g.xi.u.front() == 1.0);
    CHECK(g.xi.grid.front() == 0.0);
    double sup = 0.0;
    for (std::size_t i = 0; i < g.xi.size(); ++i)
      sup = std::max(sup, std::abs(g.xi.u[i] - i0_series(g.xi.grid[i])));
    CHECK(sup < 1e-9);
  }
  {
    GreenPair g = homogeneous_pair({3, 100.0, 0.0, 1.0});
    double sup = 0.0;
    for (std::size_t i = 1; i < g.xi.size(); ++i) {
      const double r = g.xi.grid[i];
      sup = std::max(sup, std::abs(g.xi.u[i] - std::sinh(r) / r));
    }
    CHECK(sup < 1e-8);
    // closed-form zeta for this pair is e^r / r
    for (double r : {0.2, 0.5, 0.9, 1.0})
      CHECK(g.zeta_at(r) == doctest::Approx(std::exp(r) / r).epsilon(1e-9));
  }
}

TEST_CASE("zeta asymptotics at the origin for N=2") {
  GreenPair g = homogeneous_pair({2, 100.0, 0.0, 1.0});
  // -r zeta'(r) -> 1
  CHECK(std::abs(-1e-3 * g.dzeta_at(1e-3) - 1.0) < 1e-2);
  CHECK(std::abs(-1e-4 * g.dzeta_at(1e-4) - 1.0) < 1e-2);
  // zeta(r)/(-log r) -> 1, extrapolated linearly in 1/log(1/r)
  const double L3 = std::log(1e3), L4 = std::log(1e4);
  const double f3 = g.zeta_at(1e-3) / L3, f4 = g.zeta_at(1e-4) / L4;
  const double lim = (L4 * f4 - L3 * f3) / (L4 - L3);
  CHECK(std::abs(lim - 1.0) < 1e-2);
}

TEST_CASE("zeta agrees with the reduction-of-order integral oracle") {
  for (int N : {2, 3}) {
    GreenPair g = homogeneous_pair({N, 100.0, 0.0, 1.0});
    for (double r : {0.05, 0.3, 0.7, 1.0})
      CHECK(g.zeta_at(r) == doctest::Approx(zeta_oracle(g, r)).epsilon(1e-8));
  }
  GreenPair ann = homogeneous_pair({3, 100.0, 0.4, 1.2});
  for (double r : {0.4, 0.8, 1.2})
    CHECK(ann.zeta_at(r) == doctest::Approx(zeta_oracle(ann, r)).epsilon(1e-8));
}

TEST_CASE("normalized Wronskian is constant to 1e-9") {
  for (int N : {2, 3}) {
    CHECK(wronskian_deviation(homogeneous_pair({N, 100.0, 0.0, 1.0})) < 1e-9);
    CHECK(wronskian_deviation(homogeneous_pair({N, 100.0, 0.3, 1.0})) < 1e-9);
  }
}

TEST_CASE("monotonicity and positivity of the pair") {
  GreenPair g = homogeneous_pair({3, 100.0, 0.0, 1.0});
  for (std::size_t i = 0; i + 1 < g.xi.size(); ++i)
    CHECK(g.xi.u[i] <= g.xi.u[i + 1] + 1e-14);
  for (std::size_t i = 0; i + 1 < g.zeta.size(); ++i)
    CHECK(g.zeta.u[i] >= g.zeta.u[i + 1] - 1e-14);
  for (double r : {0.1, 0.4, 0.9})
    for (double s : {0.2, 0.6, 1.0}) CHECK(green_eval(g, r, s) > 0.0);
  // G(r, b) is nondecreasing in r
  double prev = -1.0;
  for (double r : linspace(0.0, 1.0, 200)) {
    const double v = green_eval(g, r, 1.0);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("reproducing property of the Green kernel") {
  for (int N : {2, 3}) {
    GreenPair g = homogeneous_pair({N, 100.0, 0.0, 1.0});
    auto phi = [](double r) { return std::cos(std::numbers::pi * r); };
    auto dphi = [](double r) { return -std::numbers::pi * std::sin(std::numbers::pi * r); };
    const double s = 0.5;
    auto integrand = [&](double r) {
      return (green_eval_dr(g, r, s) * dphi(r) + green_eval(g, r, s) * phi(r)) *
             std::pow(r, N - 1);
    };
    // dG/dr jumps across r = s; keep each sub-integral on its own branch
    const double left = integrate_fn(integrand, 0.0, s, 3000);
    const double right = integrate_fn(integrand, s + 1e-12, 1.0, 3000);
    const double expected = std::pow(s, N - 1) * phi(s);
    CHECK(std::abs(left + right - expected) < 1e-6);
  }
}

TEST_CASE("kernel symmetry r^{N-1} G(r,s) = s^{N-1} G(s,r)") {
  GreenPair g = homogeneous_pair({3, 100.0, 0.0, 1.0});
  const double r = 0.3, s = 0.7;
  const double lhs = std::pow(r, 2) * green_eval(g, r, s);
  const double rhs = std::pow(s, 2) * green_eval(g, s, r);
  CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("diagonal critical point") {
  GreenPair g = homogeneous_pair({3, 100.0, 0.0, 1.0});
  const double sbar = diag_critical_point(g);

  // dense scan oracle: exactly one sign change of (xi zeta)'
  auto slope = [&](double r) {
    return g.dxi_at(r) * g.zeta_at(r) + g.xi_at(r) * g.dzeta_at(r);
  };
  int changes = 0;
  double prev = slope(1e-3);
  for (int i = 1; i <= 10000; ++i) {
    const double r = 1e-3 + (1.0 - 2e-3) * i / 10000.0;
    const double v = slope(r);
    if ((v > 0) != (prev > 0)) ++changes;
    prev = v;
  }
  CHECK(changes == 1);
  CHECK(std::abs(slope(sbar)) < 1e-10);
  CHECK(sbar > 1e-6);
  CHECK(sbar < 1.0 - 1e-6);

  // closed form for N=3 on the unit ball: xi zeta = (e^{2r}-1)/(2r^2), so the
  // critical point solves e^{2s}(1-s) = 1
  double lo = 0.5, hi = 0.99;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::exp(2.0 * mid) * (1.0 - mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  CHECK(sbar == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-8));

  // scaling invariance: c xi, zeta/c leaves the critical point unchanged
  GreenPair scaled = g;
  for (double& v : scaled.xi.u) v *= 3.7;
  for (double& v : scaled.xi.du) v *= 3.7;
  for (double& v : scaled.zeta.u) v /= 3.7;
  for (double& v : scaled.zeta.du) v /= 3.7;
  CHECK(diag_critical_point(scaled) == doctest::Approx(sbar).epsilon(1e-12));
}

TEST_CASE("amplitude system") {
  GreenPair g = homogeneous_pair({3, 100.0, 0.0, 1.0});
  {
    const double alphas[] = {1.0};
    LayerLimit lim = solve_amplitudes(g, alphas);
    CHECK(lim.amps[0] == doctest::Approx(1.0 / green_eval(g, 1.0, 1.0)).epsilon(1e-12));
    CHECK(lim.residual < 1e-12);
  }
  {
    const double alphas[] = {0.5, 1.0};
    LayerLimit lim = solve_amplitudes(g, alphas);
    CHECK(lim.residual < 1e-10);
    // explicit 2x2 inverse
    const double g11 = green_eval(g, 0.5, 0.5), g12 = green_eval(g, 0.5, 1.0);
    const double g21 = green_eval(g, 1.0, 0.5), g22 = green_eval(g, 1.0, 1.0);
    const double det = g11 * g22 - g12 * g21;
    CHECK(lim.amps[0] == doctest::Approx((g22 - g12) / det).epsilon(1e-10));
    CHECK(lim.amps[1] == doctest::Approx((g11 - g21) / det).epsilon(1e-10));
  }
}

TEST_CASE("phi functional against the FEM minimization oracle") {
  Params p{3, 100.0, 0.0, 1.0};
  GreenPair g = homogeneous_pair(p);
  {
    const double s[] = {0.7};
    PhiValue v = phi_functional(g, s);
    const double fem = phi_fem_oracle(p, {0.7}, 2000);
    CHECK(std::abs(v.value - fem) / fem < 1e-4);
  }
  {
    const double s[] = {0.5, 0.9};
    PhiValue v = phi_functional(g, s);
    const double fem = phi_fem_oracle(p, {0.5, 0.9}, 1200);
    CHECK(std::abs(v.value - fem) / fem < 1e-4);
  }
}

TEST_CASE("phi at the boundary pin equals omega u_inf'(b) (= 2 c_inf)") {
  Params p{3, 100.0, 0.0, 1.0};
  GreenPair g = homogeneous_pair(p);
  const double s[] = {1.0};
  PhiValue v = phi_functional(g, s);
  CHECK(v.value == doctest::Approx(p.omega() * g.du_plus(1.0)).epsilon(1e-9));
}

TEST_CASE("phi gradient vanishes at the diagonal critical point") {
  Params p{3, 100.0, 0.0, 1.0};
  GreenPair g = homogeneous_pair(p);
  const double sbar = diag_critical_point(g);
  const double s[] = {sbar};
  PhiValue v = phi_functional(g, s);
  CHECK(std::abs(v.grad[0]) < 1e-6 * std::abs(v.value));
}

TEST_CASE("L_infinity: sub-pair definition, monotonicity, zero at s_bar") {
  Params p{3, 100.0, 0.0, 1.0};
  GreenPair g = homogeneous_pair(p);
  const double sbar = diag_critical_point(g);
  // full-pair shortcut: L = ((xi'/xi)^2 - (zeta'/zeta)^2)/2 via restriction
  auto shortcut = [&](double s) {
    const double dp = g.dxi_at(s) / g.xi_at(s);
    const double dm = g.dzeta_at(s) / g.zeta_at(s);
    return 0.5 * (dp * dp - dm * dm);
  };
  for (double s : {0.3, 0.6, 0.85})
    CHECK(L_infinity(p, s) == doctest::Approx(shortcut(s)).epsilon(1e-9));
  CHECK(std::abs(shortcut(sbar)) < 1e-9);

  double prev = -1e300;
  bool increasing = true;
  for (int i = 1; i <= 100; ++i) {
    const double s = 0.05 + 0.9 * i / 100.0;
    const double v = shortcut(s);
    increasing = increasing && v > prev;
    prev = v;
  }
  CHECK(increasing);
  CHECK(shortcut(0.05) < 0.0);
  CHECK(shortcut(0.95) > 0.0);
}

TEST_CASE("degenerate interval is rejected") {
  CHECK_THROWS_AS(homogeneous_pair({3, 100.0, 0.5, 0.5 + 1e-8}), SolverError);
}

TEST_CASE("green pair export writes manifest and profiles") {
  GreenPair g = homogeneous_pair({2, 100.0, 0.0, 1.0});
  export_pair(g, "/tmp/ks_green_export");
  Profile xi = read_csv("/tmp/ks_green_export/xi.csv", g.params);
  CHECK(xi.size() == g.xi.size());
}
