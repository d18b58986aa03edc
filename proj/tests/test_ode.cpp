#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kellerpath/ode.hpp"

using namespace ks;

namespace {

// truncated power series of the modified Bessel function I_0
double i0_series(double r) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 30; ++k) {
    term *= (r * r / 4.0) / (k * k);
    sum += term;
  }
  return sum;
}

auto zero_rhs = [](double) { return 0.0; };

}  // namespace

TEST_CASE("fundamental solution N=3 matches sinh(r)/r") {
  Params p{3, 100.0, 0.0, 1.0};
  std::vector<double> nodes = linspace(0.0, 1.0, 2001);
  Profile u = integrate_nodes(p, zero_rhs, State{0.0, 1.0, 0.0}, nodes);
  CHECK(std::abs(u.u.back() - std::sinh(1.0)) < 1e-8);
  double sup = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = u.grid[i];
    if (r < 1e-3) continue;
    sup = std::max(sup, std::abs(u.u[i] - std::sinh(r) / r));
  }
  CHECK(sup < 1e-8);
}

TEST_CASE("fundamental solution N=2 matches the I0 power series") {
  Params p{2, 100.0, 0.0, 1.0};
  std::vector<double> nodes = linspace(0.0, 1.0, 1001);
  Profile u = integrate_nodes(p, zero_rhs, State{0.0, 1.0, 0.0}, nodes);
  for (std::size_t i = 0; i < u.size(); i += 50)
    CHECK(std::abs(u.u[i] - i0_series(u.grid[i])) < 1e-10);
  CHECK(std::abs(u.u.back() - i0_series(1.0)) < 1e-10);
}

TEST_CASE("a start value fixed by the source stays constant") {
  Params p{3, 100.0, 0.0, 1.0};
  auto g = [](double u) { return u * u; };  // g(1) = 1
  Profile u = integrate(p, g, State{0.0, 1.0, 0.0}, 1.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(std::abs(u.u[i] - 1.0) < 1e-12);
    CHECK(std::abs(u.du[i]) < 1e-12);
  }
}

TEST_CASE("series start radius does not matter") {
  const int N = 3;
  auto g = [](double u) { return 0.2 * u * u; };
  State s4 = series_start(N, g, 1.0, 1e-4);
  State s3 = series_start(N, g, 1.0, 1e-3);
  State a = integrate_to(N, g, s4, 0.5);
  State b = integrate_to(N, g, s3, 0.5);
  CHECK(std::abs(a.u - b.u) < 1e-9);
  CHECK(std::abs(a.du - b.du) < 1e-9);
}

TEST_CASE("integration is reversible") {
  Params p{2, 100.0, 0.0, 1.0};
  auto g = [](double u) { return 0.5 * u; };
  State fwd = integrate_to(p.dim, g, State{0.2, 1.1, 0.05}, 1.0);
  State back = integrate_to(p.dim, g, fwd, 0.2);
  CHECK(std::abs(back.u - 1.1) < 10 * defaults::ode_rtol * 1.1 + 1e-11);
  CHECK(std::abs(back.du - 0.05) < 1e-9);
}

TEST_CASE("blow-up is reported with the last valid radius") {
  Params p{3, 100.0, 0.0, 1.0};
  auto g = [](double u) { return -u * u * u; };  // u'' ~ u + u^3, explodes
  bool thrown = false;
  try {
    integrate(p, g, State{0.0, 2.0, 0.0}, 50.0);
  } catch (const SolverError& e) {
    thrown = true;
    CHECK(e.code() == errc::blow_up);
    CHECK(e.where() > 0.0);
    CHECK(e.where() < 50.0);
  }
  CHECK(thrown);
}

TEST_CASE("quadrature of monomials") {
  Params p{3, 100.0, 0.0, 1.0};
  Profile one;
  one.params = p;
  one.grid = linspace(0.0, 1.0, 101);
  one.u.assign(101, 1.0);
  one.du.assign(101, 0.0);
  CHECK(quadrature(one, p.dim - 1) == doctest::Approx(1.0 / p.dim).epsilon(1e-12));

  Profile lin = one;
  for (std::size_t i = 0; i < lin.size(); ++i) {
    lin.u[i] = lin.grid[i];
    lin.du[i] = 1.0;
  }
  CHECK(quadrature(lin, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("quadrature of the rescaled layer bubble has mass sqrt(2)") {
  // e^{u_tilde} with u_tilde = log(4 e^{sqrt2 t} / (1+e^{sqrt2 t})^2) has the
  // antiderivative -2 sqrt2 / (1 + e^{sqrt2 t})
  Params p{2, 100.0, 0.0, 1.0};
  const double T = 20.0;
  const std::size_t n = 4001;
  Profile f;
  f.params = p;
  f.grid.resize(n);
  f.u.resize(n);
  f.du.resize(n);
  const double s2 = std::numbers::sqrt2;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = -T + T * static_cast<double>(i) / (n - 1);
    const double e = std::exp(s2 * t);
    f.grid[i] = t;
    f.u[i] = 4.0 * e / ((1.0 + e) * (1.0 + e));
    f.du[i] = 4.0 * s2 * e * (1.0 - e) / std::pow(1.0 + e, 3);
  }
  const double oracle = -2.0 * s2 / (1.0 + std::exp(0.0)) -
                        (-2.0 * s2 / (1.0 + std::exp(-s2 * T)));
  const double q = quadrature(f, 0.0);
  CHECK(std::abs(q - oracle) < 1e-10);
  CHECK(std::abs(q - s2) < 1e-6);
}

TEST_CASE("dense node output agrees with plain integration") {
  Params p{3, 100.0, 0.0, 1.0};
  auto g = [](double u) { return std::exp(2.0 * (u - 1.0)); };
  std::vector<double> nodes = linspace(0.0, 0.8, 401);
  Profile dense = integrate_nodes(p, g, State{0.0, 0.9, 0.0}, nodes);
  State end = integrate_to(p.dim, g, State{0.0, 0.9, 0.0}, 0.8);
  CHECK(std::abs(dense.u.back() - end.u) < 1e-11);
  CHECK(std::abs(dense.du.back() - end.du) < 1e-11);
  CHECK(profile_defect(dense, g) < 1e-8);
}

TEST_CASE("profile csv round-trip") {
  Params p{3, 100.0, 0.0, 1.0};
  std::vector<double> nodes = linspace(0.0, 1.0, 51);
  Profile u = integrate_nodes(p, zero_rhs, State{0.0, 1.0, 0.0}, nodes);
  const std::string path = "/tmp/ks_test_profile.csv";
  write_csv(u, path);
  Profile v = read_csv(path, p);
  REQUIRE(v.size() == u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(v.grid[i] == u.grid[i]);
    CHECK(v.u[i] == u.u[i]);
    CHECK(v.du[i] == u.du[i]);
  }
}
