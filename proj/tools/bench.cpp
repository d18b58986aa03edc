// Timing comparison of the serial reference path against the OpenMP
// kernels: quadrature reduction, FV residual assembly, and a full monotone
// solve.  Not part of the test suite.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "kellerpath/collocation.hpp"
#include "kellerpath/monotone.hpp"
#include "kellerpath/ode.hpp"
#include "kellerpath/par.hpp"

using clock_type = std::chrono::steady_clock;

namespace {

double time_ms(int reps, const std::function<void()>& fn) {
  fn();  // warm up
  const auto t0 = clock_type::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", ks::par::max_threads());
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  // large synthetic profile for the quadrature kernel
  ks::Params p{3, 100.0, 0.0, 1.0};
  ks::Profile prof;
  prof.params = p;
  const std::size_t n = 2'000'001;
  prof.grid = ks::linspace(0.0, 1.0, n);
  prof.u.resize(n);
  prof.du.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    prof.u[i] = std::cos(3.0 * prof.grid[i]);
    prof.du[i] = -3.0 * std::sin(3.0 * prof.grid[i]);
  }
  volatile double sink = 0.0;

  {
    auto run = [&] { sink = ks::quadrature(prof, 2.0); };
    ks::par::force_serial(true);
    const double s = time_ms(5, run);
    ks::par::force_serial(false);
    const double q = time_ms(5, run);
    row("quadrature 2e6 cells", s, q);
  }

  {
    ks::FvGrid g = ks::make_fv_grid(p, 400001);
    std::vector<double> u(g.size(), 1.01), res;
    auto run = [&] {
      ks::fv_residual(g, u, 100.0, res);
      sink = res[17];
    };
    ks::par::force_serial(true);
    const double s = time_ms(20, run);
    ks::par::force_serial(false);
    const double q = time_ms(20, run);
    row("fv residual 4e5 nodes", s, q);
  }

  {
    auto run = [&] { sink = ks::solve_increasing(p.with_mu(200.0)).boundary_value; };
    ks::par::force_serial(true);
    const double s = time_ms(3, run);
    ks::par::force_serial(false);
    const double q = time_ms(3, run);
    row("monotone solve mu=200", s, q);
  }

  (void)sink;
  return 0;
}
