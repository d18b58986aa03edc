#include <doctest.h>

#include <cmath>

#include "kellerpath/ode.hpp"
#include "kellerpath/par.hpp"

using namespace ks;

TEST_CASE("chunked reduction is bit-identical between serial and openmp") {
  auto term = [](std::size_t i) {
    return std::sin(0.001 * static_cast<double>(i)) / (1.0 + static_cast<double>(i));
  };
  par::force_serial(true);
  const double s = par::sum(100003, term);
  par::force_serial(false);
  const double q = par::sum(100003, term);
  CHECK(s == q);  // exact equality by construction
}

TEST_CASE("for_index writes every slot once") {
  std::vector<int> hits(5000, 0);
  par::for_index(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("quadrature is bit-identical between serial and openmp") {
  Params p{3, 100.0, 0.0, 1.0};
  Profile prof;
  prof.params = p;
  const std::size_t n = 20001;
  prof.grid = linspace(0.0, 1.0, n);
  prof.u.resize(n);
  prof.du.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    prof.u[i] = std::cos(3.0 * prof.grid[i]);
    prof.du[i] = -3.0 * std::sin(3.0 * prof.grid[i]);
  }
  par::force_serial(true);
  const double s = quadrature(prof, 2.0);
  par::force_serial(false);
  const double q = quadrature(prof, 2.0);
  CHECK(s == q);
}
