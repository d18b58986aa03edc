#include <doctest.h>

#include <cmath>

#include "kellerpath/continuation.hpp"
#include "kellerpath/errors.hpp"
#include "kellerpath/monotone.hpp"
#include "kellerpath/ode.hpp"
#include "kellerpath/spectrum.hpp"

using namespace ks;

TEST_CASE("detected bifurcation points match the radial eigenvalues") {
  Params p{2, 30.0, 0.0, 1.0};
  std::vector<double> bif = detect_bifurcation(p, 1.0, 60.0);
  std::vector<EigenPair> eigs = radial_neumann_eigs(p, 3);
  REQUIRE(bif.size() == 2);
  CHECK(std::abs(bif[0] - eigs[1].lam) < 1e-6);
  CHECK(std::abs(bif[1] - eigs[2].lam) < 1e-6);
  // the detector itself cross-checks the discretized Jacobian crossings to
  // 1e-4; a failure would have thrown

  // below lambda_2 nothing bifurcates (lambda_1 = 1 is the trivial line)
  CHECK(detect_bifurcation(p, 1.0, eigs[1].lam - 0.5).empty());
}

TEST_CASE("branch start approaches the bifurcation point") {
  Params p{3, 30.0, 0.0, 1.0};
  const double lam2 = radial_neumann_eigs(p, 2)[1].lam;
  TraceOptions opt;
  opt.max_steps = 2;
  opt.keep_profiles = false;
  double mu_s[2], amp[2];
  const double amps[2] = {5e-4, 2.5e-4};
  for (int i = 0; i < 2; ++i) {
    opt.start_amplitude = amps[i];
    Branch b = trace_branch(p, 2, BranchSign::minus, 2.0 * lam2, opt);
    mu_s[i] = b.records.front().mu;
    amp[i] = amps[i];
  }
  // mu(s) is linear in the amplitude near the transcritical point
  const double extrap = mu_s[1] - amp[1] * (mu_s[0] - mu_s[1]) / (amp[0] - amp[1]);
  CHECK(std::abs(extrap - lam2) < 1e-4);
}

TEST_CASE("B2- of the 3-ball: zeros, side, monotonicity, bounds") {
  Params p{3, 30.0, 0.0, 1.0};
  const double lam2 = radial_neumann_eigs(p, 2)[1].lam;
  Branch b = trace_branch(p, 2, BranchSign::minus, 2.0 * lam2);
  REQUIRE(b.records.size() >= 10);
  CHECK(b.stop_reason == "mu_max");
  double c1_max = 0.0;
  for (const BranchRecord& r : b.records) {
    CHECK(r.zeros_of_u_minus_1 == 1);
    CHECK(r.u0 < 1.0);
    CHECK(r.mu > lam2 - 1e-6);  // right branch (transcritical, N >= 3)
    CHECK(r.zeros_of_du == 0);  // monotone increasing
    c1_max = std::max(c1_max, r.c1_norm);
  }
  CHECK(c1_max < 3.0);  // uniform C1 bound
  for (const Profile& prof : b.profiles) CHECK(prof.max_abs_du() <= 1.0 + 1e-6);

  // Lyapunov monotonicity at every 5th record
  for (std::size_t i = 0; i < b.records.size(); i += 5)
    CHECK(lyapunov_max_increase(b.profiles[i], b.records[i].mu) <= 1e-8);
}

TEST_CASE("B3- keeps two zeros of u - 1") {
  Params p{3, 30.0, 0.0, 1.0};
  const double lam3 = radial_neumann_eigs(p, 3)[2].lam;
  Branch b = trace_branch(p, 3, BranchSign::minus, 2.0 * lam3);
  REQUIRE(b.records.size() >= 10);
  for (const BranchRecord& r : b.records) {
    CHECK(r.zeros_of_u_minus_1 == 2);
    CHECK(r.u0 < 1.0);
    CHECK(r.zeros_of_du == 1);  // one interior critical point, interlaced
  }
}

TEST_CASE("branches with different index do not intersect") {
  Params p{3, 30.0, 0.0, 1.0};
  Branch b2 = trace_branch(p, 2, BranchSign::minus, 70.0);
  Branch b3 = trace_branch(p, 3, BranchSign::minus, 70.0);
  // at any common mu the zero counts differ, so the solutions are distinct
  for (const BranchRecord& r2 : b2.records)
    for (const BranchRecord& r3 : b3.records)
      if (std::abs(r2.mu - r3.mu) < 1e-3)
        CHECK(r2.zeros_of_u_minus_1 != r3.zeros_of_u_minus_1);
}

TEST_CASE("plus branch: u(0) > 1, left of the bifurcation for N = 3") {
  Params p{3, 30.0, 0.0, 1.0};
  const double lam2 = radial_neumann_eigs(p, 2)[1].lam;
  TraceOptions opt;
  opt.max_steps = 25;
  Branch b = trace_branch(p, 2, BranchSign::plus, 2.0 * lam2, opt);
  for (const BranchRecord& r : b.records) {
    CHECK(r.u0 > 1.0);
    CHECK(r.mu < lam2 + 1e-6);  // left branch
  }
}

TEST_CASE("N = 2: both perturbation signs trace, sup norm stays bounded") {
  Params p{2, 30.0, 0.0, 1.0};
  const double lam2 = radial_neumann_eigs(p, 2)[1].lam;
  TraceOptions opt;
  opt.max_steps = 60;
  for (BranchSign sign : {BranchSign::minus, BranchSign::plus}) {
    Branch b = trace_branch(p, 2, sign, 2.0 * lam2, opt);
    REQUIRE(!b.records.empty());
    // boundedness monitor: no record exceeds 10x the early-branch scale
    double early = 0.0;
    const std::size_t quarter = std::max<std::size_t>(1, b.records.size() / 4);
    for (std::size_t i = 0; i < quarter; ++i)
      early = std::max(early, b.records[i].sup_norm);
    for (const BranchRecord& r : b.records) {
      CHECK(std::isfinite(r.sup_norm));
      CHECK(r.sup_norm <= 10.0 * early);
      const bool expected_side = (sign == BranchSign::minus) ? (r.u0 < 1.0)
                                                             : (r.u0 > 1.0);
      CHECK(expected_side);
    }
  }
}

TEST_CASE("classify") {
  Params p{3, 100.0, 0.0, 1.0};
  // constant profiles belong to the trivial branch
  Profile c;
  c.params = p;
  c.grid = linspace(0.0, 1.0, 101);
  c.u.assign(101, 1.0);
  c.du.assign(101, 0.0);
  CHECK_THROWS_AS(classify(c, 30.0), SolverError);

  // a solved profile classifies with the expected counts
  MonotoneSolution s = solve_increasing(p);
  BranchRecord rec = classify(s.profile, s.mu);
  CHECK(rec.zeros_of_u_minus_1 == 1);
  CHECK(rec.zeros_of_du == 0);
  CHECK(rec.u0 == doctest::Approx(s.profile.u.front()).epsilon(1e-9));
  CHECK(rec.sup_norm == doctest::Approx(s.boundary_value).epsilon(1e-6));
  CHECK(std::abs(rec.min_linearized_eig) > 1e-3);  // nondegenerate
}

TEST_CASE("linearization eigenvalues at u == 1 are lambda_i - mu") {
  // positive control for the classifier: at mu = lambda_2 the smallest
  // eigenvalue of the linearization at the trivial state vanishes
  Params p{3, 30.0, 0.0, 1.0};
  const double lam2 = radial_neumann_eigs(p, 2)[1].lam;
  Profile almost;
  almost.params = p;
  almost.grid = linspace(0.0, 1.0, 2001);
  almost.u.assign(2001, 1.0);
  almost.du.assign(2001, 0.0);
  for (std::size_t i = 0; i < almost.size(); ++i)
    almost.u[i] += 1e-7 * std::cos(almost.grid[i]);  // dodge the constant check
  BranchRecord rec = classify(almost, lam2);
  CHECK(std::abs(rec.min_linearized_eig) < 1e-4);
}
