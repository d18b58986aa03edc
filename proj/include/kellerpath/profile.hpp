#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "kellerpath/params.hpp"

namespace ks {

/// Integrator state (r, u, u').
struct State {
  double r = 0.0;
  double u = 0.0;
  double du = 0.0;
};

/// A radial function sampled on a strictly increasing grid, with first
/// derivatives.  Values are immutable after construction by convention;
/// evaluation between nodes is cubic Hermite.
struct Profile {
  std::vector<double> grid;
  std::vector<double> u;
  std::vector<double> du;
  Params params;

  std::size_t size() const { return grid.size(); }
  double front() const { return grid.front(); }
  double back() const { return grid.back(); }
  State state_at_node(std::size_t i) const { return {grid[i], u[i], du[i]}; }

  /// Index of the cell containing r (clamped).
  std::size_t locate(double r) const;
  /// Cubic Hermite value / derivative at r (r clamped to [front, back]).
  double eval(double r) const;
  double eval_deriv(double r) const;

  double max_abs_u() const;
  double max_abs_du() const;

  void check_consistent() const;  // throws on malformed data
};

/// Resample onto n uniform nodes spanning the same interval.
Profile resample_uniform(const Profile& p, std::size_t n);

/// CSV with header `r,u,du`, 17 significant digits.
void write_csv(const Profile& p, const std::string& path);
Profile read_csv(const std::string& path, const Params& params);

/// Uniform grid helper.
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Uniform base grid with geometric clustering toward one end (used to
/// resolve the boundary layer of width ~1/(k mu)).
std::vector<double> layer_graded_grid(double lo, double hi, std::size_t base,
                                      double layer_width, bool layer_at_hi);

}  // namespace ks
