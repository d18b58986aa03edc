#include "kellerpath/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kellerpath/errors.hpp"

namespace ks {

std::size_t Profile::locate(double r) const {
  if (grid.size() < 2) return 0;
  auto it = std::upper_bound(grid.begin(), grid.end(), r);
  std::size_t i = static_cast<std::size_t>(it - grid.begin());
  if (i == 0) return 0;
  if (i >= grid.size()) return grid.size() - 2;
  return i - 1;
}

namespace {
inline void hermite_basis(double t, double out[4]) {
  out[0] = 2 * t * t * t - 3 * t * t + 1;
  out[1] = t * t * t - 2 * t * t + t;
  out[2] = -2 * t * t * t + 3 * t * t;
  out[3] = t * t * t - t * t;
}
}  // namespace

double Profile::eval(double r) const {
  const std::size_t i = locate(r);
  const double h = grid[i + 1] - grid[i];
  const double t = std::clamp((r - grid[i]) / h, 0.0, 1.0);
  double b[4];
  hermite_basis(t, b);
  return b[0] * u[i] + b[1] * h * du[i] + b[2] * u[i + 1] + b[3] * h * du[i + 1];
}

double Profile::eval_deriv(double r) const {
  const std::size_t i = locate(r);
  const double h = grid[i + 1] - grid[i];
  const double t = std::clamp((r - grid[i]) / h, 0.0, 1.0);
  const double d0 = 6 * t * t - 6 * t;
  const double d1 = 3 * t * t - 4 * t + 1;
  const double d2 = -6 * t * t + 6 * t;
  const double d3 = 3 * t * t - 2 * t;
  return (d0 * u[i] + d2 * u[i + 1]) / h + d1 * du[i] + d3 * du[i + 1];
}

double Profile::max_abs_u() const {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

double Profile::max_abs_du() const {
  double m = 0.0;
  for (double v : du) m = std::max(m, std::abs(v));
  return m;
}

void Profile::check_consistent() const {
  if (grid.size() < 2 || grid.size() != u.size() || grid.size() != du.size())
    throw SolverError(errc::out_of_domain, "malformed profile arrays");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw SolverError(errc::out_of_domain, "profile grid not increasing", grid[i]);
}

Profile resample_uniform(const Profile& p, std::size_t n) {
  Profile q;
  q.params = p.params;
  q.grid = linspace(p.front(), p.back(), n);
  q.u.resize(n);
  q.du.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    q.u[i] = p.eval(q.grid[i]);
    q.du[i] = p.eval_deriv(q.grid[i]);
  }
  // keep node values exact at the shared endpoints
  q.u.front() = p.u.front();
  q.du.front() = p.du.front();
  q.u.back() = p.u.back();
  q.du.back() = p.du.back();
  return q;
}

void write_csv(const Profile& p, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  std::fputs("r,u,du\n", f);
  for (std::size_t i = 0; i < p.size(); ++i)
    std::fprintf(f, "%.17g,%.17g,%.17g\n", p.grid[i], p.u[i], p.du[i]);
  std::fclose(f);
}

Profile read_csv(const std::string& path, const Params& params) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("r,u,du", 0) != 0)
    throw std::runtime_error(path + ": missing r,u,du header");
  Profile p;
  p.params = params;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    double r, u, du;
    char c1, c2;
    if (!(ss >> r >> c1 >> u >> c2 >> du) || c1 != ',' || c2 != ',')
      throw std::runtime_error(path + ": malformed row: " + line);
    p.grid.push_back(r);
    p.u.push_back(u);
    p.du.push_back(du);
  }
  p.check_consistent();
  return p;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  x.front() = lo;
  x.back() = hi;
  return x;
}

std::vector<double> layer_graded_grid(double lo, double hi, std::size_t base,
                                      double layer_width, bool layer_at_hi) {
  // all nodes live on the dyadic lattice lo + m h0/2^L, so nested
  // refinement levels coincide exactly and no near-duplicates arise
  const double h0 = (hi - lo) / static_cast<double>(base - 1);
  const double win = std::min(8.0 * layer_width, 0.5 * (hi - lo));
  int L = 0;
  while (L < 6 && h0 / static_cast<double>(1 << L) > layer_width / 40.0) ++L;
  const long long scale = 1LL << L;
  const long long M = static_cast<long long>(base - 1) * scale;

  std::vector<long long> m;
  m.reserve(base + 4 * base);
  for (std::size_t i = 0; i < base; ++i)
    m.push_back(static_cast<long long>(i) * scale);
  for (int l = 1; l <= L; ++l) {
    const long long step = scale >> l;
    const double wl = win / static_cast<double>(1 << (l - 1));
    const long long count =
        std::min<long long>(M / step, std::llround(wl / (h0 / (1 << l))));
    for (long long j = 0; j <= count; ++j)
      m.push_back(layer_at_hi ? M - j * step : j * step);
  }
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());

  const double delta = h0 / static_cast<double>(scale);
  std::vector<double> x;
  x.reserve(m.size());
  for (long long mi : m) x.push_back(lo + static_cast<double>(mi) * delta);
  x.front() = lo;
  x.back() = hi;
  return x;
}

}  // namespace ks
