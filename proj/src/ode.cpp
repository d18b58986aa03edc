#include "kellerpath/ode.hpp"

#include <cmath>

namespace ks {

double quadrature(const Profile& p, double m) {
  p.check_consistent();
  if (m == 0.0)
    return integrate_profile(p, [](double, double u, double) { return u; });
  return integrate_profile(
      p, [m](double r, double u, double) { return u * std::pow(r, m); });
}

}  // namespace ks
