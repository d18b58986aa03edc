#include "kellerpath/params.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace ks {

double surface_measure(int dim) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double Params::omega() const { return surface_measure(dim); }

void Params::validate() const {
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2");
  if (!(a >= 0.0)) throw std::invalid_argument("inner radius must be >= 0");
  if (!(b > a)) throw std::invalid_argument("outer radius must exceed inner radius");
  if (!(mu > 1.0))
    throw std::invalid_argument("mu must exceed 1 (equivalently lambda < 1/e)");
  if (mu > defaults::mu_cap)
    throw std::invalid_argument("mu above desk-scale cap " +
                                std::to_string(defaults::mu_cap));
}

}  // namespace ks
