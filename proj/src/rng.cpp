#include "jsdm/rng.hpp"

#include <cmath>

namespace jsdm {

double Rng::exponential() { return -std::log1p(-uniform()); }

std::vector<double> Rng::simplex(std::size_t dim) {
  std::vector<double> x(dim);
  double total = 0.0;
  for (double& v : x) {
    v = exponential();
    total += v;
  }
  if (total == 0.0) {
    // Every draw was exactly zero; fall back to the barycenter.
    for (double& v : x) v = 1.0 / static_cast<double>(dim);
    return x;
  }
  for (double& v : x) v /= total;
  return x;
}

std::size_t Rng::categorical(std::span<const double> cdf) {
  const double u = uniform();
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    if (u < cdf[i]) return i;
  }
  // u landed beyond a cdf whose last entry rounded below 1: pick the last
  // category with positive mass.
  for (std::size_t i = cdf.size(); i-- > 0;) {
    if (i == 0 || cdf[i] > cdf[i - 1]) return i;
  }
  return 0;
}

}  // namespace jsdm
