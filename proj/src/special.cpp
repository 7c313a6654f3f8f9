#include "jsdm/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "jsdm/errors.hpp"

namespace jsdm::special {

namespace {

constexpr double kEps = 1e-15;
constexpr int kMaxIter = 10000;
constexpr double kTiny = 1e-300;

void check_args(double a, double z) {
  if (!(a > 0.0) || std::isinf(a)) throw DomainError("incomplete gamma requires a > 0");
  if (std::isnan(z) || z < 0.0) throw DomainError("incomplete gamma requires z >= 0");
}

// sum_{n>=0} z^n / (a (a+1) ... (a+n)), scaled by z^a e^-z / Gamma(a).
double p_series(double a, double z) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    term *= z / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-z + a * std::log(z) - log_gamma(a));
}

// Modified Lentz evaluation of the continued fraction for Q(a, z).
double q_continued_fraction(double a, double z) {
  double b = z + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-z + a * std::log(z) - log_gamma(a)) * h;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
  static constexpr std::array<double, 9> kLanczos{
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double kG = 7.0;
  if (x < 0.5) {
    // Reflection keeps the approximation in its accurate half-plane.
    return std::log(std::numbers::pi / std::abs(std::sin(std::numbers::pi * x))) -
           log_gamma(1.0 - x);
  }
  const double xm = x - 1.0;
  double acc = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (xm + static_cast<double>(i));
  const double t = xm + kG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (xm + 0.5) * std::log(t) - t + std::log(acc);
}

double gamma_p(double a, double z) {
  check_args(a, z);
  if (z == 0.0) return 0.0;
  if (std::isinf(z)) return 1.0;
  if (z < a + 1.0) return std::min(1.0, p_series(a, z));
  return std::max(0.0, 1.0 - q_continued_fraction(a, z));
}

double gamma_q(double a, double z) {
  check_args(a, z);
  if (z == 0.0) return 1.0;
  if (std::isinf(z)) return 0.0;
  if (z < a + 1.0) return std::max(0.0, 1.0 - p_series(a, z));
  return std::min(1.0, q_continued_fraction(a, z));
}

}  // namespace jsdm::special
