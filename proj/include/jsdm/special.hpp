#pragma once

namespace jsdm::special {

/// ln Gamma(x) for x > 0 (Lanczos approximation, g = 7, 9 terms).
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, z) = gamma(a, z) / Gamma(a).
/// Series for z < a + 1, continued fraction otherwise.
double gamma_p(double a, double z);

/// Regularized upper incomplete gamma Q(a, z) = 1 - P(a, z).
double gamma_q(double a, double z);

}  // namespace jsdm::special
