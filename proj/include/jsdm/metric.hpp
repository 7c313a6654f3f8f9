#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jsdm/prob.hpp"

namespace jsdm::metric {

using jsdm::f_js;

/// h_alpha(u) = (1 - u^alpha)^(1/alpha) / f_JS(u) for u in [0, 1).
double h_alpha(double u, double alpha);

/// Closed-form dh_alpha/du on (0, 1):
///   -(1-u^a)^(1/a-1) {u log2 u + (u+u^a)[1 - log2(1+u)]} / (2u f_JS(u)^2).
double dh_alpha_du(double u, double alpha);

/// u log2 u + (u + u^alpha)[1 - log2(1+u)]; its sign is opposite to that of
/// dh_alpha_du.
double sign_term(double u, double alpha);

/// Delta(u) = u^alpha - u ln((1+u)/(2u)) / ln(2/(1+u)), with Delta(0) = 0.
/// Nonnegativity on [0, 1) is the sufficient metric condition for alpha.
double delta_u(double u, double alpha);

AlphaExponent classify_alpha(double alpha);

/// Strictly increasing points in [0, 1).
class ScanGrid {
 public:
  explicit ScanGrid(std::vector<double> points);

  /// n points lo + i (1 - lo) / n, i = 0..n-1.
  static ScanGrid uniform(double lo, std::size_t n);

  const std::vector<double>& points() const noexcept { return points_; }
  double spacing() const noexcept { return spacing_; }

 private:
  std::vector<double> points_;
  double spacing_;
};

/// Lower end of derivative grids; dh_alpha_du carries a 1/u factor.
inline constexpr double kGridLowerCutoff = 1e-6;
inline constexpr double kMonotonicityTolerance = 1e-10;
inline constexpr double kTriangleTolerance = 1e-12;

struct MonotonicityReport {
  double alpha = 0.0;
  bool nonincreasing = true;
  double worst_point = 0.0;
  double worst_derivative = 0.0;
};

/// Evaluates dh_alpha_du over the grid and reports the largest value.
MonotonicityReport monotonicity_scan(double alpha, const ScanGrid& grid);

struct TriangleCounterexample {
  ProbDist p;
  ProbDist q;
  ProbDist r;
  double alpha;
  double lhs;  ///< d_alpha(p, q)
  double rhs;  ///< d_alpha(p, r) + d_alpha(r, q)
  double gap;  ///< lhs - rhs
};

struct TriangleSearchOptions {
  double alpha = 0.5;
  std::size_t dim = 3;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Tests the fixed probe triple (delta, midpoint, opposite delta) first, then
/// `samples` uniform simplex triples. Returns the first violation found (by
/// sample index) or nullopt, which means only that none was found.
std::optional<TriangleCounterexample> triangle_search(const TriangleSearchOptions& opts);

/// Checks the three triangle inequalities of one triple; the returned
/// counterexample is relabeled so that (p, q) is the violated side.
std::optional<TriangleCounterexample> check_triangle(const ProbDist& a, const ProbDist& b,
                                                     const ProbDist& c, double alpha,
                                                     double tolerance = kTriangleTolerance);

enum class Figure { DerivativeSurface, DeltaCurves };

struct FigureRow {
  double u;
  double alpha;
  double value;
};

struct FigureParams {
  std::size_t u_points = 200;
  /// DerivativeSurface: alpha_j = 0.5 j / alpha_points, j = 1..alpha_points.
  std::size_t alpha_points = 50;
  /// DeltaCurves: alpha = 1/2 + delta for each entry.
  std::vector<double> delta_alphas{0.01, 0.1, 0.2, 0.3, 0.4};
};

/// DerivativeSurface rows hold -dh_alpha/du on u in [1e-6, 1); DeltaCurves
/// rows hold Delta(u) on u in [0, 1).
std::vector<FigureRow> figure_data(Figure which, const FigureParams& params);

/// Fraction of grid points where Delta(u) < 0.
double delta_negative_fraction(double alpha, const ScanGrid& grid);

}  // namespace jsdm::metric
