#include <gtest/gtest.h>

#include <cmath>
#include <iterator>

#include "fd_oracle.hpp"
#include "jsdm/errors.hpp"
#include "jsdm/metric.hpp"
#include "oracle_values.hpp"

using namespace jsdm;
using namespace jsdm::metric;

TEST(HAlpha, Examples) {
  for (double a : {0.1, 0.5, 1.0, 3.0}) EXPECT_EQ(h_alpha(0.0, a), 2.0);
  EXPECT_NEAR(h_alpha(0.5, 0.5), oracle::kHAlphaHalfHalf, 1e-13);
  EXPECT_LE(h_alpha(0.9, 0.5), h_alpha(0.8, 0.5));
  EXPECT_THROW(h_alpha(1.0, 0.5), DomainError);
  EXPECT_THROW(h_alpha(-0.1, 0.5), DomainError);
  EXPECT_THROW(h_alpha(0.5, 0.0), DomainError);
}

TEST(DhAlpha, OraclePoints) {
  for (const auto& row : oracle::kDhPoints) {
    double u = row[0], a = row[1], want = row[2];
    EXPECT_NEAR(dh_alpha_du(u, a), want, 1e-12 * std::max(1.0, std::abs(want))) << u << " " << a;
  }
}

TEST(DhAlpha, SignExamples) {
  EXPECT_LT(dh_alpha_du(0.5, 0.5), 0.0);
  bool positive = false;
  for (int i = 1; i < 1000 && !positive; ++i) positive = dh_alpha_du(i / 1000.0, 0.9) > 0.0;
  EXPECT_TRUE(positive);
  EXPECT_THROW(dh_alpha_du(0.0, 0.5), DomainError);
  EXPECT_THROW(dh_alpha_du(1.0, 0.5), DomainError);
}

TEST(DhAlpha, MatchesFiniteDifferenceOnGrid) {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      worst = std::max(worst, fdcheck::fd_relative_error(fdcheck::fd_grid_u(i), fdcheck::fd_grid_alpha(j)));
    }
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(SignTerm, Examples) {
  EXPECT_GT(sign_term(0.5, 0.5), 0.0);
  for (double a : {0.3, 0.5, 0.9}) EXPECT_NEAR(sign_term(1.0 - 1e-9, a), 0.0, 1e-12);
}

TEST(SignTerm, OppositeSignToDerivative) {
  for (double a : {0.1, 0.3, 0.5, 0.51, 0.7, 0.9, 1.0, 1.5}) {
    for (int i = 1; i < 1000; ++i) {
      double u = i / 1000.0;
      double s = sign_term(u, a);
      if (std::abs(s) <= 1e-12) continue;
      double d = dh_alpha_du(u, a);
      ASSERT_EQ(std::signbit(s), !std::signbit(d)) << u << " " << a;
    }
  }
}

TEST(DeltaU, Examples) {
  EXPECT_EQ(delta_u(0.0, 0.5), 0.0);
  EXPECT_NEAR(delta_u(0.5, 0.5), oracle::kDeltaHalfAlphaHalf, 1e-14);
  EXPECT_NEAR(delta_u(0.5, 0.7), oracle::kDeltaHalfAlpha07, 1e-14);
  EXPECT_THROW(delta_u(1.0, 0.5), DomainError);
}

TEST(DeltaU, OracleCurves) {
  struct Curve {
    double alpha;
    const double* values;
  };
  const Curve curves[] = {{0.5, oracle::kDeltaAlpha0_5},
                          {0.51, oracle::kDeltaAlpha0_51},
                          {0.7, oracle::kDeltaAlpha0_7}};
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < std::size(oracle::kDeltaUGrid); ++i) {
      double u = oracle::kDeltaUGrid[i];
      ASSERT_NEAR(delta_u(u, c.alpha), c.values[i], 1e-10) << u << " " << c.alpha;
    }
  }
}

TEST(DeltaU, NonNegativeAtHalf) {
  ScanGrid grid = ScanGrid::uniform(0.0, 10000);
  for (double u : grid.points()) ASSERT_GE(delta_u(u, 0.5), -1e-12) << u;
}

TEST(DeltaU, NegativeSomewhereAboveHalf) {
  ScanGrid grid = ScanGrid::uniform(0.0, 10000);
  for (double a : {0.7, 0.8, 0.9, 1.0, 2.0}) EXPECT_GT(delta_negative_fraction(a, grid), 0.0) << a;
}

TEST(ClassifyAlpha, Examples) {
  EXPECT_EQ(classify_alpha(0.5).classification(), AlphaClass::Metric);
  EXPECT_EQ(classify_alpha(1.0).classification(), AlphaClass::NotMetric);
  EXPECT_EQ(classify_alpha(0.75).classification(), AlphaClass::ConjecturedNotMetric);
  EXPECT_THROW(classify_alpha(0.0), DomainError);
  EXPECT_STREQ(to_string(AlphaClass::ConjecturedNotMetric), "ConjecturedNotMetric");
}

TEST(ScanGridTest, Validation) {
  EXPECT_THROW(ScanGrid({}), DomainError);
  EXPECT_THROW(ScanGrid({0.2, 0.1}), DomainError);
  EXPECT_THROW(ScanGrid({0.5, 1.0}), DomainError);
  ScanGrid g = ScanGrid::uniform(0.0, 4);
  EXPECT_EQ(g.points(), (std::vector<double>{0.0, 0.25, 0.5, 0.75}));
  EXPECT_DOUBLE_EQ(g.spacing(), 0.25);
}

TEST(Monotonicity, Examples) {
  ScanGrid grid = ScanGrid::uniform(kGridLowerCutoff, 10000);
  for (double a : {0.1, 0.2, 0.3, 0.4, 0.5}) EXPECT_TRUE(monotonicity_scan(a, grid).nonincreasing) << a;
  auto r = monotonicity_scan(0.8, grid);
  EXPECT_FALSE(r.nonincreasing);
  EXPECT_GT(r.worst_derivative, kMonotonicityTolerance);
  EXPECT_DOUBLE_EQ(r.worst_derivative, dh_alpha_du(r.worst_point, 0.8));
  EXPECT_THROW(monotonicity_scan(0.5, ScanGrid::uniform(0.0, 10)), DomainError);
}

TEST(Triangle, ProbeTriple) {
  ProbDist p{1, 0}, r{0.5, 0.5}, q{0, 1};
  auto c = check_triangle(p, q, r, 1.0);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->lhs, 1.0);
  EXPECT_NEAR(c->rhs, 2 * oracle::kJsdDeltaVsUniform, 1e-15);
  EXPECT_NEAR(c->gap, oracle::kProbeGapAlpha1, 1e-12);
  EXPECT_FALSE(check_triangle(p, q, r, 0.5).has_value());
}

TEST(Triangle, RelabelsViolatedSide) {
  // Violated side given as (a, c): the result must place it in (p, q).
  ProbDist a{1, 0}, b{0.5, 0.5}, c{0, 1};
  auto v = check_triangle(a, b, c, 2.0);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->r, b);
  EXPECT_GT(v->gap, kTriangleTolerance);
}

TEST(Triangle, SearchFindsProbeForLargeAlpha) {
  for (double a : {1.0, 1.5, 2.0}) {
    for (std::size_t dim : {2, 4}) {
      auto c = triangle_search({.alpha = a, .dim = dim, .samples = 10, .seed = 1});
      ASSERT_TRUE(c.has_value());
      EXPECT_EQ(c->p.size(), dim);
    }
  }
  auto c2 = triangle_search({.alpha = 2.0, .dim = 2, .samples = 1});
  EXPECT_NEAR(c2->gap, oracle::kProbeGapAlpha2, 1e-9);
}

TEST(Triangle, NoViolationInMetricRange) {
  for (double a : {0.25, 0.5}) {
    for (std::size_t dim : {2, 3, 5}) {
      auto c = triangle_search({.alpha = a, .dim = dim, .samples = 20000, .seed = 3});
      EXPECT_FALSE(c.has_value()) << a << " " << dim;
    }
  }
}

TEST(Triangle, SearchIsDeterministicAcrossThreads) {
  // alpha = 0.95 is inside the conjectured region; random triples there can
  // violate, which exercises the first-index reduction.
  TriangleSearchOptions o{.alpha = 0.95, .dim = 3, .samples = 20000, .seed = 9, .threads = 1};
  auto a = triangle_search(o);
  o.threads = 3;
  auto b = triangle_search(o);
  ASSERT_EQ(a.has_value(), b.has_value());
  if (a) {
    EXPECT_EQ(a->p, b->p);
    EXPECT_EQ(a->gap, b->gap);
  }
  EXPECT_THROW(triangle_search({.alpha = 0.5, .dim = 1}), DomainError);
  EXPECT_THROW(triangle_search({.alpha = 0.5, .samples = 0}), DomainError);
}

TEST(Figures, DerivativeSurfaceNonNegative) {
  auto rows = figure_data(Figure::DerivativeSurface, {.u_points = 100, .alpha_points = 20});
  EXPECT_EQ(rows.size(), 100u * 20u);
  for (const auto& r : rows) {
    ASSERT_GT(r.alpha, 0.0);
    ASSERT_LE(r.alpha, 0.5);
    ASSERT_GE(r.value, -1e-10) << r.u << " " << r.alpha;
  }
}

TEST(Figures, DeltaCurvesGrowWithDeltaAlpha) {
  FigureParams params;
  params.u_points = 10000;
  auto rows = figure_data(Figure::DeltaCurves, params);
  ASSERT_EQ(rows.size(), 5u * 10000u);
  std::vector<double> fractions;
  for (std::size_t k = 0; k < 5; ++k) {
    std::size_t neg = 0;
    for (std::size_t i = 0; i < 10000; ++i) neg += rows[k * 10000 + i].value < 0.0;
    fractions.push_back(neg / 10000.0);
  }
  EXPECT_GT(fractions[0], 0.0);
  for (std::size_t k = 1; k < fractions.size(); ++k) EXPECT_GE(fractions[k], fractions[k - 1]);
  EXPECT_GT(fractions[2], 0.9);
}
