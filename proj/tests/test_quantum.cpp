#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "jsdm/errors.hpp"
#include "jsdm/quantum.hpp"
#include "jsdm/rng.hpp"
#include "oracle_values.hpp"

using namespace jsdm;
using namespace jsdm::quantum;
using cd = std::complex<double>;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Vec3 random_unit(Rng& rng) {
  double z = 1.0 - 2.0 * rng.uniform();
  double phi = 2.0 * std::numbers::pi * rng.uniform();
  double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

Vec3 random_ball(Rng& rng) {
  Vec3 n = random_unit(rng);
  double r = std::cbrt(rng.uniform());
  return {r * n[0], r * n[1], r * n[2]};
}

// Random SU(2) element from a unit quaternion.
Matrix random_unitary(Rng& rng) {
  double q[4];
  double norm = 0.0;
  for (double& x : q) {
    x = rng.exponential() * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (double& x : q) x /= norm;
  Matrix u(2, 2);
  u << cd(q[0], q[3]), cd(q[2], q[1]), cd(-q[2], q[1]), cd(q[0], -q[3]);
  return u;
}

}  // namespace

TEST(DensityMatrixTest, Validation) {
  EXPECT_NO_THROW(DensityMatrix(diag2(0.7, 0.3)));
  EXPECT_THROW(DensityMatrix(diag2(0.7, 0.4)), InvalidState);
  EXPECT_THROW(DensityMatrix(diag2(1.2, -0.2)), InvalidState);
  Matrix nh = diag2(0.5, 0.5);
  nh(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{nh}, InvalidState);
  EXPECT_THROW(DensityMatrix(Matrix::Identity(5, 5) / 5.0), UnsupportedDimension);
  EXPECT_THROW(DensityMatrix::from_bloch({1.0, 0.5, 0.0}), InvalidState);
}

TEST(DensityMatrixTest, BlochRoundTrip) {
  Vec3 r{0.3, -0.4, 0.5};
  auto b = DensityMatrix::from_bloch(r).bloch();
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(b[i], r[i], 1e-15);
  EXPECT_THROW(DensityMatrix(Matrix::Identity(3, 3) / 3.0).bloch(), UnsupportedDimension);
}

TEST(PovmTest, Examples) {
  auto z = Povm::projective_qubit({0, 0, 1});
  auto p = povm_probs(DensityMatrix(diag2(0.7, 0.3)), z);
  EXPECT_NEAR(p[0], 0.7, 1e-15);
  EXPECT_NEAR(p[1], 0.3, 1e-15);

  Povm trivial({Matrix::Identity(2, 2)});
  EXPECT_EQ(povm_probs(DensityMatrix(diag2(0.7, 0.3)), trivial), (ProbDist{1.0}));

  auto x = Povm::projective_qubit({1, 0, 0});
  auto q = povm_probs(DensityMatrix(diag2(1.0, 0.0)), x);
  EXPECT_NEAR(q[0], 0.5, 1e-15);
  EXPECT_NEAR(q[1], 0.5, 1e-15);
}

TEST(PovmTest, Validation) {
  EXPECT_THROW(Povm({}), InvalidPovm);
  EXPECT_THROW(Povm({diag2(1.0, 0.0)}), InvalidPovm);
  EXPECT_THROW(Povm({diag2(1.5, 0.5), diag2(-0.5, 0.5)}), InvalidPovm);
  EXPECT_THROW(Povm::projective_qubit({0, 0, 0}), DomainError);
  EXPECT_THROW(povm_probs(DensityMatrix(Matrix::Identity(3, 3) / 3.0), Povm::projective_qubit({0, 0, 1})),
               DimensionMismatch);
}

TEST(QjsdMax, Examples) {
  auto rho = DensityMatrix::from_bloch({0.2, 0.1, -0.3});
  EXPECT_EQ(qjsd_max(rho, rho).value, 0.0);

  auto zero = DensityMatrix(diag2(1.0, 0.0));
  auto one = DensityMatrix(diag2(0.0, 1.0));
  auto r = qjsd_max(zero, one);
  EXPECT_NEAR(r.value, 1.0, 1e-9);
  EXPECT_TRUE(r.converged);

  auto c = qjsd_max(DensityMatrix(diag2(0.8, 0.2)), DensityMatrix(diag2(0.2, 0.8)));
  EXPECT_NEAR(c.value, oracle::kJsdCommuting, 1e-6);
  EXPECT_NEAR(std::abs(c.direction[2]), 1.0, 1e-6);
}

TEST(QjsdMax, Errors) {
  auto q = DensityMatrix(diag2(0.5, 0.5));
  auto t = DensityMatrix(Matrix::Identity(3, 3) / 3.0);
  EXPECT_THROW(qjsd_max(q, t), DimensionMismatch);
  EXPECT_THROW(qjsd_max(t, t), UnsupportedDimension);
}

TEST(QjsdAlpha, Examples) {
  auto rho = DensityMatrix(diag2(0.8, 0.2));
  auto sigma = DensityMatrix(diag2(0.2, 0.8));
  EXPECT_EQ(qjsd_alpha(rho, rho, 0.3), 0.0);
  EXPECT_NEAR(qjsd_alpha(DensityMatrix(diag2(1, 0)), DensityMatrix(diag2(0, 1)), 0.3), 1.0, 1e-9);
  EXPECT_NEAR(qjsd_alpha(rho, sigma, 0.5), oracle::kSqrtJsdCommuting, 1e-6);
  EXPECT_THROW(qjsd_alpha(rho, sigma, 0.0), DomainError);
}

TEST(QjsdProperties, SymmetryAndBounds) {
  Rng rng(41);
  for (int i = 0; i < 30; ++i) {
    auto a = DensityMatrix::from_bloch(random_ball(rng));
    auto b = DensityMatrix::from_bloch(random_ball(rng));
    double ab = qjsd_max(a, b).value;
    double ba = qjsd_max(b, a).value;
    EXPECT_NEAR(ab, ba, 1e-8);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
  }
}

TEST(QjsdProperties, CommutingMatchesClassical) {
  Rng rng(42);
  for (int i = 0; i < 30; ++i) {
    double a = rng.uniform(), b = rng.uniform();
    double v = qjsd_max(DensityMatrix(diag2(a, 1 - a)), DensityMatrix(diag2(b, 1 - b))).value;
    EXPECT_NEAR(v, jsd(ProbDist{a, 1 - a}, ProbDist{b, 1 - b}), 1e-6);
  }
}

TEST(QjsdProperties, UnitaryCovariance) {
  Rng rng(43);
  for (int i = 0; i < 20; ++i) {
    auto a = DensityMatrix::from_bloch(random_ball(rng));
    auto b = DensityMatrix::from_bloch(random_ball(rng));
    Matrix u = random_unitary(rng);
    DensityMatrix ua(u * a.matrix() * u.adjoint());
    DensityMatrix ub(u * b.matrix() * u.adjoint());
    EXPECT_NEAR(qjsd_max(a, b).value, qjsd_max(ua, ub).value, 1e-6);
  }
}

TEST(QjsdProperties, TriangleSamplingReport) {
  // Evidence only: counts violations of the triangle inequality for the
  // square root of the measured divergence on random qubit triples.
  Rng rng(44);
  OptimizerConfig cfg{16, 32, 200, 1e-10};
  int violations = 0;
  for (int i = 0; i < 200; ++i) {
    auto a = DensityMatrix::from_bloch(random_ball(rng));
    auto b = DensityMatrix::from_bloch(random_ball(rng));
    auto c = DensityMatrix::from_bloch(random_ball(rng));
    double ab = qjsd_alpha(a, b, 0.5, cfg);
    double ac = qjsd_alpha(a, c, 0.5, cfg);
    double cb = qjsd_alpha(c, b, 0.5, cfg);
    violations += ab > ac + cb + 1e-6;
  }
  RecordProperty("triangle_violations", violations);
  EXPECT_EQ(violations, 0);
}
