#include "jsdm/quantum.hpp"

#include <cmath>
#include <numbers>

#include "jsdm/errors.hpp"

namespace jsdm::quantum {

namespace {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

Mat2 pauli_combination(const Vec3& n) {
  Mat2 m;
  m << cd(n[2], 0.0), cd(n[0], -n[1]), cd(n[0], n[1]), cd(-n[2], 0.0);
  return m;
}

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return {v[0] / n, v[1] / n, v[2] / n};
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

void require_hermitian(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw InvalidState(std::string(what) + " must be square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
    throw InvalidState(std::string(what) + " is not Hermitian");
  }
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// Outcome distribution of the projective measurement along n, without the
// validation that Povm construction performs.
ProbDist projective_probs(const Mat2& rho, const Vec3& n) {
  const Mat2 plus = 0.5 * (Mat2::Identity() + pauli_combination(n));
  const Mat2 minus = Mat2::Identity() - plus;
  double p = (plus * rho).trace().real();
  double q = (minus * rho).trace().real();
  p = std::max(p, 0.0);
  q = std::max(q, 0.0);
  const double total = p + q;
  return ProbDist({p / total, q / total});
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() == 0 || static_cast<std::size_t>(m_.rows()) > kMaxDim) {
    throw UnsupportedDimension("density matrices must have dimension 1..4");
  }
  require_hermitian(m_, "density matrix");
  const cd tr = m_.trace();
  if (std::abs(tr - cd(1.0, 0.0)) > kStateTolerance) throw InvalidState("trace is not 1");
  if (min_eigenvalue(m_) < -kStateTolerance) throw InvalidState("density matrix is not PSD");
}

DensityMatrix DensityMatrix::from_bloch(const Vec3& r) {
  for (double x : r) {
    if (!std::isfinite(x)) throw InvalidState("Bloch vector must be finite");
  }
  if (norm(r) > 1.0 + kStateTolerance) throw InvalidState("Bloch vector longer than 1");
  Matrix m = 0.5 * (Mat2::Identity() + pauli_combination(r));
  return DensityMatrix(std::move(m));
}

Vec3 DensityMatrix::bloch() const {
  if (dim() != 2) throw UnsupportedDimension("Bloch vectors are defined for qubits only");
  const cd off = m_(0, 1);
  return {2.0 * off.real(), -2.0 * off.imag(), (m_(0, 0) - m_(1, 1)).real()};
}

Povm::Povm(std::vector<Matrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidPovm("POVM needs at least one element");
  const auto d = elements_.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : elements_) {
    if (e.rows() != d || e.cols() != d) throw InvalidPovm("POVM elements differ in dimension");
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
      throw InvalidPovm("POVM element is not Hermitian");
    }
    if (min_eigenvalue(e) < -kStateTolerance) throw InvalidPovm("POVM element is not PSD");
    sum += e;
  }
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kStateTolerance) {
    throw InvalidPovm("POVM elements do not sum to the identity");
  }
}

Povm Povm::projective_qubit(const Vec3& direction) {
  const double len = norm(direction);
  if (!(len > 0.0) || !std::isfinite(len)) throw DomainError("direction must be nonzero");
  const Vec3 n = normalized(direction);
  const Mat2 plus = 0.5 * (Mat2::Identity() + pauli_combination(n));
  return Povm({Matrix(plus), Matrix(Mat2::Identity() - plus)});
}

ProbDist povm_probs(const DensityMatrix& state, const Povm& povm) {
  if (state.dim() != povm.dim()) {
    throw DimensionMismatch("state dimension " + std::to_string(state.dim()) +
                            " != POVM dimension " + std::to_string(povm.dim()));
  }
  std::vector<double> probs;
  probs.reserve(povm.outcomes());
  double total = 0.0;
  for (const auto& e : povm.elements()) {
    const cd t = (e * state.matrix()).trace();
    if (std::abs(t.imag()) > kStateTolerance || t.real() < -kStateTolerance) {
      throw InvalidState("outcome probability is not a nonnegative real");
    }
    probs.push_back(std::max(t.real(), 0.0));
    total += probs.back();
  }
  for (double& p : probs) p /= total;
  return ProbDist(std::move(probs));
}

QJSDResult qjsd_max(const DensityMatrix& rho, const DensityMatrix& sigma,
                    const OptimizerConfig& config) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("states differ in dimension");
  if (rho.dim() != 2) {
    throw UnsupportedDimension("measurement optimization supports qubits (d = 2) only");
  }
  if (config.theta_points < 2 || config.phi_points < 1) {
    throw DomainError("optimizer grid needs theta_points >= 2 and phi_points >= 1");
  }
  const Mat2 r = rho.matrix();
  const Mat2 s = sigma.matrix();
  auto objective = [&](const Vec3& n) {
    return jsd(projective_probs(r, n), projective_probs(s, n));
  };

  Vec3 best{0.0, 0.0, 1.0};
  double best_value = -1.0;
  const double dtheta = std::numbers::pi / static_cast<double>(config.theta_points - 1);
  for (std::size_t i = 0; i < config.theta_points; ++i) {
    const double theta = dtheta * static_cast<double>(i);
    const bool pole = i == 0 || i + 1 == config.theta_points;
    const std::size_t nphi = pole ? 1 : config.phi_points;
    for (std::size_t j = 0; j < nphi; ++j) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(config.phi_points);
      const Vec3 n{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                   std::cos(theta)};
      const double v = objective(n);
      if (v > best_value) {
        best_value = v;
        best = n;
      }
    }
  }

  // Pattern search on the tangent plane at the current direction, halving the
  // step whenever no axis move improves the objective.
  double step = dtheta;
  std::size_t iterations = 0;
  while (iterations < config.refine_iters && step > config.min_step) {
    ++iterations;
    const Vec3 axis = std::abs(best[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    const double along = axis[0] * best[0] + axis[1] * best[1] + axis[2] * best[2];
    const Vec3 t1 = normalized(
        {axis[0] - along * best[0], axis[1] - along * best[1], axis[2] - along * best[2]});
    const Vec3 t2 = cross(best, t1);
    bool moved = false;
    for (const auto& [a, b] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
      const Vec3 cand = normalized({best[0] + step * (a * t1[0] + b * t2[0]),
                                    best[1] + step * (a * t1[1] + b * t2[1]),
                                    best[2] + step * (a * t1[2] + b * t2[2])});
      const double v = objective(cand);
      if (v > best_value) {
        best_value = v;
        best = cand;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }

  return {std::clamp(best_value, 0.0, 1.0), Povm::projective_qubit(best), best, iterations,
          step <= config.min_step};
}

double qjsd_alpha(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha,
                  const OptimizerConfig& config) {
  const AlphaExponent a(alpha);
  return std::pow(qjsd_max(rho, sigma, config).value, a.value());
}

}  // namespace jsdm::quantum
