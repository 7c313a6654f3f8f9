#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "jsdm/prob.hpp"

namespace jsdm::quantum {

using Matrix = Eigen::MatrixXcd;
using Vec3 = std::array<double, 3>;

inline constexpr double kStateTolerance = 1e-10;
inline constexpr std::size_t kMaxDim = 4;

/// Density matrix of dimension d <= 4: Hermitian, unit trace and positive
/// semidefinite, each within 1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);

  /// Qubit state (I + x X + y Y + z Z) / 2 with |(x, y, z)| <= 1.
  static DensityMatrix from_bloch(const Vec3& r);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }

  /// Bloch vector of a qubit state; throws UnsupportedDimension otherwise.
  Vec3 bloch() const;

 private:
  Matrix m_;
};

/// Positive operator-valued measure: PSD elements summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<Matrix> elements);

  /// Two-outcome projective qubit measurement {(I + n.sigma)/2, (I - n.sigma)/2}
  /// along the unit direction n.
  static Povm projective_qubit(const Vec3& direction);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(elements_.front().rows()); }
  std::size_t outcomes() const noexcept { return elements_.size(); }
  const std::vector<Matrix>& elements() const noexcept { return elements_; }

 private:
  std::vector<Matrix> elements_;
};

/// Outcome distribution (Tr(E_1 rho), ..., Tr(E_K rho)).
ProbDist povm_probs(const DensityMatrix& state, const Povm& povm);

struct OptimizerConfig {
  std::size_t theta_points = 64;
  std::size_t phi_points = 128;
  std::size_t refine_iters = 200;
  /// Refinement stops (converged) once the angular step falls below this.
  double min_step = 1e-10;
};

struct QJSDResult {
  double value;  ///< bits; a lower bound on the supremum over all POVMs
  Povm best_povm;
  Vec3 direction;
  std::size_t iterations;
  bool converged;
};

/// Maximizes JSD of the induced outcome distributions over two-outcome
/// projective qubit measurements: a theta x phi grid over Bloch directions,
/// then deterministic pattern search on the tangent plane. Throws
/// UnsupportedDimension for d != 2.
QJSDResult qjsd_max(const DensityMatrix& rho, const DensityMatrix& sigma,
                    const OptimizerConfig& config = {});

/// [qjsd_max(rho, sigma)]^alpha.
double qjsd_alpha(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha,
                  const OptimizerConfig& config = {});

}  // namespace jsdm::quantum
