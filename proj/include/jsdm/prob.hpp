#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace jsdm {

/// Finite discrete probability distribution.
///
/// Construction rejects entries below -1e-12 or a total that differs from 1
/// by more than 1e-9. Entries in [-1e-12, 0) are clamped to zero and the
/// vector is renormalized so that downstream sums are exact to roundoff.
class ProbDist {
 public:
  explicit ProbDist(std::vector<double> probs);
  ProbDist(std::initializer_list<double> probs) : ProbDist(std::vector<double>(probs)) {}

  /// Builds a distribution from nonnegative counts. Throws EmptyWindow when
  /// all counts are zero.
  static ProbDist from_counts(std::span<const std::size_t> counts);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> values() const noexcept { return probs_; }

  friend bool operator==(const ProbDist&, const ProbDist&) = default;

 private:
  struct Trusted {};
  ProbDist(std::vector<double> probs, Trusted) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

/// Mixture weights (pi1, pi2) with pi1 + pi2 = 1.
class WeightPair {
 public:
  WeightPair(double pi1, double pi2);
  static WeightPair equal() { return {0.5, 0.5}; }

  double first() const noexcept { return pi1_; }
  double second() const noexcept { return pi2_; }

 private:
  double pi1_;
  double pi2_;
};

/// Classification of an exponent alpha for the family [D_JS]^alpha.
enum class AlphaClass { Metric, NotMetric, ConjecturedNotMetric };

const char* to_string(AlphaClass c) noexcept;

/// Positive exponent together with its metric classification:
/// Metric on (0, 1/2], ConjecturedNotMetric on (1/2, 1), NotMetric on [1, inf).
class AlphaExponent {
 public:
  explicit AlphaExponent(double value);

  double value() const noexcept { return value_; }
  AlphaClass classification() const noexcept { return class_; }

 private:
  double value_;
  AlphaClass class_;
};

/// Convex generator f of a Csiszar divergence.
///
/// `value_at_0` is f(0) and `conj_at_0` is f*(0) = lim_{u->0} u f(1/u); either
/// may be +infinity. Construction checks f(1) = 0 and midpoint convexity on a
/// fixed grid.
class FGenerator {
 public:
  FGenerator(std::function<double(double)> eval, double value_at_0, double conj_at_0,
             std::string label);

  double operator()(double u) const { return eval_(u); }
  double value_at_0() const noexcept { return value_at_0_; }
  double conj_at_0() const noexcept { return conj_at_0_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::function<double(double)> eval_;
  double value_at_0_;
  double conj_at_0_;
  std::string label_;
};

/// f_JS(u) = 1/2 [(1+u) + u log2 u - (1+u) log2(1+u)], the generator of the
/// Jensen-Shannon divergence. Evaluated through a positive series near u = 1
/// so the O((1-u)^2) value keeps full relative precision.
double f_js(double u);

/// f_KL(u) = u log2 u.
double f_kl(double u);

const FGenerator& js_generator();
const FGenerator& kl_generator();

/// Shannon entropy in bits, 0 log 0 = 0.
double shannon_entropy(const ProbDist& p);

/// Kullback-Leibler divergence in bits. Throws AbsoluteContinuityViolation
/// if some q_i = 0 while p_i > 0.
double kl_divergence(const ProbDist& p, const ProbDist& q);

/// Csiszar f-divergence sum_i q_i f(p_i/q_i). Terms with q_i = 0 contribute
/// p_i f*(0); terms with p_i = 0 contribute q_i f(0). Throws Divergent when
/// the result is +infinity.
double f_divergence(const ProbDist& p, const ProbDist& q, const FGenerator& f);

/// Jensen-Shannon divergence H((P+Q)/2) - (H(P) + H(Q))/2 in bits, in [0, 1].
double jsd(const ProbDist& p, const ProbDist& q);

/// Weighted form H(pi1 P + pi2 Q) - pi1 H(P) - pi2 H(Q).
double jsd_weighted(const ProbDist& p, const ProbDist& q, const WeightPair& w);

/// d_alpha(P, Q) = [D_JS(P, Q)]^alpha.
double d_alpha(const ProbDist& p, const ProbDist& q, const AlphaExponent& a);

namespace detail {

// Span-level kernels shared with the segmentation scanner. Inputs are assumed
// valid distributions of equal size.
double entropy_bits(std::span<const double> p);
double jsd_weighted_raw(std::span<const double> p, std::span<const double> q, double pi1,
                        double pi2, std::span<double> scratch);

}  // namespace detail

}  // namespace jsdm
