#include "jsdm/prob.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "jsdm/errors.hpp"

namespace jsdm {

namespace {

constexpr double kNegativeTolerance = 1e-12;
constexpr double kSumTolerance = 1e-9;

void require_same_size(const ProbDist& p, const ProbDist& q) {
  if (p.size() != q.size()) {
    throw DimensionMismatch("distributions have sizes " + std::to_string(p.size()) + " and " +
                            std::to_string(q.size()));
  }
}

// 2 ln2 f_JS(1 - e) = sum_{k>=2} (1 - 2^{1-k}) e^k / (k (k-1)); all terms are
// positive so the sum carries no cancellation.
constexpr std::size_t kFjsTerms = 64;

const std::array<double, kFjsTerms>& fjs_series() {
  static const auto coeffs = [] {
    std::array<double, kFjsTerms> c{};
    for (std::size_t k = 2; k < kFjsTerms; ++k) {
      const double kd = static_cast<double>(k);
      c[k] = (1.0 - std::ldexp(1.0, 1 - static_cast<int>(k))) / (kd * (kd - 1.0));
    }
    return c;
  }();
  return coeffs;
}

}  // namespace

ProbDist::ProbDist(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidDistribution("distribution must have at least one entry");
  bool clamped = false;
  for (double& x : probs_) {
    if (!std::isfinite(x)) throw InvalidDistribution("non-finite probability");
    if (x < -kNegativeTolerance) {
      throw InvalidDistribution("negative probability " + std::to_string(x));
    }
    if (x < 0.0) {
      x = 0.0;
      clamped = true;
    }
  }
  double total = 0.0;
  for (double x : probs_) total += x;
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InvalidDistribution("probabilities sum to " + std::to_string(total));
  }
  if (clamped) {
    for (double& x : probs_) x /= total;
  }
}

ProbDist ProbDist::from_counts(std::span<const std::size_t> counts) {
  if (counts.empty()) throw InvalidDistribution("no categories");
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw EmptyWindow("all counts are zero");
  std::vector<double> probs(counts.size());
  const double n = static_cast<double>(total);
  std::transform(counts.begin(), counts.end(), probs.begin(),
                 [n](std::size_t c) { return static_cast<double>(c) / n; });
  return ProbDist(std::move(probs), Trusted{});
}

WeightPair::WeightPair(double pi1, double pi2) : pi1_(pi1), pi2_(pi2) {
  const bool in_range = std::isfinite(pi1) && std::isfinite(pi2) && pi1 >= 0.0 && pi2 >= 0.0 &&
                        pi1 <= 1.0 && pi2 <= 1.0;
  if (!in_range || std::abs(pi1 + pi2 - 1.0) > 1e-12) {
    throw DomainError("weights must be nonnegative and sum to 1");
  }
}

const char* to_string(AlphaClass c) noexcept {
  switch (c) {
    case AlphaClass::Metric:
      return "Metric";
    case AlphaClass::NotMetric:
      return "NotMetric";
    case AlphaClass::ConjecturedNotMetric:
      return "ConjecturedNotMetric";
  }
  return "unknown";
}

AlphaExponent::AlphaExponent(double value) : value_(value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw DomainError("alpha must be a positive finite number");
  }
  if (value <= 0.5) {
    class_ = AlphaClass::Metric;
  } else if (value >= 1.0) {
    class_ = AlphaClass::NotMetric;
  } else {
    class_ = AlphaClass::ConjecturedNotMetric;
  }
}

FGenerator::FGenerator(std::function<double(double)> eval, double value_at_0, double conj_at_0,
                       std::string label)
    : eval_(std::move(eval)),
      value_at_0_(value_at_0),
      conj_at_0_(conj_at_0),
      label_(std::move(label)) {
  if (!eval_) throw InvalidGenerator("empty generator function");
  if (std::abs(eval_(1.0)) > 1e-12) throw InvalidGenerator(label_ + ": f(1) != 0");
  static constexpr std::array<double, 9> grid{0.01, 0.1, 0.25, 0.5, 0.9, 1.0, 1.5, 3.0, 10.0};
  for (double a : grid) {
    for (double b : grid) {
      const double mid = eval_(0.5 * (a + b));
      const double chord = 0.5 * eval_(a) + 0.5 * eval_(b);
      if (mid > chord + 1e-12) throw InvalidGenerator(label_ + ": not convex on the check grid");
    }
  }
}

double f_js(double u) {
  if (std::isnan(u) || u < 0.0) throw DomainError("f_js requires u >= 0");
  if (u == 0.0) return 0.5;
  if (u > 1.0) {
    if (std::isinf(u)) return u;
    return u * f_js(1.0 / u);
  }
  const double e = 1.0 - u;
  if (e < 0.5) {
    const auto& c = fjs_series();
    double s = 0.0;
    for (std::size_t k = kFjsTerms - 1; k >= 2; --k) s = s * e + c[k];
    return s * e * e / (2.0 * std::numbers::ln2);
  }
  return 0.5 * (u * std::log2(2.0 * u / (1.0 + u)) + std::log2(2.0 / (1.0 + u)));
}

double f_kl(double u) {
  if (std::isnan(u) || u < 0.0) throw DomainError("f_kl requires u >= 0");
  return u == 0.0 ? 0.0 : u * std::log2(u);
}

const FGenerator& js_generator() {
  static const FGenerator g([](double u) { return f_js(u); }, 0.5, 0.5, "js");
  return g;
}

const FGenerator& kl_generator() {
  static const FGenerator g([](double u) { return f_kl(u); }, 0.0,
                            std::numeric_limits<double>::infinity(), "kl");
  return g;
}

namespace detail {

double entropy_bits(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double jsd_weighted_raw(std::span<const double> p, std::span<const double> q, double pi1,
                        double pi2, std::span<double> scratch) {
  for (std::size_t i = 0; i < p.size(); ++i) scratch[i] = pi1 * p[i] + pi2 * q[i];
  const double v = entropy_bits(scratch.first(p.size())) - pi1 * entropy_bits(p) -
                   pi2 * entropy_bits(q);
  return std::max(0.0, v);
}

}  // namespace detail

double shannon_entropy(const ProbDist& p) {
  return std::max(0.0, detail::entropy_bits(p.values()));
}

double kl_divergence(const ProbDist& p, const ProbDist& q) {
  require_same_size(p, q);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      throw AbsoluteContinuityViolation("q_" + std::to_string(i) + " = 0 while p_" +
                                        std::to_string(i) + " > 0");
    }
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return std::max(0.0, d);
}

double f_divergence(const ProbDist& p, const ProbDist& q, const FGenerator& f) {
  require_same_size(p, q);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i];
    const double qi = q[i];
    if (pi == 0.0 && qi == 0.0) continue;
    if (qi == 0.0) {
      d += pi * f.conj_at_0();
    } else if (pi == 0.0) {
      d += qi * f.value_at_0();
    } else {
      d += qi * f(pi / qi);
    }
  }
  if (std::isinf(d) || std::isnan(d)) {
    throw Divergent("f-divergence with generator '" + f.label() + "' is infinite");
  }
  return d;
}

double jsd(const ProbDist& p, const ProbDist& q) {
  require_same_size(p, q);
  std::vector<double> mid(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) mid[i] = (p[i] + q[i]) * 0.5;
  const double v =
      detail::entropy_bits(mid) - 0.5 * (detail::entropy_bits(p.values()) +
                                         detail::entropy_bits(q.values()));
  return std::clamp(v, 0.0, 1.0);
}

double jsd_weighted(const ProbDist& p, const ProbDist& q, const WeightPair& w) {
  require_same_size(p, q);
  std::vector<double> scratch(p.size());
  return detail::jsd_weighted_raw(p.values(), q.values(), w.first(), w.second(), scratch);
}

double d_alpha(const ProbDist& p, const ProbDist& q, const AlphaExponent& a) {
  return std::pow(jsd(p, q), a.value());
}

}  // namespace jsdm
