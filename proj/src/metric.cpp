#include "jsdm/metric.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <numbers>

#include "jsdm/errors.hpp"
#include "jsdm/parallel.hpp"
#include "jsdm/rng.hpp"

namespace jsdm::metric {

namespace {

// Near u = 1, Delta(u) and the sign term lose every significant digit to
// cancellation (at alpha = 1/2, Delta ~ 0.0104 (1-u)^3). With x = (1-u)/2:
//   ln(2/(1+u))      = D(x) = sum x^k / k
//   ln((1+u)/(2u))   = N(x) = sum (2^k - 1) x^k / k
//   M(x) = (1-2x)^alpha D(x) - (1-2x) N(x) = ln2 * sign_term = D(x) Delta(u)
// and M is summed as a power series whose coefficients are formed exactly
// enough that the leading surviving order keeps full relative precision.
constexpr double kSeriesCutoff = 0.1;  // in x, i.e. u > 0.8
constexpr std::size_t kSeriesTerms = 48;

class CancellationSeries {
 public:
  explicit CancellationSeries(double alpha) {
    std::array<double, kSeriesTerms + 1> binom{};  // binom(alpha, j) (-2)^j
    binom[0] = 1.0;
    for (std::size_t j = 1; j <= kSeriesTerms; ++j) {
      const double jd = static_cast<double>(j);
      binom[j] = binom[j - 1] * (alpha - jd + 1.0) / jd * -2.0;
    }
    auto n_coeff = [](std::size_t k) {
      return k == 0 ? 0.0 : (std::ldexp(1.0, static_cast<int>(k)) - 1.0) / static_cast<double>(k);
    };
    coeff_[0] = 0.0;
    for (std::size_t k = 1; k <= kSeriesTerms; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < k; ++j) s += binom[j] / static_cast<double>(k - j);
      coeff_[k] = s - (n_coeff(k) - 2.0 * n_coeff(k - 1));
    }
  }

  double m(double x) const {
    double s = 0.0;
    for (std::size_t k = kSeriesTerms; k >= 1; --k) s = s * x + coeff_[k];
    return s * x;
  }

 private:
  std::array<double, kSeriesTerms + 1> coeff_{};
};

void require_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0) throw DomainError("alpha must be positive");
}

// 1 - u^alpha without cancellation for u near 1.
double one_minus_pow(double u, double alpha) { return -std::expm1(alpha * std::log(u)); }

double delta_direct(double u, double alpha) {
  return std::pow(u, alpha) -
         u * std::log1p((1.0 - u) / (2.0 * u)) / std::log1p((1.0 - u) / (1.0 + u));
}

double sign_term_direct(double u, double alpha) {
  return u * std::log2(u) + (u + std::pow(u, alpha)) * (1.0 - std::log2(1.0 + u));
}

// Builds the series on first use; scans share one instance per alpha.
class LazySeries {
 public:
  explicit LazySeries(double alpha) : alpha_(alpha) {}
  double alpha() const noexcept { return alpha_; }
  const CancellationSeries& get() {
    if (!series_) series_.emplace(alpha_);
    return *series_;
  }

 private:
  double alpha_;
  std::optional<CancellationSeries> series_;
};

double delta_with(LazySeries& series, double u) {
  if (u == 0.0) return 0.0;
  const double x = 0.5 * (1.0 - u);
  if (x < kSeriesCutoff) return series.get().m(x) / -std::log1p(-x);
  return delta_direct(u, series.alpha());
}

double sign_term_with(LazySeries& series, double u) {
  const double x = 0.5 * (1.0 - u);
  if (x < kSeriesCutoff) return series.get().m(x) / std::numbers::ln2;
  return sign_term_direct(u, series.alpha());
}

double dh_with(LazySeries& series, double u) {
  const double alpha = series.alpha();
  const double f = f_js(u);
  return -std::pow(one_minus_pow(u, alpha), 1.0 / alpha - 1.0) * sign_term_with(series, u) /
         (2.0 * u * f * f);
}

void require_open_unit(double u, const char* what) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError(std::string(what) + " requires u in (0, 1)");
}

void require_half_open_unit(double u, const char* what) {
  if (!(u >= 0.0 && u < 1.0)) throw DomainError(std::string(what) + " requires u in [0, 1)");
}

ProbDist embed(std::initializer_list<double> head, std::size_t dim) {
  std::vector<double> v(dim, 0.0);
  std::copy(head.begin(), head.end(), v.begin());
  return ProbDist(std::move(v));
}

}  // namespace

double h_alpha(double u, double alpha) {
  require_half_open_unit(u, "h_alpha");
  require_alpha(alpha);
  if (u == 0.0) return 1.0 / f_js(0.0);
  return std::pow(one_minus_pow(u, alpha), 1.0 / alpha) / f_js(u);
}

double dh_alpha_du(double u, double alpha) {
  require_open_unit(u, "dh_alpha_du");
  require_alpha(alpha);
  LazySeries series(alpha);
  return dh_with(series, u);
}

double sign_term(double u, double alpha) {
  require_open_unit(u, "sign_term");
  require_alpha(alpha);
  LazySeries series(alpha);
  return sign_term_with(series, u);
}

double delta_u(double u, double alpha) {
  require_half_open_unit(u, "delta_u");
  require_alpha(alpha);
  LazySeries series(alpha);
  return delta_with(series, u);
}

AlphaExponent classify_alpha(double alpha) { return AlphaExponent(alpha); }

ScanGrid::ScanGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw DomainError("scan grid is empty");
  spacing_ = 1.0 - points_.back();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const double u = points_[i];
    if (!(u >= 0.0 && u < 1.0)) throw DomainError("scan grid points must lie in [0, 1)");
    if (i > 0) {
      const double gap = u - points_[i - 1];
      if (!(gap > 0.0)) throw DomainError("scan grid must be strictly increasing");
      spacing_ = std::min(spacing_, gap);
    }
  }
}

ScanGrid ScanGrid::uniform(double lo, std::size_t n) {
  if (n == 0) throw DomainError("scan grid needs at least one point");
  if (!(lo >= 0.0 && lo < 1.0)) throw DomainError("grid lower bound must lie in [0, 1)");
  std::vector<double> pts(n);
  const double step = (1.0 - lo) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = lo + static_cast<double>(i) * step;
  return ScanGrid(std::move(pts));
}

MonotonicityReport monotonicity_scan(double alpha, const ScanGrid& grid) {
  require_alpha(alpha);
  if (grid.points().front() <= 0.0) throw DomainError("monotonicity scan grid must exclude 0");
  LazySeries series(alpha);
  MonotonicityReport report;
  report.alpha = alpha;
  report.worst_derivative = -std::numeric_limits<double>::infinity();
  for (double u : grid.points()) {
    const double d = dh_with(series, u);
    if (d > report.worst_derivative) {
      report.worst_derivative = d;
      report.worst_point = u;
    }
  }
  report.nonincreasing = report.worst_derivative <= kMonotonicityTolerance;
  return report;
}

double delta_negative_fraction(double alpha, const ScanGrid& grid) {
  require_alpha(alpha);
  LazySeries series(alpha);
  std::size_t negative = 0;
  for (double u : grid.points()) {
    if (delta_with(series, u) < 0.0) ++negative;
  }
  return static_cast<double>(negative) / static_cast<double>(grid.points().size());
}

std::optional<TriangleCounterexample> check_triangle(const ProbDist& a, const ProbDist& b,
                                                     const ProbDist& c, double alpha,
                                                     double tolerance) {
  const AlphaExponent exp(alpha);
  const double ab = d_alpha(a, b, exp);
  const double ac = d_alpha(a, c, exp);
  const double bc = d_alpha(b, c, exp);
  auto make = [&](const ProbDist& p, const ProbDist& q, const ProbDist& r, double lhs,
                  double rhs) {
    return TriangleCounterexample{p, q, r, alpha, lhs, rhs, lhs - rhs};
  };
  if (ab > ac + bc + tolerance) return make(a, b, c, ab, ac + bc);
  if (ac > ab + bc + tolerance) return make(a, c, b, ac, ab + bc);
  if (bc > ab + ac + tolerance) return make(b, c, a, bc, ab + ac);
  return std::nullopt;
}

std::optional<TriangleCounterexample> triangle_search(const TriangleSearchOptions& opts) {
  require_alpha(opts.alpha);
  if (opts.dim < 2) throw DomainError("triangle search needs dim >= 2");
  if (opts.samples < 1) throw DomainError("triangle search needs samples >= 1");

  const ProbDist p = embed({1.0, 0.0}, opts.dim);
  const ProbDist r = embed({0.5, 0.5}, opts.dim);
  const ProbDist q = embed({0.0, 1.0}, opts.dim);
  if (auto probe = check_triangle(p, q, r, opts.alpha)) return probe;

  // Fixed-size blocks with their own substreams keep the result independent
  // of the worker count.
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (opts.samples + kBlock - 1) / kBlock;
  std::vector<std::optional<TriangleCounterexample>> found(blocks);
  std::atomic<std::size_t> first_hit{blocks};
  parallel_for(blocks, opts.threads, [&](std::size_t b) {
    if (b > first_hit.load(std::memory_order_relaxed)) return;
    Rng rng = Rng::substream(opts.seed, b);
    const std::size_t n = std::min(kBlock, opts.samples - b * kBlock);
    for (std::size_t i = 0; i < n; ++i) {
      ProbDist x(rng.simplex(opts.dim));
      ProbDist y(rng.simplex(opts.dim));
      ProbDist z(rng.simplex(opts.dim));
      if (auto hit = check_triangle(x, y, z, opts.alpha)) {
        found[b] = std::move(hit);
        std::size_t cur = first_hit.load();
        while (b < cur && !first_hit.compare_exchange_weak(cur, b)) {
        }
        return;
      }
    }
  });
  for (auto& f : found) {
    if (f) return std::move(f);
  }
  return std::nullopt;
}

std::vector<FigureRow> figure_data(Figure which, const FigureParams& params) {
  std::vector<FigureRow> rows;
  if (which == Figure::DerivativeSurface) {
    if (params.alpha_points == 0) throw DomainError("alpha_points must be positive");
    const ScanGrid grid = ScanGrid::uniform(kGridLowerCutoff, params.u_points);
    rows.reserve(params.alpha_points * params.u_points);
    for (std::size_t j = 1; j <= params.alpha_points; ++j) {
      const double alpha = 0.5 * static_cast<double>(j) / static_cast<double>(params.alpha_points);
      LazySeries series(alpha);
      for (double u : grid.points()) rows.push_back({u, alpha, -dh_with(series, u)});
    }
  } else {
    const ScanGrid grid = ScanGrid::uniform(0.0, params.u_points);
    rows.reserve(params.delta_alphas.size() * params.u_points);
    for (double delta : params.delta_alphas) {
      const double alpha = 0.5 + delta;
      require_alpha(alpha);
      LazySeries series(alpha);
      for (double u : grid.points()) rows.push_back({u, alpha, delta_with(series, u)});
    }
  }
  return rows;
}

}  // namespace jsdm::metric
