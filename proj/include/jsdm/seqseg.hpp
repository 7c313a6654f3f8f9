#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jsdm/prob.hpp"

namespace jsdm::seqseg {

/// Finite sequence of symbol indices over an ordered alphabet of one-character
/// labels. Length is at least 2 and every index is below the alphabet size.
class SymbolSequence {
 public:
  SymbolSequence(std::vector<std::uint32_t> symbols, std::string alphabet);

  /// Parses one character per symbol. With no alphabet given, the sorted set
  /// of characters in `text` is used.
  static SymbolSequence from_text(std::string_view text,
                                  std::optional<std::string_view> alphabet = std::nullopt);

  std::size_t length() const noexcept { return symbols_.size(); }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
  const std::vector<std::uint32_t>& symbols() const noexcept { return symbols_; }
  const std::string& alphabet() const noexcept { return alphabet_; }

  std::string to_text() const;

  SymbolSequence reversed() const;

  friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;

 private:
  std::vector<std::uint32_t> symbols_;
  std::string alphabet_;
};

/// Relative symbol frequencies over [from, to).
ProbDist empirical_dist(const SymbolSequence& seq, std::size_t from, std::size_t to);

/// Statistic at cursor ell: left = symbols [0, ell), right = [ell, L).
struct CursorStat {
  std::size_t ell;
  ProbDist left_freq;
  ProbDist right_freq;
  double value;
};

/// d'_alpha(ell) = [JSD_(ell/L, (L-ell)/L)(left, right)]^alpha, in bits.
CursorStat d_prime(const SymbolSequence& seq, std::size_t ell, double alpha);

struct SignificanceParams {
  SignificanceParams(std::size_t length, std::size_t alphabet_size, std::size_t subsequences = 2);

  std::size_t length;
  std::size_t alphabet_size;
  std::size_t subsequences;
  std::size_t dof;  ///< (N - 1)(m - 1)
};

/// s_alpha(x) ~ P(nu/2, L ln2 x^(1/alpha)), the regularized lower incomplete
/// gamma. The value depends on x only through x^(1/alpha), the underlying JSD.
double significance(double x, double alpha, const SignificanceParams& params);

inline constexpr std::size_t kDefaultMargin = 10;
inline constexpr std::size_t kDefaultMinSegLen = 20;

/// Cursor maximizing d'_alpha over ell in [margin, L - margin] (margin is
/// raised to 1 if zero). Ties go to the smallest ell.
CursorStat max_scan(const SymbolSequence& seq, double alpha, std::size_t margin = kDefaultMargin);

/// d'_alpha at every ell in [margin, L - margin].
struct Profile {
  std::size_t first_ell;
  std::vector<double> values;
};

Profile profile(const SymbolSequence& seq, double alpha, std::size_t margin = kDefaultMargin);

struct Cut {
  std::size_t position;
  double d_prime_max;
  double significance;
};

struct SegmentationResult {
  std::vector<Cut> cuts;  ///< sorted by position
  double threshold;
  double alpha;
  std::size_t min_seg_len;
  std::size_t margin;
};

/// Recursive segmentation at significance threshold s0. Each subsequence is
/// scanned with its own length as L and m = 2; a cut is kept when its
/// significance exceeds s0 and both halves are then processed. Segments
/// shorter than 2 * max(min_seg_len, margin) are not split.
SegmentationResult recursive_segment(const SymbolSequence& seq, double alpha, double s0,
                                     std::size_t min_seg_len = kDefaultMinSegLen,
                                     std::size_t margin = kDefaultMargin);

struct Block {
  std::size_t start;
  ProbDist probs;
};

struct EnsembleSpec {
  std::size_t count;
  std::size_t length;
  std::vector<Block> blocks;  ///< must tile [0, length), first start = 0
};

/// Sequence i is drawn from Rng::substream(seed, i), so the output does not
/// depend on `threads`.
std::vector<SymbolSequence> generate_ensemble(const EnsembleSpec& spec, std::uint64_t seed,
                                              unsigned threads = 1);

struct ProfilePoint {
  std::size_t ell;
  double mean;
};

/// Mean d'_alpha over the ensemble at each ell in [margin, L - margin].
std::vector<ProfilePoint> average_profile(const std::vector<SymbolSequence>& ensemble,
                                          double alpha, std::size_t margin = kDefaultMargin,
                                          unsigned threads = 1);

/// Mean over the ensemble of the maximal d'_alpha of each sequence.
double mean_max_dprime(const std::vector<SymbolSequence>& ensemble, double alpha,
                       std::size_t margin = kDefaultMargin, unsigned threads = 1);

}  // namespace jsdm::seqseg
