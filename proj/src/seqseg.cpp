#include "jsdm/seqseg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "jsdm/errors.hpp"
#include "jsdm/parallel.hpp"
#include "jsdm/rng.hpp"
#include "jsdm/special.hpp"

namespace jsdm::seqseg {

namespace {

constexpr std::string_view kDefaultLabels = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";

void require_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0) throw DomainError("alpha must be positive");
}

// Weighted JSD (alpha = 1) at every cursor ell in [margin, n - margin] of the
// window seq[begin, begin + n). Arithmetic matches d_prime exactly.
std::vector<double> raw_profile(const SymbolSequence& seq, std::size_t begin, std::size_t n,
                                std::size_t margin) {
  const std::size_t k = seq.alphabet_size();
  const auto& sym = seq.symbols();
  std::vector<std::size_t> total(k, 0), left(k, 0);
  for (std::size_t i = begin; i < begin + n; ++i) ++total[sym[i]];

  std::vector<double> f(k), g(k), scratch(k);
  std::vector<double> out;
  out.reserve(n - 2 * margin + 1);
  const double nd = static_cast<double>(n);
  for (std::size_t ell = 1; ell <= n - margin; ++ell) {
    ++left[sym[begin + ell - 1]];
    if (ell < margin) continue;
    const double nl = static_cast<double>(ell);
    const double nr = static_cast<double>(n - ell);
    for (std::size_t j = 0; j < k; ++j) {
      f[j] = static_cast<double>(left[j]) / nl;
      g[j] = static_cast<double>(total[j] - left[j]) / nr;
    }
    out.push_back(detail::jsd_weighted_raw(f, g, nl / nd, nr / nd, scratch));
  }
  return out;
}

std::size_t argmax_first(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::size_t effective_margin(std::size_t margin) { return std::max<std::size_t>(margin, 1); }

}  // namespace

SymbolSequence::SymbolSequence(std::vector<std::uint32_t> symbols, std::string alphabet)
    : symbols_(std::move(symbols)), alphabet_(std::move(alphabet)) {
  if (symbols_.size() < 2) throw SequenceTooShort("sequence needs at least 2 symbols");
  if (alphabet_.empty()) throw DomainError("alphabet is empty");
  std::string sorted = alphabet_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("alphabet labels must be distinct");
  }
  for (auto s : symbols_) {
    if (s >= alphabet_.size()) throw DomainError("symbol index outside the alphabet");
  }
}

SymbolSequence SymbolSequence::from_text(std::string_view text,
                                         std::optional<std::string_view> alphabet) {
  std::string labels;
  if (alphabet) {
    labels = std::string(*alphabet);
  } else {
    labels = std::string(text);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  }
  std::array<int, 256> index;
  index.fill(-1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    index[static_cast<unsigned char>(labels[i])] = static_cast<int>(i);
  }
  std::vector<std::uint32_t> symbols;
  symbols.reserve(text.size());
  for (char c : text) {
    const int id = index[static_cast<unsigned char>(c)];
    if (id < 0) throw ParseError(std::string("symbol '") + c + "' is not in the alphabet");
    symbols.push_back(static_cast<std::uint32_t>(id));
  }
  return SymbolSequence(std::move(symbols), std::move(labels));
}

std::string SymbolSequence::to_text() const {
  std::string s;
  s.reserve(symbols_.size());
  for (auto i : symbols_) s.push_back(alphabet_[i]);
  return s;
}

SymbolSequence SymbolSequence::reversed() const {
  return SymbolSequence(std::vector<std::uint32_t>(symbols_.rbegin(), symbols_.rend()), alphabet_);
}

ProbDist empirical_dist(const SymbolSequence& seq, std::size_t from, std::size_t to) {
  if (from == to) throw EmptyWindow("empty window");
  if (from > to || to > seq.length()) throw DomainError("window out of range");
  std::vector<std::size_t> counts(seq.alphabet_size(), 0);
  for (std::size_t i = from; i < to; ++i) ++counts[seq.symbols()[i]];
  return ProbDist::from_counts(counts);
}

CursorStat d_prime(const SymbolSequence& seq, std::size_t ell, double alpha) {
  require_alpha(alpha);
  const std::size_t n = seq.length();
  if (ell < 1 || ell > n - 1) throw DomainError("cursor must satisfy 1 <= ell <= L - 1");
  ProbDist left = empirical_dist(seq, 0, ell);
  ProbDist right = empirical_dist(seq, ell, n);
  const double nd = static_cast<double>(n);
  const WeightPair w(static_cast<double>(ell) / nd, static_cast<double>(n - ell) / nd);
  const double value = std::pow(jsd_weighted(left, right, w), alpha);
  return {ell, std::move(left), std::move(right), value};
}

SignificanceParams::SignificanceParams(std::size_t length, std::size_t alphabet_size,
                                       std::size_t subsequences)
    : length(length),
      alphabet_size(alphabet_size),
      subsequences(subsequences),
      dof(alphabet_size >= 1 && subsequences >= 1 ? (alphabet_size - 1) * (subsequences - 1) : 0) {
  if (subsequences < 2) throw DomainError("significance needs m >= 2");
  if (dof < 1) throw DomainError("significance needs (N-1)(m-1) >= 1");
  if (length < 1) throw DomainError("significance needs L >= 1");
}

double significance(double x, double alpha, const SignificanceParams& params) {
  require_alpha(alpha);
  if (std::isnan(x) || x < 0.0) throw DomainError("significance requires x >= 0");
  if (x == 0.0) return 0.0;
  const double z =
      static_cast<double>(params.length) * std::numbers::ln2 * std::pow(x, 1.0 / alpha);
  return std::clamp(special::gamma_p(0.5 * static_cast<double>(params.dof), z), 0.0, 1.0);
}

Profile profile(const SymbolSequence& seq, double alpha, std::size_t margin) {
  require_alpha(alpha);
  margin = effective_margin(margin);
  if (seq.length() < 2 * margin + 2) throw SequenceTooShort("sequence too short for margin");
  Profile p{margin, raw_profile(seq, 0, seq.length(), margin)};
  if (alpha != 1.0) {
    for (double& v : p.values) v = std::pow(v, alpha);
  }
  return p;
}

CursorStat max_scan(const SymbolSequence& seq, double alpha, std::size_t margin) {
  require_alpha(alpha);
  margin = effective_margin(margin);
  if (seq.length() < 2 * margin + 2) throw SequenceTooShort("sequence too short for margin");
  // The argmax is taken on the alpha = 1 statistic so that it is the same
  // cursor for every alpha.
  const auto raw = raw_profile(seq, 0, seq.length(), margin);
  return d_prime(seq, margin + argmax_first(raw), alpha);
}

SegmentationResult recursive_segment(const SymbolSequence& seq, double alpha, double s0,
                                     std::size_t min_seg_len, std::size_t margin) {
  require_alpha(alpha);
  if (!(s0 > 0.0 && s0 < 1.0)) throw DomainError("threshold must lie in (0, 1)");
  if (min_seg_len < 2) throw DomainError("min_seg_len must be at least 2");
  SegmentationResult result{{}, s0, alpha, min_seg_len, margin};
  const std::size_t edge = std::max(effective_margin(margin), min_seg_len);

  std::function<void(std::size_t, std::size_t)> split = [&](std::size_t begin, std::size_t n) {
    if (n < 2 * edge) return;
    const auto raw = raw_profile(seq, begin, n, edge);
    const std::size_t best = argmax_first(raw);
    const double value = std::pow(raw[best], alpha);
    const double sig = significance(value, alpha, SignificanceParams(n, seq.alphabet_size(), 2));
    if (!(sig > s0)) return;
    const std::size_t ell = edge + best;
    result.cuts.push_back({begin + ell, value, sig});
    split(begin, ell);
    split(begin + ell, n - ell);
  };
  split(0, seq.length());
  std::sort(result.cuts.begin(), result.cuts.end(),
            [](const Cut& a, const Cut& b) { return a.position < b.position; });
  return result;
}

std::vector<SymbolSequence> generate_ensemble(const EnsembleSpec& spec, std::uint64_t seed,
                                              unsigned threads) {
  if (spec.length < 2) throw DomainError("sequence length must be at least 2");
  if (spec.blocks.empty() || spec.blocks.front().start != 0) {
    throw DomainError("blocks must start at position 0");
  }
  const std::size_t k = spec.blocks.front().probs.size();
  if (k > kDefaultLabels.size()) throw DomainError("alphabet too large for default labels");
  std::vector<std::vector<double>> cdfs;
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const auto& block = spec.blocks[b];
    if (block.probs.size() != k) throw DimensionMismatch("blocks have different alphabet sizes");
    if (block.start >= spec.length) throw DomainError("block starts beyond the sequence");
    if (b > 0 && block.start <= spec.blocks[b - 1].start) {
      throw DomainError("block starts must be strictly increasing");
    }
    std::vector<double> cdf(k);
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) cdf[j] = (acc += block.probs[j]);
    cdfs.push_back(std::move(cdf));
  }
  const std::string alphabet(kDefaultLabels.substr(0, k));

  std::vector<std::optional<SymbolSequence>> out(spec.count);
  parallel_for(spec.count, threads, [&](std::size_t i) {
    Rng rng = Rng::substream(seed, i);
    std::vector<std::uint32_t> symbols(spec.length);
    std::size_t block = 0;
    for (std::size_t t = 0; t < spec.length; ++t) {
      while (block + 1 < spec.blocks.size() && spec.blocks[block + 1].start <= t) ++block;
      symbols[t] = static_cast<std::uint32_t>(rng.categorical(cdfs[block]));
    }
    out[i].emplace(std::move(symbols), alphabet);
  });
  std::vector<SymbolSequence> seqs;
  seqs.reserve(spec.count);
  for (auto& s : out) seqs.push_back(std::move(*s));
  return seqs;
}

std::vector<ProfilePoint> average_profile(const std::vector<SymbolSequence>& ensemble,
                                          double alpha, std::size_t margin, unsigned threads) {
  require_alpha(alpha);
  if (ensemble.empty()) throw DomainError("ensemble is empty");
  const std::size_t n = ensemble.front().length();
  for (const auto& s : ensemble) {
    if (s.length() != n) throw DimensionMismatch("ensemble sequences differ in length");
  }
  std::vector<Profile> profiles(ensemble.size());
  parallel_for(ensemble.size(), threads,
               [&](std::size_t i) { profiles[i] = profile(ensemble[i], alpha, margin); });
  // Summed in sequence order so the result is independent of `threads`.
  const Profile& first = profiles.front();
  std::vector<ProfilePoint> mean(first.values.size());
  for (std::size_t j = 0; j < mean.size(); ++j) {
    double acc = 0.0;
    for (const auto& p : profiles) acc += p.values[j];
    mean[j] = {first.first_ell + j, acc / static_cast<double>(profiles.size())};
  }
  return mean;
}

double mean_max_dprime(const std::vector<SymbolSequence>& ensemble, double alpha,
                       std::size_t margin, unsigned threads) {
  require_alpha(alpha);
  if (ensemble.empty()) throw DomainError("ensemble is empty");
  std::vector<double> maxima(ensemble.size());
  parallel_for(ensemble.size(), threads,
               [&](std::size_t i) { maxima[i] = max_scan(ensemble[i], alpha, margin).value; });
  double acc = 0.0;
  for (double m : maxima) acc += m;
  return acc / static_cast<double>(maxima.size());
}

}  // namespace jsdm::seqseg
