#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jsdm/prob.hpp"
#include "jsdm/seqseg.hpp"

namespace jsdm::io {

/// 15 significant digits (%.15g); integral values keep a trailing ".0".
std::string format_number(double x);

/// x rounded to 15 significant digits, for JSON emitters that print the
/// shortest round-trip representation.
double round15(double x);

enum class DistFormat { Text, Json };

struct ParsedDistributions {
  std::vector<ProbDist> dists;
  DistFormat format;
};

/// Text: one distribution per line, comma-separated decimals; blank lines and
/// lines starting with '#' are skipped. JSON: an array of arrays.
ParsedDistributions parse_distributions(std::string_view input);

/// Comma-separated decimals, e.g. "0.5,0.5".
std::vector<double> parse_number_list(std::string_view s);

/// Emits rows of numbers in the given format: comma-separated lines, or a JSON
/// array of arrays.
std::string format_rows(const std::vector<std::vector<double>>& rows, DistFormat format);

/// One sequence per non-empty line, one character per symbol. Without an
/// explicit alphabet the sorted set of characters of the whole file is used.
std::vector<seqseg::SymbolSequence> parse_sequences(
    std::string_view input, std::optional<std::string_view> alphabet = std::nullopt);

/// "0.8,0.2@0;0.2,0.8@500" -> blocks starting at 0 and 500.
std::vector<seqseg::Block> parse_blocks(std::string_view spec);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace jsdm::io
