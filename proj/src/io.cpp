#include "jsdm/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jsdm/errors.hpp"

namespace jsdm::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view token) {
  const std::string t(trim(token));
  if (t.empty()) throw ParseError("empty number");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + t + "'");
  }
  if (used != t.size()) throw ParseError("not a number: '" + t + "'");
  return v;
}

std::size_t parse_size(std::string_view token) {
  const std::string t(trim(token));
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError("not a nonnegative integer: '" + t + "'");
  }
  return std::stoull(t);
}

std::vector<std::string_view> lines(std::string_view s) {
  std::vector<std::string_view> out;
  for (auto line : split(s, '\n')) {
    line = trim(line);
    if (!line.empty() && line.front() != '#') out.push_back(line);
  }
  return out;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  std::string s(buf);
  if (std::isfinite(x) && s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

double round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

std::vector<double> parse_number_list(std::string_view s) {
  std::vector<double> out;
  for (auto tok : split(trim(s), ',')) out.push_back(parse_double(tok));
  return out;
}

ParsedDistributions parse_distributions(std::string_view input) {
  const auto body = trim(input);
  ParsedDistributions parsed{{}, DistFormat::Text};
  if (!body.empty() && body.front() == '[') {
    parsed.format = DistFormat::Json;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("expected a JSON array of arrays");
    for (const auto& row : doc) {
      if (!row.is_array()) throw ParseError("expected a JSON array of arrays");
      std::vector<double> probs;
      for (const auto& v : row) {
        if (!v.is_number()) throw ParseError("distribution entries must be numbers");
        probs.push_back(v.get<double>());
      }
      parsed.dists.emplace_back(std::move(probs));
    }
  } else {
    for (auto line : lines(body)) parsed.dists.emplace_back(parse_number_list(line));
  }
  if (parsed.dists.empty()) throw ParseError("no distributions in input");
  return parsed;
}

std::string format_rows(const std::vector<std::vector<double>>& rows, DistFormat format) {
  std::string out;
  if (format == DistFormat::Json) {
    out += '[';
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out += i ? ",[" : "[";
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        if (j) out += ',';
        out += format_number(rows[i][j]);
      }
      out += ']';
    }
    out += "]\n";
    return out;
  }
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_number(row[j]);
    }
    out += '\n';
  }
  return out;
}

std::vector<seqseg::SymbolSequence> parse_sequences(std::string_view input,
                                                    std::optional<std::string_view> alphabet) {
  const auto rows = lines(input);
  if (rows.empty()) throw ParseError("no sequences in input");
  std::string labels;
  if (alphabet) {
    labels = std::string(*alphabet);
  } else {
    for (auto r : rows) labels.append(r);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  }
  std::vector<seqseg::SymbolSequence> out;
  out.reserve(rows.size());
  for (auto r : rows) out.push_back(seqseg::SymbolSequence::from_text(r, std::string_view(labels)));
  return out;
}

std::vector<seqseg::Block> parse_blocks(std::string_view spec) {
  std::vector<seqseg::Block> blocks;
  for (auto part : split(trim(spec), ';')) {
    part = trim(part);
    if (part.empty()) continue;
    const auto at = part.find('@');
    if (at == std::string_view::npos) throw ParseError("block needs 'probs@start'");
    blocks.push_back({parse_size(part.substr(at + 1)), ProbDist(parse_number_list(part.substr(0, at)))});
  }
  if (blocks.empty()) throw ParseError("no blocks given");
  return blocks;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
}

}  // namespace jsdm::io
