#include "jsdm/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "jsdm/errors.hpp"
#include "jsdm/io.hpp"
#include "jsdm/metric.hpp"
#include "jsdm/parallel.hpp"
#include "jsdm/prob.hpp"
#include "jsdm/quantum.hpp"
#include "jsdm/seqseg.hpp"

namespace jsdm::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Writes to `path`, or to `out` when no path was given.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    io::write_file(path, content);
  }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json json_number(double x) { return io::round15(x); }

ordered_json json_numbers(std::span<const double> xs) {
  auto arr = ordered_json::array();
  for (double x : xs) arr.push_back(json_number(x));
  return arr;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("JSDM_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("JSDM_SEED is not an unsigned integer");
  }
  return 0;
}

// ---------------------------------------------------------------- divergence

struct DivergenceArgs {
  std::string p, q, in, out;
  bool jsd = false, kl = false, entropy = false, f_js = false, f_kl = false;
  std::optional<double> weighted;
  std::optional<double> alpha;
};

void add_divergence(CLI::App& app, DivergenceArgs& a) {
  auto* cmd = app.add_subcommand("divergence", "Entropy and divergences between distributions");
  cmd->add_option("--p", a.p, "First distribution, e.g. 0.5,0.5");
  cmd->add_option("--q", a.q, "Second distribution");
  cmd->add_option("--in", a.in, "File of distributions (text lines or JSON array of arrays)");
  cmd->add_option("--out", a.out, "Output file (default: stdout)");
  auto* g = cmd->add_option_group("measure")->require_option(0, 1);
  g->add_flag("--jsd", a.jsd, "Jensen-Shannon divergence (default)");
  g->add_flag("--kl", a.kl, "Kullback-Leibler divergence");
  g->add_flag("--entropy", a.entropy, "Shannon entropy of each distribution");
  g->add_flag("--f-js", a.f_js, "Csiszar f-divergence with the JS generator");
  g->add_flag("--f-kl", a.f_kl, "Csiszar f-divergence with the KL generator");
  g->add_option("--weighted", a.weighted, "Weighted JSD with weights (pi1, 1 - pi1)");
  g->add_option("--alpha", a.alpha, "d_alpha = JSD^alpha");
}

int run_divergence(const DivergenceArgs& a, std::ostream& out) {
  std::function<double(const ProbDist&, const ProbDist&)> measure = jsdm::jsd;
  if (a.kl) measure = kl_divergence;
  if (a.f_js) measure = [](const ProbDist& p, const ProbDist& q) {
    return f_divergence(p, q, js_generator());
  };
  if (a.f_kl) measure = [](const ProbDist& p, const ProbDist& q) {
    return f_divergence(p, q, kl_generator());
  };
  if (a.weighted) {
    const WeightPair w(*a.weighted, 1.0 - *a.weighted);
    measure = [w](const ProbDist& p, const ProbDist& q) { return jsd_weighted(p, q, w); };
  }
  if (a.alpha) {
    const AlphaExponent e(*a.alpha);
    measure = [e](const ProbDist& p, const ProbDist& q) { return d_alpha(p, q, e); };
  }

  if (!a.in.empty()) {
    if (!a.p.empty() || !a.q.empty()) throw UsageError("--in cannot be combined with --p/--q");
    const auto parsed = io::parse_distributions(io::read_file(a.in));
    std::vector<std::vector<double>> rows;
    for (const auto& p : parsed.dists) {
      if (a.entropy) {
        rows.push_back({shannon_entropy(p)});
        continue;
      }
      std::vector<double> row;
      for (const auto& q : parsed.dists) row.push_back(measure(p, q));
      rows.push_back(std::move(row));
    }
    emit(a.out, io::format_rows(rows, parsed.format), out);
    return 0;
  }

  if (a.p.empty()) throw UsageError("--p (or --in) is required");
  const ProbDist p(io::parse_number_list(a.p));
  double value = 0.0;
  if (a.entropy) {
    if (!a.q.empty()) throw UsageError("--entropy takes a single distribution");
    value = shannon_entropy(p);
  } else {
    if (a.q.empty()) throw UsageError("--q is required");
    value = measure(p, ProbDist(io::parse_number_list(a.q)));
  }
  emit(a.out, io::format_number(value) + "\n", out);
  return 0;
}

// --------------------------------------------------------------- metric-scan

struct MetricArgs {
  std::optional<double> alpha;
  std::size_t grid_points = 10000;
  std::size_t samples = 10000;
  std::size_t dim = 3;
  std::optional<std::uint64_t> seed;
  std::optional<int> fig;
  std::size_t alpha_points = 50;
  std::string out;
  unsigned threads = 0;
};

void add_metric(CLI::App& app, MetricArgs& a) {
  auto* cmd = app.add_subcommand("metric-scan", "Metric classification evidence for JSD^alpha");
  cmd->add_option("--alpha", a.alpha, "Exponent alpha > 0");
  cmd->add_option("--grid-points", a.grid_points, "Points of the u-grid")->capture_default_str();
  cmd->add_option("--samples", a.samples, "Random triples for the triangle search")
      ->capture_default_str();
  cmd->add_option("--dim", a.dim, "Dimension of sampled distributions")->capture_default_str();
  cmd->add_option("--seed", a.seed, "Seed (default: $JSDM_SEED or 0)");
  cmd->add_option("--fig", a.fig, "Emit figure data: 1 = -dh/du surface, 2 = Delta(u) curves")
      ->check(CLI::IsMember({1, 2}));
  cmd->add_option("--alpha-points", a.alpha_points, "Alpha samples on (0, 1/2] for --fig 1")
      ->capture_default_str();
  cmd->add_option("--out", a.out, "Output file (default: stdout)");
  cmd->add_option("--threads", a.threads, "Worker threads (0 = all cores)");
}

ordered_json dist_json(const ProbDist& p) { return json_numbers(p.values()); }

ordered_json metric_summary(const MetricArgs& a) {
  const double alpha = *a.alpha;
  const AlphaExponent exponent = metric::classify_alpha(alpha);
  const auto deriv_grid = metric::ScanGrid::uniform(metric::kGridLowerCutoff, a.grid_points);
  const auto report = metric::monotonicity_scan(alpha, deriv_grid);
  const double neg_fraction =
      metric::delta_negative_fraction(alpha, metric::ScanGrid::uniform(0.0, a.grid_points));
  const std::uint64_t seed = resolve_seed(a.seed);
  const auto hit = metric::triangle_search({alpha, a.dim, a.samples, seed, a.threads});

  ordered_json j;
  j["alpha"] = json_number(alpha);
  j["classification"] = to_string(exponent.classification());
  j["nonincreasing"] = report.nonincreasing;
  j["worst_point"] = json_number(report.worst_point);
  j["worst_derivative"] = json_number(report.worst_derivative);
  j["delta_negative_fraction"] = json_number(neg_fraction);
  j["triangle_search"] = {{"samples", a.samples},
                          {"dim", a.dim},
                          {"seed", seed},
                          {"result", hit ? "counterexample found" : "no counterexample found"}};
  if (hit) {
    j["counterexample"] = {{"p", dist_json(hit->p)},     {"q", dist_json(hit->q)},
                           {"r", dist_json(hit->r)},     {"lhs", json_number(hit->lhs)},
                           {"rhs", json_number(hit->rhs)}, {"gap", json_number(hit->gap)}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

int run_metric(const MetricArgs& a, std::ostream& out) {
  if (!a.fig && !a.alpha) throw UsageError("metric-scan needs --alpha or --fig");
  if (a.fig) {
    if (a.alpha && a.out.empty()) {
      throw UsageError("--fig with --alpha needs --out for the CSV (the summary goes to stdout)");
    }
    metric::FigureParams params;
    params.u_points = a.grid_points;
    params.alpha_points = a.alpha_points;
    const auto rows = metric::figure_data(
        *a.fig == 1 ? metric::Figure::DerivativeSurface : metric::Figure::DeltaCurves, params);
    std::string csv = "u,alpha,value\n";
    for (const auto& r : rows) {
      csv += io::format_number(r.u) + "," + io::format_number(r.alpha) + "," +
             io::format_number(r.value) + "\n";
    }
    emit(a.out, csv, out);
    if (a.alpha) out << dump(metric_summary(a));
    return 0;
  }
  emit(a.out, dump(metric_summary(a)), out);
  return 0;
}

// ------------------------------------------------------------------- segment

struct SegmentArgs {
  double alpha = 0.5;
  double threshold = 0.95;
  std::size_t min_seg_len = seqseg::kDefaultMinSegLen;
  std::size_t margin = seqseg::kDefaultMargin;
  std::string alphabet;
  std::string in, out;
};

void add_segment(CLI::App& app, SegmentArgs& a) {
  auto* cmd = app.add_subcommand("segment", "Recursive JSD segmentation of symbol sequences");
  cmd->add_option("--alpha", a.alpha, "Exponent alpha")->capture_default_str();
  cmd->add_option("--threshold", a.threshold, "Significance threshold s0")->capture_default_str();
  cmd->add_option("--min-seg-len", a.min_seg_len, "Shortest segment")->capture_default_str();
  cmd->add_option("--margin", a.margin, "Excluded cursor positions at each end")
      ->capture_default_str();
  cmd->add_option("--alphabet", a.alphabet, "Fixed alphabet, e.g. 01 (default: inferred)");
  cmd->add_option("--in", a.in, "Sequence file, one sequence per line (default: stdin)");
  cmd->add_option("--out", a.out, "Output file (default: stdout)");
}

int run_segment(const SegmentArgs& a, std::istream& in, std::ostream& out) {
  std::string text;
  if (a.in.empty()) {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    text = io::read_file(a.in);
  }
  const auto alphabet =
      a.alphabet.empty() ? std::nullopt : std::optional<std::string_view>(a.alphabet);
  std::string lines;
  for (const auto& seq : io::parse_sequences(text, alphabet)) {
    const auto result = seqseg::recursive_segment(seq, a.alpha, a.threshold, a.min_seg_len, a.margin);
    ordered_json j;
    j["alpha"] = json_number(a.alpha);
    j["threshold"] = json_number(a.threshold);
    j["length"] = seq.length();
    j["cuts"] = ordered_json::array();
    for (const auto& c : result.cuts) {
      j["cuts"].push_back({{"pos", c.position},
                           {"d_prime", json_number(c.d_prime_max)},
                           {"significance", json_number(c.significance)}});
    }
    lines += j.dump() + "\n";
  }
  emit(a.out, lines, out);
  return 0;
}

// ------------------------------------------------------------------ simulate

struct SimulateArgs {
  std::size_t count = 500;
  std::size_t length = 1000;
  std::string blocks = "0.8,0.2@0;0.2,0.8@500";
  std::optional<std::uint64_t> seed;
  std::string alpha_list = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0";
  std::size_t margin = seqseg::kDefaultMargin;
  std::string out_prefix;
  unsigned threads = 0;
};

void add_simulate(CLI::App& app, SimulateArgs& a) {
  auto* cmd = app.add_subcommand("simulate", "Monte Carlo segmentation experiment");
  cmd->add_option("--count", a.count, "Number of sequences")->capture_default_str();
  cmd->add_option("--length", a.length, "Sequence length")->capture_default_str();
  cmd->add_option("--blocks", a.blocks, "Block spec 'p0,p1@start;...'")->capture_default_str();
  cmd->add_option("--seed", a.seed, "Seed (default: $JSDM_SEED or 0)");
  cmd->add_option("--alpha-list", a.alpha_list, "Comma-separated exponents")
      ->capture_default_str();
  cmd->add_option("--margin", a.margin, "Excluded cursor positions at each end")
      ->capture_default_str();
  cmd->add_option("--out-prefix", a.out_prefix, "Prefix for CSV files (default: stdout)");
  cmd->add_option("--threads", a.threads, "Worker threads (0 = all cores)");
}

int run_simulate(const SimulateArgs& a, std::ostream& out) {
  const seqseg::EnsembleSpec spec{a.count, a.length, io::parse_blocks(a.blocks)};
  const auto alphas = io::parse_number_list(a.alpha_list);
  const auto ensemble = seqseg::generate_ensemble(spec, resolve_seed(a.seed), a.threads);

  std::string fig3b = "alpha,mean_max_dprime\n";
  for (double alpha : alphas) {
    std::string fig3a = "ell,mean_dprime\n";
    for (const auto& pt : seqseg::average_profile(ensemble, alpha, a.margin, a.threads)) {
      fig3a += std::to_string(pt.ell) + "," + io::format_number(pt.mean) + "\n";
    }
    fig3b += io::format_number(alpha) + "," +
             io::format_number(seqseg::mean_max_dprime(ensemble, alpha, a.margin, a.threads)) +
             "\n";
    const std::string name = "fig3a_alpha_" + io::format_number(alpha) + ".csv";
    if (a.out_prefix.empty()) {
      out << "# " << name << "\n" << fig3a;
    } else {
      io::write_file(a.out_prefix + name, fig3a);
    }
  }
  if (a.out_prefix.empty()) {
    out << "# fig3b.csv\n" << fig3b;
  } else {
    io::write_file(a.out_prefix + "fig3b.csv", fig3b);
  }
  return 0;
}

// --------------------------------------------------------------- quantum-jsd

struct QuantumArgs {
  std::string rho, sigma;
  std::vector<std::string> bloch;
  double alpha = 0.5;
  std::string grid = "64x128";
  std::size_t refine_iters = quantum::OptimizerConfig{}.refine_iters;
  std::string out;
};

void add_quantum(CLI::App& app, QuantumArgs& a) {
  auto* cmd = app.add_subcommand("quantum-jsd", "Measurement-maximized JSD between qubit states");
  cmd->add_option("--rho", a.rho, R"(State as JSON {"d":2,"entries":[[re,im],...]})");
  cmd->add_option("--sigma", a.sigma, "Second state as JSON");
  cmd->add_option("--bloch", a.bloch, "Qubit Bloch vector x,y,z (give twice: rho then sigma)");
  cmd->add_option("--alpha", a.alpha, "Exponent alpha")->capture_default_str();
  cmd->add_option("--grid", a.grid, "Direction grid THETAxPHI")->capture_default_str();
  cmd->add_option("--refine-iters", a.refine_iters, "Refinement iterations")
      ->capture_default_str();
  cmd->add_option("--out", a.out, "Output file (default: stdout)");
}

quantum::DensityMatrix state_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid state JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("d") || !doc.contains("entries")) {
    throw ParseError("state JSON needs fields 'd' and 'entries'");
  }
  const auto d = doc["d"].get<std::size_t>();
  const auto& entries = doc["entries"];
  if (!entries.is_array() || entries.size() != d * d) {
    throw ParseError("'entries' must hold d*d [re, im] pairs");
  }
  quantum::Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d * d; ++k) {
    const auto& e = entries[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError("each entry must be a [re, im] pair");
    }
    m(static_cast<Eigen::Index>(k / d), static_cast<Eigen::Index>(k % d)) = {e[0].get<double>(),
                                                                             e[1].get<double>()};
  }
  return quantum::DensityMatrix(std::move(m));
}

quantum::DensityMatrix state_from_bloch(const std::string& text) {
  const auto v = io::parse_number_list(text);
  if (v.size() != 3) throw ParseError("Bloch vector needs three components");
  return quantum::DensityMatrix::from_bloch({v[0], v[1], v[2]});
}

int run_quantum(const QuantumArgs& a, std::ostream& out) {
  std::optional<quantum::DensityMatrix> rho, sigma;
  if (!a.bloch.empty()) {
    if (a.bloch.size() != 2 || !a.rho.empty() || !a.sigma.empty()) {
      throw UsageError("give --bloch exactly twice, or --rho and --sigma");
    }
    rho = state_from_bloch(a.bloch[0]);
    sigma = state_from_bloch(a.bloch[1]);
  } else {
    if (a.rho.empty() || a.sigma.empty()) throw UsageError("--rho and --sigma are required");
    rho = state_from_json(a.rho);
    sigma = state_from_json(a.sigma);
  }
  quantum::OptimizerConfig config;
  const auto x = a.grid.find('x');
  if (x == std::string::npos) throw UsageError("--grid must look like 64x128");
  try {
    config.theta_points = std::stoul(a.grid.substr(0, x));
    config.phi_points = std::stoul(a.grid.substr(x + 1));
  } catch (const std::exception&) {
    throw UsageError("--grid must look like 64x128");
  }
  config.refine_iters = a.refine_iters;

  const AlphaExponent exponent(a.alpha);
  const auto result = quantum::qjsd_max(*rho, *sigma, config);
  ordered_json j;
  j["value"] = json_number(result.value);
  j["alpha"] = json_number(exponent.value());
  j["alpha_value"] = json_number(std::pow(result.value, exponent.value()));
  j["best_povm_bloch_direction"] = json_numbers(result.direction);
  j["converged"] = result.converged;
  j["iterations"] = result.iterations;
  j["lower_bound"] = true;
  j["measurement_family"] = "two-outcome projective";
  emit(a.out, dump(j), out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jensen-Shannon divergence metrics, segmentation and quantum extension", "jsdm"};
  app.require_subcommand(1);
  DivergenceArgs div;
  MetricArgs metric_args;
  SegmentArgs seg;
  SimulateArgs sim;
  QuantumArgs quant;
  add_divergence(app, div);
  add_metric(app, metric_args);
  add_segment(app, seg);
  add_simulate(app, sim);
  add_quantum(app, quant);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "divergence") return run_divergence(div, out);
    if (name == "metric-scan") return run_metric(metric_args, out);
    if (name == "segment") return run_segment(seg, std::cin, out);
    if (name == "simulate") return run_simulate(sim, out);
    if (name == "quantum-jsd") return run_quantum(quant, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace jsdm::cli
