#ifndef THRG_HARNESS_HPP
#define THRG_HARNESS_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "thrg/baselines.hpp"
#include "thrg/errors.hpp"
#include "thrg/generator.hpp"
#include "thrg/metrics.hpp"
#include "thrg/pipeline.hpp"
#include "thrg/random.hpp"

namespace thrg {

// ---------------------------------------------------------------------------
// Metric reports

inline const std::vector<std::string>& all_metrics() {
  static const std::vector<std::string> names{"degree", "hop", "clustering", "eigenvector", "gcd"};
  return names;
}

inline void check_metric(const std::string& name) {
  for (const auto& m : all_metrics())
    if (m == name) return;
  throw ArgumentError("unknown metric '" + name + "'");
}

struct EvalOptions {
  std::size_t buckets = 100;  // for clustering and eigenvector CDFs
};

/// Distance of `generated` from `original` under one metric. Integer-valued
/// distributions use the plain EMD; continuous ones are bucketed first.
inline double metric_distance(const std::string& metric, const StaticGraph& original, const StaticGraph& generated,
                              const EvalOptions& options = {}) {
  if (metric == "degree") return emd(degree_cdf(original), degree_cdf(generated));
  if (metric == "hop") {
    const auto a = hop_distance_cdf(original);
    const auto b = hop_distance_cdf(generated);
    if (a.empty() || b.empty()) throw ArgumentError("hop plot of a graph without edges");
    return emd(a, b);
  }
  if (metric == "clustering") return bucketed_emd(clustering_cdf(original), clustering_cdf(generated), options.buckets);
  if (metric == "eigenvector")
    return bucketed_emd(eigenvector_cdf(original), eigenvector_cdf(generated), options.buckets);
  if (metric == "gcd") return gcd(original, generated);
  throw ArgumentError("unknown metric '" + metric + "'");
}

using MetricReport = std::map<std::string, double>;

inline MetricReport evaluate(const StaticGraph& original, const StaticGraph& generated,
                             const std::vector<std::string>& metrics = all_metrics(), const EvalOptions& options = {}) {
  MetricReport r;
  for (const auto& m : metrics) r[m] = metric_distance(m, original, generated, options);
  return r;
}

struct Summary {
  double mean = 0.0;
  double ci95 = 0.0;  // 1.96 * sample sd / sqrt(n); 0 for a single value
};

inline Summary summarize(const std::vector<double>& values) {
  if (values.empty()) throw ArgumentError("summary of no values");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (auto v : values) mean += v;
  mean /= n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (auto v : values) ss += (v - mean) * (v - mean);
  return {mean, 1.96 * std::sqrt(ss / (n - 1)) / std::sqrt(n)};
}

/// JSON for `thrg eval`: per-graph distances plus mean and CI per metric.
inline nlohmann::ordered_json eval_report_json(const std::string& original, const std::vector<std::string>& names,
                                               const std::vector<MetricReport>& reports) {
  nlohmann::ordered_json out;
  out["original"] = original;
  auto graphs = nlohmann::ordered_json::array();
  std::map<std::string, std::vector<double>> columns;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    nlohmann::ordered_json g;
    g["graph"] = names[i];
    for (const auto& [m, v] : reports[i]) {
      g[m] = v;
      columns[m].push_back(v);
    }
    graphs.push_back(std::move(g));
  }
  out["graphs"] = std::move(graphs);
  nlohmann::ordered_json agg = nlohmann::ordered_json::object();
  for (const auto& [m, vs] : columns) {
    const auto s = summarize(vs);
    agg[m] = {{"mean", s.mean}, {"ci95", s.ci95}, {"n", vs.size()}};
  }
  out["aggregate"] = std::move(agg);
  return out;
}

// ---------------------------------------------------------------------------
// Experiments

struct DatasetSpec {
  std::string name;
  std::string path;
};

struct ExperimentConfig {
  std::vector<DatasetSpec> datasets;
  std::vector<long long> betas{50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
  std::vector<int> alphas{0, 1};
  std::vector<std::string> generators{"thrg", "phrg-static", "chung-lu", "erdos-renyi"};
  std::size_t trials = 50;
  std::uint64_t master_seed = 0;
  std::vector<std::string> metrics = all_metrics();
  std::string output_dir = ".";
  Binning binning = Binning::size;
  std::map<std::string, std::vector<std::string>> external;  // dataset -> generated edgelists

  void validate() const {
    if (trials < 1) throw ArgumentError("trials must be >= 1");
    if (betas.empty() || alphas.empty() || generators.empty() || metrics.empty())
      throw ArgumentError("beta, alpha, generator and metric lists must be non-empty");
    for (auto b : betas)
      if (b < 1) throw ArgumentError("beta values must be >= 1");
    for (auto a : alphas)
      if (a != 0 && a != 1) throw ArgumentError("alpha must be 0 or 1");
    for (const auto& g : generators)
      if (g != "thrg" && g != "phrg-static" && g != "chung-lu" && g != "erdos-renyi" && g != "external-edgelist")
        throw ArgumentError("unknown generator '" + g + "'");
    for (const auto& m : metrics) check_metric(m);
  }
};

/// In-memory dataset: simplified events plus a display name.
struct Dataset {
  std::string name;
  std::vector<EdgeEvent> events;
};

struct CellResult {
  std::string dataset;
  std::string generator;
  long long beta = 0;
  std::optional<int> alpha;  // unset for generators that ignore alpha
  std::string metric;
  std::vector<double> values;
  Summary summary;
  std::optional<std::string> error;
};

inline constexpr std::uint64_t kNoAlpha = 0xffffffffULL;

/// Seed of one trial. Any single trial can be reproduced from these inputs.
inline std::uint64_t trial_seed(std::uint64_t master, const std::string& dataset, const std::string& generator,
                                long long beta, std::optional<int> alpha, std::size_t trial) {
  return derive_seed(master, {dataset, generator},
                     {static_cast<std::uint64_t>(beta), alpha ? static_cast<std::uint64_t>(*alpha) : kNoAlpha,
                      static_cast<std::uint64_t>(trial)});
}

namespace detail {

inline bool uses_alpha(const std::string& generator) { return generator == "thrg"; }

inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace detail

/// Runs every dataset x generator x beta x alpha cell. Generators that ignore
/// beta are still sampled once per beta with that beta's seeds; a cell that
/// fails carries its error and the sweep goes on.
inline std::vector<CellResult> run_experiment(const ExperimentConfig& config, const std::vector<Dataset>& datasets,
                                              const std::function<void(const std::string&)>& progress = {}) {
  config.validate();
  std::vector<CellResult> out;
  for (const auto& ds : datasets) {
    const auto original = final_graph(size_quantize(ds.events, 1));
    std::optional<Grammar> static_grammar;
    std::optional<ExactSampler> static_sampler;
    for (const auto& gen : config.generators) {
      for (auto beta : config.betas) {
        std::vector<std::optional<int>> alphas;
        if (detail::uses_alpha(gen))
          for (auto a : config.alphas) alphas.emplace_back(a);
        else
          alphas.emplace_back(std::nullopt);
        for (const auto& alpha : alphas) {
          if (progress) {
            std::ostringstream os;
            os << ds.name << ' ' << gen << " beta=" << beta << " alpha=" << (alpha ? std::to_string(*alpha) : "-");
            progress(os.str());
          }
          std::vector<CellResult> cells;
          for (const auto& m : config.metrics) cells.push_back(CellResult{ds.name, gen, beta, alpha, m, {}, {}, {}});
          try {
            std::vector<StaticGraph> graphs;
            if (gen == "thrg") {
              const auto g = quantize(ds.events, beta, config.binning);
              const auto x = extract_temporal_grammar(g, *alpha, trial_seed(config.master_seed, ds.name, gen, beta, alpha, 0),
                                                      ds.name, false);
              const ExactSampler sampler(x.grammar, original.num_vertices());
              for (std::size_t t = 0; t < config.trials; ++t) {
                Rng rng(trial_seed(config.master_seed, ds.name, gen, beta, alpha, t + 1));
                graphs.push_back(sampler.sample(rng).graph);
              }
            } else if (gen == "phrg-static") {
              if (!static_grammar) {
                static_grammar = extract_static_grammar(original, ds.name);
                static_sampler.emplace(*static_grammar, original.num_vertices());
              }
              for (std::size_t t = 0; t < config.trials; ++t) {
                Rng rng(trial_seed(config.master_seed, ds.name, gen, beta, alpha, t + 1));
                graphs.push_back(static_sampler->sample(rng).graph);
              }
            } else if (gen == "chung-lu") {
              const auto seq = degree_sequence(original);
              for (std::size_t t = 0; t < config.trials; ++t) {
                Rng rng(trial_seed(config.master_seed, ds.name, gen, beta, alpha, t + 1));
                graphs.push_back(chung_lu(seq, rng));
              }
            } else if (gen == "erdos-renyi") {
              for (std::size_t t = 0; t < config.trials; ++t) {
                Rng rng(trial_seed(config.master_seed, ds.name, gen, beta, alpha, t + 1));
                graphs.push_back(erdos_renyi(original.num_vertices(), original.num_edges(), rng));
              }
            } else {
              const auto it = config.external.find(ds.name);
              if (it == config.external.end() || it->second.empty())
                throw ArgumentError("no external edgelists for dataset '" + ds.name + "'");
              for (const auto& path : it->second) {
                std::ifstream in(path);
                if (!in) throw std::runtime_error("cannot open " + path);
                graphs.push_back(read_edgelist(in));
              }
            }
            for (auto& c : cells) {
              for (const auto& h : graphs) c.values.push_back(metric_distance(c.metric, original, h));
              c.summary = summarize(c.values);
            }
          } catch (const std::exception& e) {
            for (auto& c : cells) {
              c.values.clear();
              c.error = e.what();
            }
          }
          for (auto& c : cells) out.push_back(std::move(c));
        }
      }
    }
  }
  return out;
}

/// Loads each configured dataset from disk and runs the sweep.
inline std::vector<CellResult> run_experiment(const ExperimentConfig& config,
                                              const std::function<void(const std::string&)>& progress = {}) {
  config.validate();
  std::vector<Dataset> datasets;
  for (const auto& d : config.datasets) datasets.push_back(Dataset{d.name, load_events(d.path)});
  return run_experiment(config, datasets, progress);
}

inline void write_csv(std::ostream& out, const std::vector<CellResult>& cells) {
  out << "dataset,generator,beta,alpha,metric,mean,ci95,trials\n";
  for (const auto& c : cells) {
    out << c.dataset << ',' << c.generator << ',' << c.beta << ',' << (c.alpha ? std::to_string(*c.alpha) : "-") << ','
        << c.metric << ',';
    if (c.error)
      out << "error,error,0\n";
    else
      out << detail::format_number(c.summary.mean) << ',' << detail::format_number(c.summary.ci95) << ','
          << c.values.size() << '\n';
  }
}

inline std::string to_csv(const std::vector<CellResult>& cells) {
  std::ostringstream os;
  write_csv(os, cells);
  return os.str();
}

// ---------------------------------------------------------------------------
// Config files: "key = value" lines, '#' comments. Lists are comma separated.
//   dataset = name:path      (repeatable; bare path uses the file stem)
//   beta = 50,100   alpha = 0,1   generators = thrg,chung-lu   trials = 50
//   seed = 7   metrics = degree,gcd   output = out/   binning = size|time
//   external = name:path     (repeatable)

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (auto t = trim(item); !t.empty()) out.push_back(t);
  return out;
}

inline DatasetSpec parse_dataset(const std::string& value) {
  const auto colon = value.find(':');
  if (colon != std::string::npos && colon > 0) return {value.substr(0, colon), value.substr(colon + 1)};
  return {std::filesystem::path(value).stem().string(), value};
}

template <class T>
T parse_number(const std::string& s, std::size_t line) {
  std::istringstream is(s);
  T v{};
  if (!(is >> v) || !is.eof()) throw ParseError(line, "bad number '" + s + "'");
  return v;
}

}  // namespace detail

inline void apply_config_entry(ExperimentConfig& c, const std::string& key, const std::string& value, std::size_t line) {
  using namespace detail;
  if (key == "dataset") {
    c.datasets.push_back(parse_dataset(value));
  } else if (key == "beta") {
    c.betas.clear();
    for (const auto& v : split_list(value)) c.betas.push_back(parse_number<long long>(v, line));
  } else if (key == "alpha") {
    c.alphas.clear();
    for (const auto& v : split_list(value)) c.alphas.push_back(parse_number<int>(v, line));
  } else if (key == "generators") {
    c.generators = split_list(value);
  } else if (key == "trials") {
    c.trials = parse_number<std::size_t>(value, line);
  } else if (key == "seed") {
    c.master_seed = parse_number<std::uint64_t>(value, line);
  } else if (key == "metrics") {
    c.metrics = split_list(value);
  } else if (key == "output") {
    c.output_dir = value;
  } else if (key == "binning") {
    if (value == "size")
      c.binning = Binning::size;
    else if (value == "time")
      c.binning = Binning::time;
    else
      throw ParseError(line, "binning must be size or time");
  } else if (key == "external") {
    const auto d = parse_dataset(value);
    c.external[d.name].push_back(d.path);
  } else {
    throw ParseError(line, "unknown key '" + key + "'");
  }
}

inline ExperimentConfig parse_config(std::istream& in, ExperimentConfig c = {}) {
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto t = detail::trim(raw);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected key = value");
    apply_config_entry(c, detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)), line);
  }
  return c;
}

}  // namespace thrg

#endif  // THRG_HARNESS_HPP
