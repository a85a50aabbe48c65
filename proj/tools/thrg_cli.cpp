// thrg: command line front end.
//   exit 0 ok, 1 runtime failure, 2 usage error
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "thrg/thrg.hpp"

namespace fs = std::filesystem;
using namespace thrg;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

StaticGraph load_static(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edgelist(in);
}

Grammar load_grammar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return deserialize(in);
}

Binning parse_binning(const std::string& s) { return s == "time" ? Binning::time : Binning::size; }

// ---- extract

struct ExtractArgs {
  std::string input, output, binning = "size", tree;
  long long beta = 0;
  int alpha = 0;
  std::uint64_t seed = 0;
  bool use_static = false;
};

int run_extract(const ExtractArgs& a) {
  std::size_t raw = 0;
  const auto events = load_events(a.input, {}, &raw);
  const auto name = fs::path(a.input).stem().string();
  Grammar grammar;
  TreeDecomposition tree;
  if (a.use_static) {
    const auto final = final_graph(size_quantize(events, 1));
    tree = normalize_cnf(static_tree_decomposition(final));
    grammar = extract_rules(tree, 0);
    grammar.meta = GrammarMetadata{name, 0, a.seed, final.num_vertices(), final.num_edges()};
    const auto w = width(tree);
    std::cout << "vertices=" << final.num_vertices() << " edges=" << final.num_edges() << '\n'
              << "width=" << w.value << '\n'
              << "rules=" << grammar.size() << '\n';
    if (count_components(final) > 1)
      std::cerr << "warning: input has " << count_components(final) << " connected components\n";
  } else {
    const auto g = quantize(events, a.beta, parse_binning(a.binning));
    const auto x = extract_temporal_grammar(g, a.alpha, a.seed, name);
    grammar = x.grammar;
    tree = x.normalized;
    const auto final = final_graph(g);
    std::cout << "vertices=" << final.num_vertices() << " edges=" << final.num_edges() << " events=" << raw << '\n'
              << "width=" << x.temporal_width.value << " static_width=" << x.static_width.value << '\n'
              << "rules=" << grammar.size() << '\n'
              << "late_bridge_ratio=" << x.late_bridge_ratio() << '\n';
    if (const auto k = count_components(final); k > 1)
      std::cerr << "warning: input has " << k << " connected components\n";
  }
  auto out = open_out(a.output);
  serialize(out, grammar);
  if (!a.tree.empty()) {
    auto t = open_out(a.tree);
    dump(t, tree);
  }
  std::cout << "grammar=" << grammar_hash(grammar) << " written to " << a.output << '\n';
  return 0;
}

// ---- generate

struct GenerateArgs {
  std::string grammar, output_dir = ".", mode = "exact", prefix = "graph";
  std::size_t size = 0, trials = 1, max_attempts = 10000;
  std::uint64_t seed = 0;
};

int run_generate(const GenerateArgs& a) {
  const auto g = load_grammar(a.grammar);
  const auto hash = grammar_hash(g);
  std::size_t n = a.size;
  if (n == 0 && a.mode != "free") n = g.meta.vertices;
  if (n == 0 && a.mode != "free") throw UsageError("--size is required: the grammar records no source size");
  std::optional<ExactSampler> exact;
  std::optional<CompiledGrammar> compiled;
  if (a.mode == "exact")
    exact.emplace(g, n);
  else
    compiled.emplace(g);
  fs::create_directories(a.output_dir);
  for (std::size_t t = 0; t < a.trials; ++t) {
    const std::uint64_t seed = a.seed + t;
    Rng rng(seed);
    GenerationResult r;
    if (a.mode == "exact")
      r = exact->sample(rng);
    else if (a.mode == "reject")
      r = generate_rejection(*compiled, n, rng, a.max_attempts);
    else
      r = generate_free(*compiled, rng);
    std::ostringstream name;
    name << a.prefix << '_' << t << ".edges";
    const auto path = (fs::path(a.output_dir) / name.str()).string();
    auto out = open_out(path);
    std::ostringstream header;
    header << "grammar=" << hash << " seed=" << seed << " mode=" << a.mode << " n=" << r.graph.num_vertices();
    write_edgelist(out, r.graph, {header.str()});
    std::cout << path << " vertices=" << r.graph.num_vertices() << " edges=" << r.graph.num_edges() << '\n';
  }
  return 0;
}

// ---- baseline

struct BaselineArgs {
  std::string input, model = "chung-lu", output_dir = ".", prefix;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
};

int run_baseline(const BaselineArgs& a) {
  const auto original = load_static(a.input);
  const auto seq = degree_sequence(original);
  fs::create_directories(a.output_dir);
  const auto prefix = a.prefix.empty() ? a.model : a.prefix;
  for (std::size_t t = 0; t < a.trials; ++t) {
    const std::uint64_t seed = a.seed + t;
    Rng rng(seed);
    const auto g = a.model == "chung-lu" ? chung_lu(seq, rng)
                                         : erdos_renyi(original.num_vertices(), original.num_edges(), rng);
    const auto path = (fs::path(a.output_dir) / (prefix + "_" + std::to_string(t) + ".edges")).string();
    auto out = open_out(path);
    write_edgelist(out, g, {"model=" + a.model + " seed=" + std::to_string(seed)});
    std::cout << path << " vertices=" << g.num_vertices() << " edges=" << g.num_edges() << '\n';
  }
  return 0;
}

// ---- eval

struct EvalArgs {
  std::string original, output;
  std::vector<std::string> generated;
  std::vector<std::string> metrics = all_metrics();
  std::size_t buckets = 100;
};

int run_eval(const EvalArgs& a) {
  for (const auto& m : a.metrics) check_metric(m);
  const auto original = load_static(a.original);
  std::vector<MetricReport> reports;
  EvalOptions options;
  options.buckets = a.buckets;
  for (const auto& path : a.generated) reports.push_back(evaluate(original, load_static(path), a.metrics, options));
  const auto text = eval_report_json(a.original, a.generated, reports).dump(2) + "\n";
  if (a.output.empty()) {
    std::cout << text;
  } else {
    auto out = open_out(a.output);
    out << text;
  }
  return 0;
}

// ---- experiment

struct ExperimentArgs {
  std::string config;
  std::vector<std::string> datasets, betas, alphas, generators, metrics, external;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::string output, binning;
  bool quiet = false;
};

int run_experiment_cmd(const ExperimentArgs& a) {
  ExperimentConfig c;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw std::runtime_error("cannot open " + a.config);
    c = parse_config(in);
  }
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
    return s;
  };
  for (const auto& d : a.datasets) apply_config_entry(c, "dataset", d, 0);
  for (const auto& e : a.external) apply_config_entry(c, "external", e, 0);
  if (!a.betas.empty()) apply_config_entry(c, "beta", join(a.betas), 0);
  if (!a.alphas.empty()) apply_config_entry(c, "alpha", join(a.alphas), 0);
  if (!a.generators.empty()) apply_config_entry(c, "generators", join(a.generators), 0);
  if (!a.metrics.empty()) apply_config_entry(c, "metrics", join(a.metrics), 0);
  if (!a.binning.empty()) apply_config_entry(c, "binning", a.binning, 0);
  if (a.trials) c.trials = *a.trials;
  if (a.seed) c.master_seed = *a.seed;
  if (!a.output.empty()) c.output_dir = a.output;
  if (c.datasets.empty()) throw UsageError("no datasets given");
  c.validate();

  const auto cells = run_experiment(c, [&](const std::string& s) {
    if (!a.quiet) std::cerr << "cell " << s << '\n';
  });
  fs::create_directories(c.output_dir);
  const auto path = (fs::path(c.output_dir) / "results.csv").string();
  auto out = open_out(path);
  write_csv(out, cells);
  std::size_t failed = 0;
  for (const auto& cell : cells)
    if (cell.error) {
      ++failed;
      std::cerr << "cell failed: " << cell.dataset << ' ' << cell.generator << " beta=" << cell.beta << ' '
                << cell.metric << ": " << *cell.error << '\n';
    }
  std::cout << path << " rows=" << cells.size() << " failed=" << failed << '\n';
  return 0;
}

// ---- validate-td

struct ValidateArgs {
  std::string input, binning = "size";
  long long beta = 0;
  std::uint64_t seed = 0;
  bool use_static = false;
};

int run_validate(const ValidateArgs& a) {
  const auto events = load_events(a.input);
  TreeDecomposition raw;
  StaticGraph final;
  if (a.use_static) {
    final = final_graph(size_quantize(events, 1));
    raw = static_tree_decomposition(final);
  } else {
    const auto g = quantize(events, a.beta, parse_binning(a.binning));
    final = final_graph(g);
    Rng rng(a.seed);
    raw = temporal_tree_decomposition(g, rng);
  }
  const auto cnf = normalize_cnf(raw);
  const auto r1 = validate_tree_decomposition(raw, final);
  const auto r2 = validate_tree_decomposition(cnf, final);
  std::cout << "raw nodes=" << raw.size() << " width=" << width(raw).value << ' ' << r1.describe() << '\n'
            << "cnf nodes=" << cnf.size() << " width=" << width(cnf).value << ' ' << r2.describe() << '\n';
  return r1.valid() && r2.valid() ? 0 : 1;
}

}  // namespace

const CLI::Validator kAtLeastOne(
    [](std::string& s) -> std::string {
      try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos == s.size() && v >= 1) return {};
      } catch (const std::exception&) {
      }
      return "must be an integer >= 1, got '" + s + "'";
    },
    "INT>=1");

int main(int argc, char** argv) {
  CLI::App app{"Temporal hyperedge replacement grammar toolkit"};
  app.require_subcommand(1);

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Extract a grammar from a timestamped edgelist");
  extract->add_option("input", ex.input, "Edgelist (u v [weight] time)")->required()->check(CLI::ExistingFile);
  extract->add_option("-o,--output", ex.output, "Grammar file")->required();
  extract->add_option("--beta", ex.beta, "Number of bins")->check(kAtLeastOne);
  extract->add_option("--alpha", ex.alpha, "Rule history depth")->check(CLI::IsMember({0, 1}));
  extract->add_option("--seed", ex.seed, "Seed for clique tie-breaking");
  extract->add_option("--binning", ex.binning, "size or time")->check(CLI::IsMember({"size", "time"}));
  extract->add_option("--tree", ex.tree, "Also write the normalized decomposition");
  extract->add_flag("--static", ex.use_static, "Static min-fill decomposition (pHRG baseline)");

  GenerateArgs ge;
  auto* generate = app.add_subcommand("generate", "Sample graphs from a grammar");
  generate->add_option("grammar", ge.grammar, "Grammar file")->required()->check(CLI::ExistingFile);
  generate->add_option("--size,-n", ge.size, "Target vertex count (default: source size)");
  generate->add_option("--mode", ge.mode, "exact, reject or free")->check(CLI::IsMember({"exact", "reject", "free"}));
  generate->add_option("--trials", ge.trials, "Number of graphs")->check(kAtLeastOne);
  generate->add_option("--seed", ge.seed, "Trial t uses seed + t");
  generate->add_option("--max-attempts", ge.max_attempts, "Rejection sampling budget")->check(kAtLeastOne);
  generate->add_option("-o,--output-dir", ge.output_dir, "Directory for edgelists");
  generate->add_option("--prefix", ge.prefix, "File name prefix");

  BaselineArgs ba;
  auto* baseline = app.add_subcommand("baseline", "Sample Chung-Lu or G(n,m) graphs matching an edgelist");
  baseline->add_option("input", ba.input, "Edgelist")->required()->check(CLI::ExistingFile);
  baseline->add_option("--model", ba.model, "chung-lu or erdos-renyi")
      ->check(CLI::IsMember({"chung-lu", "erdos-renyi"}));
  baseline->add_option("--trials", ba.trials, "Number of graphs")->check(kAtLeastOne);
  baseline->add_option("--seed", ba.seed, "Trial t uses seed + t");
  baseline->add_option("-o,--output-dir", ba.output_dir, "Directory for edgelists");
  baseline->add_option("--prefix", ba.prefix, "File name prefix (default: model)");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Compare generated graphs with an original");
  eval->add_option("original", ev.original, "Original edgelist")->required()->check(CLI::ExistingFile);
  eval->add_option("generated", ev.generated, "Generated edgelists")->required()->check(CLI::ExistingFile);
  eval->add_option("--metrics", ev.metrics, "Subset of degree,hop,clustering,eigenvector,gcd")->delimiter(',');
  eval->add_option("--buckets", ev.buckets, "Buckets for continuous CDFs")->check(kAtLeastOne);
  eval->add_option("-o,--output", ev.output, "JSON file (default stdout)");

  ExperimentArgs xa;
  auto* experiment = app.add_subcommand("experiment", "Run a beta/alpha sweep and write results.csv");
  experiment->add_option("--config", xa.config, "key = value config file")->check(CLI::ExistingFile);
  experiment->add_option("--dataset", xa.datasets, "name:path or path (repeatable)");
  experiment->add_option("--external", xa.external, "name:path of an externally generated edgelist (repeatable)");
  experiment->add_option("--beta", xa.betas, "Comma separated bins")->delimiter(',')->check(kAtLeastOne);
  experiment->add_option("--alpha", xa.alphas, "Comma separated alphas")->delimiter(',')->check(CLI::IsMember({"0", "1"}));
  experiment->add_option("--generators", xa.generators, "thrg,phrg-static,chung-lu,erdos-renyi,external-edgelist")
      ->delimiter(',');
  experiment->add_option("--metrics", xa.metrics, "Metric subset")->delimiter(',');
  experiment->add_option("--trials", xa.trials, "Trials per cell")->check(kAtLeastOne);
  experiment->add_option("--seed", xa.seed, "Master seed");
  experiment->add_option("--binning", xa.binning, "size or time")->check(CLI::IsMember({"size", "time"}));
  experiment->add_option("-o,--output", xa.output, "Output directory");
  experiment->add_flag("-q,--quiet", xa.quiet, "No progress lines");

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate-td", "Build a decomposition and check its properties");
  validate->add_option("input", va.input, "Edgelist")->required()->check(CLI::ExistingFile);
  validate->add_option("--beta", va.beta, "Number of bins")->check(kAtLeastOne);
  validate->add_option("--seed", va.seed, "Seed for clique tie-breaking");
  validate->add_option("--binning", va.binning, "size or time")->check(CLI::IsMember({"size", "time"}));
  validate->add_flag("--static", va.use_static, "Static min-fill decomposition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto need_beta = [](long long beta, bool is_static) {
    if (!is_static && beta == 0) throw UsageError("--beta is required");
  };
  try {
    if (*extract) {
      need_beta(ex.beta, ex.use_static);
      return run_extract(ex);
    }
    if (*generate) return run_generate(ge);
    if (*baseline) return run_baseline(ba);
    if (*eval) return run_eval(ev);
    if (*experiment) return run_experiment_cmd(xa);
    if (*validate) {
      need_beta(va.beta, va.use_static);
      return run_validate(va);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
