// hypermatch: run streaming hypergraph matchers and print result records.
//
//   hypermatch run    --input F | --gen n,m,dmax,wmax --algorithm A ...
//   hypermatch grid   (repeatable axis flags)
//   hypermatch oracle --input F
//
// Exit codes: 0 success, 2 input error, 3 oracle instance too large.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypermatch/bench.hpp"
#include "json.hpp"

namespace {

using namespace hypermatch;
using namespace hypermatch::bench;

constexpr int kInputError = 2;
constexpr int kTooLarge = 3;

int report(const char* kind, const std::string& message, std::optional<std::size_t> line = {}) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  if (line) j["line"] = *line;
  std::cerr << j.dump() << std::endl;
  return std::string_view(kind) == "TooLarge" ? kTooLarge : kInputError;
}

struct RunArgs {
  std::string input;
  std::string gen;
  std::string weights = "file";
  std::string algorithm;
  std::optional<double> epsilon;
  std::string alpha;
  std::string order = "original";
  std::uint64_t seed = 0;
  bool certify = false;
  bool emit_matching = false;
  std::string format = "csv";
};

struct GridArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> gens;
  std::string weights = "file";
  std::vector<std::string> algorithms;
  std::vector<double> epsilons;
  std::vector<std::string> alphas;
  std::vector<std::string> orders;
  std::vector<std::uint64_t> seeds;
  std::size_t repeats = 1;
  std::size_t jobs = 1;
  bool certify = false;
  bool emit_matching = false;
  std::string format = "csv";
};

struct OracleArgs {
  std::string input;
  std::string gen;
  std::string weights = "file";
  std::uint64_t seed = 0;
  std::size_t max_edges = OracleLimits{}.max_edges;
  std::string format = "json";
};

int do_run(const RunArgs& a) {
  RunSpec spec;
  spec.input = a.gen.empty() ? InstanceSource::file(a.input)
                             : InstanceSource::generated(InstanceSource::parse_gen(a.gen));
  spec.weights = parse_weight_scheme(a.weights);
  spec.algorithm = parse_algorithm(a.algorithm);
  spec.epsilon = a.epsilon;
  if (!a.alpha.empty()) spec.alpha = AlphaParam::parse(a.alpha);
  spec.order = parse_order(a.order);
  spec.seed = a.seed;
  spec.certify = a.certify;
  spec.emit_matching = a.emit_matching;
  const Format format = parse_format(a.format);
  spec.validate();

  const auto record = run(spec);
  RecordWriter writer(std::cout, format);
  writer.begin();
  writer.write(record);
  writer.end();
  return 0;
}

int do_grid(const GridArgs& a) {
  GridSpec grid;
  for (const auto& p : a.inputs) grid.inputs.push_back(InstanceSource::file(p));
  for (const auto& g : a.gens) {
    grid.inputs.push_back(InstanceSource::generated(InstanceSource::parse_gen(g)));
  }
  grid.weights = parse_weight_scheme(a.weights);
  for (const auto& s : a.algorithms) grid.algorithms.push_back(parse_algorithm(s));
  if (!a.epsilons.empty()) grid.epsilons = a.epsilons;
  if (!a.alphas.empty()) {
    grid.alphas.clear();
    for (const auto& s : a.alphas) grid.alphas.push_back(AlphaParam::parse(s));
  }
  for (const auto& s : a.orders) grid.orders.push_back(parse_order(s));
  if (grid.orders.empty()) grid.orders.push_back(OrderKind::Original);
  if (!a.seeds.empty()) grid.seeds = a.seeds;
  grid.repeats = a.repeats;
  grid.jobs = a.jobs;
  grid.certify = a.certify;
  grid.emit_matching = a.emit_matching;
  const Format format = parse_format(a.format);
  expand_grid(grid);  // reject bad axes before printing anything

  RecordWriter writer(std::cout, format);
  writer.begin();
  bench::grid(grid, [&](const ResultRecord& r) { writer.write(r); });
  writer.end();
  return 0;
}

int do_oracle(const OracleArgs& a) {
  RunSpec spec;
  spec.input = a.gen.empty() ? InstanceSource::file(a.input)
                             : InstanceSource::generated(InstanceSource::parse_gen(a.gen));
  spec.weights = parse_weight_scheme(a.weights);
  spec.seed = a.seed;
  const Format format = parse_format(a.format);
  const auto hg = load_instance(spec);

  OracleLimits limits;
  limits.max_edges = a.max_edges;
  const auto m = exact_max_weight_matching(hg, limits);

  if (format == Format::Json) {
    nlohmann::ordered_json j;
    j["input"] = spec.input.label();
    j["n"] = hg.num_vertices();
    j["m"] = hg.num_edges();
    j["d"] = hg.rank();
    j["oracle_weight"] = m.weight;
    j["cardinality"] = m.size();
    j["matching"] = m.edge_ids;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "input,n,m,d,oracle_weight,cardinality,matching\n";
    std::string ids;
    for (EdgeId id : m.edge_ids) ids += (ids.empty() ? "" : " ") + std::to_string(id);
    std::cout << bench::detail::csv_escape(spec.input.label()) << ',' << hg.num_vertices() << ','
              << hg.num_edges() << ',' << hg.rank() << ',' << format_double(m.weight) << ','
              << m.size() << ',' << ids << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming hypergraph matching benchmarks"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Execute one algorithm run");
  auto* in_opt = run_cmd->add_option("--input", run_args.input, "hMetis-style hypergraph file");
  auto* gen_opt =
      run_cmd->add_option("--gen", run_args.gen, "Generate a random instance: n,m,dmax,wmax");
  in_opt->excludes(gen_opt);
  run_cmd->add_option("--weights", run_args.weights, "file | unit | size-complement");
  run_cmd->add_option("--algorithm", run_args.algorithm,
                      "stack | stack-lenient | swapset | naive | greedy")
      ->required();
  run_cmd->add_option("--epsilon", run_args.epsilon, "Admission slack (stack family)");
  run_cmd->add_option("--alpha", run_args.alpha, "Swap threshold or 'auto' (swapset)");
  run_cmd->add_option("--order", run_args.order, "original | ascending | descending | random");
  run_cmd->add_option("--seed", run_args.seed, "Seed for random order and --gen");
  run_cmd->add_flag("--certify", run_args.certify, "Attach dual and oracle certificates");
  run_cmd->add_flag("--emit-matching", run_args.emit_matching, "Include matched edge ids");
  run_cmd->add_option("--format", run_args.format, "csv | json");

  GridArgs grid_args;
  auto* grid_cmd = app.add_subcommand("grid", "Run an algorithm x order x parameter matrix");
  grid_cmd->add_option("--input", grid_args.inputs, "Input files (repeatable)");
  grid_cmd->add_option("--gen", grid_args.gens, "Generator specs n,m,dmax,wmax (repeatable)");
  grid_cmd->add_option("--weights", grid_args.weights, "file | unit | size-complement");
  grid_cmd->add_option("--algorithm", grid_args.algorithms, "Algorithms (repeatable)")
      ->required();
  grid_cmd->add_option("--epsilon", grid_args.epsilons, "Epsilons (repeatable)");
  grid_cmd->add_option("--alpha", grid_args.alphas, "Alphas or 'auto' (repeatable)");
  grid_cmd->add_option("--order", grid_args.orders, "Orders (repeatable)");
  grid_cmd->add_option("--seed", grid_args.seeds, "Seeds (repeatable)");
  grid_cmd->add_option("--repeats", grid_args.repeats, "Repetitions per cell");
  grid_cmd->add_option("--jobs", grid_args.jobs, "Worker threads");
  grid_cmd->add_flag("--certify", grid_args.certify, "Attach dual and oracle certificates");
  grid_cmd->add_flag("--emit-matching", grid_args.emit_matching, "Include matched edge ids");
  grid_cmd->add_option("--format", grid_args.format, "csv | json");

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact maximum-weight matching (small inputs)");
  auto* oin = oracle_cmd->add_option("--input", oracle_args.input, "hMetis-style hypergraph file");
  auto* ogen = oracle_cmd->add_option("--gen", oracle_args.gen, "n,m,dmax,wmax");
  oin->excludes(ogen);
  oracle_cmd->add_option("--weights", oracle_args.weights, "file | unit | size-complement");
  oracle_cmd->add_option("--seed", oracle_args.seed, "Seed for --gen");
  oracle_cmd->add_option("--max-edges", oracle_args.max_edges, "Refuse larger instances");
  oracle_cmd->add_option("--format", oracle_args.format, "csv | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report("UsageError", e.what());
  }

  try {
    if (*run_cmd) {
      if (run_args.input.empty() && run_args.gen.empty()) {
        return report("UsageError", "run needs --input or --gen");
      }
      return do_run(run_args);
    }
    if (*grid_cmd) {
      if (grid_args.inputs.empty() && grid_args.gens.empty()) {
        return report("UsageError", "grid needs at least one --input or --gen");
      }
      return do_grid(grid_args);
    }
    if (oracle_args.input.empty() && oracle_args.gen.empty()) {
      return report("UsageError", "oracle needs --input or --gen");
    }
    return do_oracle(oracle_args);
  } catch (const ParseError& e) {
    return report(e.kind(), e.what(), e.line());
  } catch (const Error& e) {
    return report(e.kind(), e.what());
  } catch (const std::exception& e) {
    return report("Error", e.what());
  }
}
