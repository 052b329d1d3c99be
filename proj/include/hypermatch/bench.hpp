#pragma once

#include <atomic>
#include <charconv>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hypermatch/baselines.hpp"
#include "hypermatch/core.hpp"
#include "hypermatch/io.hpp"
#include "hypermatch/oracle.hpp"
#include "hypermatch/stack_matcher.hpp"
#include "hypermatch/swap_matcher.hpp"
#include "json.hpp"

namespace hypermatch::bench {

enum class Algorithm { Stack, StackLenient, SwapSet, Naive, Greedy };

inline bool is_stack_family(Algorithm a) {
  return a == Algorithm::Stack || a == Algorithm::StackLenient;
}

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Stack: return "stack";
    case Algorithm::StackLenient: return "stack-lenient";
    case Algorithm::SwapSet: return "swapset";
    case Algorithm::Naive: return "naive";
    case Algorithm::Greedy: return "greedy";
  }
  return "?";
}

inline std::string_view to_string(WeightScheme w) {
  switch (w) {
    case WeightScheme::FromFile: return "file";
    case WeightScheme::Unit: return "unit";
    case WeightScheme::SizeComplement: return "size-complement";
  }
  return "?";
}

inline std::string_view to_string(OrderKind o) {
  switch (o) {
    case OrderKind::Original: return "original";
    case OrderKind::Ascending: return "ascending";
    case OrderKind::Descending: return "descending";
    case OrderKind::Random: return "random";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
  for (auto a : {Algorithm::Stack, Algorithm::StackLenient, Algorithm::SwapSet, Algorithm::Naive,
                 Algorithm::Greedy}) {
    if (s == to_string(a)) return a;
  }
  throw InvalidInput("unknown algorithm '" + std::string(s) + "'");
}

inline WeightScheme parse_weight_scheme(std::string_view s) {
  for (auto w : {WeightScheme::FromFile, WeightScheme::Unit, WeightScheme::SizeComplement}) {
    if (s == to_string(w)) return w;
  }
  throw InvalidInput("unknown weight scheme '" + std::string(s) + "'");
}

inline OrderKind parse_order(std::string_view s) {
  for (auto o : {OrderKind::Original, OrderKind::Ascending, OrderKind::Descending,
                 OrderKind::Random}) {
    if (s == to_string(o)) return o;
  }
  throw InvalidInput("unknown order '" + std::string(s) + "'");
}

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view s, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidInput(std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return value;
}

struct GenParams {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d_max = 1;
  std::uint64_t w_max = 1;
};

/// Either a file path or generator parameters ("gen:n,m,dmax,wmax").
struct InstanceSource {
  std::string path;
  std::optional<GenParams> gen;

  static InstanceSource file(std::string p) { return {std::move(p), std::nullopt}; }
  static InstanceSource generated(GenParams g) { return {{}, g}; }

  /// Parses "n,m,dmax,wmax".
  static GenParams parse_gen(std::string_view text) {
    std::vector<std::uint64_t> fields;
    std::size_t pos = 0;
    while (true) {
      auto comma = text.find(',', pos);
      auto tok = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw InvalidInput("bad --gen value '" + std::string(text) + "', expected n,m,dmax,wmax");
      }
      fields.push_back(v);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (fields.size() != 4) {
      throw InvalidInput("bad --gen value '" + std::string(text) + "', expected n,m,dmax,wmax");
    }
    return {static_cast<std::size_t>(fields[0]), static_cast<std::size_t>(fields[1]),
            static_cast<std::size_t>(fields[2]), fields[3]};
  }

  /// Accepts "gen:n,m,dmax,wmax" or a path.
  static InstanceSource parse(std::string_view text) {
    if (text.starts_with("gen:")) return generated(parse_gen(text.substr(4)));
    return file(std::string(text));
  }

  std::string label() const {
    if (!gen) return path;
    return "gen:" + std::to_string(gen->n) + "," + std::to_string(gen->m) + "," +
           std::to_string(gen->d_max) + "," + std::to_string(gen->w_max);
  }
};

/// SwapSet's alpha: a fixed value, or the rank-dependent optimum.
struct AlphaParam {
  bool is_auto = true;
  double value = 0.0;

  static AlphaParam automatic() { return {true, 0.0}; }
  static AlphaParam fixed(double v) { return {false, v}; }
  static AlphaParam parse(std::string_view s) {
    if (s == "auto") return automatic();
    return fixed(parse_double(s, "alpha"));
  }
  std::string label() const { return is_auto ? "auto" : format_double(value); }
  double resolve(std::size_t rank) const { return is_auto ? optimal_alpha(rank) : value; }
};

struct RunSpec {
  InstanceSource input;
  WeightScheme weights = WeightScheme::FromFile;
  Algorithm algorithm = Algorithm::Stack;
  std::optional<double> epsilon;   // stack family only; defaults to 0
  std::optional<AlphaParam> alpha; // swapset only; defaults to auto
  OrderKind order = OrderKind::Original;
  std::uint64_t seed = 0;
  bool certify = false;
  bool emit_matching = false;
  std::size_t repeat = 0;

  void validate() const {
    if (epsilon && !is_stack_family(algorithm)) {
      throw InvalidInput("--epsilon applies only to stack and stack-lenient");
    }
    if (alpha && algorithm != Algorithm::SwapSet) {
      throw InvalidInput("--alpha applies only to swapset");
    }
    if (epsilon && !(*epsilon >= 0.0)) throw InvalidInput("epsilon must be >= 0");
    if (alpha && !alpha->is_auto && !(alpha->value >= 0.0)) {
      throw InvalidInput("alpha must be >= 0");
    }
    if (input.path.empty() && !input.gen) throw InvalidInput("no input given");
  }

  StreamOrder stream_order() const {
    // greedy sorts internally and ignores the requested order
    if (algorithm == Algorithm::Greedy) return StreamOrder::descending();
    return {order, seed};
  }
};

struct ResultRecord {
  std::size_t cell = 0;
  RunSpec spec;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  std::optional<double> epsilon;
  std::optional<double> alpha;
  RunMetrics metrics;
  std::optional<double> dual_upper_bound;
  std::optional<bool> dual_feasible;
  std::optional<double> oracle_weight;
  std::optional<std::vector<EdgeId>> matching;
  std::string error;
};

/// Loads or generates the instance and applies the weight scheme.
inline Hypergraph load_instance(const RunSpec& spec) {
  Hypergraph base = spec.input.gen
                        ? gen_random_hypergraph(spec.input.gen->n, spec.input.gen->m,
                                                spec.input.gen->d_max, spec.input.gen->w_max,
                                                spec.seed)
                        : read_hmetis_file(spec.input.path);
  return synthesize_weights(base, spec.weights);
}

/// Executes exactly one algorithm run on an already loaded instance.
inline ResultRecord run(const RunSpec& spec, const Hypergraph& hg,
                        const OracleLimits& oracle_limits = {}) {
  spec.validate();
  ResultRecord rec;
  rec.spec = spec;
  rec.n = hg.num_vertices();
  rec.m = hg.num_edges();
  rec.d = hg.rank();

  const auto stream = order_stream(hg, spec.stream_order());
  Matching matching;
  switch (spec.algorithm) {
    case Algorithm::Stack:
    case Algorithm::StackLenient: {
      const double eps = spec.epsilon.value_or(0.0);
      const auto rule =
          spec.algorithm == Algorithm::Stack ? UpdateRule::Guarantee : UpdateRule::Lenient;
      auto out = run_stack_stream(hg, stream, eps, rule);
      rec.epsilon = eps;
      rec.metrics = out.metrics;
      if (spec.certify) {
        rec.dual_upper_bound = dual_upper_bound(out.dual);
        rec.dual_feasible = dual_feasible(hg, out.dual);
      }
      matching = std::move(out.matching);
      break;
    }
    case Algorithm::SwapSet: {
      const double a = spec.alpha.value_or(AlphaParam::automatic()).resolve(hg.rank());
      auto out = run_swapset(hg, stream, a);
      rec.alpha = a;
      rec.metrics = out.metrics;
      matching = std::move(out.matching);
      break;
    }
    case Algorithm::Naive: {
      auto out = run_naive(hg, stream);
      rec.metrics = out.metrics;
      matching = std::move(out.matching);
      break;
    }
    case Algorithm::Greedy: {
      auto out = run_greedy(hg);
      rec.metrics = out.metrics;
      matching = std::move(out.matching);
      break;
    }
  }

  if (spec.certify && hg.num_edges() <= oracle_limits.max_edges) {
    try {
      rec.oracle_weight = exact_max_weight_matching(hg, oracle_limits).weight;
    } catch (const TooLarge&) {
      // certificate is optional; leave it empty
    }
  }
  if (spec.emit_matching) rec.matching = matching.edge_ids;
  return rec;
}

inline ResultRecord run(const RunSpec& spec) {
  spec.validate();
  return run(spec, load_instance(spec));
}

/// Axes of an experiment matrix. Epsilons apply to the stack family, alphas to
/// swapset; greedy contributes one cell per (input, seed) regardless of order.
struct GridSpec {
  std::vector<InstanceSource> inputs;
  WeightScheme weights = WeightScheme::FromFile;
  std::vector<Algorithm> algorithms;
  std::vector<double> epsilons{0.0};
  std::vector<AlphaParam> alphas{AlphaParam::automatic()};
  std::vector<OrderKind> orders;
  std::vector<std::uint64_t> seeds{0};
  std::size_t repeats = 1;
  bool certify = false;
  bool emit_matching = false;
  std::size_t jobs = 1;
};

/// Cartesian product of the axes, in emission order for a single worker.
inline std::vector<RunSpec> expand_grid(const GridSpec& grid) {
  if (grid.inputs.empty() || grid.algorithms.empty() || grid.orders.empty() ||
      grid.seeds.empty() || grid.repeats == 0) {
    throw InvalidInput("grid axes must be non-empty");
  }
  const bool any_stack = std::ranges::any_of(grid.algorithms, is_stack_family);
  const bool any_swap = std::ranges::any_of(
      grid.algorithms, [](Algorithm a) { return a == Algorithm::SwapSet; });
  if (any_stack && grid.epsilons.empty()) throw InvalidInput("grid needs at least one epsilon");
  if (any_swap && grid.alphas.empty()) throw InvalidInput("grid needs at least one alpha");

  std::vector<RunSpec> cells;
  for (const auto& input : grid.inputs) {
    for (auto seed : grid.seeds) {
      for (auto algorithm : grid.algorithms) {
        RunSpec base;
        base.input = input;
        base.weights = grid.weights;
        base.algorithm = algorithm;
        base.seed = seed;
        base.certify = grid.certify;
        base.emit_matching = grid.emit_matching;

        std::vector<RunSpec> variants;
        if (is_stack_family(algorithm)) {
          for (double eps : grid.epsilons) {
            variants.push_back(base);
            variants.back().epsilon = eps;
          }
        } else if (algorithm == Algorithm::SwapSet) {
          for (const auto& a : grid.alphas) {
            variants.push_back(base);
            variants.back().alpha = a;
          }
        } else {
          variants.push_back(base);
        }

        for (auto& v : variants) {
          const std::vector<OrderKind> orders =
              algorithm == Algorithm::Greedy ? std::vector{OrderKind::Descending} : grid.orders;
          for (auto order : orders) {
            for (std::size_t r = 0; r < grid.repeats; ++r) {
              RunSpec cell = v;
              cell.order = order;
              cell.repeat = r;
              cells.push_back(std::move(cell));
            }
          }
        }
      }
    }
  }
  return cells;
}

/// Runs every cell independently, handing each record to `sink` as it
/// completes. Failures become records with `error` set; the grid continues.
/// Calls to `sink` are serialized.
inline std::size_t grid(const GridSpec& spec, const std::function<void(const ResultRecord&)>& sink) {
  const auto cells = expand_grid(spec);
  std::mutex emit;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      ResultRecord rec;
      try {
        rec = run(cells[i]);
      } catch (const std::exception& ex) {
        rec = ResultRecord{};
        rec.spec = cells[i];
        rec.error = ex.what();
      }
      rec.cell = i;
      std::lock_guard lock(emit);
      sink(rec);
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(spec.jobs, cells.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return cells.size();
}

// ---------------------------------------------------------------------------
// Output. Column order is part of the output format.

inline const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> columns = {
      "cell",          "input",          "weights",           "algorithm",
      "epsilon",       "alpha",          "order",             "seed",
      "repeat",        "n",              "m",                 "d",
      "matching_weight", "cardinality",  "peak_stack_edges",  "peak_stack_pins",
      "pushes",        "pops",           "swaps",             "vertex_push_max",
      "peak_matched_edges", "logical_memory", "runtime_ns",   "dual_upper_bound",
      "dual_feasible", "oracle_weight",  "matching",          "error"};
  return columns;
}

inline nlohmann::ordered_json to_json(const ResultRecord& r) {
  auto opt = [](const auto& o) -> nlohmann::ordered_json {
    if (o) return *o;
    return nullptr;
  };
  const auto order = r.spec.algorithm == Algorithm::Greedy ? OrderKind::Descending : r.spec.order;
  nlohmann::ordered_json j;
  j["cell"] = r.cell;
  j["input"] = r.spec.input.label();
  j["weights"] = to_string(r.spec.weights);
  j["algorithm"] = to_string(r.spec.algorithm);
  j["epsilon"] = opt(r.epsilon);
  j["alpha"] = opt(r.alpha);
  j["order"] = to_string(order);
  j["seed"] = r.spec.seed;
  j["repeat"] = r.spec.repeat;
  j["n"] = r.n;
  j["m"] = r.m;
  j["d"] = r.d;
  j["matching_weight"] = r.metrics.matching_weight;
  j["cardinality"] = r.metrics.cardinality;
  j["peak_stack_edges"] = r.metrics.peak_stack_edges;
  j["peak_stack_pins"] = r.metrics.peak_stack_pins;
  j["pushes"] = r.metrics.pushes;
  j["pops"] = r.metrics.pops;
  j["swaps"] = r.metrics.swaps;
  j["vertex_push_max"] = r.metrics.vertex_push_max;
  j["peak_matched_edges"] = r.metrics.peak_matched_edges;
  j["logical_memory"] = r.metrics.logical_memory;
  j["runtime_ns"] = r.metrics.runtime_ns;
  j["dual_upper_bound"] = opt(r.dual_upper_bound);
  j["dual_feasible"] = opt(r.dual_feasible);
  j["oracle_weight"] = opt(r.oracle_weight);
  j["matching"] = opt(r.matching);
  j["error"] = r.error.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.error);
  return j;
}

namespace detail {

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string csv_cell(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_string()) return csv_escape(v.get<std::string>());
  if (v.is_array()) {
    std::string joined;
    for (const auto& x : v) {
      if (!joined.empty()) joined += ' ';
      joined += x.dump();
    }
    return joined;
  }
  return csv_escape(v.dump());
}

}  // namespace detail

enum class Format { Csv, Json };

inline Format parse_format(std::string_view s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw InvalidInput("unknown format '" + std::string(s) + "'");
}

/// Streams records as CSV (header + one row each) or as a JSON array of flat objects.
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, Format format) : out_(out), format_(format) {}

  void begin() {
    if (format_ == Format::Csv) {
      const auto& cols = record_columns();
      for (std::size_t i = 0; i < cols.size(); ++i) out_ << (i ? "," : "") << cols[i];
      out_ << '\n';
    } else {
      out_ << '[';
    }
    out_.flush();
  }

  void write(const ResultRecord& r) {
    const auto j = to_json(r);
    if (format_ == Format::Csv) {
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        out_ << (first ? "" : ",") << detail::csv_cell(value);
        first = false;
      }
      out_ << '\n';
    } else {
      out_ << (count_ ? ",\n" : "\n") << j.dump();
    }
    ++count_;
    out_.flush();
  }

  void end() {
    if (format_ == Format::Json) out_ << (count_ ? "\n]\n" : "]\n");
    out_.flush();
  }

 private:
  std::ostream& out_;
  Format format_;
  std::size_t count_ = 0;
};

}  // namespace hypermatch::bench
