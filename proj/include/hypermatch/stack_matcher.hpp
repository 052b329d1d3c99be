#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <span>
#include <vector>

#include "hypermatch/core.hpp"

namespace hypermatch {

enum class UpdateRule {
  /// phi_v += W(e) - Phi_e on every vertex of an admitted edge.
  Guarantee,
  /// phi_v += (W(e) - Phi_e) / |e|.
  Lenient,
};

/// Per-vertex dual variables phi_v >= 0 and the admission slack epsilon.
struct DualState {
  std::vector<double> phi;
  double epsilon = 0.0;

  DualState() = default;
  DualState(std::size_t num_vertices, double eps) : phi(num_vertices, 0.0), epsilon(eps) {
    if (!(eps >= 0.0)) throw InvalidInput("epsilon must be >= 0");
  }

  friend bool operator==(const DualState&, const DualState&) = default;
};

/// Phi_e, summed left to right over the sorted vertices of the edge.
inline double edge_dual_sum(const DualState& dual, std::span<const VertexId> vertices) {
  double sum = 0.0;
  for (VertexId v : vertices) sum += dual.phi[v];
  return sum;
}

inline double edge_dual_sum(const DualState& dual, const Hyperedge& e) {
  return edge_dual_sum(dual, e.vertices());
}

/// W(e) >= (1 + eps) * Phi_e. The boundary case admits.
inline bool admit(const DualState& dual, std::span<const VertexId> vertices, Weight w) {
  return !(w < edge_dual_sum(dual, vertices) * (1.0 + dual.epsilon));
}

inline bool admit(const DualState& dual, const Hyperedge& e) {
  return admit(dual, e.vertices(), e.weight());
}

inline void apply_update(DualState& dual, std::span<const VertexId> vertices, Weight w,
                         UpdateRule rule) {
  const double phi_e = edge_dual_sum(dual, vertices);
  if (w < phi_e * (1.0 + dual.epsilon)) {
    throw InvalidInput("apply_update on an edge that fails the admission test");
  }
  double gain = w - phi_e;
  if (rule == UpdateRule::Lenient) gain /= static_cast<double>(vertices.size());
  for (VertexId v : vertices) dual.phi[v] += gain;
}

inline void apply_update(DualState& dual, const Hyperedge& e, UpdateRule rule) {
  apply_update(dual, e.vertices(), e.weight(), rule);
}

/// LIFO store of admitted edges. Each entry keeps its own copy of the vertex
/// list and weight, since a stream cannot be replayed during unwinding.
class CandidateStack {
 public:
  void push(EdgeId id, std::span<const VertexId> vertices, Weight w) {
    ids_.push_back(id);
    weights_.push_back(w);
    pins_.insert(pins_.end(), vertices.begin(), vertices.end());
    offsets_.push_back(pins_.size());
    peak_edges_ = std::max(peak_edges_, ids_.size());
    peak_pins_ = std::max(peak_pins_, pins_.size());
  }

  bool empty() const noexcept { return ids_.empty(); }
  std::size_t size() const noexcept { return ids_.size(); }

  EdgeId top_id() const { return ids_.back(); }
  Weight top_weight() const { return weights_.back(); }
  std::span<const VertexId> top_vertices() const {
    const std::size_t end = offsets_.back();
    const std::size_t begin = offsets_.size() > 1 ? offsets_[offsets_.size() - 2] : 0;
    return std::span<const VertexId>(pins_).subspan(begin, end - begin);
  }

  void pop() {
    const std::size_t begin = offsets_.size() > 1 ? offsets_[offsets_.size() - 2] : 0;
    pins_.resize(begin);
    offsets_.pop_back();
    weights_.pop_back();
    ids_.pop_back();
  }

  std::size_t peak_edges() const noexcept { return peak_edges_; }
  std::size_t peak_pins() const noexcept { return peak_pins_; }

 private:
  std::vector<EdgeId> ids_;
  std::vector<Weight> weights_;
  std::vector<std::size_t> offsets_;  // end offset of each entry in pins_
  std::vector<VertexId> pins_;
  std::size_t peak_edges_ = 0;
  std::size_t peak_pins_ = 0;
};

struct StackRun {
  Matching matching;
  DualState dual;
  RunMetrics metrics;
};

/// One pass over `stream`: push every edge that passes the admission test and
/// raise its duals, then pop the stack and keep each edge whose vertices are
/// still free. The matching's edge ids are returned in ascending order.
template <EdgeStream Stream>
StackRun run_stack_stream(const Hypergraph& hg, Stream&& stream, double epsilon,
                          UpdateRule rule) {
  const auto start = std::chrono::steady_clock::now();
  StackRun run{Matching(hg.num_vertices()), DualState(hg.num_vertices(), epsilon), {}};
  CandidateStack stack;
  std::vector<std::size_t> vertex_pushes(hg.num_vertices(), 0);
  detail::PermutationGuard guard(hg.num_edges());

  for (auto&& raw_id : stream) {
    const auto id = static_cast<EdgeId>(raw_id);
    guard.visit(id);
    const Hyperedge& e = hg.edge(id);
    if (!admit(run.dual, e)) continue;
    stack.push(id, e.vertices(), e.weight());
    apply_update(run.dual, e, rule);
    for (VertexId v : e.vertices()) ++vertex_pushes[v];
  }
  guard.finish();

  RunMetrics& metrics = run.metrics;
  metrics.pushes = stack.size();
  metrics.peak_stack_edges = stack.peak_edges();
  metrics.peak_stack_pins = stack.peak_pins();
  metrics.vertex_push_max =
      vertex_pushes.empty() ? 0 : *std::ranges::max_element(vertex_pushes);

  // The matching's owner map doubles as the "vertex taken" marks.
  while (!stack.empty()) {
    auto vertices = stack.top_vertices();
    if (run.matching.is_free(vertices)) {
      run.matching.add(stack.top_id(), vertices, stack.top_weight());
    }
    stack.pop();
    ++metrics.pops;
  }
  run.matching.normalize(hg);

  metrics.matching_weight = run.matching.weight;
  metrics.cardinality = run.matching.size();
  metrics.peak_matched_edges = run.matching.size();
  metrics.logical_memory = metrics.peak_stack_pins + hg.num_vertices();
  metrics.runtime_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  return run;
}

/// (1 + eps) * sum_{v in e} phi_v >= W(e) for every edge, up to a relative slack of 1e-9.
inline bool dual_feasible(const Hypergraph& hg, const DualState& dual) {
  return std::ranges::all_of(hg.edges(), [&](const Hyperedge& e) {
    const double lhs = (1.0 + dual.epsilon) * edge_dual_sum(dual, e);
    return lhs >= e.weight() - 1e-9 * e.weight();
  });
}

/// (1 + eps) * sum_v phi_v; bounds the optimum whenever dual_feasible() holds.
inline double dual_upper_bound(const DualState& dual) {
  double sum = 0.0;
  for (double p : dual.phi) sum += p;
  return (1.0 + dual.epsilon) * sum;
}

}  // namespace hypermatch
