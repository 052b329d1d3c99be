#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "hypermatch/core.hpp"

namespace hypermatch {

/// Per-vertex reference to the matched edge covering it (kNoEdge when free).
/// Edge contents are looked up in the bound hypergraph.
class SwapState {
 public:
  SwapState(const Hypergraph& hg, double alpha)
      : hg_(&hg), best_(hg.num_vertices(), kNoEdge), alpha_(alpha) {
    if (!(alpha >= 0.0)) throw InvalidInput("alpha must be >= 0");
  }

  double alpha() const noexcept { return alpha_; }
  EdgeId best(VertexId v) const { return best_[v]; }
  std::span<const EdgeId> best() const noexcept { return best_; }
  std::size_t matched_edges() const noexcept { return matched_edges_; }
  std::size_t evictions() const noexcept { return evictions_; }
  const Hypergraph& hypergraph() const noexcept { return *hg_; }

  /// Distinct matched edges that share a vertex with `e`, ascending by id.
  std::vector<EdgeId> conflict_set(const Hyperedge& e) const {
    std::vector<EdgeId> conflicts;
    for (VertexId v : e.vertices()) {
      if (best_[v] != kNoEdge) conflicts.push_back(best_[v]);
    }
    std::ranges::sort(conflicts);
    auto dup = std::ranges::unique(conflicts);
    conflicts.erase(dup.begin(), dup.end());
    return conflicts;
  }

  /// W(C) over the conflict set, each edge counted once.
  Weight conflict_weight(const Hyperedge& e) const {
    Weight sum = 0.0;
    for (EdgeId f : conflict_set(e)) sum += hg_->edge(f).weight();
    return sum;
  }

  /// Replaces the conflicting edges by `e` iff W(e) >= (1 + alpha) * W(C).
  bool try_swap(const Hyperedge& e) {
    const auto conflicts = conflict_set(e);
    Weight phi_e = 0.0;
    for (EdgeId f : conflicts) phi_e += hg_->edge(f).weight();
    if (e.weight() < (1.0 + alpha_) * phi_e) return false;

    for (EdgeId f : conflicts) {
      for (VertexId w : hg_->edge(f).vertices()) best_[w] = kNoEdge;
    }
    for (VertexId v : e.vertices()) best_[v] = e.id();
    evictions_ += conflicts.size();
    matched_edges_ = matched_edges_ - conflicts.size() + 1;
    return true;
  }

  /// True iff the references encode a valid matching: every v with
  /// best(v) = f lies in f, and every vertex of f points back to f.
  bool consistent() const {
    for (VertexId v = 0; v < best_.size(); ++v) {
      const EdgeId f = best_[v];
      if (f == kNoEdge) continue;
      const auto& edge = hg_->edge(f);
      if (!std::ranges::binary_search(edge.vertices(), v)) return false;
      for (VertexId w : edge.vertices()) {
        if (best_[w] != f) return false;
      }
    }
    return true;
  }

  Matching to_matching() const {
    std::vector<EdgeId> ids;
    for (EdgeId f : best_) {
      if (f != kNoEdge) ids.push_back(f);
    }
    std::ranges::sort(ids);
    auto dup = std::ranges::unique(ids);
    ids.erase(dup.begin(), dup.end());
    Matching m(hg_->num_vertices());
    for (EdgeId id : ids) m.add(hg_->edge(id));
    m.normalize(*hg_);
    return m;
  }

 private:
  const Hypergraph* hg_;
  std::vector<EdgeId> best_;
  double alpha_;
  std::size_t matched_edges_ = 0;
  std::size_t evictions_ = 0;
};

struct SwapRun {
  Matching matching;
  RunMetrics metrics;
};

template <EdgeStream Stream>
SwapRun run_swapset(const Hypergraph& hg, Stream&& stream, double alpha) {
  const auto start = std::chrono::steady_clock::now();
  SwapState state(hg, alpha);
  detail::PermutationGuard guard(hg.num_edges());
  std::size_t peak_matched = 0;
  for (auto&& raw_id : stream) {
    const auto id = static_cast<EdgeId>(raw_id);
    guard.visit(id);
    state.try_swap(hg.edge(id));
    peak_matched = std::max(peak_matched, state.matched_edges());
  }
  guard.finish();

  SwapRun run{state.to_matching(), {}};
  run.metrics.matching_weight = run.matching.weight;
  run.metrics.cardinality = run.matching.size();
  run.metrics.swaps = state.evictions();
  run.metrics.peak_matched_edges = peak_matched;
  run.metrics.logical_memory = hg.num_vertices();
  run.metrics.runtime_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  return run;
}

/// sqrt((d - 1) / d), the alpha maximizing swapset_ratio(); 0 for d <= 1.
inline double optimal_alpha(std::size_t d) {
  if (d <= 1) return 0.0;
  const auto dd = static_cast<double>(d);
  return std::sqrt((dd - 1.0) / dd);
}

/// Guaranteed fraction of the optimum: 1 / ((1 + alpha) * ((d - 1) / alpha + d)).
/// With d = 1 the (d - 1) / alpha term vanishes, so alpha = 0 is allowed there.
inline double swapset_ratio(double alpha, std::size_t d) {
  if (d < 1) throw InvalidInput("swapset_ratio needs d >= 1");
  if (d == 1 && alpha >= 0.0) return 1.0 / (1.0 + alpha);
  if (!(alpha > 0.0)) throw InvalidInput("swapset_ratio needs alpha > 0");
  const auto dd = static_cast<double>(d);
  return 1.0 / ((1.0 + alpha) * ((dd - 1.0) / alpha + dd));
}

}  // namespace hypermatch
