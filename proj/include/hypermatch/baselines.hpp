#pragma once

#include <chrono>

#include "hypermatch/core.hpp"
#include "hypermatch/io.hpp"

namespace hypermatch {

struct BaselineRun {
  Matching matching;
  RunMetrics metrics;
};

/// Streaming maximal matching: take an edge iff all of its vertices are free.
template <EdgeStream Stream>
BaselineRun run_naive(const Hypergraph& hg, Stream&& stream) {
  const auto start = std::chrono::steady_clock::now();
  BaselineRun run{Matching(hg.num_vertices()), {}};
  detail::PermutationGuard guard(hg.num_edges());
  for (auto&& raw_id : stream) {
    const auto id = static_cast<EdgeId>(raw_id);
    guard.visit(id);
    const Hyperedge& e = hg.edge(id);
    if (run.matching.is_free(e)) run.matching.add(e);
  }
  guard.finish();
  run.matching.normalize(hg);

  run.metrics.matching_weight = run.matching.weight;
  run.metrics.cardinality = run.matching.size();
  run.metrics.peak_matched_edges = run.matching.size();
  run.metrics.logical_memory = hg.num_vertices();
  run.metrics.runtime_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  return run;
}

/// Offline greedy: Naive over the descending-weight order (ties by edge id).
/// Holds the whole instance, so its logical memory is the total pin count.
inline BaselineRun run_greedy(const Hypergraph& hg) {
  const auto start = std::chrono::steady_clock::now();
  BaselineRun run = run_naive(hg, order_stream(hg, StreamOrder::descending()));
  run.metrics.logical_memory = hg.total_pins();
  run.metrics.runtime_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  return run;
}

}  // namespace hypermatch
