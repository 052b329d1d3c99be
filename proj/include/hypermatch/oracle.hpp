#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "hypermatch/core.hpp"

namespace hypermatch {

struct OracleLimits {
  std::size_t max_edges = 24;
  std::uint64_t max_nodes_expanded = std::uint64_t{1} << 26;
};

namespace detail {

class BranchAndBound {
 public:
  BranchAndBound(const Hypergraph& hg, const OracleLimits& limits)
      : hg_(hg), limits_(limits), taken_(hg.num_vertices(), false) {
    order_.resize(hg.num_edges());
    std::iota(order_.begin(), order_.end(), EdgeId{0});
    std::ranges::stable_sort(order_, [&](EdgeId a, EdgeId b) {
      return hg.edges()[a].weight() > hg.edges()[b].weight();
    });
    suffix_.assign(order_.size() + 1, 0.0);
    for (std::size_t i = order_.size(); i-- > 0;) {
      suffix_[i] = suffix_[i + 1] + hg.edges()[order_[i]].weight();
    }
  }

  std::vector<EdgeId> solve() {
    search(0, 0.0);
    return best_set_;
  }

 private:
  void search(std::size_t i, Weight current) {
    if (++nodes_ > limits_.max_nodes_expanded) {
      throw TooLarge("oracle exceeded " + std::to_string(limits_.max_nodes_expanded) +
                     " node expansions");
    }
    // Strict comparison keeps equal-weight branches alive for the id tie-break.
    if (current + suffix_[i] < best_weight_) return;
    if (i == order_.size()) {
      offer(current);
      return;
    }
    const Hyperedge& e = hg_.edges()[order_[i]];
    const bool fits = std::ranges::none_of(e.vertices(), [&](VertexId v) { return taken_[v]; });
    if (fits) {
      for (VertexId v : e.vertices()) taken_[v] = true;
      chosen_.push_back(e.id());
      search(i + 1, current + e.weight());
      chosen_.pop_back();
      for (VertexId v : e.vertices()) taken_[v] = false;
    }
    search(i + 1, current);
  }

  void offer(Weight current) {
    std::vector<EdgeId> candidate = chosen_;
    std::ranges::sort(candidate);
    if (current > best_weight_ || (current == best_weight_ && candidate < best_set_)) {
      best_weight_ = current;
      best_set_ = std::move(candidate);
    }
  }

  const Hypergraph& hg_;
  OracleLimits limits_;
  std::vector<EdgeId> order_;
  std::vector<Weight> suffix_;
  std::vector<bool> taken_;
  std::vector<EdgeId> chosen_;
  std::vector<EdgeId> best_set_;
  Weight best_weight_ = -1.0;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Maximum-weight matching by include/exclude branch-and-bound over edges in
/// descending weight order. Among optimal matchings the lexicographically
/// smallest sorted id set is returned. Throws TooLarge past `limits`.
inline Matching exact_max_weight_matching(const Hypergraph& hg, const OracleLimits& limits = {}) {
  if (hg.num_edges() > limits.max_edges) {
    throw TooLarge("oracle accepts at most " + std::to_string(limits.max_edges) + " edges, got " +
                   std::to_string(hg.num_edges()));
  }
  const auto ids = detail::BranchAndBound(hg, limits).solve();
  Matching m(hg.num_vertices());
  for (EdgeId id : ids) m.add(hg.edge(id));
  m.normalize(hg);
  return m;
}

/// True iff every edge outside `m` shares a vertex with it.
inline bool is_maximal(const Hypergraph& hg, const Matching& m) {
  return std::ranges::none_of(hg.edges(), [&](const Hyperedge& e) { return m.is_free(e); });
}

}  // namespace hypermatch
