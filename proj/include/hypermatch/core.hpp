#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hypermatch {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Weight = double;

/// Sentinel for "no edge" in per-vertex owner maps.
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

struct InvalidInput : Error {
  using Error::Error;
  const char* kind() const noexcept override { return "InvalidInput"; }
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }
  const char* kind() const noexcept override { return "ParseError"; }

 private:
  std::size_t line_;
};

struct TooLarge : Error {
  using Error::Error;
  const char* kind() const noexcept override { return "TooLarge"; }
};

/// A weighted set of vertices. Vertices are kept sorted and unique.
class Hyperedge {
 public:
  Hyperedge(EdgeId id, std::vector<VertexId> vertices, Weight weight)
      : id_(id), vertices_(std::move(vertices)), weight_(weight) {
    std::ranges::sort(vertices_);
    auto dup = std::ranges::unique(vertices_);
    vertices_.erase(dup.begin(), dup.end());
    if (vertices_.empty()) {
      throw InvalidInput("hyperedge " + std::to_string(id) + " has no vertices");
    }
    if (!(weight_ > 0.0) || !std::isfinite(weight_)) {
      throw InvalidInput("hyperedge " + std::to_string(id) + " has non-positive weight");
    }
  }

  EdgeId id() const noexcept { return id_; }
  Weight weight() const noexcept { return weight_; }
  std::span<const VertexId> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  bool intersects(const Hyperedge& other) const {
    auto a = vertices_.begin();
    auto b = other.vertices_.begin();
    while (a != vertices_.end() && b != other.vertices_.end()) {
      if (*a == *b) return true;
      if (*a < *b) {
        ++a;
      } else {
        ++b;
      }
    }
    return false;
  }

  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;

 private:
  EdgeId id_;
  std::vector<VertexId> vertices_;
  Weight weight_;
};

/// Immutable weighted hypergraph. Edge ids equal their position in edges().
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Takes (vertices, weight) pairs in stream order; ids are assigned by position.
  Hypergraph(std::size_t num_vertices, std::vector<std::pair<std::vector<VertexId>, Weight>> edges)
      : n_(num_vertices) {
    edges_.reserve(edges.size());
    for (auto& [vertices, weight] : edges) {
      auto id = static_cast<EdgeId>(edges_.size());
      edges_.emplace_back(id, std::move(vertices), weight);
    }
    finish();
  }

  Hypergraph(std::size_t num_vertices, std::vector<Hyperedge> edges)
      : n_(num_vertices), edges_(std::move(edges)) {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (edges_[i].id() != i) throw InvalidInput("edge ids must equal their position");
    }
    finish();
  }

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  /// Rank: the largest edge size, 0 when there are no edges.
  std::size_t rank() const noexcept { return rank_; }
  std::size_t total_pins() const noexcept { return total_pins_; }

  std::span<const Hyperedge> edges() const noexcept { return edges_; }
  const Hyperedge& edge(EdgeId id) const {
    if (id >= edges_.size()) throw InvalidInput("unknown edge id " + std::to_string(id));
    return edges_[id];
  }

  Weight min_weight() const noexcept { return min_weight_; }
  Weight max_weight() const noexcept { return max_weight_; }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void finish() {
    if (edges_.size() >= kNoEdge) throw InvalidInput("too many edges");
    rank_ = 0;
    total_pins_ = 0;
    min_weight_ = edges_.empty() ? 0.0 : std::numeric_limits<Weight>::infinity();
    max_weight_ = 0.0;
    for (const auto& e : edges_) {
      if (e.vertices().back() >= n_) {
        throw InvalidInput("edge " + std::to_string(e.id()) + " references vertex " +
                           std::to_string(e.vertices().back()) + " >= n");
      }
      rank_ = std::max(rank_, e.size());
      total_pins_ += e.size();
      min_weight_ = std::min(min_weight_, e.weight());
      max_weight_ = std::max(max_weight_, e.weight());
    }
  }

  std::size_t n_ = 0;
  std::vector<Hyperedge> edges_;
  std::size_t rank_ = 0;
  std::size_t total_pins_ = 0;
  Weight min_weight_ = 0.0;
  Weight max_weight_ = 0.0;
};

/// Sum of edge weights. Summed in ascending id order, so the result does not
/// depend on the order of `edge_ids`.
inline Weight matching_weight(const Hypergraph& hg, std::span<const EdgeId> edge_ids) {
  std::vector<EdgeId> sorted(edge_ids.begin(), edge_ids.end());
  std::ranges::sort(sorted);
  Weight sum = 0.0;
  for (EdgeId id : sorted) sum += hg.edge(id).weight();
  return sum;
}

/// A set of edges with a per-vertex owner map and a cached weight.
///
/// The fields are public so that arbitrary (possibly invalid) selections can be
/// represented and checked with validate_matching(). add() keeps the cache and
/// the owner map consistent.
struct Matching {
  std::vector<EdgeId> edge_ids;
  std::vector<EdgeId> owner;
  Weight weight = 0.0;

  Matching() = default;
  explicit Matching(std::size_t num_vertices) : owner(num_vertices, kNoEdge) {}

  std::size_t size() const noexcept { return edge_ids.size(); }
  bool empty() const noexcept { return edge_ids.empty(); }

  bool is_free(std::span<const VertexId> vertices) const {
    return std::ranges::all_of(vertices, [&](VertexId v) { return owner[v] == kNoEdge; });
  }
  bool is_free(const Hyperedge& e) const { return is_free(e.vertices()); }

  void add(EdgeId id, std::span<const VertexId> vertices, Weight w) {
    for (VertexId v : vertices) owner[v] = id;
    edge_ids.push_back(id);
    weight += w;
  }
  void add(const Hyperedge& e) { add(e.id(), e.vertices(), e.weight()); }

  /// Puts edge ids in ascending order and recomputes the cached weight in that order.
  void normalize(const Hypergraph& hg) {
    std::ranges::sort(edge_ids);
    weight = matching_weight(hg, edge_ids);
  }

  friend bool operator==(const Matching&, const Matching&) = default;
};

/// Builds the owner map and weight for an arbitrary edge selection. Vertices
/// claimed twice keep their first owner, which validate_matching() rejects.
inline Matching make_matching(const Hypergraph& hg, std::span<const EdgeId> edge_ids) {
  Matching m(hg.num_vertices());
  for (EdgeId id : edge_ids) {
    const auto& e = hg.edge(id);
    for (VertexId v : e.vertices()) {
      if (m.owner[v] == kNoEdge) m.owner[v] = id;
    }
    m.edge_ids.push_back(id);
  }
  m.weight = matching_weight(hg, edge_ids);
  return m;
}

/// True iff the selected edges are pairwise vertex-disjoint, the owner map is
/// exactly their incidence map and the cached weight matches the recomputed sum.
inline bool validate_matching(const Hypergraph& hg, const Matching& m) {
  for (EdgeId id : m.edge_ids) {
    if (id >= hg.num_edges()) throw InvalidInput("unknown edge id " + std::to_string(id));
  }
  if (m.owner.size() != hg.num_vertices()) return false;

  std::vector<EdgeId> incidence(hg.num_vertices(), kNoEdge);
  for (EdgeId id : m.edge_ids) {
    for (VertexId v : hg.edge(id).vertices()) {
      if (incidence[v] != kNoEdge) return false;
      incidence[v] = id;
    }
  }
  if (incidence != m.owner) return false;

  const Weight expected = matching_weight(hg, m.edge_ids);
  return std::abs(expected - m.weight) <= 1e-12 * std::max(1.0, std::abs(expected));
}

/// Counters collected by one algorithm run. Runtime excludes input loading.
struct RunMetrics {
  Weight matching_weight = 0.0;
  std::size_t cardinality = 0;
  std::size_t peak_stack_edges = 0;
  std::size_t peak_stack_pins = 0;
  std::size_t pushes = 0;
  std::size_t pops = 0;
  std::size_t swaps = 0;
  std::size_t vertex_push_max = 0;
  /// Largest number of distinct edges held in the in-stream matching.
  std::size_t peak_matched_edges = 0;
  /// Deterministic proxy for heap use: live edge references, dual slots and stack pins.
  std::size_t logical_memory = 0;
  std::int64_t runtime_ns = 0;

  /// Equality over everything except runtime.
  bool same_counters(const RunMetrics& o) const {
    return matching_weight == o.matching_weight && cardinality == o.cardinality &&
           peak_stack_edges == o.peak_stack_edges && peak_stack_pins == o.peak_stack_pins &&
           pushes == o.pushes && pops == o.pops && swaps == o.swaps &&
           vertex_push_max == o.vertex_push_max && peak_matched_edges == o.peak_matched_edges &&
           logical_memory == o.logical_memory;
  }
};

namespace detail {

/// Checks on the fly that a stream visits every edge id exactly once.
class PermutationGuard {
 public:
  explicit PermutationGuard(std::size_t m) : seen_(m, false) {}

  void visit(EdgeId id) {
    if (id >= seen_.size()) {
      throw InvalidInput("stream contains unknown edge id " + std::to_string(id));
    }
    if (seen_[id]) throw InvalidInput("stream repeats edge id " + std::to_string(id));
    seen_[id] = true;
    ++count_;
  }

  void finish() const {
    if (count_ != seen_.size()) {
      throw InvalidInput("stream has " + std::to_string(count_) + " edges, expected " +
                         std::to_string(seen_.size()));
    }
  }

 private:
  std::vector<bool> seen_;
  std::size_t count_ = 0;
};

}  // namespace detail

/// Any range that yields edge ids.
template <typename R>
concept EdgeStream =
    std::ranges::input_range<R> && std::convertible_to<std::ranges::range_value_t<R>, EdgeId>;

}  // namespace hypermatch
