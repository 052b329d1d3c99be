#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "hypermatch/core.hpp"
#include "hypermatch/random.hpp"
#include "support/brute_force.hpp"

namespace hypermatch {
namespace {

Hypergraph path3() {
  // e0={1,2}, e1={2,3}, e2={3,4} over 5 vertices
  return Hypergraph(5, {{{1, 2}, 3.0}, {{2, 3}, 3.0}, {{3, 4}, 3.0}});
}

TEST(Hyperedge, SortsAndDeduplicatesVertices) {
  Hyperedge e(0, {4, 1, 4, 2}, 2.5);
  EXPECT_EQ(std::vector<VertexId>(e.vertices().begin(), e.vertices().end()),
            (std::vector<VertexId>{1, 2, 4}));
  EXPECT_EQ(e.size(), 3u);
}

TEST(Hyperedge, RejectsEmptyAndNonPositive) {
  EXPECT_THROW(Hyperedge(0, {}, 1.0), InvalidInput);
  EXPECT_THROW(Hyperedge(0, {1}, 0.0), InvalidInput);
  EXPECT_THROW(Hyperedge(0, {1}, -3.0), InvalidInput);
}

TEST(Hyperedge, SingletonIsLegal) {
  Hyperedge e(0, {7}, 1.0);
  EXPECT_EQ(e.size(), 1u);
}

TEST(Hypergraph, DerivedQuantities) {
  Hypergraph hg(6, {{{0, 1, 2}, 1.0}, {{3}, 4.0}, {{4, 5}, 2.0}});
  EXPECT_EQ(hg.num_edges(), 3u);
  EXPECT_EQ(hg.rank(), 3u);
  EXPECT_EQ(hg.total_pins(), 6u);
  EXPECT_EQ(hg.min_weight(), 1.0);
  EXPECT_EQ(hg.max_weight(), 4.0);
  EXPECT_EQ(Hypergraph().rank(), 0u);
}

TEST(Hypergraph, RejectsOutOfRangeVertex) {
  EXPECT_THROW(Hypergraph(2, {{{0, 2}, 1.0}}), InvalidInput);
}

TEST(MatchingWeight, Examples) {
  auto hg = Hypergraph(4, {{{0, 1}, 3.0}, {{2, 3}, 3.0}, {{1}, 5.0}});
  EXPECT_EQ(matching_weight(hg, std::vector<EdgeId>{}), 0.0);
  EXPECT_EQ(matching_weight(hg, std::vector<EdgeId>{2}), 5.0);
  EXPECT_EQ(matching_weight(hg, std::vector<EdgeId>{0, 1}), 6.0);
  EXPECT_THROW(matching_weight(hg, std::vector<EdgeId>{9}), InvalidInput);
}

TEST(MatchingWeight, PermutationInvariant) {
  Rng rng(5);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    // real-valued weights so that summation order would matter
    std::vector<std::pair<std::vector<VertexId>, Weight>> edges;
    for (int i = 0; i < 10; ++i) {
      edges.push_back({{static_cast<VertexId>(i)}, 0.1 + static_cast<double>(rng.below(1000)) / 7.0});
    }
    Hypergraph hg(10, std::move(edges));
    std::vector<EdgeId> ids{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    const Weight reference = matching_weight(hg, ids);
    rng.shuffle(std::span<EdgeId>(ids));
    EXPECT_EQ(matching_weight(hg, ids), reference);
  }
}

TEST(ValidateMatching, EmptyIsValid) {
  auto hg = path3();
  EXPECT_TRUE(validate_matching(hg, Matching(hg.num_vertices())));
}

TEST(ValidateMatching, SharedVertexIsInvalid) {
  auto hg = path3();
  EXPECT_FALSE(validate_matching(hg, make_matching(hg, std::vector<EdgeId>{0, 1})));
}

TEST(ValidateMatching, DisjointWithConsistentWeight) {
  auto hg = path3();
  auto m = make_matching(hg, std::vector<EdgeId>{0, 2});
  EXPECT_EQ(m.weight, 6.0);
  EXPECT_TRUE(validate_matching(hg, m));
}

TEST(ValidateMatching, DetectsStaleCacheAndOwnerMap) {
  auto hg = path3();
  auto m = make_matching(hg, std::vector<EdgeId>{0, 2});
  m.weight = 7.0;
  EXPECT_FALSE(validate_matching(hg, m));

  auto m2 = make_matching(hg, std::vector<EdgeId>{0});
  m2.owner[4] = 0;  // vertex 4 is not in e0
  EXPECT_FALSE(validate_matching(hg, m2));

  auto m3 = make_matching(hg, std::vector<EdgeId>{0, 0});
  EXPECT_FALSE(validate_matching(hg, m3));
}

TEST(ValidateMatching, UnknownEdgeIdThrows) {
  auto hg = path3();
  Matching m(hg.num_vertices());
  m.edge_ids.push_back(42);
  EXPECT_THROW(validate_matching(hg, m), InvalidInput);
}

TEST(ValidateMatching, AgreesWithVertexCounting) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto hg = testing::corpus_instance(seed);
    Rng rng(seed);
    std::vector<EdgeId> pick;
    for (const auto& e : hg.edges()) {
      if (rng.below(3) == 0) pick.push_back(e.id());
    }
    std::vector<int> count(hg.num_vertices(), 0);
    for (EdgeId id : pick) {
      for (VertexId v : hg.edge(id).vertices()) ++count[v];
    }
    const bool disjoint = std::ranges::all_of(count, [](int c) { return c <= 1; });
    EXPECT_EQ(validate_matching(hg, make_matching(hg, pick)), disjoint) << "seed " << seed;
  }
}

}  // namespace
}  // namespace hypermatch
