#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hypermatch/io.hpp"
#include "hypermatch/stack_matcher.hpp"
#include "support/brute_force.hpp"

namespace hypermatch {
namespace {

std::vector<EdgeId> original(const Hypergraph& hg) {
  return order_stream(hg, StreamOrder::original());
}

// e0={0,1} w1, e1={1,2} w3
Hypergraph two_edge_path() { return Hypergraph(3, {{{0, 1}, 1.0}, {{1, 2}, 3.0}}); }

TEST(EdgeDualSum, Examples) {
  DualState zero(3, 0.0);
  Hyperedge e01(0, {0, 1}, 1.0);
  EXPECT_EQ(edge_dual_sum(zero, e01), 0.0);

  DualState d(3, 0.0);
  d.phi = {1, 2, 0};
  EXPECT_EQ(edge_dual_sum(d, e01), 3.0);

  DualState half(2, 0.0);
  half.phi = {0.5, 0.5};
  EXPECT_EQ(edge_dual_sum(half, e01), 1.0);
}

TEST(Admit, Examples) {
  DualState d(2, 0.0);
  EXPECT_TRUE(admit(d, Hyperedge(0, {0, 1}, 0.001)));

  DualState eps1(2, 1.0);
  eps1.phi = {1.0, 0.0};
  EXPECT_TRUE(admit(eps1, Hyperedge(0, {0, 1}, 3.0)));   // 3 >= 2
  eps1.phi = {1.0, 1.0};
  EXPECT_FALSE(admit(eps1, Hyperedge(0, {0, 1}, 3.0)));  // 3 < 4
  eps1.phi = {0.75, 0.75};
  EXPECT_TRUE(admit(eps1, Hyperedge(0, {0, 1}, 3.0)));   // boundary 3 >= 3 admits
}

TEST(ApplyUpdate, GuaranteeAndLenient) {
  Hyperedge e(0, {0, 1}, 1.0);
  DualState g(2, 0.0);
  apply_update(g, e, UpdateRule::Guarantee);
  EXPECT_EQ(g.phi, (std::vector<double>{1.0, 1.0}));

  DualState l(2, 0.0);
  apply_update(l, e, UpdateRule::Lenient);
  EXPECT_EQ(l.phi, (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(edge_dual_sum(l, e), 1.0);
}

TEST(ApplyUpdate, ZeroGainAtBoundary) {
  DualState d(3, 0.0);
  d.phi = {1.25, 0.75, 4.0};
  Hyperedge e(0, {0, 1}, 2.0);  // W(e) = Phi_e exactly
  apply_update(d, e, UpdateRule::Guarantee);
  EXPECT_EQ(d.phi, (std::vector<double>{1.25, 0.75, 4.0}));
}

TEST(ApplyUpdate, RejectsUnadmittedEdge) {
  DualState d(2, 0.0);
  d.phi = {2.0, 2.0};
  EXPECT_THROW(apply_update(d, Hyperedge(0, {0, 1}, 3.0), UpdateRule::Guarantee), InvalidInput);
}

TEST(RunStackStream, TwoEdgeTrace) {
  auto hg = two_edge_path();
  auto run = run_stack_stream(hg, original(hg), 0.0, UpdateRule::Guarantee);
  EXPECT_EQ(run.dual.phi, (std::vector<double>{1, 3, 2}));
  EXPECT_EQ(run.matching.edge_ids, (std::vector<EdgeId>{1}));
  EXPECT_EQ(run.matching.weight, 3.0);
  EXPECT_EQ(testing::brute_force_max_weight(hg).weight, 3.0);
  EXPECT_EQ(run.metrics.pushes, 2u);
  EXPECT_EQ(run.metrics.pops, 2u);
  EXPECT_EQ(run.metrics.peak_stack_edges, 2u);
  EXPECT_EQ(run.metrics.peak_stack_pins, 4u);
  EXPECT_EQ(run.metrics.vertex_push_max, 2u);
  EXPECT_EQ(run.metrics.logical_memory, 4u + 3u);
  EXPECT_TRUE(validate_matching(hg, run.matching));
}

TEST(RunStackStream, ThreeEdgeTrace) {
  Hypergraph hg(4, {{{1, 2}, 2.0}, {{0, 1}, 5.0}, {{2, 3}, 5.0}});
  auto run = run_stack_stream(hg, original(hg), 0.0, UpdateRule::Guarantee);
  EXPECT_EQ(run.metrics.pushes, 3u);
  EXPECT_EQ(run.dual.phi, (std::vector<double>{3, 5, 5, 3}));
  EXPECT_EQ(run.matching.edge_ids, (std::vector<EdgeId>{1, 2}));
  EXPECT_EQ(run.matching.weight, 10.0);
  EXPECT_EQ(testing::brute_force_max_weight(hg).weight, 10.0);
}

TEST(RunStackStream, EmptyHypergraph) {
  Hypergraph hg(3, std::vector<Hyperedge>{});
  auto run = run_stack_stream(hg, std::vector<EdgeId>{}, 0.5, UpdateRule::Lenient);
  EXPECT_TRUE(run.matching.empty());
  EXPECT_EQ(run.dual.phi, (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(run.metrics.pushes, 0u);
  EXPECT_EQ(run.metrics.peak_stack_pins, 0u);
  EXPECT_EQ(run.metrics.vertex_push_max, 0u);
}

TEST(RunStackStream, RejectsNonPermutation) {
  auto hg = two_edge_path();
  EXPECT_THROW(run_stack_stream(hg, std::vector<EdgeId>{0}, 0.0, UpdateRule::Guarantee),
               InvalidInput);
  EXPECT_THROW(run_stack_stream(hg, std::vector<EdgeId>{0, 0}, 0.0, UpdateRule::Guarantee),
               InvalidInput);
  EXPECT_THROW(run_stack_stream(hg, std::vector<EdgeId>{0, 5}, 0.0, UpdateRule::Guarantee),
               InvalidInput);
  EXPECT_THROW(run_stack_stream(hg, original(hg), -0.1, UpdateRule::Guarantee), InvalidInput);
}

TEST(RunStackStream, AcceptsLazyStreams) {
  auto hg = two_edge_path();
  auto lazy = std::views::iota(0u, 2u);
  auto run = run_stack_stream(hg, lazy, 0.0, UpdateRule::Guarantee);
  EXPECT_EQ(run.matching.weight, 3.0);
}

TEST(DualCertificate, Examples) {
  auto hg = two_edge_path();
  auto run = run_stack_stream(hg, original(hg), 0.0, UpdateRule::Guarantee);
  EXPECT_TRUE(dual_feasible(hg, run.dual));
  EXPECT_EQ(dual_upper_bound(run.dual), 6.0);

  EXPECT_FALSE(dual_feasible(hg, DualState(3, 0.0)));
  EXPECT_EQ(dual_upper_bound(DualState(3, 0.0)), 0.0);

  DualState eps1 = run.dual;
  eps1.epsilon = 1.0;
  EXPECT_EQ(dual_upper_bound(eps1), 2.0 * dual_upper_bound(run.dual));

  Hypergraph single(4, {{{0, 2, 3}, 7.0}});
  for (auto rule : {UpdateRule::Guarantee, UpdateRule::Lenient}) {
    auto r = run_stack_stream(single, original(single), 0.0, rule);
    EXPECT_TRUE(dual_feasible(single, r.dual));
    EXPECT_EQ(edge_dual_sum(r.dual, single.edges()[0]),
              rule == UpdateRule::Guarantee ? 21.0 : 7.0);
  }
}

TEST(RunStackStream, NotNecessarilyMaximal) {
  // e0 leaves phi_0 = 2, which rejects e2; e1 then wins over e0 and vertex 0 stays free
  Hypergraph hg(3, {{{0, 1}, 2.0}, {{1, 2}, 3.0}, {{0}, 1.0}});
  auto run = run_stack_stream(hg, original(hg), 0.0, UpdateRule::Guarantee);
  EXPECT_EQ(run.matching.edge_ids, (std::vector<EdgeId>{1}));
  EXPECT_TRUE(run.matching.is_free(hg.edges()[2]));
}

class StackProperty : public ::testing::TestWithParam<UpdateRule> {};

TEST_P(StackProperty, ValidFeasibleMonotoneAndApproximate) {
  const UpdateRule rule = GetParam();
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    auto hg = testing::corpus_instance(seed);
    const auto opt = testing::brute_force_max_weight(hg).weight;
    for (double eps : {0.0, 0.1, 1.0}) {
      for (auto order : testing::all_orders(seed)) {
        const auto stream = order_stream(hg, order);

        // monotone duals, step by step
        DualState dual(hg.num_vertices(), eps);
        for (EdgeId id : stream) {
          const auto before = dual.phi;
          if (admit(dual, hg.edge(id))) apply_update(dual, hg.edge(id), rule);
          for (std::size_t v = 0; v < before.size(); ++v) ASSERT_GE(dual.phi[v], before[v]);
        }

        auto run = run_stack_stream(hg, stream, eps, rule);
        EXPECT_EQ(run.dual, dual);
        ASSERT_TRUE(validate_matching(hg, run.matching));
        EXPECT_TRUE(dual_feasible(hg, run.dual)) << "seed " << seed;
        EXPECT_LE(run.matching.weight, opt + 1e-9);
        EXPECT_LE(opt, dual_upper_bound(run.dual) + 1e-9 * opt);
        if (hg.num_edges() > 0) {
          const double d = static_cast<double>(hg.rank());
          EXPECT_GE(run.matching.weight, opt / (d * (1.0 + eps)) - 1e-9) << "seed " << seed;
        }
        EXPECT_EQ(run.metrics.pushes, run.metrics.pops);
        if (run.metrics.peak_stack_edges > 0) {
          EXPECT_GE(run.metrics.peak_stack_pins, run.metrics.peak_stack_edges);
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(BothRules, StackProperty,
                         ::testing::Values(UpdateRule::Guarantee, UpdateRule::Lenient));

TEST(StackPushBound, GuaranteeRuleIntegerWeights) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto hg = gen_random_hypergraph(20, 200, 4, 100, seed);
    for (double eps : {0.1, 1.0}) {
      for (auto order : testing::all_orders(seed)) {
        auto run = run_stack_stream(hg, order_stream(hg, order), eps, UpdateRule::Guarantee);
        const double ratio = hg.max_weight() / hg.min_weight();
        const auto bound =
            2 + static_cast<std::size_t>(std::floor(std::log(ratio) / std::log1p(eps)));
        EXPECT_LE(run.metrics.vertex_push_max, bound) << "seed " << seed << " eps " << eps;
      }
    }
  }
}

TEST(RunStackStream, Deterministic) {
  auto hg = gen_random_hypergraph(30, 300, 5, 1000, 4);
  auto stream = order_stream(hg, StreamOrder::random(8));
  auto a = run_stack_stream(hg, stream, 0.1, UpdateRule::Lenient);
  auto b = run_stack_stream(hg, stream, 0.1, UpdateRule::Lenient);
  EXPECT_EQ(a.matching, b.matching);
  EXPECT_EQ(a.dual, b.dual);
  EXPECT_TRUE(a.metrics.same_counters(b.metrics));
}

}  // namespace
}  // namespace hypermatch
