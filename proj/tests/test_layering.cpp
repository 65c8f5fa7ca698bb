#include <random>

#include <gtest/gtest.h>

#include "hashnet/reference.hpp"
#include "test_util.hpp"

using namespace hashnet;
using testutil::graph;
using testutil::triangle;

TEST(ThresholdEdges, Examples) {
  WeightedGraph g = graph({{"a", "b", 1}, {"b", "c", 2}});
  g.add_node("lonely");
  const auto t1 = threshold_edges(g, 1);
  EXPECT_EQ(t1.node_count(), 3u);
  EXPECT_FALSE(t1.has_node("lonely"));
  EXPECT_EQ(t1.edges(), g.edges());
  EXPECT_TRUE(threshold_edges(triangle(1), 2).empty());
  const auto t2 = threshold_edges(graph({{"a", "b", 3}, {"b", "c", 1}}), 2);
  EXPECT_EQ(t2, graph({{"a", "b", 3}}));
}

TEST(KCore, Examples) {
  EXPECT_EQ(k_core(triangle(), 2), triangle());
  EXPECT_TRUE(k_core(graph({{"a", "b", 1}, {"b", "c", 1}}), 2).empty());
  auto tp = triangle();
  tp.add_edge("c", "d");
  EXPECT_EQ(k_core(tp, 2), triangle());
  EXPECT_EQ(k_core(tp, 2), reference::reference_kcore(tp, 2));
}

TEST(BuildLayers, EmptyAndPlanted) {
  const auto empty = build_layers(WeightedGraph{});
  EXPECT_TRUE(empty.core.empty());
  EXPECT_TRUE(empty.coverage.empty());

  const auto corpus = synth::generate_synthetic_corpus({});
  const auto g = build_epoch_graph(segment_epochs(corpus.records, EpochConfig::standard()).buckets[0].records);
  const auto layers = build_layers(g, 2, 2);
  EXPECT_EQ(layers.core.node_set(), corpus.truth.backbone_nodes());
  for (const auto& f : corpus.truth.fringe)
    for (const auto& a : f.anchors) EXPECT_EQ(layers.coverage.weight(f.tag, a), 1u);
}

namespace {

// Maximality by brute force: adding back any non-empty set of removed nodes
// (with their edges) must leave some node under degree k.
bool maximal(const WeightedGraph& g, const WeightedGraph& core, std::size_t k) {
  std::vector<Node> removed;
  for (const auto& n : g.nodes())
    if (!core.has_node(n)) removed.push_back(n);
  const std::size_t r = removed.size();
  for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
    NodeSet keep = core.node_set();
    for (std::size_t i = 0; i < r; ++i)
      if (mask & (1u << i)) keep.insert(removed[i]);
    const auto sub = g.induced(keep);
    bool ok = true;
    for (const auto& n : sub.nodes()) ok = ok && sub.degree(n) >= k;
    if (ok) return false;
  }
  return true;
}

}  // namespace

TEST(KCore, PropertiesOnRandomGraphs) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const auto g = synth::erdos_renyi(n, 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0, rng, 3);
    for (std::size_t k : {1u, 2u, 3u}) {
      const auto core = k_core(g, k);
      EXPECT_EQ(k_core(core, k), core);
      EXPECT_EQ(core, reference::reference_kcore(g, k));
      for (const auto& v : core.nodes()) EXPECT_GE(core.degree(v), k);
      EXPECT_TRUE(testutil::is_subgraph(core, g));
      EXPECT_TRUE(maximal(g, core, k));
    }
  }
}

TEST(Layers, ContainmentAndMonotoneThreshold) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = build_epoch_graph(testutil::random_corpus(rng, 60, 9));
    const auto lp = build_layers(g, 1 + rng() % 3, 1 + rng() % 3);
    EXPECT_TRUE(testutil::is_subgraph(lp.core, lp.coverage));
    for (Weight w1 = 1; w1 <= 3; ++w1)
      EXPECT_TRUE(testutil::is_subgraph(threshold_edges(g, w1 + 1), threshold_edges(g, w1)));
  }
}

TEST(Layers, RejectsZeroParameters) {
  EXPECT_THROW(build_layers(triangle(), 0, 2), std::invalid_argument);
  EXPECT_THROW(build_layers(triangle(), 2, 0), std::invalid_argument);
}
