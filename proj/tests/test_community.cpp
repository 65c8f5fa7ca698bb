#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hashnet/reference.hpp"
#include "test_util.hpp"

using namespace hashnet;
using testutil::graph;
using testutil::triangle;

namespace {

WeightedGraph two_triangles() {
  return graph({{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}, {"x", "y", 1}, {"y", "z", 1}, {"x", "z", 1}});
}

std::set<NodeSet> as_sets(const Partition& p) {
  std::set<NodeSet> out;
  for (const auto& c : p.communities) out.insert(NodeSet(c.begin(), c.end()));
  return out;
}

}  // namespace

TEST(EdgeBetweenness, Examples) {
  const auto single = edge_betweenness(graph({{"a", "b", 1}}));
  EXPECT_DOUBLE_EQ(single.at(EdgeKey("a", "b")), 1.0);
  const auto path = edge_betweenness(graph({{"a", "b", 1}, {"b", "c", 1}}));
  EXPECT_DOUBLE_EQ(path.at(EdgeKey("a", "b")), 2.0);
  EXPECT_DOUBLE_EQ(path.at(EdgeKey("b", "c")), 2.0);
}

TEST(EdgeBetweenness, BarbellBridgeIsMaximal) {
  auto g = two_triangles();
  g.add_edge("c", "x");
  const auto eb = edge_betweenness(g);
  const double bridge = eb.at(EdgeKey("c", "x"));
  EXPECT_DOUBLE_EQ(bridge, 9.0);
  for (const auto& [e, v] : eb)
    if (!(e == EdgeKey("c", "x"))) {
      EXPECT_LT(v, bridge);
    }
}

TEST(EdgeBetweenness, SumEqualsPairDistances) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = synth::erdos_renyi(2 + rng() % 9, 0.4, rng, 4);
    double sum = 0.0;
    for (const auto& [_, v] : edge_betweenness(g)) sum += v;
    double dist = 0.0;
    const auto nodes = g.nodes();
    for (const auto& s : nodes)
      for (const auto& [t, d] : reference::hop_distances(nodes, g.edge_keys(), s))
        if (s < t && d > 0) dist += d;
    EXPECT_NEAR(sum, dist, 1e-9);
  }
}

TEST(EdgeBetweenness, WeightedUsesInverseWeightDistance) {
  // square a-b-c-d-a with one heavy side: weighted shortest a->c prefers the heavy edges
  const auto g = graph({{"a", "b", 4}, {"b", "c", 4}, {"c", "d", 1}, {"d", "a", 1}});
  const auto unweighted = edge_betweenness(g);
  const auto weighted = edge_betweenness(g, {.weighted = true});
  EXPECT_DOUBLE_EQ(unweighted.at(EdgeKey("a", "b")), unweighted.at(EdgeKey("c", "d")));
  EXPECT_GT(weighted.at(EdgeKey("a", "b")), weighted.at(EdgeKey("c", "d")));
}

TEST(GirvanNewman, Examples) {
  const auto tri = girvan_newman(triangle());
  ASSERT_GE(tri.levels.size(), 2u);
  EXPECT_EQ(tri.levels.front().size(), 1u);
  EXPECT_EQ(tri.levels.back().size(), 3u);

  const auto two = girvan_newman(two_triangles());
  EXPECT_EQ(as_sets(two.levels.front()), (std::set<NodeSet>{{"a", "b", "c"}, {"x", "y", "z"}}));
}

TEST(GirvanNewman, LevelsRefineAndEndInSingletons) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = synth::erdos_renyi(1 + rng() % 12, 0.35, rng, 3);
    const auto d = girvan_newman(g);
    EXPECT_EQ(as_sets(d.levels.front()).size(), connected_components(g).size());
    EXPECT_EQ(d.levels.back().size(), g.node_count());
    for (std::size_t i = 1; i < d.levels.size(); ++i) {
      EXPECT_GT(d.levels[i].size(), d.levels[i - 1].size());
      const auto parent = d.levels[i - 1].membership();
      for (const auto& c : d.levels[i].communities)
        for (const auto& n : c) EXPECT_EQ(parent.at(n), parent.at(c.front()));
    }
    const auto best = select_partition(d);
    for (const auto& lvl : d.levels) EXPECT_GE(best.modularity, lvl.modularity - 1e-12);
  }
}

TEST(Modularity, Examples) {
  EXPECT_NEAR(modularity(triangle(), {{"a", "b", "c"}}), 0.0, 1e-12);
  EXPECT_NEAR(modularity(two_triangles(), {{"a", "b", "c"}, {"x", "y", "z"}}), 0.5, 1e-12);
  EXPECT_EQ(modularity(WeightedGraph{}, {}), 0.0);
  EXPECT_THROW(modularity(triangle(), {{"a", "b"}}), std::invalid_argument);
  EXPECT_THROW(modularity(triangle(), {{"a", "b", "c"}, {"a"}}), std::invalid_argument);
}

TEST(Modularity, MatchesDirectFormula) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = synth::erdos_renyi(2 + rng() % 9, 0.5, rng, 5);
    std::vector<Community> parts(1 + rng() % 3);
    for (const auto& n : g.nodes()) parts[rng() % parts.size()].push_back(n);
    std::erase_if(parts, [](const Community& c) { return c.empty(); });
    EXPECT_NEAR(modularity(g, parts), reference::reference_modularity(g, parts), 1e-12);
  }
}

TEST(SelectPartition, Examples) {
  EXPECT_EQ(as_sets(detect_communities(two_triangles())),
            (std::set<NodeSet>{{"a", "b", "c"}, {"x", "y", "z"}}));
  const auto single = detect_communities(graph({{"a", "b", 1}}));
  EXPECT_EQ(single.size(), 1u);
  EXPECT_NEAR(single.modularity, 0.0, 1e-12);

  auto barbell = two_triangles();
  barbell.add_edge("c", "x");
  EXPECT_EQ(as_sets(detect_communities(barbell)), (std::set<NodeSet>{{"a", "b", "c"}, {"x", "y", "z"}}));
}

TEST(SelectPartition, TieGoesToFewerCommunities) {
  Dendrogram d;
  d.levels.push_back(Partition{{{"a", "b"}}, 0.25});
  d.levels.push_back(Partition{{{"a"}, {"b"}}, 0.25});
  EXPECT_EQ(select_partition(d).size(), 1u);
  EXPECT_THROW(select_partition(Dendrogram{}), std::invalid_argument);
}

TEST(Partition, CanonicalOrder) {
  const auto p = make_partition(graph({{"z", "y", 1}, {"b", "c", 1}, {"c", "d", 1}, {"m", "n", 1}}),
                                {{"n", "m"}, {"z", "y"}, {"d", "b", "c"}});
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p.communities[0], (Community{"b", "c", "d"}));
  EXPECT_EQ(p.communities[1], (Community{"m", "n"}));
  EXPECT_EQ(p.communities[2], (Community{"y", "z"}));
}

TEST(Diagnostics, ComponentPartitionIsFullyWithin) {
  const auto g = two_triangles();
  const auto row = diagnostics(g, make_partition(g, connected_components(g)));
  EXPECT_EQ(row.n_nodes, 6u);
  EXPECT_EQ(row.n_edges, 6u);
  EXPECT_EQ(row.n_components, 2u);
  EXPECT_EQ(row.lcc_size, 3u);
  EXPECT_EQ(row.within_share, 1.0);
}

TEST(Diagnostics, EdgeConservationAndBounds) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = synth::erdos_renyi(1 + rng() % 10, 0.4, rng, 3);
    const auto p = detect_communities(g);
    const auto row = diagnostics(g, p);
    const auto member = p.membership();
    std::size_t within = 0, between = 0;
    for (const auto& e : g.edges()) (member.at(e.source) == member.at(e.target) ? within : between)++;
    EXPECT_EQ(within + between, g.edge_count());
    if (g.edge_count() > 0) {
      EXPECT_DOUBLE_EQ(row.within_share, static_cast<double>(within) / static_cast<double>(g.edge_count()));
    }
    EXPECT_LE(row.lcc_size, row.n_nodes);
    if (row.n_nodes > 0) {
      EXPECT_GE(row.n_components, 1u);
    }
    EXPECT_EQ(diagnostics(g, make_partition(g, connected_components(g))).within_share, 1.0);
  }
}

TEST(OracleEquivalence, SmallGraphs) {
  for (const auto& g : synth::random_connected_graphs(60, 99)) {
    const auto eb = edge_betweenness(g);
    const auto ref = reference::reference_betweenness(g);
    ASSERT_EQ(eb.size(), ref.size());
    for (const auto& [e, v] : ref) EXPECT_NEAR(eb.at(e), v, 1e-9);
    const auto d = girvan_newman(g);
    const auto rd = reference::reference_girvan_newman(g);
    ASSERT_EQ(d.levels.size(), rd.size());
    for (std::size_t i = 0; i < rd.size(); ++i) {
      EXPECT_EQ(as_sets(d.levels[i]), rd[i]);
      EXPECT_NEAR(d.levels[i].modularity, reference::reference_modularity(g, d.levels[i].communities), 1e-9);
    }
  }
}
