#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace hashnet;
using testutil::post;

namespace {

std::set<EdgeKey> keys(std::initializer_list<std::pair<const char*, const char*>> pairs) {
  std::set<EdgeKey> out;
  for (const auto& [a, b] : pairs) out.insert(EdgeKey(a, b));
  return out;
}

}  // namespace

TEST(PostBigrams, Examples) {
  EXPECT_EQ(post_bigrams(post("p", "2015-01-01", {"a", "b", "c"})), keys({{"a", "b"}, {"a", "c"}, {"b", "c"}}));
  EXPECT_TRUE(post_bigrams(post("p", "2015-01-01", {"a"})).empty());
  EXPECT_EQ(post_bigrams(post("p", "2015-01-01", {"a", "a", "b"})), keys({{"a", "b"}}));
}

TEST(BuildYearlyGraph, CountsPosts) {
  const auto g = build_yearly_graph({post("1", "2015-01-01", {"a", "b"}), post("2", "2015-03-01", {"b", "a"})}, 2015);
  EXPECT_EQ(g.weight("a", "b"), 2u);
  const auto h = build_yearly_graph({post("1", "2015-01-01", {"a", "b"}), post("2", "2015-03-01", {"b", "c"})}, 2015);
  EXPECT_EQ(h.weight("a", "b"), 1u);
  EXPECT_EQ(h.weight("b", "c"), 1u);
  EXPECT_EQ(h.edge_count(), 2u);
  EXPECT_TRUE(build_yearly_graph({}, 2015).empty());
  EXPECT_THROW(build_yearly_graph({post("1", "2016-01-01", {"a", "b"})}, 2015), std::invalid_argument);
}

TEST(BuildYearlyGraph, KeepsIsolatedTags) {
  const auto g = build_yearly_graph({post("1", "2015-01-01", {"solo"})}, 2015);
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(AggregateEpoch, SumsWeights) {
  const auto y1 = build_yearly_graph({post("1", "2015-01-01", {"a", "b"})}, 2015);
  const auto y2 = build_yearly_graph({post("2", "2016-01-01", {"a", "b"}), post("3", "2016-02-01", {"a", "b"})}, 2016);
  EXPECT_EQ(aggregate_epoch({y1}), y1);
  EXPECT_EQ(aggregate_epoch({y1, y2}).weight("a", "b"), 3u);
  EXPECT_TRUE(aggregate_epoch({}).empty());
}

TEST(AggregateEpoch, AssociativeAndCommutative) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<WeightedGraph> gs;
    for (int i = 0; i < 4; ++i) gs.push_back(synth::erdos_renyi(1 + rng() % 6, 0.5, rng, 3));
    const auto all = aggregate_epoch(gs);
    auto shuffled = gs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(aggregate_epoch(shuffled), all);
    const auto left = aggregate_epoch({aggregate_epoch({gs[0], gs[1]}), gs[2], gs[3]});
    const auto right = aggregate_epoch({gs[0], aggregate_epoch({gs[1], aggregate_epoch({gs[2], gs[3]})})});
    EXPECT_EQ(left, all);
    EXPECT_EQ(right, all);
  }
}

TEST(GraphStats, Examples) {
  const auto empty = graph_stats({}, WeightedGraph{});
  EXPECT_EQ(empty.n_posts, 0u);
  EXPECT_EQ(empty.n_unique_hashtags, 0u);
  EXPECT_EQ(empty.n_bigrams, 0u);
  const std::vector<PostRecord> recs = {post("1", "2015-01-01", {"a", "b"}), post("2", "2016-01-01", {"a", "b"}),
                                        post("3", "2017-01-01", {"c"})};
  const auto s = graph_stats(recs, build_epoch_graph(recs));
  EXPECT_EQ(s.n_posts, 3u);
  EXPECT_EQ(s.n_unique_hashtags, 3u);
  EXPECT_EQ(s.n_bigrams, 1u);
}

TEST(EpochGraph, WeightSumEqualsPairCount) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto recs = testutil::random_corpus(rng, 30, 8);
    const auto g = build_epoch_graph(recs);
    std::uint64_t pairs = 0;
    for (const auto& r : recs) pairs += r.hashtags.size() * (r.hashtags.size() - (r.hashtags.empty() ? 0 : 1)) / 2;
    EXPECT_EQ(g.total_weight(), pairs);
  }
}

TEST(WeightedGraph, RejectsInvalidEdges) {
  WeightedGraph g;
  EXPECT_THROW(g.add_edge("a", "a"), std::invalid_argument);
  EXPECT_THROW(g.add_edge("a", "b", 0), std::invalid_argument);
}

TEST(WriteEdgeList, SortedRows) {
  std::ostringstream out;
  write_edge_list(out, testutil::graph({{"c", "b", 2}, {"a", "b", 1}}));
  EXPECT_EQ(out.str(), "source,target,weight\na,b,1\nb,c,2\n");
}
