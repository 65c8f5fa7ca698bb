#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hashnet/corpus.hpp"
#include "hashnet/csv.hpp"

namespace hashnet {

using Node = std::string;
using NodeSet = std::set<Node>;
using Weight = std::uint64_t;

// Unordered pair, stored with first < second.
struct EdgeKey {
  Node first;
  Node second;

  EdgeKey(Node a, Node b) {
    if (b < a) std::swap(a, b);
    first = std::move(a);
    second = std::move(b);
  }
  auto operator<=>(const EdgeKey&) const = default;
};

struct Edge {
  Node source;  // source < target
  Node target;
  Weight weight = 0;
  bool operator==(const Edge&) const = default;
};

// Undirected graph with positive integer edge weights. No self-loops; every
// endpoint is a node. Nodes and adjacency are kept in lexicographic order.
class WeightedGraph {
public:
  void add_node(const Node& n) { adj_.try_emplace(n); }

  // Adds `w` to the weight of (a, b), creating the edge if needed.
  void add_edge(const Node& a, const Node& b, Weight w = 1) {
    if (a == b) throw std::invalid_argument("self-loop on '" + a + "'");
    if (w == 0) throw std::invalid_argument("edge weight must be >= 1");
    auto& wa = adj_[a][b];
    if (wa == 0) ++edge_count_;
    wa += w;
    adj_[b][a] += w;
  }

  bool has_node(const Node& n) const { return adj_.contains(n); }

  Weight weight(const Node& a, const Node& b) const {
    auto it = adj_.find(a);
    if (it == adj_.end()) return 0;
    auto jt = it->second.find(b);
    return jt == it->second.end() ? 0 : jt->second;
  }

  bool has_edge(const Node& a, const Node& b) const { return weight(a, b) > 0; }

  std::size_t node_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool empty() const noexcept { return adj_.empty(); }

  std::size_t degree(const Node& n) const {
    auto it = adj_.find(n);
    return it == adj_.end() ? 0 : it->second.size();
  }

  Weight weighted_degree(const Node& n) const {
    Weight s = 0;
    if (auto it = adj_.find(n); it != adj_.end())
      for (const auto& [_, w] : it->second) s += w;
    return s;
  }

  Weight total_weight() const {
    Weight s = 0;
    for (const auto& [a, nbrs] : adj_)
      for (const auto& [b, w] : nbrs)
        if (a < b) s += w;
    return s;
  }

  // Neighbor -> weight, ordered by neighbor.
  const std::map<Node, Weight>& neighbors(const Node& n) const {
    static const std::map<Node, Weight> kEmpty;
    auto it = adj_.find(n);
    return it == adj_.end() ? kEmpty : it->second;
  }

  std::vector<Node> nodes() const {
    std::vector<Node> out;
    out.reserve(adj_.size());
    for (const auto& [n, _] : adj_) out.push_back(n);
    return out;
  }

  NodeSet node_set() const {
    NodeSet out;
    for (const auto& [n, _] : adj_) out.insert(out.end(), n);
    return out;
  }

  // Sorted by (source, target).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (const auto& [a, nbrs] : adj_)
      for (const auto& [b, w] : nbrs)
        if (a < b) out.push_back({a, b, w});
    return out;
  }

  std::set<EdgeKey> edge_keys() const {
    std::set<EdgeKey> out;
    for (const auto& e : edges()) out.emplace(e.source, e.target);
    return out;
  }

  // Subgraph on `keep`, with all edges between kept nodes.
  WeightedGraph induced(const NodeSet& keep) const {
    WeightedGraph g;
    for (const auto& n : keep)
      if (has_node(n)) g.add_node(n);
    for (const auto& e : edges())
      if (keep.contains(e.source) && keep.contains(e.target)) g.add_edge(e.source, e.target, e.weight);
    return g;
  }

  bool operator==(const WeightedGraph& o) const { return adj_ == o.adj_; }

private:
  std::map<Node, std::map<Node, Weight>> adj_;
  std::size_t edge_count_ = 0;
};

// All unordered pairs over a post's distinct hashtags.
inline std::set<EdgeKey> post_bigrams(const PostRecord& record) {
  std::set<EdgeKey> out;
  NodeSet tags;
  for (const auto& t : record.hashtags) tags.insert(t.value());
  for (auto i = tags.begin(); i != tags.end(); ++i)
    for (auto j = std::next(i); j != tags.end(); ++j) out.emplace(*i, *j);
  return out;
}

// Edge weight = number of posts in which the pair co-occurs. Hashtags that
// never co-occur are kept as degree-0 nodes. Throws std::invalid_argument if a
// record falls outside `year`.
inline WeightedGraph build_yearly_graph(const std::vector<PostRecord>& records, int year) {
  WeightedGraph g;
  for (const auto& r : records) {
    if (r.year() != year)
      throw std::invalid_argument("post " + r.post_id + " is dated " + std::to_string(r.year()) +
                                  ", not " + std::to_string(year));
    for (const auto& t : r.hashtags) g.add_node(t.value());
    for (const auto& e : post_bigrams(r)) g.add_edge(e.first, e.second, 1);
  }
  return g;
}

// Union of nodes, sum of weights.
inline WeightedGraph aggregate_epoch(const std::vector<WeightedGraph>& yearly) {
  WeightedGraph g;
  for (const auto& y : yearly) {
    for (const auto& n : y.nodes()) g.add_node(n);
    for (const auto& e : y.edges()) g.add_edge(e.source, e.target, e.weight);
  }
  return g;
}

// Groups an epoch's records by year and aggregates the yearly graphs.
inline WeightedGraph build_epoch_graph(const std::vector<PostRecord>& records) {
  std::map<int, std::vector<PostRecord>> by_year;
  for (const auto& r : records) by_year[r.year()].push_back(r);
  std::vector<WeightedGraph> yearly;
  for (const auto& [year, recs] : by_year) yearly.push_back(build_yearly_graph(recs, year));
  return aggregate_epoch(yearly);
}

struct GraphStats {
  std::size_t n_posts = 0;
  std::size_t n_unique_hashtags = 0;  // includes hashtags that never co-occur
  std::size_t n_bigrams = 0;
  bool operator==(const GraphStats&) const = default;
};

inline GraphStats graph_stats(const std::vector<PostRecord>& records, const WeightedGraph& graph) {
  NodeSet tags;
  for (const auto& r : records)
    for (const auto& t : r.hashtags) tags.insert(t.value());
  return {records.size(), tags.size(), graph.edge_count()};
}

// CSV "source,target,weight", rows sorted by (source, target).
inline void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  csv::write_row(out, {"source", "target", "weight"});
  for (const auto& e : g.edges()) csv::write_row(out, {e.source, e.target, std::to_string(e.weight)});
}

}  // namespace hashnet
