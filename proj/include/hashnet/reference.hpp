#pragma once

// Deliberately naive implementations used as test oracles. They share no code
// with the production algorithms beyond the WeightedGraph container.

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "hashnet/graph.hpp"

namespace hashnet::reference {

inline constexpr std::size_t kMaxOracleNodes = 12;

inline void guard_size(const WeightedGraph& g) {
  if (g.node_count() > kMaxOracleNodes)
    throw std::length_error("reference oracle limited to " + std::to_string(kMaxOracleNodes) + " nodes");
}

// BFS hop distances from s over the edge set `edges`; -1 when unreachable.
inline std::map<Node, int> hop_distances(const std::vector<Node>& nodes, const std::set<EdgeKey>& edges,
                                         const Node& s) {
  std::map<Node, int> dist;
  for (const auto& n : nodes) dist[n] = -1;
  dist[s] = 0;
  std::vector<Node> frontier{s};
  for (int d = 1; !frontier.empty(); ++d) {
    std::vector<Node> next;
    for (const auto& u : frontier)
      for (const auto& v : nodes)
        if (dist[v] < 0 && edges.contains(EdgeKey(u, v))) {
          dist[v] = d;
          next.push_back(v);
        }
    frontier = std::move(next);
  }
  return dist;
}

// Lists every shortest s-t path explicitly and credits each of its edges with
// 1/(number of shortest paths); ordered pairs are summed and halved.
inline std::map<EdgeKey, double> betweenness_over(const std::vector<Node>& nodes, const std::set<EdgeKey>& edges) {
  std::map<EdgeKey, double> eb;
  for (const auto& e : edges) eb[e] = 0.0;
  for (const auto& s : nodes) {
    const auto dist = hop_distances(nodes, edges, s);
    for (const auto& t : nodes) {
      if (t == s || dist.at(t) < 0) continue;
      std::vector<std::vector<EdgeKey>> paths;
      std::vector<EdgeKey> current;
      std::function<void(const Node&)> walk = [&](const Node& u) {
        if (u == t) {
          paths.push_back(current);
          return;
        }
        for (const auto& v : nodes) {
          if (dist.at(v) == dist.at(u) + 1 && dist.at(v) <= dist.at(t) && edges.contains(EdgeKey(u, v))) {
            current.emplace_back(u, v);
            walk(v);
            current.pop_back();
          }
        }
      };
      walk(s);
      for (const auto& p : paths)
        for (const auto& e : p) eb[e] += 1.0 / static_cast<double>(paths.size());
    }
  }
  for (auto& [_, v] : eb) v /= 2.0;
  return eb;
}

inline std::map<EdgeKey, double> reference_betweenness(const WeightedGraph& g) {
  guard_size(g);
  return betweenness_over(g.nodes(), g.edge_keys());
}

// Rescans every node each pass and drops all below k until a pass removes nothing.
inline WeightedGraph reference_kcore(const WeightedGraph& g, std::size_t k) {
  NodeSet alive = g.node_set();
  bool changed = true;
  while (changed) {
    changed = false;
    NodeSet drop;
    for (const auto& v : alive) {
      std::size_t deg = 0;
      for (const auto& u : alive)
        if (u != v && g.has_edge(u, v)) ++deg;
      if (deg < k) drop.insert(v);
    }
    for (const auto& v : drop) alive.erase(v);
    changed = !drop.empty();
  }
  WeightedGraph out;
  for (const auto& v : alive) out.add_node(v);
  for (const auto& a : alive)
    for (const auto& b : alive)
      if (a < b && g.has_edge(a, b)) out.add_edge(a, b, g.weight(a, b));
  return out;
}

// Q = 1/(2W) * sum_ij [A_ij - k_i k_j / 2W] * delta(c_i, c_j), by double loop.
inline double reference_modularity(const WeightedGraph& g, const std::vector<std::vector<Node>>& communities) {
  std::map<Node, std::size_t> label;
  for (std::size_t c = 0; c < communities.size(); ++c)
    for (const auto& n : communities[c]) label[n] = c;
  const auto nodes = g.nodes();
  std::map<Node, double> strength;
  double two_w = 0.0;
  for (const auto& i : nodes) {
    double s = 0.0;
    for (const auto& j : nodes) s += static_cast<double>(g.weight(i, j));
    strength[i] = s;
    two_w += s;
  }
  if (two_w == 0.0) return 0.0;
  double q = 0.0;
  for (const auto& i : nodes)
    for (const auto& j : nodes)
      if (label.at(i) == label.at(j))
        q += static_cast<double>(g.weight(i, j)) - strength[i] * strength[j] / two_w;
  return q / two_w;
}

using ReferenceLevel = std::set<NodeSet>;

inline ReferenceLevel components_over(const std::vector<Node>& nodes, const std::set<EdgeKey>& edges) {
  ReferenceLevel out;
  NodeSet seen;
  for (const auto& s : nodes) {
    if (seen.contains(s)) continue;
    const auto dist = hop_distances(nodes, edges, s);
    NodeSet comp;
    for (const auto& [n, d] : dist)
      if (d >= 0) comp.insert(n);
    seen.insert(comp.begin(), comp.end());
    out.insert(comp);
  }
  return out;
}

// Girvan–Newman with betweenness from explicit path enumeration: removes all
// edges within 1e-9 (relative) of the maximum per round and records a level
// whenever the number of components grows.
inline std::vector<ReferenceLevel> reference_girvan_newman(const WeightedGraph& g) {
  guard_size(g);
  const auto nodes = g.nodes();
  std::set<EdgeKey> edges = g.edge_keys();
  std::vector<ReferenceLevel> levels{components_over(nodes, edges)};
  while (!edges.empty()) {
    const auto eb = betweenness_over(nodes, edges);
    double best = -1.0;
    for (const auto& [_, v] : eb) best = v > best ? v : best;
    const double tol = 1e-9 * (best > 1.0 ? best : 1.0);
    for (const auto& [e, v] : eb)
      if (v >= best - tol) edges.erase(e);
    auto level = components_over(nodes, edges);
    if (level.size() > levels.back().size()) levels.push_back(std::move(level));
  }
  return levels;
}

}  // namespace hashnet::reference
