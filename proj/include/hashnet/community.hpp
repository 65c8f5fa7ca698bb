#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "hashnet/graph.hpp"

namespace hashnet {

// Sorted member list.
using Community = std::vector<Node>;

// Orders communities by size (descending), then by smallest member.
inline void canonicalize(std::vector<Community>& communities) {
  for (auto& c : communities) std::sort(c.begin(), c.end());
  std::sort(communities.begin(), communities.end(), [](const Community& a, const Community& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
}

struct Partition {
  std::vector<Community> communities;
  double modularity = 0.0;

  std::size_t size() const noexcept { return communities.size(); }

  std::map<Node, std::size_t> membership() const {
    std::map<Node, std::size_t> m;
    for (std::size_t i = 0; i < communities.size(); ++i)
      for (const auto& n : communities[i]) m.emplace(n, i);
    return m;
  }
};

// levels[0] is the connected-component partition, the last level is all
// singletons (once every edge has been removed).
struct Dendrogram {
  std::vector<Partition> levels;
};

struct BetweennessOptions {
  // Shortest paths by distance 1/weight instead of hop count.
  bool weighted = false;
};

namespace detail {

struct IndexedGraph {
  struct Arc {
    std::size_t to;
    std::size_t edge;
  };
  std::vector<Node> names;
  std::vector<std::vector<Arc>> adj;
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  std::vector<Weight> weights;

  explicit IndexedGraph(const WeightedGraph& g) : names(g.nodes()), adj(names.size()) {
    std::map<Node, std::size_t> index;
    for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);
    for (const auto& e : g.edges()) {
      const std::size_t u = index.at(e.source), v = index.at(e.target), id = ends.size();
      ends.emplace_back(u, v);
      weights.push_back(e.weight);
      adj[u].push_back({v, id});
      adj[v].push_back({u, id});
    }
  }

  std::size_t n() const noexcept { return names.size(); }
  std::size_t m() const noexcept { return ends.size(); }
};

// Brandes accumulation restricted to edges with alive[e] != 0. Values are
// halved so each unordered pair counts once.
inline std::vector<double> brandes_edge_betweenness(const IndexedGraph& g, const std::vector<char>& alive,
                                                    bool weighted) {
  const std::size_t n = g.n();
  std::vector<double> eb(g.m(), 0.0);
  std::vector<double> sigma(n), delta(n), dist(n);
  std::vector<std::vector<IndexedGraph::Arc>> preds(n);  // arc back to predecessor
  std::vector<std::size_t> order;
  order.reserve(n);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  for (std::size_t s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), kInf);
    for (auto& p : preds) p.clear();
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0.0;

    if (!weighted) {
      std::queue<std::size_t> q;
      q.push(s);
      while (!q.empty()) {
        const std::size_t v = q.front();
        q.pop();
        order.push_back(v);
        for (const auto& a : g.adj[v]) {
          if (!alive[a.edge]) continue;
          if (dist[a.to] == kInf) {
            dist[a.to] = dist[v] + 1.0;
            q.push(a.to);
          }
          if (dist[a.to] == dist[v] + 1.0) {
            sigma[a.to] += sigma[v];
            preds[a.to].push_back({v, a.edge});
          }
        }
      }
    } else {
      using Item = std::pair<double, std::size_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      std::vector<char> settled(n, 0);
      pq.emplace(0.0, s);
      auto same = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); };
      while (!pq.empty()) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (settled[v]) continue;
        settled[v] = 1;
        order.push_back(v);
        for (const auto& a : g.adj[v]) {
          if (!alive[a.edge] || settled[a.to]) continue;
          const double nd = dist[v] + 1.0 / static_cast<double>(g.weights[a.edge]);
          if (dist[a.to] == kInf || (nd < dist[a.to] && !same(nd, dist[a.to]))) {
            dist[a.to] = nd;
            sigma[a.to] = sigma[v];
            preds[a.to].assign(1, {v, a.edge});
            pq.emplace(nd, a.to);
          } else if (same(nd, dist[a.to])) {
            sigma[a.to] += sigma[v];
            preds[a.to].push_back({v, a.edge});
          }
        }
      }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t w = *it;
      for (const auto& p : preds[w]) {
        const double c = sigma[p.to] / sigma[w] * (1.0 + delta[w]);
        eb[p.edge] += c;
        delta[p.to] += c;
      }
    }
  }
  for (auto& v : eb) v /= 2.0;
  return eb;
}

// Component label per node over alive edges; labels numbered from 0.
inline std::vector<std::size_t> component_labels(const IndexedGraph& g, const std::vector<char>& alive,
                                                 std::size_t& count) {
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(g.n(), kUnset);
  count = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < g.n(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = count;
    stack.assign(1, s);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (const auto& a : g.adj[v]) {
        if (alive[a.edge] && label[a.to] == kUnset) {
          label[a.to] = count;
          stack.push_back(a.to);
        }
      }
    }
    ++count;
  }
  return label;
}

inline std::vector<Community> group(const IndexedGraph& g, const std::vector<std::size_t>& label,
                                    std::size_t count) {
  std::vector<Community> out(count);
  for (std::size_t v = 0; v < g.n(); ++v) out[label[v]].push_back(g.names[v]);
  canonicalize(out);
  return out;
}

// Throws std::invalid_argument unless `communities` partitions g's nodes.
inline std::map<Node, std::size_t> check_partition(const WeightedGraph& g, const std::vector<Community>& communities) {
  std::map<Node, std::size_t> member;
  for (std::size_t i = 0; i < communities.size(); ++i) {
    if (communities[i].empty()) throw std::invalid_argument("not a partition: empty community");
    for (const auto& n : communities[i]) {
      if (!g.has_node(n)) throw std::invalid_argument("not a partition: unknown node '" + n + "'");
      if (!member.emplace(n, i).second)
        throw std::invalid_argument("not a partition: node '" + n + "' in two communities");
    }
  }
  if (member.size() != g.node_count()) throw std::invalid_argument("not a partition: nodes left uncovered");
  return member;
}

}  // namespace detail

// Sum over unordered node pairs of the fraction of their shortest paths that
// use each edge.
inline std::map<EdgeKey, double> edge_betweenness(const WeightedGraph& g, BetweennessOptions opts = {}) {
  const detail::IndexedGraph ig(g);
  const std::vector<char> alive(ig.m(), 1);
  const auto eb = detail::brandes_edge_betweenness(ig, alive, opts.weighted);
  std::map<EdgeKey, double> out;
  for (std::size_t e = 0; e < ig.m(); ++e)
    out.emplace(EdgeKey(ig.names[ig.ends[e].first], ig.names[ig.ends[e].second]), eb[e]);
  return out;
}

inline std::vector<Community> connected_components(const WeightedGraph& g) {
  const detail::IndexedGraph ig(g);
  std::size_t count = 0;
  const auto label = detail::component_labels(ig, std::vector<char>(ig.m(), 1), count);
  return detail::group(ig, label, count);
}

// Weighted Newman modularity: sum over communities of W_in/W - (S/2W)^2.
// An edgeless graph scores 0.
inline double modularity(const WeightedGraph& g, const std::vector<Community>& communities) {
  const auto member = detail::check_partition(g, communities);
  const double total = static_cast<double>(g.total_weight());
  if (total == 0.0) return 0.0;
  std::vector<double> inside(communities.size(), 0.0), strength(communities.size(), 0.0);
  for (const auto& e : g.edges()) {
    const std::size_t cs = member.at(e.source), ct = member.at(e.target);
    const double w = static_cast<double>(e.weight);
    strength[cs] += w;
    strength[ct] += w;
    if (cs == ct) inside[cs] += w;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < communities.size(); ++c) {
    const double frac = strength[c] / (2.0 * total);
    q += inside[c] / total - frac * frac;
  }
  return q;
}

inline Partition make_partition(const WeightedGraph& g, std::vector<Community> communities) {
  canonicalize(communities);
  Partition p;
  p.modularity = modularity(g, communities);
  p.communities = std::move(communities);
  return p;
}

// Removes every edge tied at maximal betweenness per round, recomputing
// betweenness after each round, and records a level whenever the component
// count grows.
inline Dendrogram girvan_newman(const WeightedGraph& g, BetweennessOptions opts = {}) {
  const detail::IndexedGraph ig(g);
  std::vector<char> alive(ig.m(), 1);
  Dendrogram d;
  std::size_t count = 0;
  auto label = detail::component_labels(ig, alive, count);
  d.levels.push_back(make_partition(g, detail::group(ig, label, count)));

  std::size_t remaining = ig.m();
  while (remaining > 0) {
    const auto eb = detail::brandes_edge_betweenness(ig, alive, opts.weighted);
    double best = -1.0;
    for (std::size_t e = 0; e < ig.m(); ++e)
      if (alive[e]) best = std::max(best, eb[e]);
    const double tol = 1e-9 * std::max(1.0, best);
    for (std::size_t e = 0; e < ig.m(); ++e) {
      if (alive[e] && eb[e] >= best - tol) {
        alive[e] = 0;
        --remaining;
      }
    }
    std::size_t next = 0;
    label = detail::component_labels(ig, alive, next);
    if (next > count) {
      count = next;
      d.levels.push_back(make_partition(g, detail::group(ig, label, count)));
    }
  }
  return d;
}

// Level with maximal modularity; ties go to fewer communities, then the earlier level.
inline Partition select_partition(const Dendrogram& d) {
  if (d.levels.empty()) throw std::invalid_argument("empty dendrogram");
  constexpr double kTie = 1e-12;
  std::size_t best = 0;
  for (std::size_t i = 1; i < d.levels.size(); ++i) {
    const auto& cand = d.levels[i];
    const auto& cur = d.levels[best];
    if (cand.modularity > cur.modularity + kTie ||
        (std::abs(cand.modularity - cur.modularity) <= kTie && cand.size() < cur.size()))
      best = i;
  }
  return d.levels[best];
}

inline Partition detect_communities(const WeightedGraph& g, BetweennessOptions opts = {}) {
  return select_partition(girvan_newman(g, opts));
}

struct DiagnosticsRow {
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  std::size_t n_components = 0;
  std::size_t lcc_size = 0;
  double within_share = 1.0;  // 1.0 for edgeless graphs
};

inline DiagnosticsRow diagnostics(const WeightedGraph& g, const Partition& p) {
  const auto member = detail::check_partition(g, p.communities);
  DiagnosticsRow row;
  row.n_nodes = g.node_count();
  row.n_edges = g.edge_count();
  const auto comps = connected_components(g);
  row.n_components = comps.size();
  for (const auto& c : comps) row.lcc_size = std::max(row.lcc_size, c.size());
  if (row.n_edges > 0) {
    std::size_t within = 0;
    for (const auto& e : g.edges())
      if (member.at(e.source) == member.at(e.target)) ++within;
    row.within_share = static_cast<double>(within) / static_cast<double>(row.n_edges);
  }
  return row;
}

}  // namespace hashnet
