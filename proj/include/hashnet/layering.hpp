#pragma once

#include <deque>
#include <map>
#include <stdexcept>
#include <string>

#include "hashnet/graph.hpp"

namespace hashnet {

// Keeps edges with weight >= min_weight; nodes left without edges are dropped.
inline WeightedGraph threshold_edges(const WeightedGraph& g, Weight min_weight) {
  if (min_weight < 1) throw std::invalid_argument("min_weight must be >= 1");
  WeightedGraph out;
  for (const auto& e : g.edges())
    if (e.weight >= min_weight) out.add_edge(e.source, e.target, e.weight);
  return out;
}

// Maximal subgraph in which every node has at least k neighbors (unweighted
// degree). Peels nodes below k until none remain.
inline WeightedGraph k_core(const WeightedGraph& g, std::size_t k) {
  std::map<Node, std::size_t> degree;
  std::deque<Node> queue;
  NodeSet removed;
  for (const auto& n : g.nodes()) {
    const std::size_t d = g.degree(n);
    degree.emplace(n, d);
    if (d < k) {
      queue.push_back(n);
      removed.insert(n);
    }
  }
  while (!queue.empty()) {
    const Node n = std::move(queue.front());
    queue.pop_front();
    for (const auto& [nbr, _] : g.neighbors(n)) {
      if (removed.contains(nbr)) continue;
      if (--degree[nbr] < k) {
        removed.insert(nbr);
        queue.push_back(nbr);
      }
    }
  }
  NodeSet keep;
  for (const auto& [n, _] : degree)
    if (!removed.contains(n)) keep.insert(keep.end(), n);
  return g.induced(keep);
}

struct LayerPair {
  std::string epoch_label;
  WeightedGraph core;
  WeightedGraph coverage;
  Weight core_min_weight = 2;
  std::size_t k = 2;
};

// core = k_core(threshold_edges(g, core_min_weight), k); coverage = every edge
// of g with degree-0 nodes dropped.
inline LayerPair build_layers(const WeightedGraph& epoch_graph, Weight core_min_weight = 2, std::size_t k = 2,
                              std::string epoch_label = {}) {
  if (core_min_weight < 1 || k < 1) throw std::invalid_argument("core_min_weight and k must be >= 1");
  LayerPair lp;
  lp.epoch_label = std::move(epoch_label);
  lp.core_min_weight = core_min_weight;
  lp.k = k;
  lp.core = k_core(threshold_edges(epoch_graph, core_min_weight), k);
  lp.coverage = threshold_edges(epoch_graph, 1);
  return lp;
}

}  // namespace hashnet
