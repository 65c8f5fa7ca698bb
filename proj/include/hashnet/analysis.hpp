#pragma once

#include <map>
#include <string>
#include <vector>

#include "hashnet/community.hpp"
#include "hashnet/corpus.hpp"
#include "hashnet/graph.hpp"
#include "hashnet/layering.hpp"
#include "hashnet/matching.hpp"
#include "hashnet/projection.hpp"

namespace hashnet {

// How far analyze() goes: graphs and epoch counts, plus layers, or everything.
enum class AnalysisDepth { kGraphs, kLayers, kFull };

struct AnalysisParams {
  Weight core_min_weight = 2;
  std::size_t k = 2;
  double match_threshold = 0.2;
  bool weighted_betweenness = false;
  SeedSet seed_set = SeedSet::kUnion;
  MentionMode mention_mode = MentionMode::kPosts;
};

struct EpochAnalysis {
  Epoch epoch;
  std::vector<PostRecord> records;
  WeightedGraph graph;
  GraphStats stats;
  LayerPair layers;
  Partition core_partition;
  Partition coverage_partition;  // used for coverage diagnostics only
  DiagnosticsRow core_diagnostics;
  DiagnosticsRow coverage_diagnostics;
  std::vector<CommunityId> core_ids;  // parallel to core_partition.communities
  Coalitions coalitions;
  AssignmentTable assignments;
  std::map<Node, std::uint64_t> mentions;
  EnrichmentReport enrichment;
  RecoveryComparison recovery;
};

struct AnalysisResult {
  std::vector<EpochAnalysis> epochs;
  MatchOutcome matching;
  std::size_t unassigned_records = 0;
};

// Graph, layer and community stages for one epoch; ids and projection are
// filled in by analyze() once all epochs are matched.
inline EpochAnalysis analyze_epoch_structure(const EpochBucket& bucket, const AnalysisParams& params,
                                             AnalysisDepth depth = AnalysisDepth::kFull) {
  EpochAnalysis ea;
  ea.epoch = bucket.epoch;
  ea.records = bucket.records;
  ea.graph = build_epoch_graph(ea.records);
  ea.stats = graph_stats(ea.records, ea.graph);
  if (depth == AnalysisDepth::kGraphs) return ea;
  ea.layers = build_layers(ea.graph, params.core_min_weight, params.k, ea.epoch.label);
  if (depth == AnalysisDepth::kLayers) return ea;
  const BetweennessOptions opts{params.weighted_betweenness};
  ea.core_partition = detect_communities(ea.layers.core, opts);
  ea.coverage_partition = detect_communities(ea.layers.coverage, opts);
  ea.core_diagnostics = diagnostics(ea.layers.core, ea.core_partition);
  ea.coverage_diagnostics = diagnostics(ea.layers.coverage, ea.coverage_partition);
  return ea;
}

inline AnalysisResult analyze(const std::vector<PostRecord>& records, const EpochConfig& config,
                              const AnalysisParams& params, const SeedLexicon& seeds = {},
                              AnalysisDepth depth = AnalysisDepth::kFull) {
  const EpochSegments seg = segment_epochs(records, config);
  AnalysisResult result;
  result.unassigned_records = seg.unassigned.size();
  for (const auto& bucket : seg.buckets) result.epochs.push_back(analyze_epoch_structure(bucket, params, depth));
  if (depth != AnalysisDepth::kFull) return result;

  std::vector<EpochPartition> parts;
  for (const auto& ea : result.epochs) parts.push_back({ea.epoch.label, ea.core_partition});
  result.matching = match_communities(parts, params.match_threshold);

  const NodeSet seed_tokens = seeds.select(params.seed_set);
  for (std::size_t e = 0; e < result.epochs.size(); ++e) {
    auto& ea = result.epochs[e];
    ea.core_ids = result.matching.labels[e];
    ea.coalitions = label_partition(ea.core_partition, ea.core_ids);
    ea.assignments = project_coverage(ea.coalitions, ea.layers.coverage, ea.layers.core.node_set(),
                                      ea.graph.node_set());
    ea.mentions = mention_counts(ea.records, params.mention_mode);
    ea.enrichment = enrichment_scores(ea.assignments, ea.mentions, seeds, params.seed_set);
    ea.recovery = compare_recovery(seed_tokens, ea.layers, ea.assignments);
  }
  return result;
}

}  // namespace hashnet
