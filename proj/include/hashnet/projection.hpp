#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hashnet/community.hpp"
#include "hashnet/corpus.hpp"
#include "hashnet/layering.hpp"
#include "hashnet/matching.hpp"

namespace hashnet {

// Core communities keyed by stable id.
using Coalitions = std::map<CommunityId, Community>;

inline Coalitions label_partition(const Partition& p, const std::vector<CommunityId>& ids) {
  if (ids.size() != p.size()) throw std::invalid_argument("one id per community required");
  Coalitions out;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (!out.emplace(ids[i], p.communities[i]).second)
      throw std::invalid_argument("duplicate community id " + ids[i].str());
  return out;
}

enum class AssignmentStatus { kCoreMember, kProjected, kUnassigned };

inline std::string_view to_string(AssignmentStatus s) {
  switch (s) {
    case AssignmentStatus::kCoreMember: return "core";
    case AssignmentStatus::kProjected: return "projected";
    case AssignmentStatus::kUnassigned: return "unassigned";
  }
  return "?";
}

struct Assignment {
  AssignmentStatus status = AssignmentStatus::kUnassigned;
  std::optional<CommunityId> community;  // set unless unassigned
  Weight support = 0;                    // projected only
};

class AssignmentTable {
public:
  void set(const Node& hashtag, Assignment a) { rows_[hashtag] = a; }

  const std::map<Node, Assignment>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }

  const Assignment* find(const Node& h) const {
    auto it = rows_.find(h);
    return it == rows_.end() ? nullptr : &it->second;
  }

  std::size_t count(AssignmentStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(rows_.begin(), rows_.end(), [s](const auto& kv) { return kv.second.status == s; }));
  }

  NodeSet with_status(AssignmentStatus s) const {
    NodeSet out;
    for (const auto& [h, a] : rows_)
      if (a.status == s) out.insert(out.end(), h);
    return out;
  }

  // Core members plus projected hashtags.
  NodeSet augmented_nodes() const {
    NodeSet out;
    for (const auto& [h, a] : rows_)
      if (a.status != AssignmentStatus::kUnassigned) out.insert(out.end(), h);
    return out;
  }

  std::vector<Weight> projection_supports() const {
    std::vector<Weight> out;
    for (const auto& [_, a] : rows_)
      if (a.status == AssignmentStatus::kProjected) out.push_back(a.support);
    return out;
  }

private:
  std::map<Node, Assignment> rows_;
};

// Core members keep their community. Every other coverage hashtag goes to the
// community with the largest summed edge weight into its core nodes (ties:
// larger single heaviest edge, then smaller id); no edge into the core leaves
// it unassigned. `extra_hashtags` (e.g. epoch hashtags that never co-occur)
// are added as unassigned when absent from the coverage layer.
inline AssignmentTable project_coverage(const Coalitions& coalitions, const WeightedGraph& coverage,
                                        const NodeSet& core_nodes, const NodeSet& extra_hashtags = {}) {
  std::map<Node, CommunityId> owner;
  for (const auto& [id, members] : coalitions)
    for (const auto& n : members) {
      if (!core_nodes.contains(n)) throw std::invalid_argument("coalition member '" + n + "' is not a core node");
      if (!owner.emplace(n, id).second) throw std::invalid_argument("core node '" + n + "' in two coalitions");
    }
  if (owner.size() != core_nodes.size()) throw std::invalid_argument("coalitions do not cover every core node");
  for (const auto& n : core_nodes)
    if (!coverage.has_node(n)) throw std::invalid_argument("core node '" + n + "' missing from coverage layer");

  AssignmentTable table;
  for (const auto& h : coverage.nodes()) {
    if (auto it = owner.find(h); it != owner.end()) {
      table.set(h, {AssignmentStatus::kCoreMember, it->second, 0});
      continue;
    }
    struct Score {
      Weight sum = 0;
      Weight heaviest = 0;
    };
    std::map<CommunityId, Score> scores;
    for (const auto& [nbr, w] : coverage.neighbors(h)) {
      auto it = owner.find(nbr);
      if (it == owner.end()) continue;
      auto& s = scores[it->second];
      s.sum += w;
      s.heaviest = std::max(s.heaviest, w);
    }
    if (scores.empty()) {
      table.set(h, {AssignmentStatus::kUnassigned, std::nullopt, 0});
      continue;
    }
    auto best = scores.begin();  // ids ascending, so strict '>' keeps the smaller id on full ties
    for (auto it = std::next(scores.begin()); it != scores.end(); ++it) {
      if (it->second.sum > best->second.sum ||
          (it->second.sum == best->second.sum && it->second.heaviest > best->second.heaviest))
        best = it;
    }
    table.set(h, {AssignmentStatus::kProjected, best->first, best->second.sum});
  }
  for (const auto& h : extra_hashtags)
    if (!table.find(h)) table.set(h, {AssignmentStatus::kUnassigned, std::nullopt, 0});
  return table;
}

enum class MentionMode { kPosts, kOccurrences };

inline MentionMode parse_mention_mode(std::string_view s) {
  if (s == "posts") return MentionMode::kPosts;
  if (s == "occurrences") return MentionMode::kOccurrences;
  throw ConfigError("unknown mention mode '" + std::string(s) + "' (expected posts or occurrences)");
}

// Per-hashtag mention counts: posts containing the tag, or raw occurrences.
inline std::map<Node, std::uint64_t> mention_counts(const std::vector<PostRecord>& records,
                                                    MentionMode mode = MentionMode::kPosts) {
  std::map<Node, std::uint64_t> out;
  for (const auto& r : records)
    for (std::size_t i = 0; i < r.hashtags.size(); ++i) {
      std::uint64_t n = 1;
      if (mode == MentionMode::kOccurrences && i < r.hashtag_occurrences.size()) n = r.hashtag_occurrences[i];
      out[r.hashtags[i].value()] += n;
    }
  return out;
}

enum class SeedSet { kSkeptical, kConspiracy, kUnion };

inline SeedSet parse_seed_set(std::string_view s) {
  if (s == "skeptical") return SeedSet::kSkeptical;
  if (s == "conspiracy") return SeedSet::kConspiracy;
  if (s == "union") return SeedSet::kUnion;
  throw ConfigError("unknown seed set '" + std::string(s) + "' (expected skeptical, conspiracy or union)");
}

inline std::string_view to_string(SeedSet s) {
  switch (s) {
    case SeedSet::kSkeptical: return "skeptical";
    case SeedSet::kConspiracy: return "conspiracy";
    case SeedSet::kUnion: return "union";
  }
  return "?";
}

struct SeedLexicon {
  NodeSet skeptical;
  NodeSet conspiracy;

  NodeSet overlap() const {
    NodeSet out;
    std::set_intersection(skeptical.begin(), skeptical.end(), conspiracy.begin(), conspiracy.end(),
                          std::inserter(out, out.end()));
    return out;
  }

  NodeSet select(SeedSet which) const {
    switch (which) {
      case SeedSet::kSkeptical: return skeptical;
      case SeedSet::kConspiracy: return conspiracy;
      case SeedSet::kUnion: break;
    }
    NodeSet out = skeptical;
    out.insert(conspiracy.begin(), conspiracy.end());
    return out;
  }

  bool empty() const noexcept { return skeptical.empty() && conspiracy.empty(); }
};

enum class LexiconFormat { kJson, kText };

inline LexiconFormat parse_lexicon_format(std::string_view s) {
  if (s == "json") return LexiconFormat::kJson;
  if (s == "txt" || s == "text") return LexiconFormat::kText;
  throw ConfigError("unknown lexicon format '" + std::string(s) + "'");
}

// JSON: {"skeptical": [...], "conspiracy": [...]}. Text: one "label: #a, #b"
// line per list, '#' comment lines allowed. Tokens are normalized and
// deduplicated; an empty input yields an empty lexicon.
inline SeedLexicon load_seed_lexicon(std::istream& in, LexiconFormat format = LexiconFormat::kJson) {
  SeedLexicon lex;
  auto add = [&](const std::string& label, const std::string& raw) {
    NodeSet* target = nullptr;
    if (label == "skeptical") target = &lex.skeptical;
    else if (label == "conspiracy") target = &lex.conspiracy;
    else throw DataError("unknown seed lexicon label '" + label + "'");
    if (raw.empty()) return;
    auto tok = normalize_hashtag(raw);
    if (!tok) throw DataError("invalid seed hashtag '" + raw + "' in list " + label);
    target->insert(tok->value());
  };

  const std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (detail::trim(content).empty()) return lex;

  if (format == LexiconFormat::kJson) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("seed lexicon is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw DataError("seed lexicon must be a JSON object");
    for (const auto& [label, list] : doc.items()) {
      if (!list.is_array()) throw DataError("seed list '" + label + "' must be an array");
      if (list.empty()) add(label, "");
      for (const auto& t : list) {
        if (!t.is_string()) throw DataError("seed list '" + label + "' must hold strings");
        add(label, t.get<std::string>());
      }
    }
    return lex;
  }

  std::istringstream ss(content);
  std::string line;
  while (std::getline(ss, line)) {
    const std::string_view trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto colon = trimmed.find(':');
    if (colon == std::string_view::npos) throw DataError("seed lexicon line without label: " + line);
    const std::string label(detail::trim(trimmed.substr(0, colon)));
    std::stringstream items{std::string(trimmed.substr(colon + 1))};
    std::string item;
    add(label, "");
    while (std::getline(items, item, ',')) {
      const std::string t(detail::trim(item));
      if (!t.empty()) add(label, t);
    }
  }
  return lex;
}

struct EnrichmentRow {
  CommunityId community;
  std::uint64_t seed_mentions = 0;
  std::uint64_t total_mentions = 0;
  double seed_share = 0.0;
  double baseline_share = 0.0;
  std::optional<double> enrichment;  // empty when baseline_share == 0

  // ln(max(enrichment, 1e-6)).
  std::optional<double> log_enrichment() const {
    if (!enrichment) return std::nullopt;
    return std::log(std::max(*enrichment, 1e-6));
  }
};

struct EnrichmentReport {
  std::vector<EnrichmentRow> communities;  // ordered by id
  std::uint64_t unassigned_seed_mentions = 0;
  std::uint64_t unassigned_total_mentions = 0;

  const EnrichmentRow* find(CommunityId id) const {
    for (const auto& r : communities)
      if (r.community == id) return &r;
    return nullptr;
  }
};

// Per community: share of seed mentions over share of all hashtag mentions.
// Unassigned hashtags are left out of both shares and tallied separately.
inline EnrichmentReport enrichment_scores(const AssignmentTable& assign, const std::map<Node, std::uint64_t>& mentions,
                                          const SeedLexicon& seeds, SeedSet which = SeedSet::kUnion) {
  const NodeSet seed_tokens = seeds.select(which);
  std::map<CommunityId, EnrichmentRow> rows;
  EnrichmentReport rep;
  for (const auto& [h, a] : assign.rows()) {
    auto it = mentions.find(h);
    const std::uint64_t m = it == mentions.end() ? 0 : it->second;
    const bool seed = seed_tokens.contains(h);
    if (a.status == AssignmentStatus::kUnassigned) {
      rep.unassigned_total_mentions += m;
      if (seed) rep.unassigned_seed_mentions += m;
      continue;
    }
    if (m == 0) throw InvariantError("assigned hashtag '" + h + "' has no mentions");
    auto& row = rows[*a.community];
    row.community = *a.community;
    row.total_mentions += m;
    if (seed) row.seed_mentions += m;
  }
  std::uint64_t seed_total = 0, all_total = 0;
  for (const auto& [_, r] : rows) {
    seed_total += r.seed_mentions;
    all_total += r.total_mentions;
  }
  for (auto& [_, r] : rows) {
    r.seed_share = seed_total ? static_cast<double>(r.seed_mentions) / static_cast<double>(seed_total) : 0.0;
    r.baseline_share = all_total ? static_cast<double>(r.total_mentions) / static_cast<double>(all_total) : 0.0;
    if (r.baseline_share > 0.0) r.enrichment = r.seed_share / r.baseline_share;
    rep.communities.push_back(r);
  }
  return rep;
}

// |seeds ∩ layer| / |seeds|; 0 for an empty seed set.
inline double recovery_rate(const NodeSet& seeds, const NodeSet& layer_nodes) {
  if (seeds.empty()) return 0.0;
  std::size_t hit = 0;
  for (const auto& s : seeds) hit += layer_nodes.contains(s) ? 1 : 0;
  return static_cast<double>(hit) / static_cast<double>(seeds.size());
}

struct RecoveryComparison {
  std::size_t n_seeds = 0;
  std::size_t core_recovered = 0;
  std::size_t augmented_recovered = 0;
  double core_rate = 0.0;
  double augmented_rate = 0.0;
  double delta() const { return augmented_rate - core_rate; }
};

// Seed recovery over core nodes versus core plus projected hashtags.
inline RecoveryComparison compare_recovery(const NodeSet& seeds, const LayerPair& layers,
                                           const AssignmentTable& assign) {
  const NodeSet core = layers.core.node_set();
  NodeSet augmented = core;
  for (const auto& h : assign.with_status(AssignmentStatus::kProjected)) augmented.insert(h);
  RecoveryComparison rc;
  rc.n_seeds = seeds.size();
  for (const auto& s : seeds) {
    rc.core_recovered += core.contains(s) ? 1 : 0;
    rc.augmented_recovered += augmented.contains(s) ? 1 : 0;
  }
  rc.core_rate = recovery_rate(seeds, core);
  rc.augmented_rate = recovery_rate(seeds, augmented);
  return rc;
}

inline RecoveryComparison compare_recovery(const SeedLexicon& seeds, SeedSet which, const LayerPair& layers,
                                           const AssignmentTable& assign) {
  return compare_recovery(seeds.select(which), layers, assign);
}

}  // namespace hashnet
