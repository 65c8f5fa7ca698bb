#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hashnet/analysis.hpp"
#include "hashnet/corpus.hpp"
#include "hashnet/error.hpp"
#include "hashnet/graph.hpp"

namespace hashnet::synth {

// Planted-structure corpus parameters. With backbone_repeat >= 2 every
// backbone pair survives a weight-2 core threshold; with
// fringe_attach_weight < 2 no fringe edge does.
struct SynthSpec {
  std::size_t n_communities = 3;
  std::size_t backbone_tags_per_community = 6;
  std::size_t backbone_repeat = 3;
  std::size_t n_fringe_seeds = 20;
  Weight fringe_attach_weight = 1;
  std::size_t fringe_attach_tags = 1;        // backbone tags each fringe seed attaches to
  std::optional<std::size_t> seed_community;  // attach every fringe seed here instead of at random
  std::uint64_t rng_seed = 20240101;
  std::vector<Epoch> epochs = EpochConfig::standard().epochs();

  void validate() const {
    if (n_communities < 1) throw ConfigError("synth: n_communities must be >= 1");
    if (backbone_tags_per_community < 3) throw ConfigError("synth: backbone_tags_per_community must be >= 3");
    if (backbone_repeat < 1) throw ConfigError("synth: backbone_repeat must be >= 1");
    if (fringe_attach_weight < 1) throw ConfigError("synth: fringe_attach_weight must be >= 1");
    if (fringe_attach_tags < 1 || fringe_attach_tags > backbone_tags_per_community)
      throw ConfigError("synth: fringe_attach_tags must lie in [1, backbone_tags_per_community]");
    if (seed_community && *seed_community >= n_communities)
      throw ConfigError("synth: seed_community out of range");
    if (epochs.empty()) throw ConfigError("synth: at least one epoch required");
    EpochConfig{epochs};  // validates ordering
  }
};

struct FringeSeed {
  Node tag;
  std::size_t community = 0;  // planted community index
  std::vector<Node> anchors;  // backbone tags it co-occurs with
};

struct GroundTruth {
  std::vector<Community> communities;  // planted backbones, index = planted community
  std::vector<FringeSeed> fringe;

  NodeSet backbone_nodes() const {
    NodeSet out;
    for (const auto& c : communities) out.insert(c.begin(), c.end());
    return out;
  }

  NodeSet fringe_tags() const {
    NodeSet out;
    for (const auto& f : fringe) out.insert(f.tag);
    return out;
  }

  // Fringe seeds as the conspiracy list; the skeptical list is empty.
  SeedLexicon lexicon() const { return {{}, fringe_tags()}; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["communities"] = nlohmann::ordered_json::array();
    for (const auto& c : communities) j["communities"].push_back(c);
    j["fringe"] = nlohmann::ordered_json::array();
    for (const auto& f : fringe) {
      nlohmann::ordered_json fj;
      fj["tag"] = f.tag;
      fj["community"] = f.community;
      fj["anchors"] = f.anchors;
      j["fringe"].push_back(fj);
    }
    return j;
  }
};

struct SynthCorpus {
  std::vector<PostRecord> records;
  GroundTruth truth;
};

namespace detail {

// Modulo draw on the raw engine output: identical on every standard library.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline std::string padded(const char* prefix, std::size_t v, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, v);
  return buf;
}

}  // namespace detail

// Every epoch receives the full planted structure: backbone_repeat two-tag
// posts per backbone pair, and fringe_attach_weight two-tag posts per
// (fringe seed, anchor). Deterministic for a fixed spec.
inline SynthCorpus generate_synthetic_corpus(const SynthSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.rng_seed);
  SynthCorpus out;
  auto& truth = out.truth;
  for (std::size_t c = 0; c < spec.n_communities; ++c) {
    Community members;
    for (std::size_t t = 0; t < spec.backbone_tags_per_community; ++t)
      members.push_back("c" + std::to_string(c + 1) + "_t" + std::to_string(t + 1));
    std::sort(members.begin(), members.end());
    truth.communities.push_back(std::move(members));
  }
  for (std::size_t f = 0; f < spec.n_fringe_seeds; ++f) {
    FringeSeed fs;
    fs.tag = detail::padded("seed", f + 1, 2);
    fs.community = spec.seed_community ? *spec.seed_community : detail::draw(rng, spec.n_communities);
    Community pool = truth.communities[fs.community];
    for (std::size_t a = 0; a < spec.fringe_attach_tags; ++a) {
      const auto pick = detail::draw(rng, pool.size());
      fs.anchors.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    std::sort(fs.anchors.begin(), fs.anchors.end());
    truth.fringe.push_back(std::move(fs));
  }

  std::vector<std::pair<Node, Node>> pairs;
  for (const auto& members : truth.communities)
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        for (std::size_t r = 0; r < spec.backbone_repeat; ++r) pairs.emplace_back(members[i], members[j]);
  for (const auto& f : truth.fringe)
    for (const auto& anchor : f.anchors)
      for (Weight r = 0; r < spec.fringe_attach_weight; ++r) pairs.emplace_back(anchor, f.tag);

  for (std::size_t e = 0; e < spec.epochs.size(); ++e) {
    using namespace std::chrono;
    const auto& ep = spec.epochs[e];
    const sys_seconds begin{sys_days{year{ep.start_year} / January / 1}};
    const sys_seconds end{sys_days{year{ep.end_year + 1} / January / 1}};
    const auto span = static_cast<std::uint64_t>((end - begin).count());
    std::vector<PostRecord> epoch_posts;
    for (const auto& [a, b] : pairs) {
      PostRecord rec;
      rec.timestamp = begin + seconds{static_cast<std::int64_t>(detail::draw(rng, span))};
      rec.text = "#" + a + " #" + b;
      assign_hashtags(rec, {HashtagToken::from_normalized(a), HashtagToken::from_normalized(b)});
      rec.author_id = detail::padded("u", detail::draw(rng, 500) + 1, 4);
      rec.lang_tag = "it";
      rec.likes = detail::draw(rng, 20);
      rec.replies = detail::draw(rng, 5);
      rec.reposts = detail::draw(rng, 8);
      rec.quotes = detail::draw(rng, 3);
      epoch_posts.push_back(std::move(rec));
    }
    std::stable_sort(epoch_posts.begin(), epoch_posts.end(),
                     [](const PostRecord& x, const PostRecord& y) { return x.timestamp < y.timestamp; });
    for (auto& rec : epoch_posts) {
      rec.post_id = "syn" + detail::padded("", out.records.size() + 1, 6);
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

struct EpochRecovery {
  std::string epoch;
  double core_recovery = 0.0;
  double augmented_recovery = 0.0;
  double projection_accuracy = 1.0;  // share of fringe seeds projected into their planted community
  bool core_matches_backbone = false;
  std::size_t core_members = 0;
  std::size_t projected = 0;
  std::size_t unassigned = 0;

  double delta() const { return augmented_recovery - core_recovery; }
};

struct PlantedRecoveryReport {
  std::vector<EpochRecovery> epochs;
  std::vector<std::string> failures;  // unmet expectations for weight-1 fringe specs

  bool passed() const { return failures.empty(); }
};

// Runs the full analysis on a generated corpus and checks the planted
// expectations: exact backbone core, no fringe seed in the core, every
// fringe seed projected into its planted community.
inline PlantedRecoveryReport planted_recovery_eval(const SynthSpec& spec, const AnalysisParams& params = {}) {
  const SynthCorpus corpus = generate_synthetic_corpus(spec);
  const AnalysisResult res = analyze(corpus.records, EpochConfig{spec.epochs}, params, corpus.truth.lexicon());
  const NodeSet backbone = corpus.truth.backbone_nodes();
  const NodeSet seeds = corpus.truth.fringe_tags();
  PlantedRecoveryReport rep;
  auto fail = [&](const std::string& epoch, const std::string& msg) { rep.failures.push_back(epoch + ": " + msg); };
  for (const auto& ea : res.epochs) {
    EpochRecovery er;
    er.epoch = ea.epoch.label;
    const NodeSet core = ea.layers.core.node_set();
    er.core_matches_backbone = core == backbone;
    er.core_recovery = recovery_rate(seeds, core);
    er.augmented_recovery = ea.recovery.augmented_rate;
    er.core_members = ea.assignments.count(AssignmentStatus::kCoreMember);
    er.projected = ea.assignments.count(AssignmentStatus::kProjected);
    er.unassigned = ea.assignments.count(AssignmentStatus::kUnassigned);
    std::size_t correct = 0;
    for (const auto& f : corpus.truth.fringe) {
      const auto* a = ea.assignments.find(f.tag);
      if (!a || !a->community) continue;
      auto it = ea.coalitions.find(*a->community);
      if (it != ea.coalitions.end() && it->second == corpus.truth.communities[f.community]) ++correct;
    }
    if (!corpus.truth.fringe.empty())
      er.projection_accuracy = static_cast<double>(correct) / static_cast<double>(corpus.truth.fringe.size());
    if (spec.fringe_attach_weight < params.core_min_weight) {
      if (!er.core_matches_backbone) fail(er.epoch, "core node set differs from the planted backbone");
      if (er.core_recovery != 0.0) fail(er.epoch, "fringe seeds leaked into the core");
      if (!seeds.empty() && er.augmented_recovery != 1.0) fail(er.epoch, "augmented recovery below 1");
      if (er.projection_accuracy != 1.0) fail(er.epoch, "fringe seeds projected to the wrong community");
    }
    rep.epochs.push_back(er);
  }
  return rep;
}

// Erdős–Rényi G(n, p) with integer weights in [1, max_weight].
inline WeightedGraph erdos_renyi(std::size_t n, double p, std::mt19937_64& rng, Weight max_weight = 1) {
  WeightedGraph g;
  std::vector<Node> names;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("n" + std::to_string(i));
    g.add_node(names.back());
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng) < p) g.add_edge(names[i], names[j], 1 + detail::draw(rng, max_weight));
  return g;
}

inline bool is_connected(const WeightedGraph& g) {
  if (g.empty()) return true;
  NodeSet seen;
  std::vector<Node> stack{g.nodes().front()};
  seen.insert(stack.back());
  while (!stack.empty()) {
    const Node v = stack.back();
    stack.pop_back();
    for (const auto& [w, _] : g.neighbors(v))
      if (seen.insert(w).second) stack.push_back(w);
  }
  return seen.size() == g.node_count();
}

// `count` connected G(n, p) samples, n in [3, 8], p in {0.3, 0.5, 0.8}.
inline std::vector<WeightedGraph> random_connected_graphs(std::size_t count, std::uint64_t seed,
                                                          Weight max_weight = 3) {
  static constexpr double kDensities[] = {0.3, 0.5, 0.8};
  std::mt19937_64 rng(seed);
  std::vector<WeightedGraph> out;
  while (out.size() < count) {
    const std::size_t n = 3 + detail::draw(rng, 6);
    const double p = kDensities[out.size() % 3];
    auto g = erdos_renyi(n, p, rng, max_weight);
    if (is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace hashnet::synth
