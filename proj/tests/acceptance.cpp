// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// runtime checked against its budget. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "hashnet/hashnet.hpp"
#include "hashnet/reference.hpp"

using namespace hashnet;

namespace {

constexpr double kNumericTol = 1e-9;
constexpr double kShareTol = 1e-12;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && s >= budget_s) o.require(false, "runtime budget exceeded");
  if (!o.ok) ++failures;
  std::printf("%s  %-22s %7.3f s", o.ok ? "PASS" : "FAIL", name, s);
  if (budget_s > 0) std::printf(" (budget %.0f s)", budget_s);
  if (!o.detail.empty()) std::printf("  %s", o.detail.c_str());
  std::printf("\n");
  std::fflush(stdout);
}

std::set<NodeSet> as_sets(const Partition& p) {
  std::set<NodeSet> out;
  for (const auto& c : p.communities) out.insert(NodeSet(c.begin(), c.end()));
  return out;
}

bool is_subgraph(const WeightedGraph& small, const WeightedGraph& big) {
  for (const auto& n : small.nodes())
    if (!big.has_node(n)) return false;
  for (const auto& e : small.edges())
    if (big.weight(e.source, e.target) != e.weight) return false;
  return true;
}

bool maximal_kcore(const WeightedGraph& g, const WeightedGraph& core, std::size_t k) {
  std::vector<Node> removed;
  for (const auto& n : g.nodes())
    if (!core.has_node(n)) removed.push_back(n);
  for (std::uint32_t mask = 1; mask < (1u << removed.size()); ++mask) {
    NodeSet keep = core.node_set();
    for (std::size_t i = 0; i < removed.size(); ++i)
      if (mask & (1u << i)) keep.insert(removed[i]);
    const auto sub = g.induced(keep);
    bool all = true;
    for (const auto& n : sub.nodes()) all = all && sub.degree(n) >= k;
    if (all) return false;
  }
  return true;
}

std::vector<PostRecord> random_corpus(std::mt19937_64& rng) {
  std::vector<PostRecord> out;
  const std::size_t n_posts = rng() % 61;
  for (std::size_t i = 0; i < n_posts; ++i) {
    PostRecord r;
    r.post_id = std::to_string(i);
    r.timestamp = *parse_timestamp(std::to_string(2010 + rng() % 5) + "-03-01");
    std::vector<HashtagToken> toks;
    for (std::size_t k = rng() % 5; k > 0; --k)
      toks.push_back(HashtagToken::from_normalized("t" + std::to_string(rng() % 10)));
    assign_hashtags(r, toks);
    out.push_back(std::move(r));
  }
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path data(const std::string& name) { return std::filesystem::path(HASHNET_TEST_DATA) / name; }

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("hashnet_acceptance_" + std::to_string(::getpid())) / name;
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

int main() {
  criterion("oracle_equivalence", 60, [] {
    Outcome o;
    const auto graphs = synth::random_connected_graphs(200, 20240101);
    o.require(graphs.size() >= 200, "fewer than 200 graphs");
    for (const auto& g : graphs) {
      o.require(g.node_count() <= 8, "graph larger than 8 nodes");
      for (std::size_t k = 1; k <= 3; ++k) o.require(k_core(g, k) == reference::reference_kcore(g, k), "k-core mismatch");
      const auto eb = edge_betweenness(g);
      const auto ref = reference::reference_betweenness(g);
      o.require(eb.size() == ref.size(), "betweenness edge set mismatch");
      for (const auto& [e, v] : ref) o.require(std::abs(eb.at(e) - v) <= kNumericTol, "betweenness mismatch");
      const auto d = girvan_newman(g);
      const auto rd = reference::reference_girvan_newman(g);
      o.require(d.levels.size() == rd.size(), "dendrogram depth mismatch");
      for (std::size_t i = 0; i < std::min(d.levels.size(), rd.size()); ++i) {
        o.require(as_sets(d.levels[i]) == rd[i], "dendrogram level mismatch");
        std::vector<Community> ref_comms;
        for (const auto& s : rd[i]) ref_comms.emplace_back(s.begin(), s.end());
        o.require(std::abs(d.levels[i].modularity - reference::reference_modularity(g, ref_comms)) <= kNumericTol,
                  "modularity mismatch");
      }
    }
    o.detail = o.ok ? std::to_string(graphs.size()) + " graphs, k-core/partitions exact, tol 1e-9" : o.detail;
    return o;
  });

  criterion("layer_containment", 30, [] {
    Outcome o;
    std::mt19937_64 rng(77);
    std::size_t brute = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto g = build_epoch_graph(random_corpus(rng));
      const auto lp = build_layers(g, 1 + rng() % 3, 1 + rng() % 3);
      o.require(is_subgraph(lp.core, lp.coverage), "core not contained in coverage");
      o.require(k_core(lp.core, lp.k) == lp.core, "k-core not a fixpoint");
      const auto thresholded = threshold_edges(g, lp.core_min_weight);
      if (thresholded.node_count() <= 10) {
        ++brute;
        o.require(maximal_kcore(thresholded, lp.core, lp.k), "k-core not maximal");
      }
    }
    o.detail = o.ok ? "1000 corpora, " + std::to_string(brute) + " brute-force maximality checks" : o.detail;
    return o;
  });

  criterion("planted_recovery", 5, [] {
    Outcome o;
    const auto rep = synth::planted_recovery_eval(synth::SynthSpec{});
    o.require(rep.passed(), rep.failures.empty() ? "" : rep.failures.front());
    o.require(!rep.epochs.empty(), "no epochs");
    for (const auto& e : rep.epochs) {
      o.require(e.core_recovery == 0.0, "core recovery != 0");
      o.require(e.augmented_recovery == 1.0, "augmented recovery != 1");
      o.require(e.projection_accuracy == 1.0, "projection accuracy != 1");
    }
    if (o.ok) o.detail = "core 0.00, augmented 1.00, attribution 100% in every epoch";
    return o;
  });

  criterion("enrichment_correctness", 0, [] {
    Outcome o;
    std::mt19937_64 rng(91);
    for (int trial = 0; trial < 500; ++trial) {
      AssignmentTable t;
      std::map<Node, std::uint64_t> m;
      NodeSet seeds;
      const std::uint64_t r = 1 + rng() % 4, q = r + 1 + rng() % 9;
      for (std::size_t c = 0, n = 1 + rng() % 9; c < n; ++c) {
        const std::uint64_t x = 1 + rng() % 100;
        const CommunityId id(static_cast<int>(c + 1));
        t.set("s" + std::to_string(c), {AssignmentStatus::kProjected, id, 1});
        t.set("b" + std::to_string(c), {AssignmentStatus::kProjected, id, 1});
        m["s" + std::to_string(c)] = r * x;
        m["b" + std::to_string(c)] = (q - r) * x;
        seeds.insert("s" + std::to_string(c));
      }
      const auto rep = enrichment_scores(t, m, SeedLexicon{seeds, {}}, SeedSet::kSkeptical);
      double ss = 0, bs = 0;
      for (const auto& row : rep.communities) {
        o.require(row.enrichment && std::abs(*row.enrichment - 1.0) <= kShareTol, "proportional enrichment != 1");
        ss += row.seed_share;
        bs += row.baseline_share;
      }
      o.require(std::abs(ss - 1.0) <= kShareTol && std::abs(bs - 1.0) <= kShareTol, "shares do not sum to 1");
    }
    for (std::size_t target = 0; target < 3; ++target) {
      synth::SynthSpec spec;
      spec.seed_community = target;
      const auto c = synth::generate_synthetic_corpus(spec);
      const auto res = analyze(c.records, EpochConfig{spec.epochs}, {}, c.truth.lexicon());
      for (const auto& ea : res.epochs) {
        double ss = 0, bs = 0;
        for (const auto& row : ea.enrichment.communities) {
          const bool planted = ea.coalitions.at(row.community) == c.truth.communities[target];
          o.require(row.enrichment.has_value(), "missing enrichment");
          if (planted) o.require(*row.enrichment > 1.0, "seeded community not enriched");
          else o.require(*row.enrichment < 1.0, "unseeded community enriched");
          ss += row.seed_share;
          bs += row.baseline_share;
        }
        o.require(std::abs(ss - 1.0) <= kShareTol && std::abs(bs - 1.0) <= kShareTol, "shares do not sum to 1");
      }
    }
    if (o.ok) o.detail = "neutral within 1e-12; concentrated seeds > 1 vs < 1; shares sum to 1 within 1e-12";
    return o;
  });

  criterion("diagnostics_identity", 0, [] {
    Outcome o;
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 500; ++trial) {
      const auto g = synth::erdos_renyi(1 + rng() % 20, 0.15, rng, 4);
      const auto row = diagnostics(g, make_partition(g, connected_components(g)));
      o.require(row.within_share == 1.0, "component partition within share != 1.0");
    }
    if (o.ok) o.detail = "500 graphs, W-in exactly 1.0";
    return o;
  });

  criterion("determinism", 0, [] {
    Outcome o;
    auto cfg = load_config(data("fixture/config.toml"));
    cfg.out_dir = scratch("run_a");
    run_pipeline(cfg);
    const std::string a = slurp(cfg.out_dir / "manifest.json");
    cfg.out_dir = scratch("run_b");
    run_pipeline(cfg);
    const std::string b = slurp(cfg.out_dir / "manifest.json");
    o.require(!a.empty() && a == b, "manifests differ");
    if (o.ok) o.detail = "manifest sha256 " + sha256_hex(a).substr(0, 16) + "... identical";
    return o;
  });

  criterion("schema_fidelity", 0, [] {
    Outcome o;
    auto cfg = load_config(data("fixture/config.toml"));
    cfg.out_dir = scratch("schema");
    const auto run = run_pipeline(cfg);
    auto head = [](const std::string& s) { return s.substr(0, s.find('\n') + 1); };
    o.require(head(run.artifacts.at("tables/epoch_stats.csv")) == slurp(data("golden/epoch_stats_header.csv")),
              "epoch_stats header");
    o.require(head(run.artifacts.at("tables/diagnostics.csv")) == slurp(data("golden/diagnostics_header.csv")),
              "diagnostics header");
    const std::string md = run.artifacts.at("report.md");
    o.require(md.find(slurp(data("golden/table1_markdown_header.md"))) != std::string::npos, "markdown counts table");
    o.require(md.find(slurp(data("golden/table2_markdown_header.md"))) != std::string::npos,
              "markdown diagnostics table");
    if (o.ok) o.detail = "Posts/Hashtags/Bigrams and N/E/C/LCC/W-in headers match golden files";
    return o;
  });

  std::filesystem::remove_all(std::filesystem::temp_directory_path() /
                              ("hashnet_acceptance_" + std::to_string(::getpid())));
  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures;
}
