#pragma once

#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "hashnet/analysis.hpp"
#include "hashnet/config.hpp"
#include "hashnet/corpus.hpp"
#include "hashnet/export.hpp"
#include "hashnet/report.hpp"

namespace hashnet {

inline constexpr std::string_view kVersion = "0.1.0";

inline std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InvariantError("SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

// ASCII file-name form of an epoch label ("2010–2014" -> "2010-2014").
inline std::string slug(std::string_view label) {
  std::string out;
  for (unsigned char c : label) {
    if (std::isalnum(c) || c == '_' || c == '.') {
      out.push_back(static_cast<char>(c));
    } else if ((c < 0x80 || c >= 0xC0) && !out.empty() && out.back() != '-') {
      out.push_back('-');  // one dash per non-ASCII code point or separator
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? "epoch" : out;
}

// Pipeline entry points, in order. Each subcommand stops at its stage.
enum class Stage { kIngest, kStats, kLayers, kCommunities, kMatch, kProject, kEnrich, kReport, kRun };

inline std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::kIngest: return "ingest";
    case Stage::kStats: return "stats";
    case Stage::kLayers: return "layers";
    case Stage::kCommunities: return "communities";
    case Stage::kMatch: return "match";
    case Stage::kProject: return "project";
    case Stage::kEnrich: return "enrich";
    case Stage::kReport: return "report";
    case Stage::kRun: return "run";
  }
  return "?";
}

// Relative path -> file content.
using Bundle = std::map<std::string, std::string>;

struct IngestResult {
  ParseResult parsed;
  std::vector<PostRecord> records;  // after the language filter
  std::size_t dropped_by_language = 0;
  std::string input_sha256;
};

struct RunSummary {
  IngestResult ingest;
  SeedLexicon seeds;
  std::string seeds_sha256;
  AnalysisResult analysis;
  Bundle artifacts;  // includes manifest.json for Stage::kRun
};

namespace detail {

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Runs `f`, prefixing any error with the stage name while keeping its category.
template <class F>
auto tagged(std::string_view stage, F&& f) -> decltype(f()) {
  const std::string tag = std::string(stage) + ": ";
  try {
    return f();
  } catch (const ConfigError& e) {
    throw ConfigError(tag + e.what());
  } catch (const DataError& e) {
    throw DataError(tag + e.what());
  } catch (const InvariantError& e) {
    throw InvariantError(tag + e.what());
  } catch (const std::exception& e) {
    throw InvariantError(tag + "internal error: " + e.what());
  }
}

inline GraphAnnotations annotate(const EpochAnalysis& ea, const WeightedGraph& g, const char* layer) {
  GraphAnnotations ann{ea.epoch.label, layer, {}};
  for (const auto& n : g.nodes()) {
    const auto* a = ea.assignments.find(n);
    if (!a) continue;
    NodeAnnotation na;
    na.status = std::string(to_string(a->status));
    if (a->community) {
      na.community_id = a->community->str();
      if (const auto* row = ea.enrichment.find(*a->community)) {
        na.enrichment = row->enrichment;
        na.log_enrichment = row->log_enrichment();
      }
    }
    if (a->status == AssignmentStatus::kProjected) na.support = a->support;
    ann.nodes.emplace(n, std::move(na));
  }
  return ann;
}

inline std::string render_graph(const WeightedGraph& g, const GraphAnnotations& ann, GraphFormat f) {
  std::ostringstream out;
  export_graph(out, g, ann, f);
  return out.str();
}

}  // namespace detail

inline IngestResult ingest(const PipelineConfig& cfg) {
  IngestResult r;
  const std::string bytes = detail::read_file(cfg.input);
  r.input_sha256 = sha256_hex(bytes);
  std::istringstream in(bytes);
  r.parsed = parse_corpus(in, cfg.format, ParseOptions{cfg.strict, cfg.fields});
  r.records = cfg.lang ? filter_language(r.parsed.records, lang_tag_is(*cfg.lang)) : r.parsed.records;
  r.dropped_by_language = r.parsed.records.size() - r.records.size();
  return r;
}

// Renders the artifacts owned by `upto` (everything for report/run).
inline Bundle render_artifacts(const PipelineConfig& cfg, const RunSummary& run, Stage upto) {
  Bundle b;
  const auto& res = run.analysis;
  const bool all = upto == Stage::kReport || upto == Stage::kRun;
  if (upto == Stage::kIngest || upto == Stage::kRun) {
    std::ostringstream corpus, malformed;
    export_corpus(corpus, run.ingest.records, CorpusFormat::kJsonl);
    write_malformed_report(malformed, run.ingest.parsed.malformed);
    b["corpus.normalized.jsonl"] = corpus.str();
    b["malformed_rows.csv"] = malformed.str();
  }
  if (upto == Stage::kIngest) return b;
  b["tables/epoch_stats.csv"] = report::epoch_stats_csv(res);
  if (upto == Stage::kStats) return b;
  for (const auto& ea : res.epochs) {
    const std::string dir = "graphs/" + slug(ea.epoch.label) + "/";
    std::ostringstream epoch_edges, core_edges, coverage_edges;
    write_edge_list(epoch_edges, ea.graph);
    write_edge_list(core_edges, ea.layers.core);
    write_edge_list(coverage_edges, ea.layers.coverage);
    b[dir + "epoch_edges.csv"] = epoch_edges.str();
    b[dir + "core_edges.csv"] = core_edges.str();
    b[dir + "coverage_edges.csv"] = coverage_edges.str();
  }
  if (upto == Stage::kLayers) return b;
  report::validate(res);
  b["tables/diagnostics.csv"] = report::diagnostics_csv(res);
  b["tables/communities.csv"] = report::communities_csv(res);
  if (upto == Stage::kMatch || all) b["tables/matches.csv"] = report::matches_csv(res);
  if (upto == Stage::kProject || all) {
    b["tables/assignments.csv"] = report::assignments_csv(res);
    b["tables/assignment_counts.csv"] = report::assignment_counts_csv(res);
    b["tables/projection_support.csv"] = report::support_csv(res);
  }
  if (upto == Stage::kEnrich || all) {
    b["tables/enrichment.csv"] = report::enrichment_csv(res);
    b["tables/recovery.csv"] = report::recovery_csv(res, cfg.params.seed_set);
  }
  if (all) {
    b["report.md"] = report::markdown(res, cfg.params.seed_set);
    const std::string ext(extension(cfg.graph_format));
    for (const auto& ea : res.epochs) {
      const std::string dir = "graphs/" + slug(ea.epoch.label) + "/";
      b[dir + "core." + ext] = detail::render_graph(ea.layers.core, detail::annotate(ea, ea.layers.core, "core"),
                                                    cfg.graph_format);
      b[dir + "coverage." + ext] = detail::render_graph(
          ea.layers.coverage, detail::annotate(ea, ea.layers.coverage, "coverage"), cfg.graph_format);
    }
  }
  return b;
}

// Lists every artifact with its SHA-256. Holds no paths or clocks, so
// identical inputs and parameters give an identical manifest.
inline std::string manifest_json(const PipelineConfig& cfg, const RunSummary& run, const Bundle& artifacts) {
  nlohmann::ordered_json m;
  m["tool"] = "hashnet";
  m["version"] = std::string(kVersion);
  m["input_sha256"] = run.ingest.input_sha256;
  m["seeds_sha256"] = run.seeds_sha256;
  nlohmann::ordered_json c;
  c["format"] = cfg.format == CorpusFormat::kJsonl ? "jsonl" : "csv";
  c["lang"] = cfg.lang.value_or("");
  c["strict"] = cfg.strict;
  c["epochs"] = cfg.epochs.to_string();
  c["core_min_weight"] = cfg.params.core_min_weight;
  c["k"] = cfg.params.k;
  c["match_threshold"] = cfg.params.match_threshold;
  c["weighted_betweenness"] = cfg.params.weighted_betweenness;
  c["seed_set"] = std::string(to_string(cfg.params.seed_set));
  c["mention_mode"] = cfg.params.mention_mode == MentionMode::kPosts ? "posts" : "occurrences";
  c["graph_format"] = std::string(extension(cfg.graph_format));
  m["config"] = c;
  m["records"] = {{"parsed", run.ingest.parsed.records.size()},
                  {"malformed", run.ingest.parsed.malformed.size()},
                  {"dropped_by_language", run.ingest.dropped_by_language},
                  {"outside_epochs", run.analysis.unassigned_records}};
  m["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& [path, content] : artifacts)
    m["artifacts"].push_back({{"path", path}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
  return m.dump(2) + "\n";
}

inline void write_bundle(const std::filesystem::path& dir, const Bundle& b) {
  namespace fs = std::filesystem;
  for (const auto& [rel, content] : b) {
    const fs::path p = dir / rel;
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(content.data(), static_cast<std::streamsize>(content.size())))
      throw DataError("cannot write " + p.string());
  }
}

inline constexpr std::string_view kFailureMarker = "FAILED";

// Renders everything in memory and only then writes, so a failing stage
// leaves no partial artifacts; the output directory gets a FAILED marker
// holding the stage-tagged error instead.
inline RunSummary run_pipeline(const PipelineConfig& cfg, Stage upto = Stage::kRun) {
  namespace fs = std::filesystem;
  try {
    RunSummary run;
    detail::tagged("config", [&] { cfg.validate(); });
    run.ingest = detail::tagged("ingest", [&] { return ingest(cfg); });
    if (cfg.seeds) {
      detail::tagged("seeds", [&] {
        const std::string bytes = detail::read_file(*cfg.seeds);
        run.seeds_sha256 = sha256_hex(bytes);
        std::istringstream in(bytes);
        run.seeds = load_seed_lexicon(in, cfg.lexicon_format());
      });
    }
    if (upto != Stage::kIngest) {
      const AnalysisDepth depth = upto == Stage::kStats    ? AnalysisDepth::kGraphs
                                  : upto == Stage::kLayers ? AnalysisDepth::kLayers
                                                           : AnalysisDepth::kFull;
      run.analysis = detail::tagged("analysis", [&] {
        return analyze(run.ingest.records, cfg.epochs, cfg.params, run.seeds, depth);
      });
    }
    run.artifacts = detail::tagged("export", [&] { return render_artifacts(cfg, run, upto); });
    if (upto == Stage::kRun) run.artifacts["manifest.json"] = manifest_json(cfg, run, run.artifacts);
    detail::tagged("write", [&] {
      std::error_code ec;
      fs::remove(cfg.out_dir / kFailureMarker, ec);
      write_bundle(cfg.out_dir, run.artifacts);
    });
    return run;
  } catch (const Error& e) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (!ec) {
      std::ofstream marker(cfg.out_dir / kFailureMarker);
      marker << e.what() << '\n';
    }
    throw;
  }
}

}  // namespace hashnet
