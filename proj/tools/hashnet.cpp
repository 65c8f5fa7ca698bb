// hashnet: dual-layer hashtag co-occurrence analysis from the command line.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hashnet/hashnet.hpp"

namespace {

namespace fs = std::filesystem;
using namespace hashnet;

struct PipelineFlags {
  std::string config;
  std::string input;
  std::string format;
  std::string lang;
  bool strict = false;
  std::string field_map;
  std::string epochs;
  std::int64_t core_min_weight = 2;
  std::int64_t k = 2;
  double match_threshold = 0.2;
  std::string seeds;
  std::string seed_set;
  std::string mention_mode;
  bool weighted_betweenness = false;
  std::string graph_format;
  std::string out;
};

struct PipelineCommand {
  CLI::App* app = nullptr;
  Stage stage = Stage::kRun;
  PipelineFlags flags;
};

void add_pipeline_flags(CLI::App* app, PipelineFlags& f) {
  app->add_option("-c,--config", f.config, "TOML config file; flags override its values");
  app->add_option("-i,--input", f.input, "Corpus file");
  app->add_option("--format", f.format, "Corpus format: jsonl or csv");
  app->add_option("--lang", f.lang, "Keep only posts with this language tag (e.g. it)");
  app->add_flag("--strict", f.strict, "Fail on the first malformed row");
  app->add_option("--field-map", f.field_map, "Source field names, e.g. id=tweet_id,created_at=createdAt");
  app->add_option("--epochs", f.epochs, "Epochs as START-END or LABEL=START-END, comma separated");
  app->add_option("--core-min-weight", f.core_min_weight, "Minimum edge weight in the core layer")->check(CLI::PositiveNumber);
  app->add_option("--k", f.k, "k-core order of the core layer")->check(CLI::PositiveNumber);
  app->add_option("--match-threshold", f.match_threshold, "Minimum Jaccard overlap for cross-epoch matches")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--seeds", f.seeds, "Seed lexicon (JSON, or .txt with 'label: #a, #b' lines)");
  app->add_option("--seed-set", f.seed_set, "skeptical, conspiracy or union");
  app->add_option("--mention-mode", f.mention_mode, "posts or occurrences");
  app->add_flag("--weighted-betweenness", f.weighted_betweenness, "Shortest paths by distance 1/weight");
  app->add_option("--graph-format", f.graph_format, "Graph export format: graphml, dot, json or csv");
  app->add_option("-o,--out", f.out, "Output directory");
}

PipelineConfig build_config(const CLI::App& app, const PipelineFlags& f) {
  PipelineConfig cfg = f.config.empty() ? PipelineConfig{} : load_config(f.config);
  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("--input")) cfg.input = f.input;
  if (given("--format")) cfg.format = parse_corpus_format(f.format);
  if (given("--lang")) cfg.lang = f.lang;
  if (given("--strict")) cfg.strict = f.strict;
  if (given("--field-map")) cfg.fields = FieldMap::parse(f.field_map);
  if (given("--epochs")) cfg.epochs = EpochConfig::parse(f.epochs);
  if (given("--core-min-weight")) cfg.params.core_min_weight = static_cast<Weight>(f.core_min_weight);
  if (given("--k")) cfg.params.k = static_cast<std::size_t>(f.k);
  if (given("--match-threshold")) cfg.params.match_threshold = f.match_threshold;
  if (given("--seeds")) cfg.seeds = fs::path(f.seeds);
  if (given("--seed-set")) cfg.params.seed_set = parse_seed_set(f.seed_set);
  if (given("--mention-mode")) cfg.params.mention_mode = parse_mention_mode(f.mention_mode);
  if (given("--weighted-betweenness")) cfg.params.weighted_betweenness = f.weighted_betweenness;
  if (given("--graph-format")) cfg.graph_format = parse_graph_format(f.graph_format);
  if (given("--out")) cfg.out_dir = f.out;
  if (!given("--format") && f.config.empty() && cfg.input.extension() == ".csv") cfg.format = CorpusFormat::kCsv;
  return cfg;
}

void print_summary(const RunSummary& run, const PipelineConfig& cfg, Stage stage) {
  const auto& parsed = run.ingest.parsed;
  std::cerr << "parsed " << parsed.records.size() << " records (" << parsed.malformed.size() << " malformed, "
            << run.ingest.dropped_by_language << " dropped by language filter)\n";
  if (stage == Stage::kStats) std::cout << report::epoch_stats_csv(run.analysis);
  if (stage == Stage::kCommunities) std::cout << report::diagnostics_csv(run.analysis);
  if (stage == Stage::kLayers)
    for (const auto& ea : run.analysis.epochs)
      std::cout << ea.epoch.label << ": core N=" << ea.layers.core.node_count() << " E=" << ea.layers.core.edge_count()
                << ", coverage N=" << ea.layers.coverage.node_count() << " E=" << ea.layers.coverage.edge_count()
                << '\n';
  if (stage == Stage::kEnrich)
    for (const auto& ea : run.analysis.epochs)
      std::cout << ea.epoch.label << ": seed recovery core=" << csv::real(ea.recovery.core_rate, 3)
                << " augmented=" << csv::real(ea.recovery.augmented_rate, 3) << '\n';
  std::cerr << "wrote " << run.artifacts.size() << " files to " << cfg.out_dir.string() << '\n';
}

struct SynthFlags {
  std::size_t communities = 3;
  std::size_t tags = 6;
  std::size_t repeat = 3;
  std::size_t fringe = 20;
  std::uint64_t attach_weight = 1;
  std::size_t attach_tags = 1;
  std::optional<std::size_t> seed_community;
  std::uint64_t rng_seed = synth::SynthSpec{}.rng_seed;
  std::string epochs;
  std::string out = "synth_out";
};

int run_synth(const SynthFlags& f) {
  synth::SynthSpec spec;
  spec.n_communities = f.communities;
  spec.backbone_tags_per_community = f.tags;
  spec.backbone_repeat = f.repeat;
  spec.n_fringe_seeds = f.fringe;
  spec.fringe_attach_weight = f.attach_weight;
  spec.fringe_attach_tags = f.attach_tags;
  if (f.seed_community) spec.seed_community = *f.seed_community - 1;
  spec.rng_seed = f.rng_seed;
  if (!f.epochs.empty()) spec.epochs = EpochConfig::parse(f.epochs).epochs();
  const auto corpus = synth::generate_synthetic_corpus(spec);

  Bundle b;
  std::ostringstream records;
  export_corpus(records, corpus.records, CorpusFormat::kJsonl);
  b["corpus.jsonl"] = records.str();
  b["ground_truth.json"] = corpus.truth.to_json().dump(2) + "\n";
  const auto lex = corpus.truth.lexicon();
  nlohmann::ordered_json seeds;
  seeds["skeptical"] = std::vector<std::string>(lex.skeptical.begin(), lex.skeptical.end());
  seeds["conspiracy"] = std::vector<std::string>(lex.conspiracy.begin(), lex.conspiracy.end());
  b["seeds.json"] = seeds.dump(2) + "\n";
  std::string epochs_toml;
  for (const auto& e : spec.epochs) {
    if (!epochs_toml.empty()) epochs_toml += ", ";
    epochs_toml += "\"" + e.label + "=" + std::to_string(e.start_year) + "-" + std::to_string(e.end_year) + "\"";
  }
  b["config.toml"] = "[input]\npath = \"corpus.jsonl\"\nformat = \"jsonl\"\n\n[analysis]\nepochs = [" + epochs_toml +
                     "]\n\n[seeds]\npath = \"seeds.json\"\n\n[output]\ndir = \"out\"\n";
  write_bundle(f.out, b);
  std::cerr << "wrote " << corpus.records.size() << " synthetic posts to " << f.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-layer (core/coverage) hashtag co-occurrence analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  struct Entry {
    const char* name;
    Stage stage;
    const char* help;
  };
  static constexpr Entry kEntries[] = {
      {"ingest", Stage::kIngest, "Parse, normalize and language-filter a corpus"},
      {"stats", Stage::kStats, "Posts, hashtags and bigrams per epoch"},
      {"layers", Stage::kLayers, "Core and coverage layer edge lists per epoch"},
      {"communities", Stage::kCommunities, "Girvan-Newman communities and layer diagnostics"},
      {"match", Stage::kMatch, "Cross-epoch community matching"},
      {"project", Stage::kProject, "Project coverage hashtags into core communities"},
      {"enrich", Stage::kEnrich, "Seed enrichment and recovery"},
      {"report", Stage::kReport, "Markdown report, CSV tables and annotated graphs"},
      {"run", Stage::kRun, "End-to-end run with manifest"},
  };
  std::vector<PipelineCommand> commands(std::size(kEntries));
  for (std::size_t i = 0; i < std::size(kEntries); ++i) {
    commands[i].app = app.add_subcommand(kEntries[i].name, kEntries[i].help);
    commands[i].stage = kEntries[i].stage;
    add_pipeline_flags(commands[i].app, commands[i].flags);
  }

  SynthFlags sf;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a planted-structure synthetic corpus");
  synth_cmd->add_option("--communities", sf.communities, "Planted communities")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--tags", sf.tags, "Backbone hashtags per community");
  synth_cmd->add_option("--repeat", sf.repeat, "Posts per backbone pair");
  synth_cmd->add_option("--fringe", sf.fringe, "Fringe seed hashtags");
  synth_cmd->add_option("--attach-weight", sf.attach_weight, "Posts per fringe attachment");
  synth_cmd->add_option("--attach-tags", sf.attach_tags, "Backbone hashtags each fringe seed attaches to");
  synth_cmd->add_option("--seed-community", sf.seed_community, "Attach all fringe seeds to this community (1-based)");
  synth_cmd->add_option("--rng-seed", sf.rng_seed, "Generator seed");
  synth_cmd->add_option("--epochs", sf.epochs, "Epochs as START-END or LABEL=START-END, comma separated");
  synth_cmd->add_option("-o,--out", sf.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::kConfig);
  }

  try {
    if (synth_cmd->parsed()) return run_synth(sf);
    for (auto& cmd : commands) {
      if (!cmd.app->parsed()) continue;
      const PipelineConfig cfg = build_config(*cmd.app, cmd.flags);
      const RunSummary run = run_pipeline(cfg, cmd.stage);
      print_summary(run, cfg, cmd.stage);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kInvariant);
  }
  return static_cast<int>(ExitCode::kInvariant);
}
