#pragma once

#include <algorithm>
#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "hashnet/analysis.hpp"
#include "hashnet/csv.hpp"
#include "hashnet/error.hpp"

namespace hashnet::report {

// Fixed table headers. Golden tests pin these.
inline const std::vector<std::string> kEpochStatsHeader = {"epoch", "posts", "hashtags", "bigrams"};
inline const std::vector<std::string> kDiagnosticsHeader = {"epoch", "layer", "N", "E", "C", "LCC", "W_in"};
inline const std::vector<std::string> kCommunitiesHeader = {"epoch", "community", "stable_id", "size", "members"};
inline const std::vector<std::string> kMatchesHeader = {"epoch_from", "community_from", "epoch_to",
                                                        "community_to", "jaccard", "stable_id"};
inline const std::vector<std::string> kAssignmentsHeader = {"epoch", "hashtag", "status", "community_id", "support"};
inline const std::vector<std::string> kAssignmentCountsHeader = {"epoch", "core", "projected", "unassigned"};
inline const std::vector<std::string> kSupportHeader = {"epoch", "projected", "min", "median", "max", "w1",
                                                        "w2", "w3_4", "w5_8", "w9_16", "w17_plus"};
inline const std::vector<std::string> kEnrichmentHeader = {"epoch", "community_id", "seed_mentions", "total_mentions",
                                                           "seed_share", "baseline_share", "enrichment",
                                                           "log_enrichment"};
inline const std::vector<std::string> kRecoveryHeader = {"epoch", "seed_set", "n_seeds", "core_recovered",
                                                         "augmented_recovered", "core_recovery",
                                                         "augmented_recovery", "delta"};

struct SupportSummary {
  std::size_t count = 0;
  Weight min = 0;
  Weight max = 0;
  double median = 0.0;
  std::array<std::size_t, 6> buckets{};  // 1, 2, 3-4, 5-8, 9-16, 17+
};

inline SupportSummary summarize_support(std::vector<Weight> supports) {
  SupportSummary s;
  s.count = supports.size();
  if (supports.empty()) return s;
  std::sort(supports.begin(), supports.end());
  s.min = supports.front();
  s.max = supports.back();
  const std::size_t mid = supports.size() / 2;
  s.median = supports.size() % 2 ? static_cast<double>(supports[mid])
                                 : (static_cast<double>(supports[mid - 1]) + static_cast<double>(supports[mid])) / 2.0;
  for (Weight w : supports) {
    std::size_t b = w <= 1 ? 0 : w == 2 ? 1 : w <= 4 ? 2 : w <= 8 ? 3 : w <= 16 ? 4 : 5;
    ++s.buckets[b];
  }
  return s;
}

inline std::string join(const std::vector<Node>& v, char sep = '|') {
  std::string out;
  for (const auto& x : v) {
    if (!out.empty()) out.push_back(sep);
    out += x;
  }
  return out;
}

// Throws InvariantError if a table would carry an impossible value.
inline void validate(const AnalysisResult& res) {
  for (const auto& ea : res.epochs)
    for (const auto* d : {&ea.core_diagnostics, &ea.coverage_diagnostics})
      if (!(d->within_share >= 0.0 && d->within_share <= 1.0) || d->lcc_size > d->n_nodes)
        throw InvariantError("diagnostics out of range for epoch " + ea.epoch.label);
}

inline std::string epoch_stats_csv(const AnalysisResult& res) {
  std::ostringstream out;
  csv::write_row(out, kEpochStatsHeader);
  for (const auto& ea : res.epochs)
    csv::write_row(out, {ea.epoch.label, std::to_string(ea.stats.n_posts), std::to_string(ea.stats.n_unique_hashtags),
                         std::to_string(ea.stats.n_bigrams)});
  return out.str();
}

inline std::vector<std::string> diagnostics_cells(const std::string& epoch, const char* layer,
                                                  const DiagnosticsRow& d) {
  return {epoch,
          layer,
          std::to_string(d.n_nodes),
          std::to_string(d.n_edges),
          std::to_string(d.n_components),
          std::to_string(d.lcc_size),
          csv::real(d.within_share, 4)};
}

inline std::string diagnostics_csv(const AnalysisResult& res) {
  std::ostringstream out;
  csv::write_row(out, kDiagnosticsHeader);
  for (const auto& ea : res.epochs) {
    csv::write_row(out, diagnostics_cells(ea.epoch.label, "core", ea.core_diagnostics));
    csv::write_row(out, diagnostics_cells(ea.epoch.label, "coverage", ea.coverage_diagnostics));
  }
  return out.str();
}

inline std::string communities_csv(const AnalysisResult& res) {
  std::ostringstream out;
  csv::write_row(out, kCommunitiesHeader);
  for (const auto& ea : res.epochs)
    for (std::size_t c = 0; c < ea.core_partition.size(); ++c) {
      const auto& members = ea.core_partition.communities[c];
      csv::write_row(out, {ea.epoch.label, std::to_string(c + 1),
                           c < ea.core_ids.size() ? ea.core_ids[c].str() : std::string{},
                           std::to_string(members.size()), join(members)});
    }
  return out.str();
}

inline std::string matches_csv(const AnalysisResult& res) {
  std::ostringstream out;
  csv::write_row(out, kMatchesHeader);
  for (std::size_t m = 0; m < res.matching.matches.size(); ++m) {
    const auto& mr = res.matching.matches[m];
    std::vector<MatchedPair> pairs = mr.pairs;
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.from < b.from; });
    for (const auto& p : pairs)
      csv::write_row(out, {mr.epoch_from, std::to_string(p.from + 1), mr.epoch_to, std::to_string(p.to + 1),
                           csv::real(p.jaccard), res.matching.labels[m + 1][p.to].str()});
  }
  return out.str();
}

inline std::string assignments_csv(const AnalysisResult& res) {
  std::ostringstream out;
  csv::write_row(out, kAssignmentsHeader);
  for (const auto& ea : res.epochs)
    for (const auto& [h, a] : ea.assignments.rows())
      csv::write_row(out, {ea.epoch.label, h, std::string(to_string(a.status)),
                           a.community ? a.community->str() : std::string{},
                           a.status == AssignmentStatus::kProjected ? std::to_string(a.support) : std::string{}});
  return out.str();
}

inline std::string assignment_counts_csv(const AnalysisResult& res) {
  std::ostringstream out;
  csv::write_row(out, kAssignmentCountsHeader);
  for (const auto& ea : res.epochs)
    csv::write_row(out, {ea.epoch.label, std::to_string(ea.assignments.count(AssignmentStatus::kCoreMember)),
                         std::to_string(ea.assignments.count(AssignmentStatus::kProjected)),
                         std::to_string(ea.assignments.count(AssignmentStatus::kUnassigned))});
  return out.str();
}

inline std::string support_csv(const AnalysisResult& res) {
  std::ostringstream out;
  csv::write_row(out, kSupportHeader);
  for (const auto& ea : res.epochs) {
    const auto s = summarize_support(ea.assignments.projection_supports());
    std::vector<std::string> row = {ea.epoch.label, std::to_string(s.count), std::to_string(s.min),
                                    csv::real(s.median, 1), std::to_string(s.max)};
    for (auto b : s.buckets) row.push_back(std::to_string(b));
    csv::write_row(out, row);
  }
  return out.str();
}

inline std::string enrichment_csv(const AnalysisResult& res) {
  std::ostringstream out;
  csv::write_row(out, kEnrichmentHeader);
  for (const auto& ea : res.epochs) {
    for (const auto& r : ea.enrichment.communities)
      csv::write_row(out, {ea.epoch.label, r.community.str(), std::to_string(r.seed_mentions),
                           std::to_string(r.total_mentions), csv::real(r.seed_share), csv::real(r.baseline_share),
                           csv::real(r.enrichment), csv::real(r.log_enrichment())});
    csv::write_row(out, {ea.epoch.label, "unassigned", std::to_string(ea.enrichment.unassigned_seed_mentions),
                         std::to_string(ea.enrichment.unassigned_total_mentions), "", "", "", ""});
  }
  return out.str();
}

inline std::string recovery_csv(const AnalysisResult& res, SeedSet which) {
  std::ostringstream out;
  csv::write_row(out, kRecoveryHeader);
  for (const auto& ea : res.epochs) {
    const auto& r = ea.recovery;
    csv::write_row(out, {ea.epoch.label, std::string(to_string(which)), std::to_string(r.n_seeds),
                         std::to_string(r.core_recovered), std::to_string(r.augmented_recovered),
                         csv::real(r.core_rate), csv::real(r.augmented_rate), csv::real(r.delta())});
  }
  return out.str();
}

namespace detail {

inline void md_row(std::ostringstream& out, const std::vector<std::string>& cells) {
  out << '|';
  for (const auto& c : cells) out << ' ' << c << " |";
  out << '\n';
}

inline void md_table(std::ostringstream& out, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  md_row(out, header);
  out << '|';
  for (std::size_t i = 0; i < header.size(); ++i) out << (i == 0 ? " --- |" : " ---: |");
  out << '\n';
  for (const auto& r : rows) md_row(out, r);
  out << '\n';
}

}  // namespace detail

// Markdown summary of every table.
inline std::string markdown(const AnalysisResult& res, SeedSet which) {
  std::ostringstream out;
  out << "# Hashtag co-occurrence report\n\n";

  out << "## Posts, hashtags and bigrams per epoch\n\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& ea : res.epochs)
    rows.push_back({ea.epoch.label, std::to_string(ea.stats.n_posts), std::to_string(ea.stats.n_unique_hashtags),
                    std::to_string(ea.stats.n_bigrams)});
  detail::md_table(out, {"Epoch", "Posts", "Hashtags", "Bigrams"}, rows);
  out << "Hashtags counts every distinct hashtag in the epoch's posts, including ones that never co-occur. "
      << res.unassigned_records << " posts fell outside every epoch.\n\n";

  out << "## Core vs. coverage diagnostics\n\n";
  rows.clear();
  for (const auto& ea : res.epochs)
    for (const auto& [layer, d] : {std::pair{"Core", &ea.core_diagnostics}, std::pair{"Coverage", &ea.coverage_diagnostics}})
      rows.push_back({ea.epoch.label, layer, std::to_string(d->n_nodes), std::to_string(d->n_edges),
                      std::to_string(d->n_components), std::to_string(d->lcc_size), csv::real(d->within_share, 2)});
  detail::md_table(out, {"Epoch", "Layer", "N", "E", "C", "LCC", "W-in"}, rows);

  out << "## Augmented assignments\n\n";
  rows.clear();
  for (const auto& ea : res.epochs)
    rows.push_back({ea.epoch.label, std::to_string(ea.assignments.count(AssignmentStatus::kCoreMember)),
                    std::to_string(ea.assignments.count(AssignmentStatus::kProjected)),
                    std::to_string(ea.assignments.count(AssignmentStatus::kUnassigned))});
  detail::md_table(out, {"Epoch", "Core", "Projected", "Unassigned"}, rows);

  out << "## Projection support\n\n";
  rows.clear();
  for (const auto& ea : res.epochs) {
    const auto s = summarize_support(ea.assignments.projection_supports());
    std::vector<std::string> r = {ea.epoch.label, std::to_string(s.count), std::to_string(s.min),
                                  csv::real(s.median, 1), std::to_string(s.max)};
    for (auto b : s.buckets) r.push_back(std::to_string(b));
    rows.push_back(std::move(r));
  }
  detail::md_table(out, {"Epoch", "Projected", "Min", "Median", "Max", "1", "2", "3-4", "5-8", "9-16", "17+"}, rows);

  out << "## Seed enrichment (" << to_string(which) << ")\n\n";
  rows.clear();
  for (const auto& ea : res.epochs)
    for (const auto& r : ea.enrichment.communities)
      rows.push_back({ea.epoch.label, r.community.str(), std::to_string(r.seed_mentions),
                      std::to_string(r.total_mentions), csv::real(r.seed_share, 4), csv::real(r.baseline_share, 4),
                      r.enrichment ? csv::real(*r.enrichment, 3) : "n/a"});
  detail::md_table(out, {"Epoch", "Community", "Seed mentions", "Total mentions", "Seed share", "Baseline share",
                         "Enrichment"},
                   rows);

  out << "## Seed recovery\n\n";
  rows.clear();
  for (const auto& ea : res.epochs)
    rows.push_back({ea.epoch.label, std::to_string(ea.recovery.n_seeds), csv::real(ea.recovery.core_rate, 3),
                    csv::real(ea.recovery.augmented_rate, 3), csv::real(ea.recovery.delta(), 3)});
  detail::md_table(out, {"Epoch", "Seeds", "Core recovery", "Augmented recovery", "Delta"}, rows);

  out << "## Cross-epoch matches\n\n";
  rows.clear();
  for (std::size_t m = 0; m < res.matching.matches.size(); ++m)
    for (const auto& p : res.matching.matches[m].pairs)
      rows.push_back({res.matching.matches[m].epoch_from, res.matching.matches[m].epoch_to,
                      res.matching.labels[m + 1][p.to].str(), csv::real(p.jaccard, 3)});
  detail::md_table(out, {"From", "To", "Stable id", "Jaccard"}, rows);
  return out.str();
}

}  // namespace hashnet::report
