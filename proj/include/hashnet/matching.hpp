#pragma once

#include <algorithm>
#include <compare>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hashnet/community.hpp"

namespace hashnet {

// Stable community identifier rendered as "C01", "C02", ...; ordered numerically.
class CommunityId {
public:
  CommunityId() = default;
  explicit CommunityId(int number) : number_(number) {}

  int number() const noexcept { return number_; }
  std::string str() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "C%02d", number_);
    return buf;
  }
  auto operator<=>(const CommunityId&) const = default;

private:
  int number_ = 0;
};

// Membership of one stable community across the epochs where it appears.
struct CommunityLineage {
  CommunityId id;
  std::map<std::string, Community> epoch_members;
};

struct MatchedPair {
  std::size_t from = 0;  // index into the earlier epoch's partition
  std::size_t to = 0;    // index into the later epoch's partition
  double jaccard = 0.0;
};

struct MatchResult {
  std::string epoch_from;
  std::string epoch_to;
  std::vector<MatchedPair> pairs;  // ordered by acceptance
  std::vector<std::size_t> unmatched_from;
  std::vector<std::size_t> unmatched_to;
};

struct EpochPartition {
  std::string label;
  Partition partition;
};

struct MatchOutcome {
  std::vector<CommunityLineage> lineages;          // ordered by id
  std::vector<MatchResult> matches;                // one per consecutive epoch pair
  std::vector<std::vector<CommunityId>> labels;    // labels[epoch][community]
};

// |a ∩ b| / |a ∪ b| over sorted ranges; 0 when both are empty.
inline double jaccard(const Community& a, const Community& b) {
  std::size_t inter = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++inter;
      ++i;
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

inline double jaccard(const NodeSet& a, const NodeSet& b) {
  return jaccard(Community(a.begin(), a.end()), Community(b.begin(), b.end()));
}

namespace detail {

inline std::size_t union_size(const Community& a, const Community& b) {
  Community u;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  return u.size();
}

}  // namespace detail

// Greedy one-to-one matching between two partitions: candidates with
// jaccard >= threshold are accepted in descending score order (ties: larger
// union first, then lexicographic member lists).
inline MatchResult match_pair(const EpochPartition& from, const EpochPartition& to, double threshold) {
  struct Candidate {
    std::size_t from, to;
    double score;
    std::size_t uni;
  };
  const auto& A = from.partition.communities;
  const auto& B = to.partition.communities;
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j) {
      const double s = jaccard(A[i], B[j]);
      if (s >= threshold && s > 0.0) cands.push_back({i, j, s, detail::union_size(A[i], B[j])});
    }
  std::sort(cands.begin(), cands.end(), [&](const Candidate& x, const Candidate& y) {
    if (x.score != y.score) return x.score > y.score;
    if (x.uni != y.uni) return x.uni > y.uni;
    if (A[x.from] != A[y.from]) return A[x.from] < A[y.from];
    return B[x.to] < B[y.to];
  });
  MatchResult r{from.label, to.label, {}, {}, {}};
  std::vector<char> used_a(A.size(), 0), used_b(B.size(), 0);
  for (const auto& c : cands) {
    if (used_a[c.from] || used_b[c.to]) continue;
    used_a[c.from] = used_b[c.to] = 1;
    r.pairs.push_back({c.from, c.to, c.score});
  }
  for (std::size_t i = 0; i < A.size(); ++i)
    if (!used_a[i]) r.unmatched_from.push_back(i);
  for (std::size_t j = 0; j < B.size(); ++j)
    if (!used_b[j]) r.unmatched_to.push_back(j);
  return r;
}

// Matches consecutive epochs and threads stable ids through matched chains.
// The first epoch's communities get C01.. in partition order; unmatched
// communities in later epochs get fresh ids in partition order.
inline MatchOutcome match_communities(const std::vector<EpochPartition>& parts, double threshold = 0.2) {
  if (threshold < 0.0 || threshold > 1.0) throw std::invalid_argument("match threshold must lie in [0, 1]");
  MatchOutcome out;
  int next_id = 1;
  std::map<CommunityId, CommunityLineage> lineages;
  for (std::size_t e = 0; e < parts.size(); ++e) {
    const auto& comms = parts[e].partition.communities;
    std::vector<CommunityId> ids(comms.size());
    std::vector<char> assigned(comms.size(), 0);
    if (e > 0) {
      auto m = match_pair(parts[e - 1], parts[e], threshold);
      for (const auto& p : m.pairs) {
        ids[p.to] = out.labels[e - 1][p.from];
        assigned[p.to] = 1;
      }
      out.matches.push_back(std::move(m));
    }
    for (std::size_t c = 0; c < comms.size(); ++c) {
      if (!assigned[c]) ids[c] = CommunityId(next_id++);
      auto& lin = lineages[ids[c]];
      lin.id = ids[c];
      lin.epoch_members[parts[e].label] = comms[c];
    }
    out.labels.push_back(std::move(ids));
  }
  for (auto& [_, lin] : lineages) out.lineages.push_back(std::move(lin));
  return out;
}

}  // namespace hashnet
