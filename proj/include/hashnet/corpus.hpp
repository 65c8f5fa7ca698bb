#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hashnet/csv.hpp"
#include "hashnet/error.hpp"
#include "hashnet/hashtag.hpp"
#include "hashnet/timeutil.hpp"

namespace hashnet {

// One post. `hashtags` holds distinct tokens in first-occurrence order;
// `hashtag_occurrences[i]` is how often hashtags[i] appeared before dedup.
struct PostRecord {
  std::string post_id;
  Timestamp timestamp{};
  std::string text;
  std::vector<HashtagToken> hashtags;
  std::vector<std::uint32_t> hashtag_occurrences;
  std::string author_id;
  std::string lang_tag;  // two lowercase letters or empty
  std::uint64_t likes = 0;
  std::uint64_t replies = 0;
  std::uint64_t reposts = 0;
  std::uint64_t quotes = 0;

  int year() const { return utc_year(timestamp); }
  bool operator==(const PostRecord&) const = default;
};

// Sets hashtags/hashtag_occurrences from a raw token list, keeping first-occurrence order.
inline void assign_hashtags(PostRecord& rec, const std::vector<HashtagToken>& raw) {
  rec.hashtags.clear();
  rec.hashtag_occurrences.clear();
  for (const auto& tok : raw) {
    auto it = std::find(rec.hashtags.begin(), rec.hashtags.end(), tok);
    if (it == rec.hashtags.end()) {
      rec.hashtags.push_back(tok);
      rec.hashtag_occurrences.push_back(1);
    } else {
      ++rec.hashtag_occurrences[static_cast<std::size_t>(it - rec.hashtags.begin())];
    }
  }
}

enum class CorpusFormat { kJsonl, kCsv };

inline CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "jsonl" || name == "json") return CorpusFormat::kJsonl;
  if (name == "csv") return CorpusFormat::kCsv;
  throw ConfigError("unknown corpus format '" + std::string(name) + "' (expected jsonl or csv)");
}

// Source field/column names for each logical field.
struct FieldMap {
  std::string id = "id";
  std::string created_at = "created_at";
  std::string text = "text";
  std::string hashtags = "hashtags";
  std::string author_id = "author_id";
  std::string lang = "lang";
  std::string likes = "likes";
  std::string replies = "replies";
  std::string reposts = "reposts";
  std::string quotes = "quotes";

  // "id=tweet_id,created_at=createdAt"; unknown logical names throw ConfigError.
  static FieldMap parse(std::string_view spec) {
    FieldMap m;
    std::map<std::string, std::string*> slots = {
        {"id", &m.id},           {"created_at", &m.created_at}, {"text", &m.text},
        {"hashtags", &m.hashtags}, {"author_id", &m.author_id}, {"lang", &m.lang},
        {"likes", &m.likes},     {"replies", &m.replies},       {"reposts", &m.reposts},
        {"quotes", &m.quotes}};
    std::stringstream ss{std::string(spec)};
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("field map entry without '=': " + item);
      auto it = slots.find(item.substr(0, eq));
      if (it == slots.end()) throw ConfigError("unknown field in field map: " + item.substr(0, eq));
      *it->second = item.substr(eq + 1);
    }
    return m;
  }
};

struct ParseOptions {
  bool strict = false;  // throw on the first malformed row instead of skipping it
  FieldMap fields;
};

struct MalformedRow {
  std::size_t line_number = 0;
  std::string reason;
};

struct ParseResult {
  std::vector<PostRecord> records;
  std::vector<MalformedRow> malformed;
};

namespace detail {

struct RowError {
  std::string reason;
};

inline std::string normalize_lang(std::string_view s) {
  std::string out;
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (out.size() != 2 || !std::isalpha(static_cast<unsigned char>(out[0])) ||
      !std::isalpha(static_cast<unsigned char>(out[1])))
    return {};
  return out;
}

inline std::uint64_t parse_count(std::string_view field, std::string_view s) {
  if (s.empty()) return 0;
  std::uint64_t v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
    throw RowError{std::string(field) + " is not a non-negative integer: '" + std::string(s) + "'"};
  return v;
}

inline std::uint64_t json_count(const nlohmann::json& obj, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return 0;
  if (it->is_number_unsigned()) return it->get<std::uint64_t>();
  if (it->is_number_integer()) {
    const auto v = it->get<std::int64_t>();
    if (v < 0) throw RowError{key + " is negative"};
    return static_cast<std::uint64_t>(v);
  }
  if (it->is_number_float()) {
    const double v = it->get<double>();
    if (v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v)))
      throw RowError{key + " is not a non-negative integer"};
    return static_cast<std::uint64_t>(v);
  }
  if (it->is_string()) return parse_count(key, it->get<std::string>());
  throw RowError{key + " has unsupported type"};
}

inline std::string json_string(const nlohmann::json& obj, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer() || it->is_number_unsigned()) return it->dump();
  throw RowError{key + " must be a string"};
}

inline void finish_record(PostRecord& rec, std::string_view created_at,
                          const std::optional<std::vector<std::string>>& raw_tags) {
  if (rec.post_id.empty()) throw RowError{"missing id"};
  auto ts = parse_timestamp(created_at);
  if (!ts) throw RowError{"unparseable timestamp '" + std::string(created_at) + "'"};
  rec.timestamp = *ts;
  std::vector<HashtagToken> tokens;
  if (raw_tags) {
    for (const auto& raw : *raw_tags)
      if (auto tok = normalize_hashtag(raw)) tokens.push_back(std::move(*tok));
  } else {
    tokens = extract_hashtags(rec.text);
  }
  assign_hashtags(rec, tokens);
}

inline PostRecord record_from_json(const nlohmann::json& obj, const FieldMap& f) {
  if (!obj.is_object()) throw RowError{"line is not a JSON object"};
  PostRecord rec;
  rec.post_id = json_string(obj, f.id);
  rec.text = json_string(obj, f.text);
  rec.author_id = json_string(obj, f.author_id);
  rec.lang_tag = normalize_lang(json_string(obj, f.lang));
  rec.likes = json_count(obj, f.likes);
  rec.replies = json_count(obj, f.replies);
  rec.reposts = json_count(obj, f.reposts);
  rec.quotes = json_count(obj, f.quotes);
  std::optional<std::vector<std::string>> tags;
  if (auto it = obj.find(f.hashtags); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) throw RowError{f.hashtags + " must be an array of strings"};
    tags.emplace();
    for (const auto& t : *it) {
      if (!t.is_string()) throw RowError{f.hashtags + " must be an array of strings"};
      tags->push_back(t.get<std::string>());
    }
  }
  auto created = obj.find(f.created_at);
  if (created == obj.end() || !created->is_string()) throw RowError{"missing " + f.created_at};
  finish_record(rec, created->get<std::string>(), tags);
  return rec;
}

}  // namespace detail

inline ParseResult parse_corpus(std::istream& in, CorpusFormat format, const ParseOptions& opts = {}) {
  ParseResult result;
  const FieldMap& f = opts.fields;
  auto reject = [&](std::size_t line, std::string reason) {
    if (opts.strict) throw DataError("line " + std::to_string(line) + ": " + reason);
    result.malformed.push_back({line, std::move(reason)});
  };

  if (format == CorpusFormat::kJsonl) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (detail::trim(line).empty()) continue;
      try {
        result.records.push_back(detail::record_from_json(nlohmann::json::parse(line), f));
      } catch (const nlohmann::json::exception& e) {
        reject(line_no, std::string("invalid JSON: ") + e.what());
      } catch (const detail::RowError& e) {
        reject(line_no, e.reason);
      }
    }
    return result;
  }

  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) return result;
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header->fields.size(); ++i) {
    std::string name = std::string(detail::trim(header->fields[i]));
    if (i == 0 && name.rfind("\xEF\xBB\xBF", 0) == 0) name.erase(0, 3);  // UTF-8 BOM
    col.emplace(name, i);
  }
  for (const std::string* required : {&f.id, &f.created_at})
    if (!col.contains(*required)) throw DataError("CSV header lacks required column '" + *required + "'");

  while (auto row = reader.next()) {
    if (row->fields.size() == 1 && row->fields[0].empty()) continue;
    try {
      if (row->unterminated_quote) throw detail::RowError{"unterminated quoted field"};
      if (row->fields.size() != header->fields.size())
        throw detail::RowError{"expected " + std::to_string(header->fields.size()) + " fields, got " +
                               std::to_string(row->fields.size())};
      auto cell = [&](const std::string& name) -> std::optional<std::string> {
        auto it = col.find(name);
        if (it == col.end()) return std::nullopt;
        return row->fields[it->second];
      };
      PostRecord rec;
      rec.post_id = cell(f.id).value_or("");
      rec.text = cell(f.text).value_or("");
      rec.author_id = cell(f.author_id).value_or("");
      rec.lang_tag = detail::normalize_lang(cell(f.lang).value_or(""));
      rec.likes = detail::parse_count(f.likes, cell(f.likes).value_or(""));
      rec.replies = detail::parse_count(f.replies, cell(f.replies).value_or(""));
      rec.reposts = detail::parse_count(f.reposts, cell(f.reposts).value_or(""));
      rec.quotes = detail::parse_count(f.quotes, cell(f.quotes).value_or(""));
      std::optional<std::vector<std::string>> tags;
      if (auto cellv = cell(f.hashtags)) {
        tags.emplace();
        std::stringstream ss(*cellv);
        std::string t;
        while (std::getline(ss, t, '|'))
          if (!detail::trim(t).empty()) tags->push_back(t);
      }
      detail::finish_record(rec, detail::trim(*cell(f.created_at)), tags);
      result.records.push_back(std::move(rec));
    } catch (const detail::RowError& e) {
      reject(row->line, e.reason);
    }
  }
  return result;
}

// Writes records in the canonical input schema. Each hashtag is repeated by its
// occurrence count so a re-parse restores the same record.
inline void export_corpus(std::ostream& out, const std::vector<PostRecord>& records, CorpusFormat format) {
  auto tag_list = [](const PostRecord& r) {
    std::vector<std::string> tags;
    for (std::size_t i = 0; i < r.hashtags.size(); ++i) {
      const std::uint32_t n = i < r.hashtag_occurrences.size() ? r.hashtag_occurrences[i] : 1;
      for (std::uint32_t k = 0; k < n; ++k) tags.push_back(r.hashtags[i].value());
    }
    return tags;
  };
  if (format == CorpusFormat::kJsonl) {
    for (const auto& r : records) {
      nlohmann::ordered_json obj;
      obj["id"] = r.post_id;
      obj["created_at"] = format_timestamp(r.timestamp);
      obj["text"] = r.text;
      obj["hashtags"] = tag_list(r);
      obj["author_id"] = r.author_id;
      obj["lang"] = r.lang_tag;
      obj["likes"] = r.likes;
      obj["replies"] = r.replies;
      obj["reposts"] = r.reposts;
      obj["quotes"] = r.quotes;
      out << obj.dump() << '\n';
    }
    return;
  }
  csv::write_row(out, {"id", "created_at", "text", "hashtags", "author_id", "lang", "likes", "replies",
                       "reposts", "quotes"});
  for (const auto& r : records) {
    std::string tags;
    for (const auto& t : tag_list(r)) {
      if (!tags.empty()) tags.push_back('|');
      tags += t;
    }
    csv::write_row(out, {r.post_id, format_timestamp(r.timestamp), r.text, tags, r.author_id, r.lang_tag,
                         std::to_string(r.likes), std::to_string(r.replies), std::to_string(r.reposts),
                         std::to_string(r.quotes)});
  }
}

inline void write_malformed_report(std::ostream& out, const std::vector<MalformedRow>& rows) {
  csv::write_row(out, {"line_number", "reason"});
  for (const auto& r : rows) csv::write_row(out, {std::to_string(r.line_number), r.reason});
}

using RecordPredicate = std::function<bool(const PostRecord&)>;

inline std::vector<PostRecord> filter_language(const std::vector<PostRecord>& records,
                                               const RecordPredicate& accept) {
  std::vector<PostRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out), accept);
  return out;
}

inline RecordPredicate lang_tag_is(std::string code) {
  return [code = std::move(code)](const PostRecord& r) { return r.lang_tag == code; };
}

struct Epoch {
  std::string label;
  int start_year = 0;
  int end_year = 0;  // inclusive

  bool contains(int year) const { return year >= start_year && year <= end_year; }
  bool operator==(const Epoch&) const = default;
};

class EpochConfig {
public:
  EpochConfig() = default;
  explicit EpochConfig(std::vector<Epoch> epochs) : epochs_(std::move(epochs)) { validate(); }
  // 2010–2014, 2015–2019, 2020–2024.
  // The three policy epochs of the Italian HPV corpus.
  static EpochConfig standard() {
    return EpochConfig({{"2010–2014", 2010, 2014},
                        {"2015–2019", 2015, 2019},
                        {"2020–2024", 2020, 2024}});
  }

  // Comma-separated entries "START-END" or "LABEL=START-END". Unlabeled entries
  // are labeled "START–END" (en dash).
  static EpochConfig parse(std::string_view spec) {
    std::vector<std::string> items;
    std::stringstream ss{std::string(spec)};
    std::string item;
    while (std::getline(ss, item, ',')) items.push_back(item);
    return parse(items);
  }

  static EpochConfig parse(const std::vector<std::string>& items) {
    std::vector<Epoch> epochs;
    for (const auto& raw : items) {
      std::string item(detail::trim(raw));
      if (item.empty()) continue;
      std::string label;
      if (auto eq = item.find('='); eq != std::string::npos) {
        label = std::string(detail::trim(item.substr(0, eq)));
        item = std::string(detail::trim(item.substr(eq + 1)));
      }
      int a = 0, b = 0;
      const auto dash = item.find('-', 1);
      if (dash == std::string::npos ||
          std::from_chars(item.data(), item.data() + dash, a).ptr != item.data() + dash ||
          std::from_chars(item.data() + dash + 1, item.data() + item.size(), b).ptr !=
              item.data() + item.size())
        throw ConfigError("bad epoch '" + raw + "' (expected START-END or LABEL=START-END)");
      if (label.empty()) label = std::to_string(a) + "–" + std::to_string(b);
      epochs.push_back({label, a, b});
    }
    return EpochConfig(std::move(epochs));
  }

  const std::vector<Epoch>& epochs() const noexcept { return epochs_; }
  bool empty() const noexcept { return epochs_.empty(); }

  const Epoch* find(int year) const {
    for (const auto& e : epochs_)
      if (e.contains(year)) return &e;
    return nullptr;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& e : epochs_) {
      if (!s.empty()) s += ',';
      s += e.label + "=" + std::to_string(e.start_year) + "-" + std::to_string(e.end_year);
    }
    return s;
  }

private:
  void validate() const {
    for (std::size_t i = 0; i < epochs_.size(); ++i) {
      const auto& e = epochs_[i];
      if (e.label.empty()) throw ConfigError("epoch with empty label");
      if (e.start_year > e.end_year) throw ConfigError("epoch " + e.label + " has start_year > end_year");
      if (i > 0 && epochs_[i - 1].end_year >= e.start_year)
        throw ConfigError("epochs must be sorted and non-overlapping (" + epochs_[i - 1].label + ", " +
                          e.label + ")");
      for (std::size_t j = 0; j < i; ++j)
        if (epochs_[j].label == e.label) throw ConfigError("duplicate epoch label " + e.label);
    }
  }

  std::vector<Epoch> epochs_;
};

struct EpochBucket {
  Epoch epoch;
  std::vector<PostRecord> records;
};

struct EpochSegments {
  std::vector<EpochBucket> buckets;  // in config order
  std::vector<PostRecord> unassigned;

  const EpochBucket* find(std::string_view label) const {
    for (const auto& b : buckets)
      if (b.epoch.label == label) return &b;
    return nullptr;
  }
};

// Buckets records by UTC calendar year; order within a bucket is preserved.
inline EpochSegments segment_epochs(const std::vector<PostRecord>& records, const EpochConfig& config) {
  EpochSegments seg;
  for (const auto& e : config.epochs()) seg.buckets.push_back({e, {}});
  for (const auto& r : records) {
    const int year = r.year();
    bool placed = false;
    for (auto& b : seg.buckets) {
      if (b.epoch.contains(year)) {
        b.records.push_back(r);
        placed = true;
        break;
      }
    }
    if (!placed) seg.unassigned.push_back(r);
  }
  return seg;
}

}  // namespace hashnet
