#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hashnet/analysis.hpp"
#include "hashnet/corpus.hpp"
#include "hashnet/error.hpp"
#include "hashnet/export.hpp"
#include "hashnet/projection.hpp"

namespace hashnet {

namespace toml {

using Value = std::variant<std::string, std::int64_t, double, bool, std::vector<std::string>>;
// Keys are "table.key" (or "key" before the first table header).
using Table = std::map<std::string, Value>;

namespace detail {

class Parser {
public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  Table parse() {
    Table out;
    std::string section;
    while (skip_blank_lines(), pos_ < s_.size()) {
      if (s_[pos_] == '[') {
        ++pos_;
        skip_ws();
        section = key();
        skip_ws();
        expect(']');
        end_of_line();
        continue;
      }
      std::string k = key();
      skip_ws();
      expect('=');
      skip_ws();
      Value v = value();
      end_of_line();
      const std::string full = section.empty() ? k : section + "." + k;
      if (!out.emplace(full, std::move(v)).second) fail("duplicate key '" + full + "'");
    }
    return out;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("config line " + std::to_string(line()) + ": " + msg);
  }

  std::size_t line() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) n += s_[i] == '\n';
    return n;
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  void skip_comment() {
    if (pos_ < s_.size() && s_[pos_] == '#')
      while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
  }

  void skip_blank_lines() {
    for (;;) {
      skip_ws();
      skip_comment();
      if (pos_ < s_.size() && (s_[pos_] == '\n' || s_[pos_] == '\r')) {
        ++pos_;
        continue;
      }
      return;
    }
  }

  void end_of_line() {
    skip_ws();
    skip_comment();
    if (pos_ < s_.size() && s_[pos_] == '\r') ++pos_;
    if (pos_ < s_.size() && s_[pos_] != '\n') fail("unexpected trailing characters");
    if (pos_ < s_.size()) ++pos_;
  }

  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string key() {
    std::string out;
    for (;;) {
      if (pos_ < s_.size() && (s_[pos_] == '"' || s_[pos_] == '\'')) {
        out += string_value();
      } else {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                    s_[pos_] == '-'))
          ++pos_;
        if (pos_ == start) fail("expected a key");
        out += s_.substr(start, pos_ - start);
      }
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '.') {
        ++pos_;
        skip_ws();
        out.push_back('.');
        continue;
      }
      return out;
    }
  }

  std::string string_value() {
    const char quote = s_[pos_++];
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != quote) {
      char c = s_[pos_++];
      if (c == '\n') fail("newline in string");
      if (quote == '"' && c == '\\') {
        if (pos_ >= s_.size()) fail("dangling escape");
        const char e = s_[pos_++];
        switch (e) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case 'r': out.push_back('\r'); break;
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          default: fail(std::string("unsupported escape \\") + e);
        }
        continue;
      }
      out.push_back(c);
    }
    expect(quote);
    return out;
  }

  Value value() {
    if (pos_ >= s_.size()) fail("missing value");
    const char c = s_[pos_];
    if (c == '"' || c == '\'') return string_value();
    if (c == '[') {
      ++pos_;
      std::vector<std::string> items;
      for (;;) {
        skip_blank_lines();
        if (pos_ < s_.size() && s_[pos_] == ']') {
          ++pos_;
          return items;
        }
        if (pos_ >= s_.size() || (s_[pos_] != '"' && s_[pos_] != '\'')) fail("arrays may only hold strings");
        items.push_back(string_value());
        skip_blank_lines();
        if (pos_ < s_.size() && s_[pos_] == ',') ++pos_;
        else if (pos_ >= s_.size() || s_[pos_] != ']') fail("expected ',' or ']' in array");
      }
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ' ' && s_[pos_] != '\t' && s_[pos_] != '\n' && s_[pos_] != '\r' &&
           s_[pos_] != '#')
      ++pos_;
    std::string tok = s_.substr(start, pos_ - start);
    if (tok == "true") return true;
    if (tok == "false") return false;
    std::string digits;
    for (char d : tok)
      if (d != '_') digits.push_back(d);
    std::int64_t i = 0;
    auto r = std::from_chars(digits.data(), digits.data() + digits.size(), i);
    if (r.ec == std::errc{} && r.ptr == digits.data() + digits.size()) return i;
    double f = 0;
    std::istringstream ss(digits);
    ss.imbue(std::locale::classic());
    if (ss >> f && ss.peek() == EOF) return f;
    fail("cannot parse value '" + tok + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Table parse(std::string text) { return detail::Parser(std::move(text)).parse(); }

}  // namespace toml

struct PipelineConfig {
  std::filesystem::path input;
  CorpusFormat format = CorpusFormat::kJsonl;
  std::optional<std::string> lang;  // keep only posts with this lang tag
  bool strict = false;
  FieldMap fields;
  EpochConfig epochs = EpochConfig::standard();
  AnalysisParams params;
  std::optional<std::filesystem::path> seeds;
  std::optional<LexiconFormat> seeds_format;  // default: by extension
  std::filesystem::path out_dir = "hashnet_out";
  GraphFormat graph_format = GraphFormat::kGraphml;

  // Throws ConfigError on missing files or out-of-range parameters.
  void validate() const {
    namespace fs = std::filesystem;
    if (input.empty()) throw ConfigError("no input corpus given");
    if (!fs::is_regular_file(input)) throw ConfigError("input corpus not found: " + input.string());
    if (seeds && !fs::is_regular_file(*seeds)) throw ConfigError("seed lexicon not found: " + seeds->string());
    if (params.core_min_weight < 1) throw ConfigError("core_min_weight must be >= 1");
    if (params.k < 1) throw ConfigError("k must be >= 1");
    if (!(params.match_threshold >= 0.0 && params.match_threshold <= 1.0))
      throw ConfigError("match_threshold must lie in [0, 1]");
    if (epochs.empty()) throw ConfigError("at least one epoch required");
    if (out_dir.empty()) throw ConfigError("output directory required");
  }

  LexiconFormat lexicon_format() const {
    if (seeds_format) return *seeds_format;
    return seeds && seeds->extension() == ".txt" ? LexiconFormat::kText : LexiconFormat::kJson;
  }
};

namespace detail {

template <class T>
const T& expect_type(const toml::Value& v, const std::string& key, const char* what) {
  if (const T* p = std::get_if<T>(&v)) return *p;
  throw ConfigError("config key '" + key + "' must be " + what);
}

inline std::int64_t expect_nonneg(const toml::Value& v, const std::string& key) {
  const auto i = expect_type<std::int64_t>(v, key, "an integer");
  if (i < 0) throw ConfigError("config key '" + key + "' must be >= 0");
  return i;
}

}  // namespace detail

// Reads a TOML config; relative paths resolve against the file's directory.
//
//   [input]    path, format, lang, strict, field_map
//   [analysis] epochs, core_min_weight, k, match_threshold,
//              weighted_betweenness, mention_mode
//   [seeds]    path, set, format
//   [output]   dir, graph_format
inline PipelineConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const toml::Table t = toml::parse(buf.str());
  const auto base = file.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
  };

  PipelineConfig c;
  for (const auto& [key, v] : t) {
    using detail::expect_type;
    auto str = [&]() -> const std::string& { return expect_type<std::string>(v, key, "a string"); };
    if (key == "input.path") c.input = resolve(str());
    else if (key == "input.format") c.format = parse_corpus_format(str());
    else if (key == "input.lang") c.lang = str();
    else if (key == "input.strict") c.strict = expect_type<bool>(v, key, "a boolean");
    else if (key == "input.field_map") c.fields = FieldMap::parse(str());
    else if (key == "analysis.epochs")
      c.epochs = EpochConfig::parse(expect_type<std::vector<std::string>>(v, key, "an array of strings"));
    else if (key == "analysis.core_min_weight") c.params.core_min_weight = static_cast<Weight>(detail::expect_nonneg(v, key));
    else if (key == "analysis.k") c.params.k = static_cast<std::size_t>(detail::expect_nonneg(v, key));
    else if (key == "analysis.match_threshold") {
      if (auto* i = std::get_if<std::int64_t>(&v)) c.params.match_threshold = static_cast<double>(*i);
      else c.params.match_threshold = expect_type<double>(v, key, "a number");
    } else if (key == "analysis.weighted_betweenness") c.params.weighted_betweenness = expect_type<bool>(v, key, "a boolean");
    else if (key == "analysis.mention_mode") c.params.mention_mode = parse_mention_mode(str());
    else if (key == "seeds.path") c.seeds = resolve(str());
    else if (key == "seeds.set") c.params.seed_set = parse_seed_set(str());
    else if (key == "seeds.format") c.seeds_format = parse_lexicon_format(str());
    else if (key == "output.dir") c.out_dir = resolve(str());
    else if (key == "output.graph_format") c.graph_format = parse_graph_format(str());
    else throw ConfigError("unknown config key '" + key + "'");
  }
  return c;
}

}  // namespace hashnet
