#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hashnet::csv {

struct Row {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
  bool unterminated_quote = false;
};

// RFC 4180 reader: quoted fields may contain separators, doubled quotes and
// newlines. CRLF is accepted.
class Reader {
public:
  explicit Reader(std::istream& in, char sep = ',') : in_(in), sep_(sep) {}

  std::optional<Row> next() {
    Row row;
    std::string field;
    bool in_quotes = false;
    bool any = false;
    int ch;
    row.line = line_;
    while ((ch = in_.get()) != EOF) {
      any = true;
      const char c = static_cast<char>(ch);
      if (in_quotes) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            in_quotes = false;
          }
        } else {
          if (c == '\n') ++line_;
          field.push_back(c);
        }
        continue;
      }
      if (c == '"') {
        in_quotes = true;
      } else if (c == sep_) {
        row.fields.push_back(std::move(field));
        field.clear();
      } else if (c == '\r' && in_.peek() == '\n') {
        continue;
      } else if (c == '\n') {
        ++line_;
        row.fields.push_back(std::move(field));
        return row;
      } else {
        field.push_back(c);
      }
    }
    if (!any) return std::nullopt;
    row.unterminated_quote = in_quotes;
    row.fields.push_back(std::move(field));
    return row;
  }

private:
  std::istream& in_;
  char sep_;
  std::size_t line_ = 1;
};

inline std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

// Fixed-point rendering used by every exported table.
inline std::string real(double v, int precision = 6) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  std::string s = buf;
  if (s.front() == '-' && s.find_first_of("123456789") == std::string::npos) s.erase(0, 1);
  return s;
}

inline std::string real(std::optional<double> v, int precision = 6) {
  return v ? real(*v, precision) : std::string{};
}

}  // namespace hashnet::csv
