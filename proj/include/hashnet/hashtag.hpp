#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace hashnet {

namespace detail {

inline bool valid_utf8(std::string_view s) {
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const int32_t n = static_cast<int32_t>(s.size());
  for (int32_t i = 0; i < n;) {
    UChar32 c;
    U8_NEXT(p, i, n, c);
    if (c < 0) return false;
  }
  return true;
}

inline std::string nfc(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  icu::UnicodeString out = norm->normalize(u, status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalization failed");
  std::string result;
  out.toUTF8String(result);
  return result;
}

inline std::string lower(std::string_view s) {
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  u.toLower(icu::Locale::getRoot());
  std::string result;
  u.toUTF8String(result);
  return result;
}

inline bool has_whitespace(std::string_view s) {
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const int32_t n = static_cast<int32_t>(s.size());
  for (int32_t i = 0; i < n;) {
    UChar32 c;
    U8_NEXT(p, i, n, c);
    if (u_isUWhiteSpace(c)) return true;
  }
  return false;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

inline bool is_tag_char(UChar32 c) {
  return c == '_' || u_isalpha(c) || u_isdigit(c);
}

}  // namespace detail

// A normalized hashtag: non-empty, NFC, lowercase, no leading '#', no whitespace.
class HashtagToken {
public:
  // Wraps an already-normalized value; throws std::invalid_argument if it is not one.
  static HashtagToken from_normalized(std::string value) {
    if (value.empty() || value.front() == '#' || !detail::valid_utf8(value) ||
        detail::has_whitespace(value) || detail::lower(detail::nfc(value)) != value) {
      throw std::invalid_argument("not a normalized hashtag: '" + value + "'");
    }
    return HashtagToken(std::move(value));
  }

  const std::string& value() const noexcept { return value_; }
  std::strong_ordering operator<=>(const HashtagToken&) const = default;
  bool operator==(const HashtagToken&) const = default;

private:
  friend std::optional<HashtagToken> normalize_hashtag(std::string_view raw);
  explicit HashtagToken(std::string v) : value_(std::move(v)) {}
  std::string value_;
};

// Strips one leading '#', applies NFC and full lowercasing. Rejects empty
// results, results that still start with '#', internal whitespace and invalid UTF-8.
inline std::optional<HashtagToken> normalize_hashtag(std::string_view raw) {
  std::string_view s = detail::trim(raw);
  if (!s.empty() && s.front() == '#') s.remove_prefix(1);
  if (s.empty() || !detail::valid_utf8(s)) return std::nullopt;
  // Lowercasing can denormalize (e.g. U+0130), so NFC is applied on both sides.
  std::string v = detail::nfc(detail::lower(detail::nfc(s)));
  if (v.empty() || v.front() == '#' || detail::has_whitespace(v)) return std::nullopt;
  return HashtagToken(std::move(v));
}

// Hashtags in free text: '#' followed by a maximal run of letters, digits or
// '_', in order of appearance, duplicates kept. Text is NFC-normalized first.
inline std::vector<HashtagToken> extract_hashtags(std::string_view text) {
  std::vector<HashtagToken> out;
  if (!detail::valid_utf8(text)) return out;
  const std::string norm = detail::nfc(text);
  const auto* p = reinterpret_cast<const uint8_t*>(norm.data());
  const int32_t n = static_cast<int32_t>(norm.size());
  int32_t i = 0;
  while (i < n) {
    UChar32 c;
    U8_NEXT(p, i, n, c);
    if (c != '#') continue;
    const int32_t start = i;
    int32_t end = i;
    while (end < n) {
      int32_t next = end;
      UChar32 d;
      U8_NEXT(p, next, n, d);
      if (!detail::is_tag_char(d)) break;
      end = next;
    }
    if (end > start) {
      if (auto tok = normalize_hashtag(std::string_view(norm).substr(start, end - start)))
        out.push_back(std::move(*tok));
    }
    i = end;
  }
  return out;
}

}  // namespace hashnet
