#include <random>

#include <gtest/gtest.h>

#include "hashnet/hashtag.hpp"
#include "hashnet/timeutil.hpp"

using hashnet::normalize_hashtag;

TEST(NormalizeHashtag, Lowercases) { EXPECT_EQ(normalize_hashtag("#HPV")->value(), "hpv"); }

TEST(NormalizeHashtag, KeepsAccentsInComposedForm) {
  EXPECT_EQ(normalize_hashtag("#laVerità")->value(), "laverità");
  // decomposed a + combining grave composes to U+00E0
  EXPECT_EQ(normalize_hashtag("#laVerita\xCC\x80")->value(), "laverit\xC3\xA0");
}

TEST(NormalizeHashtag, Rejects) {
  EXPECT_FALSE(normalize_hashtag("#"));
  EXPECT_FALSE(normalize_hashtag(""));
  EXPECT_FALSE(normalize_hashtag("   "));
  EXPECT_FALSE(normalize_hashtag("##hpv"));
  EXPECT_FALSE(normalize_hashtag("#hp v"));
  EXPECT_FALSE(normalize_hashtag("#\xFF\xFE"));
}

TEST(NormalizeHashtag, BareTokenAndSurroundingSpace) {
  EXPECT_EQ(normalize_hashtag("Gardasil")->value(), "gardasil");
  EXPECT_EQ(normalize_hashtag("  #Gardasil \n")->value(), "gardasil");
}

TEST(NormalizeHashtag, IdempotentOnRandomStrings) {
  static const char* const kPieces[] = {"#", "a", "B", "z", "à", "E\xCC\x81", "Ä", "İ", "ß", "_", "1", " ", "Σ", "ς", "#x"};
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5000; ++trial) {
    std::string s;
    const std::size_t len = rng() % 7;
    for (std::size_t i = 0; i < len; ++i) s += kPieces[rng() % std::size(kPieces)];
    const auto once = normalize_hashtag(s);
    if (!once) continue;
    const auto twice = normalize_hashtag(once->value());
    ASSERT_TRUE(twice) << s;
    EXPECT_EQ(*twice, *once) << s;
    EXPECT_NO_THROW(hashnet::HashtagToken::from_normalized(once->value())) << s;
  }
}

TEST(HashtagToken, FromNormalizedValidates) {
  EXPECT_THROW(hashnet::HashtagToken::from_normalized("HPV"), std::invalid_argument);
  EXPECT_THROW(hashnet::HashtagToken::from_normalized("#hpv"), std::invalid_argument);
  EXPECT_THROW(hashnet::HashtagToken::from_normalized(""), std::invalid_argument);
  EXPECT_EQ(hashnet::HashtagToken::from_normalized("hpv").value(), "hpv");
}

TEST(ExtractHashtags, FindsTagsInText) {
  const auto tags = hashnet::extract_hashtags("Vaccino #HPV, #laVerità! email a#b #_x1 # #hpv.");
  std::vector<std::string> got;
  for (const auto& t : tags) got.push_back(t.value());
  EXPECT_EQ(got, (std::vector<std::string>{"hpv", "laverità", "b", "_x1", "hpv"}));
}

TEST(Timestamp, ParsesCommonForms) {
  using hashnet::format_timestamp;
  using hashnet::parse_timestamp;
  EXPECT_EQ(format_timestamp(*parse_timestamp("2016-05-01")), "2016-05-01T00:00:00Z");
  EXPECT_EQ(format_timestamp(*parse_timestamp("2016-05-01T10:20:30Z")), "2016-05-01T10:20:30Z");
  EXPECT_EQ(format_timestamp(*parse_timestamp("2016-05-01 10:20:30.250+02:00")), "2016-05-01T08:20:30Z");
  EXPECT_EQ(format_timestamp(*parse_timestamp("Wed Oct 10 20:19:24 +0000 2018")), "2018-10-10T20:19:24Z");
  EXPECT_EQ(hashnet::utc_year(*parse_timestamp("2014-12-31T23:30:00-01:00")), 2015);
  EXPECT_FALSE(parse_timestamp("2016-13-01"));
  EXPECT_FALSE(parse_timestamp("2016-02-30"));
  EXPECT_FALSE(parse_timestamp("yesterday"));
}
