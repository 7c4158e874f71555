#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "botlex/account.hpp"
#include "botlex/lexicons.hpp"
#include "botlex/tokenizer.hpp"

namespace botlex {

// Screening thresholds from the annotation criteria.
inline constexpr double kUrlHashtagFlagThreshold = 0.70;  // strictly greater fires
inline constexpr double kRateFlagThreshold = 15.0;        // tweets per minute, >= fires

// Knobs of the auto-generated-name heuristic. Defaults are chosen so the
// canonical auto-generated examples fire.
struct AutogenHeuristicParams {
  double digit_fraction = 0.4;   // rule (a): digits / characters
  int consonant_run = 5;         // rule (b): consecutive consonants, y included
  int alternation_segments = 4;  // rule (c): letter/digit run alternation
};

struct AnnotationReport {
  std::string account_id;
  bool autogen_name = false;
  double url_hashtag_fraction = 0.0;
  bool url_hashtag_flag = false;
  double max_rate_per_minute = 0.0;
  bool rate_flag = false;
  int flags_fired = 0;
};

inline bool screen_name_autogen(std::string_view name,
                                const AutogenHeuristicParams& params = {}) {
  if (name.empty()) throw Error("screen_name_autogen: empty name");

  std::size_t digits = 0;
  for (char c : name) digits += (c >= '0' && c <= '9');
  if (static_cast<double>(digits) / static_cast<double>(name.size())
      >= params.digit_fraction) {
    return true;
  }

  auto is_alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  };
  auto is_consonant = [&](char c) {
    if (!is_alpha(c)) return false;
    const char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return l != 'a' && l != 'e' && l != 'i' && l != 'o' && l != 'u';
  };
  int run = 0;
  for (char c : name) {
    run = is_consonant(c) ? run + 1 : 0;
    if (run >= params.consonant_run) return true;
  }

  // Count the longest chain of strictly alternating letter/digit runs.
  int segments = 0, best = 0;
  char prev = '\0';  // 'a' letters, 'd' digits
  for (std::size_t i = 0; i < name.size();) {
    char cls;
    if (is_alpha(name[i])) cls = 'a';
    else if (name[i] >= '0' && name[i] <= '9') cls = 'd';
    else cls = '\0';
    if (cls == '\0') {
      segments = 0;
      prev = '\0';
      ++i;
      continue;
    }
    while (i < name.size()
           && ((cls == 'a' && is_alpha(name[i]))
               || (cls == 'd' && name[i] >= '0' && name[i] <= '9'))) {
      ++i;
    }
    segments = (prev != '\0' && prev != cls) ? segments + 1 : 1;
    prev = cls;
    best = std::max(best, segments);
  }
  return best >= params.alternation_segments;
}

// URL+hashtag tokens over all tokens, across every tweet of the account.
inline double url_hashtag_fraction(const AccountRecord& account, const Lexicons& lex) {
  std::size_t total = 0, url_hashtag = 0;
  for (const TweetRecord& tweet : account.tweets) {
    for (const Token& t : tokenize(tweet.text, lex)) {
      ++total;
      url_hashtag += t.kind == TokenKind::Url || t.kind == TokenKind::Hashtag;
    }
  }
  if (total == 0) {
    throw DataError("account " + account.account_id + " has no tokens");
  }
  return static_cast<double>(url_hashtag) / static_cast<double>(total);
}

// Maximum tweet count inside any half-open 60-second window [t, t+60).
inline double max_tweet_rate(std::vector<std::int64_t> timestamps) {
  if (timestamps.empty()) return 0.0;
  std::sort(timestamps.begin(), timestamps.end());
  std::size_t best = 1, lo = 0;
  for (std::size_t hi = 0; hi < timestamps.size(); ++hi) {
    while (timestamps[hi] - timestamps[lo] >= 60) ++lo;
    best = std::max(best, hi - lo + 1);
  }
  return static_cast<double>(best);
}

// Runs all screening rules; reports flags only and never assigns a label.
// Accounts without a screen name simply cannot fire the name rule.
inline AnnotationReport annotate(const AccountRecord& account, const Lexicons& lex,
                                 const AutogenHeuristicParams& params = {}) {
  AnnotationReport r;
  r.account_id = account.account_id;
  r.autogen_name = account.screen_name && !account.screen_name->empty()
      && screen_name_autogen(*account.screen_name, params);
  r.url_hashtag_fraction = url_hashtag_fraction(account, lex);
  r.url_hashtag_flag = r.url_hashtag_fraction > kUrlHashtagFlagThreshold;
  std::vector<std::int64_t> ts;
  for (const TweetRecord& t : account.tweets) {
    if (t.created_at) ts.push_back(*t.created_at);
  }
  r.max_rate_per_minute = max_tweet_rate(std::move(ts));
  r.rate_flag = r.max_rate_per_minute >= kRateFlagThreshold;
  r.flags_fired = static_cast<int>(r.autogen_name) + static_cast<int>(r.url_hashtag_flag)
      + static_cast<int>(r.rate_flag);
  return r;
}

}  // namespace botlex
