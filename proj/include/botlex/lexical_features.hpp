#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "botlex/account.hpp"
#include "botlex/lexicons.hpp"
#include "botlex/token.hpp"
#include "botlex/tokenizer.hpp"

namespace botlex {

// Per-tweet lexical measurements.
struct TweetFeatures {
  std::size_t total_tokens = 0;
  std::size_t unique_tokens = 0;  // case-folded types
  double ttr = 0.0;
  double lexical_diversity = 0.0;
  std::size_t contraction_count = 0;
  std::size_t emoticon_count = 0;
};

// Per-account means over the tweets that produced tokens. avg_contraction
// and avg_emoticons are mean raw counts per tweet; the *_per_token pair are
// the derived per-token rates, exposed as optional extra columns.
struct AccountFeatureVector {
  std::string account_id;
  double avg_ttr = 0.0;
  double avg_lexical_diversity = 0.0;
  double avg_contraction = 0.0;
  double avg_emoticons = 0.0;
  double avg_contraction_per_token = 0.0;
  double avg_emoticons_per_token = 0.0;
  std::size_t tweets_used = 0;
};

// Unique case-folded types over all token kinds / total tokens.
inline double ttr(std::span<const Token> tokens) {
  if (tokens.empty()) throw Error("ttr: empty token list");
  std::unordered_set<std::string> types;
  for (const Token& t : tokens) types.insert(fold_key(t.text));
  return static_cast<double>(types.size()) / static_cast<double>(tokens.size());
}

// Content tokens (not URL, not mention, not stopword) / total tokens.
inline double lexical_diversity(std::span<const Token> tokens, const Lexicons& lex) {
  if (tokens.empty()) throw Error("lexical_diversity: empty token list");
  std::size_t content = 0;
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::Url || t.kind == TokenKind::Mention) continue;
    if (lex.is_stopword(fold_key(t.text))) continue;
    ++content;
  }
  return static_cast<double>(content) / static_cast<double>(tokens.size());
}

inline std::size_t contraction_count(std::span<const Token> tokens) {
  std::size_t n = 0;
  for (const Token& t : tokens) n += t.kind == TokenKind::Contraction;
  return n;
}

inline std::size_t emoticon_count(std::span<const Token> tokens) {
  std::size_t n = 0;
  for (const Token& t : tokens) n += t.kind == TokenKind::Emoticon;
  return n;
}

// nullopt marks a tweet that produced no tokens and must be skipped.
inline std::optional<TweetFeatures> tweet_features(std::string_view text,
                                                   const Lexicons& lex) {
  const std::vector<Token> tokens = tokenize(text, lex);
  if (tokens.empty()) return std::nullopt;
  TweetFeatures f;
  f.total_tokens = tokens.size();
  std::unordered_set<std::string> types;
  for (const Token& t : tokens) types.insert(fold_key(t.text));
  f.unique_tokens = types.size();
  f.ttr = static_cast<double>(f.unique_tokens) / static_cast<double>(f.total_tokens);
  f.lexical_diversity = lexical_diversity(tokens, lex);
  f.contraction_count = contraction_count(tokens);
  f.emoticon_count = emoticon_count(tokens);
  return f;
}

// Arithmetic means over non-skipped tweets. Throws when every tweet skips.
inline AccountFeatureVector account_features(const AccountRecord& account,
                                             const Lexicons& lex) {
  AccountFeatureVector v;
  v.account_id = account.account_id;
  double sum_ttr = 0, sum_div = 0, sum_con = 0, sum_emo = 0;
  double sum_con_rate = 0, sum_emo_rate = 0;
  for (const TweetRecord& tweet : account.tweets) {
    const auto f = tweet_features(tweet.text, lex);
    if (!f) continue;
    sum_ttr += f->ttr;
    sum_div += f->lexical_diversity;
    sum_con += static_cast<double>(f->contraction_count);
    sum_emo += static_cast<double>(f->emoticon_count);
    const auto total = static_cast<double>(f->total_tokens);
    sum_con_rate += static_cast<double>(f->contraction_count) / total;
    sum_emo_rate += static_cast<double>(f->emoticon_count) / total;
    ++v.tweets_used;
  }
  if (v.tweets_used == 0) {
    throw DataError("account " + account.account_id + " has no tweets with tokens");
  }
  const auto n = static_cast<double>(v.tweets_used);
  v.avg_ttr = sum_ttr / n;
  v.avg_lexical_diversity = sum_div / n;
  v.avg_contraction = sum_con / n;
  v.avg_emoticons = sum_emo / n;
  v.avg_contraction_per_token = sum_con_rate / n;
  v.avg_emoticons_per_token = sum_emo_rate / n;
  return v;
}

}  // namespace botlex
