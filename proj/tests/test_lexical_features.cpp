#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <unordered_set>

#include "botlex/lexical_features.hpp"

using namespace botlex;

namespace {

const Lexicons& lex() {
  static const Lexicons l = Lexicons::load_dir(BOTLEX_LEXICON_DIR);
  return l;
}

std::vector<Token> toks(const std::string& text) { return tokenize(text, lex()); }

AccountRecord account_with(std::vector<std::string> tweets) {
  AccountRecord a;
  a.account_id = "acct";
  for (auto& t : tweets) a.tweets.push_back({std::move(t), {}, {}, {}});
  return a;
}

}  // namespace

TEST(Ttr, SpecExamples) {
  EXPECT_NEAR(ttr(toks("the cat sat on the mat")), 5.0 / 6.0, 1e-12);
  EXPECT_DOUBLE_EQ(ttr(toks("a")), 1.0);
  EXPECT_NEAR(ttr(toks("x x x")), 1.0 / 3.0, 1e-12);
  EXPECT_THROW(ttr({}), Error);
}

TEST(Ttr, CaseFoldedTypes) {
  EXPECT_NEAR(ttr(toks("WOW wow WoW wOw")), 0.25, 1e-12);
}

TEST(LexicalDiversity, SpecExamples) {
  // "this", "is", "a" are stopwords in the bundled list.
  EXPECT_NEAR(lexical_diversity(toks("this is a great tweet"), lex()), 0.4, 1e-12);
  EXPECT_DOUBLE_EQ(lexical_diversity(toks("https://a.b @x"), lex()), 0.0);
  EXPECT_DOUBLE_EQ(lexical_diversity(toks("great novel words"), lex()), 1.0);
  EXPECT_THROW(lexical_diversity({}, lex()), Error);
}

TEST(Counts, Contractions) {
  EXPECT_EQ(contraction_count(toks("don't won't stop")), 2u);
  EXPECT_EQ(contraction_count(toks("dont")), 0u);
  EXPECT_EQ(contraction_count({}), 0u);
}

TEST(Counts, Emoticons) {
  EXPECT_EQ(emoticon_count(toks(":-) hello :-(")), 2u);
  EXPECT_EQ(emoticon_count(toks("no emoticons here")), 0u);
  EXPECT_EQ(emoticon_count(toks(":)")), 1u);
}

TEST(TweetFeatures, SpecExamples) {
  const auto f = tweet_features("don't stop :-)", lex());
  ASSERT_TRUE(f);
  EXPECT_EQ(f->total_tokens, 3u);
  EXPECT_EQ(f->unique_tokens, 3u);
  EXPECT_DOUBLE_EQ(f->ttr, 1.0);
  EXPECT_DOUBLE_EQ(f->lexical_diversity, 1.0);
  EXPECT_EQ(f->contraction_count, 1u);
  EXPECT_EQ(f->emoticon_count, 1u);

  EXPECT_FALSE(tweet_features("", lex()));

  const auto g = tweet_features("the the", lex());
  ASSERT_TRUE(g);
  EXPECT_EQ(g->total_tokens, 2u);
  EXPECT_EQ(g->unique_tokens, 1u);
  EXPECT_DOUBLE_EQ(g->ttr, 0.5);
  EXPECT_DOUBLE_EQ(g->lexical_diversity, 0.0);
}

TEST(AccountFeatures, MeanOverTweets) {
  // "x x" has ttr 0.5; "great words" has ttr 1.0.
  const auto v = account_features(account_with({"x x", "great words"}), lex());
  EXPECT_DOUBLE_EQ(v.avg_ttr, 0.75);
  EXPECT_EQ(v.tweets_used, 2u);
}

TEST(AccountFeatures, SingleTweetEqualsItsFeatures) {
  const auto f = tweet_features("don't stop :-)", lex());
  const auto v = account_features(account_with({"don't stop :-)"}), lex());
  EXPECT_DOUBLE_EQ(v.avg_ttr, f->ttr);
  EXPECT_DOUBLE_EQ(v.avg_lexical_diversity, f->lexical_diversity);
  EXPECT_DOUBLE_EQ(v.avg_contraction, static_cast<double>(f->contraction_count));
  EXPECT_DOUBLE_EQ(v.avg_emoticons, static_cast<double>(f->emoticon_count));
  EXPECT_EQ(v.tweets_used, 1u);
}

TEST(AccountFeatures, EmptyTweetsAreSkipped) {
  const auto v = account_features(account_with({"", "hi there"}), lex());
  EXPECT_EQ(v.tweets_used, 1u);
  const auto f = tweet_features("hi there", lex());
  EXPECT_DOUBLE_EQ(v.avg_ttr, f->ttr);
}

TEST(AccountFeatures, AllTweetsEmptyIsAnError) {
  EXPECT_THROW(account_features(account_with({"", "   "}), lex()), DataError);
}

TEST(AccountFeatures, PermutationInvariance) {
  std::vector<std::string> tweets = {"don't stop :-)", "the cat sat", "x x x",
                                     "@bob https://t.co/a #tag", "numbers 1 2 3"};
  const auto before = account_features(account_with(tweets), lex());
  std::mt19937 gen(7);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(tweets.begin(), tweets.end(), gen);
    const auto after = account_features(account_with(tweets), lex());
    EXPECT_DOUBLE_EQ(before.avg_ttr, after.avg_ttr);
    EXPECT_DOUBLE_EQ(before.avg_lexical_diversity, after.avg_lexical_diversity);
    EXPECT_DOUBLE_EQ(before.avg_contraction, after.avg_contraction);
    EXPECT_DOUBLE_EQ(before.avg_emoticons, after.avg_emoticons);
  }
}

TEST(TweetFeaturesProperty, BoundsAndNaiveRecount) {
  std::mt19937 gen(99);
  const std::string pool[] = {"the", "cat", "don't", ":-)", "https://t.co/x",
                              "@bob", "#tag", "wow", "WOW", "1,000", "...",
                              "y'all", "😂", "xD", "a", "is"};
  for (int iter = 0; iter < 200; ++iter) {
    std::string text;
    const int words = 1 + static_cast<int>(gen() % 12);
    for (int i = 0; i < words; ++i) {
      if (i) text += ' ';
      text += pool[gen() % std::size(pool)];
    }
    const auto f = tweet_features(text, lex());
    ASSERT_TRUE(f);
    EXPECT_GT(f->ttr, 0.0);
    EXPECT_LE(f->ttr, 1.0);
    EXPECT_GE(f->lexical_diversity, 0.0);
    EXPECT_LE(f->lexical_diversity, 1.0);
    EXPECT_LE(f->contraction_count + f->emoticon_count, f->total_tokens);

    // independent recount straight off the token list
    const auto tokens = tokenize(text, lex());
    std::unordered_set<std::string> types;
    std::size_t content = 0, contractions = 0, emoticons = 0;
    for (const Token& t : tokens) {
      types.insert(fold_key(t.text));
      if (t.kind == TokenKind::Contraction) ++contractions;
      if (t.kind == TokenKind::Emoticon) ++emoticons;
      if (t.kind != TokenKind::Url && t.kind != TokenKind::Mention
          && !lex().is_stopword(fold_key(t.text))) {
        ++content;
      }
    }
    EXPECT_EQ(f->total_tokens, tokens.size());
    EXPECT_EQ(f->unique_tokens, types.size());
    EXPECT_DOUBLE_EQ(f->ttr, double(types.size()) / double(tokens.size()));
    EXPECT_DOUBLE_EQ(f->lexical_diversity, double(content) / double(tokens.size()));
    EXPECT_EQ(f->contraction_count, contractions);
    EXPECT_EQ(f->emoticon_count, emoticons);
  }
}

TEST(AccountFeatures, PerTokenRateColumns) {
  // "don't stop :-)": 1 contraction and 1 emoticon over 3 tokens;
  // "x x": neither over 2 tokens.
  const auto v = account_features(account_with({"don't stop :-)", "x x"}), lex());
  EXPECT_NEAR(v.avg_contraction_per_token, (1.0 / 3.0 + 0.0) / 2.0, 1e-12);
  EXPECT_NEAR(v.avg_emoticons_per_token, (1.0 / 3.0 + 0.0) / 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(v.avg_contraction, 0.5);  // raw counts stay count-based
}

TEST(TweetFeaturesProperty, DuplicateTokenLowersTtr) {
  const std::string tweets[] = {"alpha beta gamma", "one love", "don't stop :-)"};
  for (const std::string& t : tweets) {
    const auto base = tweet_features(t, lex());
    const auto dup = tweet_features(t + " " + tokenize(t, lex())[0].text, lex());
    EXPECT_LT(dup->ttr, base->ttr) << t;
  }
}
