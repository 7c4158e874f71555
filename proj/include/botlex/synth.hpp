#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "botlex/account.hpp"
#include "botlex/error.hpp"
#include "botlex/lexicons.hpp"
#include "botlex/rng.hpp"
#include "botlex/timestamp.hpp"

namespace botlex {

// Per-class generation knobs. The *_rate fields are expected counts per
// tweet in [0, 1]: each tweet contains one such token with that probability,
// so the sample mean count per tweet converges to the configured rate.
struct ClassSynthParams {
  int vocabulary_size = 1000;
  double tweet_len_mean = 11.0;
  double tweet_len_stddev = 3.0;
  double emoticon_rate = 0.2;
  double contraction_rate = 0.1;
  double url_hashtag_rate = 0.05;
  double stopword_rate = 0.3;
  double reply_rate = 0.05;    // tweet text starts with "@..."
  double retweet_rate = 0.05;  // tweet text starts with "RT @..."
  double interarrival_mean_s = 1800.0;
  // Profile magnitudes, log-space means (stddev fixed at 1.0).
  double followers_log_mean = 5.0;
  double friends_log_mean = 4.5;
  double favourites_log_mean = 5.5;
  double listed_log_mean = 2.0;
  double statuses_log_mean = 8.0;
  double age_days_min = 700.0;
  double age_days_max = 2900.0;
};

struct SynthParams {
  ClassSynthParams human;
  ClassSynthParams bot;
  int n_accounts_per_class = 100;
  int tweets_per_account = 200;
  std::uint64_t seed = 42;

  // The shipped configuration: bots lean on emoticons and a small
  // vocabulary, humans on contractions and a vocabulary three times
  // larger; profile metadata overlaps heavily between the classes.
  static SynthParams defaults() {
    SynthParams p;
    p.human.vocabulary_size = 1500;
    p.human.tweet_len_mean = 12.0;
    p.human.tweet_len_stddev = 4.0;
    p.human.emoticon_rate = 0.1;
    p.human.contraction_rate = 0.15;
    p.human.url_hashtag_rate = 0.05;
    p.human.stopword_rate = 0.35;
    p.human.interarrival_mean_s = 3600.0;
    p.human.followers_log_mean = 5.0;
    p.human.friends_log_mean = 4.5;
    p.human.favourites_log_mean = 5.5;
    p.human.listed_log_mean = 2.0;
    p.human.statuses_log_mean = 8.0;

    p.bot.vocabulary_size = 500;
    p.bot.tweet_len_mean = 10.0;
    p.bot.tweet_len_stddev = 3.0;
    p.bot.emoticon_rate = 0.5;
    p.bot.contraction_rate = 0.02;
    p.bot.url_hashtag_rate = 0.07;
    p.bot.stopword_rate = 0.30;
    p.bot.interarrival_mean_s = 600.0;
    p.bot.followers_log_mean = 4.7;
    p.bot.friends_log_mean = 4.6;
    p.bot.favourites_log_mean = 5.1;
    p.bot.listed_log_mean = 1.7;
    p.bot.statuses_log_mean = 8.2;
    p.bot.age_days_min = 600.0;
    p.bot.age_days_max = 2700.0;
    return p;
  }
};

namespace detail {

inline void check_rate(double r, const char* name) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw DataError(std::string("invalid rate ") + name + ": must be in [0, 1]");
  }
}

inline void check_class_params(const ClassSynthParams& c) {
  if (c.vocabulary_size <= 0) throw DataError("vocabulary_size must be positive");
  if (c.tweet_len_mean <= 0) throw DataError("tweet_len_mean must be positive");
  check_rate(c.emoticon_rate, "emoticon_rate");
  check_rate(c.contraction_rate, "contraction_rate");
  check_rate(c.url_hashtag_rate, "url_hashtag_rate");
  check_rate(c.stopword_rate, "stopword_rate");
  check_rate(c.reply_rate, "reply_rate");
  check_rate(c.retweet_rate, "retweet_rate");
}

// Letters-only encoding so vocabulary words always lex as WORD tokens.
inline std::string letters_for_index(std::uint64_t i) {
  std::string s;
  do {
    s.push_back(static_cast<char>('a' + i % 26));
    i /= 26;
  } while (i > 0);
  return s;
}

inline const std::vector<std::string>& human_name_parts_first() {
  static const std::vector<std::string> v = {
      "amber", "sunny", "olive", "daisy", "ruby", "hazel", "rosa", "lena",
      "mina", "nora", "elio", "theo", "remy", "milo", "aria", "luna"};
  return v;
}

inline const std::vector<std::string>& human_name_parts_last() {
  static const std::vector<std::string> v = {
      "lane", "reed", "vale", "moon", "ray", "dune", "sage", "stone",
      "field", "rose", "lake", "bell", "fox", "gale", "hill", "wren"};
  return v;
}

inline std::string human_screen_name(Rng& rng) {
  const auto& first = human_name_parts_first();
  const auto& last = human_name_parts_last();
  std::string name = first[rng.below(first.size())] + "_" + last[rng.below(last.size())];
  if (rng.bernoulli(0.3)) name += static_cast<char>('0' + rng.below(10));
  return name;
}

inline std::string autogen_screen_name(Rng& rng) {
  static const char consonants[] = "bcdfghjklmnpqrstvwxyz";
  const std::uint64_t style = rng.below(3);
  std::string name;
  if (style == 0) {  // digit-heavy
    const std::size_t len = 6 + rng.below(4);
    for (std::size_t i = 0; i < len; ++i) {
      name += rng.bernoulli(0.55) ? static_cast<char>('0' + rng.below(10))
                                  : static_cast<char>('a' + rng.below(26));
    }
  } else if (style == 1) {  // consonant blob
    const std::size_t len = 7 + rng.below(6);
    for (std::size_t i = 0; i < len; ++i) name += consonants[rng.below(21)];
  } else {  // letter/digit alternation
    const std::size_t segments = 4 + rng.below(3);
    for (std::size_t i = 0; i < segments; ++i) {
      if (i % 2 == 0) name += static_cast<char>('a' + rng.below(26));
      else name += static_cast<char>('0' + rng.below(10));
    }
  }
  return name;
}

}  // namespace detail

inline nlohmann::json class_synth_params_to_json(const ClassSynthParams& c) {
  return {{"vocabulary_size", c.vocabulary_size},
          {"tweet_len_mean", c.tweet_len_mean},
          {"tweet_len_stddev", c.tweet_len_stddev},
          {"emoticon_rate", c.emoticon_rate},
          {"contraction_rate", c.contraction_rate},
          {"url_hashtag_rate", c.url_hashtag_rate},
          {"stopword_rate", c.stopword_rate},
          {"reply_rate", c.reply_rate},
          {"retweet_rate", c.retweet_rate},
          {"interarrival_mean_s", c.interarrival_mean_s},
          {"followers_log_mean", c.followers_log_mean},
          {"friends_log_mean", c.friends_log_mean},
          {"favourites_log_mean", c.favourites_log_mean},
          {"listed_log_mean", c.listed_log_mean},
          {"statuses_log_mean", c.statuses_log_mean},
          {"age_days_min", c.age_days_min},
          {"age_days_max", c.age_days_max}};
}

inline ClassSynthParams class_synth_params_from_json(const nlohmann::json& j,
                                                     ClassSynthParams c) {
  c.vocabulary_size = j.value("vocabulary_size", c.vocabulary_size);
  c.tweet_len_mean = j.value("tweet_len_mean", c.tweet_len_mean);
  c.tweet_len_stddev = j.value("tweet_len_stddev", c.tweet_len_stddev);
  c.emoticon_rate = j.value("emoticon_rate", c.emoticon_rate);
  c.contraction_rate = j.value("contraction_rate", c.contraction_rate);
  c.url_hashtag_rate = j.value("url_hashtag_rate", c.url_hashtag_rate);
  c.stopword_rate = j.value("stopword_rate", c.stopword_rate);
  c.reply_rate = j.value("reply_rate", c.reply_rate);
  c.retweet_rate = j.value("retweet_rate", c.retweet_rate);
  c.interarrival_mean_s = j.value("interarrival_mean_s", c.interarrival_mean_s);
  c.followers_log_mean = j.value("followers_log_mean", c.followers_log_mean);
  c.friends_log_mean = j.value("friends_log_mean", c.friends_log_mean);
  c.favourites_log_mean = j.value("favourites_log_mean", c.favourites_log_mean);
  c.listed_log_mean = j.value("listed_log_mean", c.listed_log_mean);
  c.statuses_log_mean = j.value("statuses_log_mean", c.statuses_log_mean);
  c.age_days_min = j.value("age_days_min", c.age_days_min);
  c.age_days_max = j.value("age_days_max", c.age_days_max);
  return c;
}

inline nlohmann::json synth_params_to_json(const SynthParams& p) {
  return {{"human", class_synth_params_to_json(p.human)},
          {"bot", class_synth_params_to_json(p.bot)},
          {"n_accounts_per_class", p.n_accounts_per_class},
          {"tweets_per_account", p.tweets_per_account},
          {"seed", p.seed}};
}

// Absent keys keep the shipped default, so a params file only has to name
// what it changes.
inline SynthParams synth_params_from_json(const nlohmann::json& j) {
  SynthParams p = SynthParams::defaults();
  if (j.contains("human")) p.human = class_synth_params_from_json(j.at("human"), p.human);
  if (j.contains("bot")) p.bot = class_synth_params_from_json(j.at("bot"), p.bot);
  p.n_accounts_per_class = j.value("n_accounts_per_class", p.n_accounts_per_class);
  p.tweets_per_account = j.value("tweets_per_account", p.tweets_per_account);
  p.seed = j.value("seed", p.seed);
  return p;
}

inline constexpr std::int64_t kSynthBaseEpoch = 1704067200;  // 2024-01-01T00:00:00Z

// Deterministic token-level corpus generator. Tweets are token sequences
// joined by single spaces, so the lexer recovers the intended statistics
// exactly. All randomness flows from the single seed.
inline std::vector<AccountRecord> generate_synthetic_corpus(const SynthParams& params,
                                                            const Lexicons& lex) {
  detail::check_class_params(params.human);
  detail::check_class_params(params.bot);
  if (params.n_accounts_per_class < 0) throw DataError("n_accounts_per_class must be >= 0");
  if (params.tweets_per_account <= 0) throw DataError("tweets_per_account must be positive");

  Rng rng(params.seed);
  std::vector<AccountRecord> corpus;
  corpus.reserve(static_cast<std::size_t>(params.n_accounts_per_class) * 2);

  for (const AccountLabel label : {AccountLabel::Human, AccountLabel::Bot}) {
    const ClassSynthParams& cp =
        label == AccountLabel::Human ? params.human : params.bot;
    const std::string prefix = label == AccountLabel::Human ? "human" : "bot";
    for (int a = 0; a < params.n_accounts_per_class; ++a) {
      AccountRecord rec;
      char idbuf[64];
      std::snprintf(idbuf, sizeof(idbuf), "%s_%04d", prefix.c_str(), a);
      rec.account_id = idbuf;
      rec.label = label;
      rec.screen_name = label == AccountLabel::Bot && rng.bernoulli(0.7)
          ? detail::autogen_screen_name(rng)
          : detail::human_screen_name(rng);

      const double age_days =
          cp.age_days_min + rng.real01() * (cp.age_days_max - cp.age_days_min);
      ProfileMetadata meta;
      meta.created_at = kSynthBaseEpoch - static_cast<std::int64_t>(age_days * 86400.0);
      meta.followers_count = static_cast<std::int64_t>(std::exp(rng.normal(cp.followers_log_mean, 1.0)));
      meta.friends_count = static_cast<std::int64_t>(std::exp(rng.normal(cp.friends_log_mean, 1.0)));
      meta.favourites_count = static_cast<std::int64_t>(std::exp(rng.normal(cp.favourites_log_mean, 1.0)));
      meta.listed_count = static_cast<std::int64_t>(std::exp(rng.normal(cp.listed_log_mean, 1.0)));
      meta.statuses_count = static_cast<std::int64_t>(std::exp(rng.normal(cp.statuses_log_mean, 1.0)));
      rec.profile = meta;

      std::int64_t t = meta.created_at + static_cast<std::int64_t>(rng.below(86400));
      for (int w = 0; w < params.tweets_per_account; ++w) {
        TweetRecord tweet;

        std::vector<std::string> tokens;
        const bool has_emoticon = rng.bernoulli(cp.emoticon_rate);
        const bool has_contraction = rng.bernoulli(cp.contraction_rate);
        const bool has_urlhash = rng.bernoulli(cp.url_hashtag_rate);
        const bool has_stopword = rng.bernoulli(cp.stopword_rate);
        if (has_emoticon) {
          tokens.push_back(lex.emoticon_list()[rng.below(lex.emoticon_list().size())]);
        }
        if (has_contraction) {
          tokens.push_back(lex.contraction_list()[rng.below(lex.contraction_list().size())]);
        }
        if (has_urlhash) {
          if (rng.bernoulli(0.5)) {
            tokens.push_back("https://t.co/" + detail::letters_for_index(rng.below(100000)));
          } else {
            tokens.push_back("#tag" + detail::letters_for_index(rng.below(1000)));
          }
        }
        if (has_stopword) {
          tokens.push_back(lex.stopword_list()[rng.below(lex.stopword_list().size())]);
        }

        int len = static_cast<int>(std::lround(rng.normal(cp.tweet_len_mean, cp.tweet_len_stddev)));
        len = std::clamp(len, 1, 60);
        len = std::max<int>(len, static_cast<int>(tokens.size()) + 1);
        while (static_cast<int>(tokens.size()) < len) {
          const std::uint64_t word = rng.below(static_cast<std::uint64_t>(cp.vocabulary_size));
          tokens.push_back(prefix.substr(0, 1) + detail::letters_for_index(word));
        }
        rng.shuffle(tokens);

        std::string text;
        const double kind_draw = rng.real01();
        if (kind_draw < cp.retweet_rate) {
          text = "RT @" + detail::human_screen_name(rng) + " ";
        } else if (kind_draw < cp.retweet_rate + cp.reply_rate) {
          text = "@" + detail::human_screen_name(rng) + " ";
        }
        for (std::size_t i = 0; i < tokens.size(); ++i) {
          if (i > 0) text += ' ';
          text += tokens[i];
        }
        tweet.text = std::move(text);

        t += std::max<std::int64_t>(1, static_cast<std::int64_t>(
            std::lround(rng.exponential(cp.interarrival_mean_s))));
        tweet.created_at = t;
        tweet.likes = static_cast<std::int64_t>(rng.below(10));
        tweet.retweets = static_cast<std::int64_t>(rng.below(5));
        rec.tweets.push_back(std::move(tweet));
      }
      corpus.push_back(std::move(rec));
    }
  }
  return corpus;
}

}  // namespace botlex
