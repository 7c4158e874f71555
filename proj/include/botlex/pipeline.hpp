#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "botlex/account.hpp"
#include "botlex/dataset_io.hpp"
#include "botlex/error.hpp"
#include "botlex/feature_matrix.hpp"
#include "botlex/lexical_features.hpp"
#include "botlex/profile_features.hpp"

namespace botlex {

struct ExtractOptions {
  bool with_profile = false;
  std::optional<std::int64_t> now;  // default: latest timestamp in the corpus
  int jobs = 1;
  bool strict = true;  // lenient mode skips accounts whose tweets all lex empty
};

struct ExtractReport {
  std::vector<std::string> skipped_accounts;
};

// Latest profile or tweet timestamp; the deterministic stand-in for "now".
inline std::int64_t corpus_reference_time(std::span<const AccountRecord> accounts) {
  std::int64_t latest = 0;
  bool any = false;
  for (const AccountRecord& a : accounts) {
    if (a.profile && (!any || a.profile->created_at > latest)) {
      latest = a.profile->created_at;
      any = true;
    }
    for (const TweetRecord& t : a.tweets) {
      if (t.created_at && (!any || *t.created_at > latest)) {
        latest = *t.created_at;
        any = true;
      }
    }
  }
  return any ? latest : 0;
}

// Per-account feature extraction. Output order always matches input order,
// whatever the job count.
inline std::vector<FeatureRow> extract_features(std::span<const AccountRecord> accounts,
                                                const Lexicons& lex,
                                                const ExtractOptions& opts = {},
                                                ExtractReport* report = nullptr) {
  if (opts.with_profile) {
    std::string missing;
    int shown = 0;
    for (const AccountRecord& a : accounts) {
      if (!a.profile) {
        if (shown < 5) missing += (missing.empty() ? "" : ", ") + a.account_id;
        ++shown;
      }
    }
    if (shown > 0) {
      if (shown > 5) missing += ", ...";
      throw DataError("profile metadata required for profile features but missing on "
                      + std::to_string(shown) + " account(s): " + missing
                      + " (needed columns: " + feature_csv_profile_header() + ")");
    }
  }
  const std::int64_t now = opts.now ? *opts.now : corpus_reference_time(accounts);

  const std::size_t n = accounts.size();
  std::vector<std::optional<FeatureRow>> slots(n);
  std::vector<std::string> errors(n);

  auto work = [&](std::size_t i) {
    const AccountRecord& a = accounts[i];
    try {
      FeatureRow row;
      row.account_id = a.account_id;
      row.label = a.label;
      const AccountFeatureVector v = account_features(a, lex);
      row.avg_ttr = v.avg_ttr;
      row.avg_lexical_diversity = v.avg_lexical_diversity;
      row.avg_contraction = v.avg_contraction;
      row.avg_emoticons = v.avg_emoticons;
      row.avg_contraction_per_token = v.avg_contraction_per_token;
      row.avg_emoticons_per_token = v.avg_emoticons_per_token;
      row.tweets_used = v.tweets_used;
      if (opts.with_profile) {
        row.profile = profile_features(*a.profile, a.tweets, now);
      }
      slots[i] = std::move(row);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };

  if (opts.jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int workers = std::min<int>(opts.jobs, static_cast<int>(n));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<FeatureRow> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i]) {
      rows.push_back(std::move(*slots[i]));
    } else if (opts.strict) {
      throw DataError(errors[i]);
    } else if (report) {
      report->skipped_accounts.push_back(accounts[i].account_id);
    }
  }
  return rows;
}

// Matrix over the requested feature-set columns. Label policy: all rows
// labeled -> labeled matrix; none labeled -> unlabeled; a mix is an error.
inline FeatureMatrix feature_matrix_from_rows(std::span<const FeatureRow> rows,
                                              FeatureSet set) {
  if (set != FeatureSet::L) {
    for (const FeatureRow& r : rows) {
      if (!r.profile) {
        throw DataError("feature set " + std::string(to_string(set))
                        + " needs profile columns but account " + r.account_id
                        + " has none (needed: " + feature_csv_profile_header() + ")");
      }
    }
  }
  FeatureMatrix m;
  m.feature_names = feature_set_columns(set);
  std::size_t labeled = 0;
  for (const FeatureRow& r : rows) {
    std::vector<double> row;
    row.reserve(m.feature_names.size());
    if (set != FeatureSet::L) {
      const ProfileFeatureVector& p = *r.profile;
      row.insert(row.end(), {p.age_days, p.favourites_to_tweets, p.lists_per_user,
                             p.followers_to_friends, p.likes_per_tweet,
                             p.retweets_per_tweet, p.user_replies, p.user_retweets,
                             p.tweet_frequency, p.urls_count});
    }
    if (set != FeatureSet::F) {
      row.insert(row.end(), {r.avg_ttr, r.avg_lexical_diversity, r.avg_contraction,
                             r.avg_emoticons});
    }
    m.rows.push_back(std::move(row));
    m.account_ids.push_back(r.account_id);
    if (r.label) {
      m.labels.push_back(static_cast<int>(*r.label));
      ++labeled;
    } else {
      m.labels.push_back(0);
    }
  }
  if (labeled == 0) {
    m.labels.clear();
  } else if (labeled != rows.size()) {
    throw DataError("corpus mixes labeled and unlabeled accounts");
  }
  return m;
}

}  // namespace botlex
