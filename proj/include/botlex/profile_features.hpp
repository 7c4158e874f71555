#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "botlex/account.hpp"
#include "botlex/error.hpp"

namespace botlex {

struct ProfileFeatureVector {
  double age_days = 0.0;
  double favourites_to_tweets = 0.0;
  double lists_per_user = 0.0;
  double followers_to_friends = 0.0;
  double likes_per_tweet = 0.0;
  double retweets_per_tweet = 0.0;
  double user_replies = 0.0;
  double user_retweets = 0.0;
  double tweet_frequency = 0.0;  // statuses per day of account age
  double urls_count = 0.0;       // mean URLs per tweet
};

// Non-overlapping occurrences of http:// or https:// in the text.
inline std::size_t count_urls(std::string_view text) {
  std::size_t n = 0, pos = 0;
  while (pos < text.size()) {
    if (text.compare(pos, 7, "http://") == 0) {
      ++n;
      pos += 7;
    } else if (text.compare(pos, 8, "https://") == 0) {
      ++n;
      pos += 8;
    } else {
      ++pos;
    }
  }
  return n;
}

// Account-metadata feature block. `now` is always an explicit argument so
// the same inputs give the same features on any machine at any time.
inline ProfileFeatureVector profile_features(const ProfileMetadata& meta,
                                             std::span<const TweetRecord> tweets,
                                             std::int64_t now) {
  if (meta.created_at > now) {
    throw DataError("profile created_at is after `now`; corrupt record");
  }
  ProfileFeatureVector f;
  f.age_days = static_cast<double>(now - meta.created_at) / 86400.0;
  f.favourites_to_tweets = static_cast<double>(meta.favourites_count)
      / static_cast<double>(std::max<std::int64_t>(meta.statuses_count, 1));
  f.lists_per_user = static_cast<double>(meta.listed_count);
  f.followers_to_friends = static_cast<double>(meta.followers_count)
      / static_cast<double>(std::max<std::int64_t>(meta.friends_count, 1));
  f.tweet_frequency = static_cast<double>(meta.statuses_count)
      / std::max(f.age_days, 1.0);

  double likes = 0, retweets = 0, urls = 0, replies = 0, rts = 0;
  for (const TweetRecord& t : tweets) {
    likes += static_cast<double>(t.likes.value_or(0));
    retweets += static_cast<double>(t.retweets.value_or(0));
    urls += static_cast<double>(count_urls(t.text));
    if (t.text.rfind("RT @", 0) == 0) {
      rts += 1;
    } else if (t.text.rfind('@', 0) == 0) {
      replies += 1;
    }
  }
  const double nt = tweets.empty() ? 1.0 : static_cast<double>(tweets.size());
  f.likes_per_tweet = likes / nt;
  f.retweets_per_tweet = retweets / nt;
  f.urls_count = urls / nt;
  f.user_replies = replies;
  f.user_retweets = rts;
  return f;
}

}  // namespace botlex
