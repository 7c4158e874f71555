#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace botlex {

enum class AccountLabel { Human = 0, Bot = 1 };

inline const char* to_string(AccountLabel l) {
  return l == AccountLabel::Bot ? "bot" : "human";
}

struct TweetRecord {
  std::string text;
  std::optional<std::int64_t> created_at;  // epoch seconds
  std::optional<std::int64_t> likes;
  std::optional<std::int64_t> retweets;
};

struct ProfileMetadata {
  std::int64_t created_at = 0;  // epoch seconds
  std::int64_t followers_count = 0;
  std::int64_t friends_count = 0;
  std::int64_t favourites_count = 0;
  std::int64_t listed_count = 0;
  std::int64_t statuses_count = 0;
};

struct AccountRecord {
  std::string account_id;
  std::optional<AccountLabel> label;
  std::optional<std::string> screen_name;
  std::optional<ProfileMetadata> profile;
  std::vector<TweetRecord> tweets;
};

}  // namespace botlex
