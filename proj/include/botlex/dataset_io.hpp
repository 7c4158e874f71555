#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "botlex/account.hpp"
#include "botlex/error.hpp"
#include "botlex/feature_matrix.hpp"
#include "botlex/lexical_features.hpp"
#include "botlex/profile_features.hpp"
#include "botlex/timestamp.hpp"

namespace botlex {

// One output row of the feature extraction stage; the unit the feature CSV
// serializes. Profile columns are present only when extraction ran with
// profile metadata.
struct FeatureRow {
  std::string account_id;
  std::optional<AccountLabel> label;
  double avg_ttr = 0;
  double avg_lexical_diversity = 0;
  double avg_contraction = 0;
  double avg_emoticons = 0;
  double avg_contraction_per_token = 0;  // optional derived rate columns
  double avg_emoticons_per_token = 0;
  std::size_t tweets_used = 0;
  std::optional<ProfileFeatureVector> profile;
};

struct CorpusLoadReport {
  std::vector<std::pair<int, std::string>> skipped;  // 1-based line, reason
};

namespace detail {

inline std::optional<AccountLabel> parse_label(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  const std::string s = j.get<std::string>();
  if (s == "human") return AccountLabel::Human;
  if (s == "bot") return AccountLabel::Bot;
  throw DataError("label must be \"human\", \"bot\" or null, got \"" + s + "\"");
}

inline std::int64_t require_count(const nlohmann::json& j, const char* field) {
  if (!j.contains(field)) throw DataError(std::string("profile missing ") + field);
  const std::int64_t v = j.at(field).get<std::int64_t>();
  if (v < 0) throw DataError(std::string(field) + " must be non-negative");
  return v;
}

inline AccountRecord parse_account_line(const std::string& line) {
  const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded()) throw DataError("invalid JSON");
  if (!j.is_object()) throw DataError("line is not a JSON object");
  AccountRecord rec;
  if (!j.contains("account_id") || !j.at("account_id").is_string()
      || j.at("account_id").get<std::string>().empty()) {
    throw DataError("missing or empty account_id");
  }
  rec.account_id = j.at("account_id").get<std::string>();
  if (j.contains("label")) rec.label = parse_label(j.at("label"));
  if (j.contains("screen_name") && !j.at("screen_name").is_null()) {
    rec.screen_name = j.at("screen_name").get<std::string>();
  }
  if (j.contains("profile") && !j.at("profile").is_null()) {
    const nlohmann::json& p = j.at("profile");
    ProfileMetadata meta;
    if (!p.contains("created_at")) throw DataError("profile missing created_at");
    meta.created_at = parse_iso8601(p.at("created_at").get<std::string>());
    meta.followers_count = require_count(p, "followers_count");
    meta.friends_count = require_count(p, "friends_count");
    meta.favourites_count = require_count(p, "favourites_count");
    meta.listed_count = require_count(p, "listed_count");
    meta.statuses_count = require_count(p, "statuses_count");
    rec.profile = meta;
  }
  if (j.contains("tweets")) {
    if (!j.at("tweets").is_array()) throw DataError("tweets must be an array");
    for (const auto& jt : j.at("tweets")) {
      TweetRecord t;
      if (!jt.contains("text") || !jt.at("text").is_string()) {
        throw DataError("tweet missing text");
      }
      t.text = jt.at("text").get<std::string>();
      if (jt.contains("created_at") && !jt.at("created_at").is_null()) {
        t.created_at = parse_iso8601(jt.at("created_at").get<std::string>());
      }
      if (jt.contains("likes") && !jt.at("likes").is_null()) {
        t.likes = jt.at("likes").get<std::int64_t>();
      }
      if (jt.contains("retweets") && !jt.at("retweets").is_null()) {
        t.retweets = jt.at("retweets").get<std::int64_t>();
      }
      rec.tweets.push_back(std::move(t));
    }
  }
  return rec;
}

}  // namespace detail

// One JSON object per line. Strict mode aborts on the first malformed line;
// lenient mode skips it and records the line number. Duplicate account ids
// are a corpus-level defect and abort in either mode.
inline std::vector<AccountRecord> load_corpus(const std::filesystem::path& path,
                                              bool strict = true,
                                              CorpusLoadReport* report = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file: " + path.string());
  std::vector<AccountRecord> accounts;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      AccountRecord rec = detail::parse_account_line(line);
      if (!seen_ids.insert(rec.account_id).second) {
        throw DataError("duplicate id: " + rec.account_id + " at line "
                        + std::to_string(line_no));
      }
      accounts.push_back(std::move(rec));
    } catch (const DataError& e) {
      if (std::string(e.what()).rfind("duplicate id", 0) == 0) throw;
      if (strict) {
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
      if (report) report->skipped.emplace_back(line_no, e.what());
    } catch (const nlohmann::json::exception& e) {
      if (strict) {
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
      if (report) report->skipped.emplace_back(line_no, e.what());
    }
  }
  return accounts;
}

inline nlohmann::json account_to_json(const AccountRecord& rec) {
  nlohmann::json j;
  j["account_id"] = rec.account_id;
  j["label"] = rec.label ? nlohmann::json(to_string(*rec.label)) : nlohmann::json(nullptr);
  if (rec.screen_name) j["screen_name"] = *rec.screen_name;
  if (rec.profile) {
    j["profile"] = {{"created_at", format_iso8601(rec.profile->created_at)},
                    {"followers_count", rec.profile->followers_count},
                    {"friends_count", rec.profile->friends_count},
                    {"favourites_count", rec.profile->favourites_count},
                    {"listed_count", rec.profile->listed_count},
                    {"statuses_count", rec.profile->statuses_count}};
  }
  nlohmann::json tweets = nlohmann::json::array();
  for (const TweetRecord& t : rec.tweets) {
    nlohmann::json jt;
    jt["text"] = t.text;
    if (t.created_at) jt["created_at"] = format_iso8601(*t.created_at);
    if (t.likes) jt["likes"] = *t.likes;
    if (t.retweets) jt["retweets"] = *t.retweets;
    tweets.push_back(std::move(jt));
  }
  j["tweets"] = std::move(tweets);
  return j;
}

inline void write_corpus(std::span<const AccountRecord> accounts,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write corpus file: " + path.string());
  for (const AccountRecord& rec : accounts) {
    out << account_to_json(rec).dump() << '\n';
  }
}

// ---- per-tweet CSV import shim ---------------------------------------------

namespace detail {

// RFC-4180 style field splitting; tweets contain commas and quotes.
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace detail

// Imports a simple one-row-per-tweet CSV (columns: account_id, text and
// optionally label, screen_name, created_at, likes, retweets) and groups
// rows into accounts in order of first appearance.
inline std::vector<AccountRecord> load_tweet_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open CSV file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV file: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = detail::split_csv_line(line);
  std::map<std::string, int> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = static_cast<int>(i);
  for (const char* required : {"account_id", "text"}) {
    if (!col.count(required)) {
      throw DataError("missing column: " + std::string(required));
    }
  }
  auto get = [&](const std::vector<std::string>& row, const char* name) -> std::optional<std::string> {
    const auto it = col.find(name);
    if (it == col.end() || static_cast<std::size_t>(it->second) >= row.size()) {
      return std::nullopt;
    }
    if (row[it->second].empty()) return std::nullopt;
    return row[it->second];
  };

  std::vector<AccountRecord> accounts;
  std::map<std::string, std::size_t> index;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> row = detail::split_csv_line(line);
    const auto id = get(row, "account_id");
    const auto text = get(row, "text");
    if (!id) throw DataError(path.string() + ":" + std::to_string(line_no)
                             + ": missing account_id");
    std::size_t pos;
    if (const auto it = index.find(*id); it != index.end()) {
      pos = it->second;
    } else {
      pos = accounts.size();
      index[*id] = pos;
      AccountRecord rec;
      rec.account_id = *id;
      if (const auto sn = get(row, "screen_name")) rec.screen_name = *sn;
      accounts.push_back(std::move(rec));
    }
    if (const auto lbl = get(row, "label")) {
      const auto parsed = detail::parse_label(nlohmann::json(*lbl));
      if (accounts[pos].label && parsed != accounts[pos].label) {
        throw DataError("conflicting labels for account " + *id);
      }
      accounts[pos].label = parsed;
    }
    const auto parse_count = [&](const std::string& cell, const char* col) {
      char* end = nullptr;
      const long long v = std::strtoll(cell.c_str(), &end, 10);
      if (end == cell.c_str() || *end != '\0' || v < 0) {
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": column "
                        + col + " is not a count: \"" + cell + "\"");
      }
      return static_cast<std::int64_t>(v);
    };
    TweetRecord t;
    t.text = text.value_or("");
    if (const auto ts = get(row, "created_at")) t.created_at = parse_iso8601(*ts);
    if (const auto lk = get(row, "likes")) t.likes = parse_count(*lk, "likes");
    if (const auto rt = get(row, "retweets")) t.retweets = parse_count(*rt, "retweets");
    accounts[pos].tweets.push_back(std::move(t));
  }
  return accounts;
}

// ---- feature CSV ------------------------------------------------------------

inline const char* feature_csv_base_header() {
  return "account_id,label,avg_ttr,avg_lexical_diversity,avg_contraction,"
         "avg_emoticons,tweets_used";
}

inline const char* feature_csv_profile_header() {
  return "age_days,fav_to_tweets,lists,followers_to_friends,likes_per_tweet,"
         "retweets_per_tweet,user_replies,user_retweets,tweet_frequency,urls_count";
}

// Floats print with 6 decimals; tweets_used is a count and prints bare.
// Leading '#' lines carry provenance and are skipped by the reader.
// Column order: base lexical block, then the optional per-token rate pair,
// then the optional profile block.
inline void write_feature_csv(std::span<const FeatureRow> rows,
                              const std::filesystem::path& path,
                              bool with_profile,
                              std::span<const std::string> meta_comments = {},
                              bool with_rate_columns = false) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write feature CSV: " + path.string());
  for (const std::string& c : meta_comments) out << "# " << c << '\n';
  out << feature_csv_base_header();
  if (with_rate_columns) out << ",avg_contraction_per_token,avg_emoticons_per_token";
  if (with_profile) out << ',' << feature_csv_profile_header();
  out << '\n';
  char buf[512];
  for (const FeatureRow& r : rows) {
    if (r.account_id.find_first_of(",\"\n") != std::string::npos) {
      throw DataError("account_id contains CSV delimiter characters: " + r.account_id);
    }
    if (with_profile && !r.profile) {
      throw DataError("account " + r.account_id + " lacks profile features");
    }
    std::snprintf(buf, sizeof(buf), "%s,%s,%.6f,%.6f,%.6f,%.6f,%zu",
                  r.account_id.c_str(), r.label ? to_string(*r.label) : "",
                  r.avg_ttr, r.avg_lexical_diversity, r.avg_contraction,
                  r.avg_emoticons, r.tweets_used);
    out << buf;
    if (with_rate_columns) {
      std::snprintf(buf, sizeof(buf), ",%.6f,%.6f", r.avg_contraction_per_token,
                    r.avg_emoticons_per_token);
      out << buf;
    }
    if (with_profile) {
      const ProfileFeatureVector& p = *r.profile;
      std::snprintf(buf, sizeof(buf),
                    ",%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f",
                    p.age_days, p.favourites_to_tweets, p.lists_per_user,
                    p.followers_to_friends, p.likes_per_tweet, p.retweets_per_tweet,
                    p.user_replies, p.user_retweets, p.tweet_frequency, p.urls_count);
      out << buf;
    }
    out << '\n';
  }
}

// Reads a feature CSV back into a matrix: account_id and label are
// bookkeeping, every other column is a named numeric feature.
inline FeatureMatrix read_feature_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open feature CSV: " + path.string());
  std::string line;
  do {
    if (!std::getline(in, line)) throw DataError("feature CSV has no header: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
  } while (line.empty() || line[0] == '#');

  const std::vector<std::string> header = detail::split_csv_line(line);
  int id_col = -1, label_col = -1;
  std::vector<std::pair<int, std::string>> feature_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "account_id") id_col = static_cast<int>(i);
    else if (header[i] == "label") label_col = static_cast<int>(i);
    else feature_cols.emplace_back(static_cast<int>(i), header[i]);
  }
  if (id_col < 0) throw DataError("missing column: account_id");
  if (label_col < 0) throw DataError("missing column: label");

  FeatureMatrix m;
  for (const auto& [idx, name] : feature_cols) m.feature_names.push_back(name);
  bool any_label = false, all_label = true;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cells = detail::split_csv_line(line);
    if (cells.size() != header.size()) {
      throw DataError(path.string() + ":" + std::to_string(line_no)
                      + ": expected " + std::to_string(header.size()) + " cells, got "
                      + std::to_string(cells.size()));
    }
    m.account_ids.push_back(cells[id_col]);
    const std::string& lbl = cells[label_col];
    if (lbl.empty()) {
      all_label = false;
      m.labels.push_back(0);
    } else {
      any_label = true;
      if (lbl == "human") m.labels.push_back(0);
      else if (lbl == "bot") m.labels.push_back(1);
      else throw DataError(path.string() + ":" + std::to_string(line_no)
                           + ": bad label \"" + lbl + "\"");
    }
    std::vector<double> row;
    row.reserve(feature_cols.size());
    for (const auto& [idx, name] : feature_cols) {
      const std::string& cell = cells[idx];
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw DataError(path.string() + ":" + std::to_string(line_no)
                        + ": column " + name + " is not numeric: \"" + cell + "\"");
      }
      row.push_back(v);
    }
    m.rows.push_back(std::move(row));
  }
  if (!any_label) {
    m.labels.clear();
  } else if (!all_label) {
    throw DataError("feature CSV mixes labeled and unlabeled rows: " + path.string());
  }
  return m;
}

}  // namespace botlex
