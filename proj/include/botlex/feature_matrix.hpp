#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "botlex/error.hpp"

namespace botlex {

// Row-major numeric matrix with a named-column manifest; the currency of
// the classifier and evaluation layers. Labels: 0 = human, 1 = bot.
struct FeatureMatrix {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;                  // empty when unlabeled
  std::vector<std::string> account_ids;     // optional bookkeeping

  std::size_t n() const { return rows.size(); }
  std::size_t d() const { return feature_names.size(); }
  bool labeled() const { return !labels.empty(); }

  void validate() const {
    if (labeled() && labels.size() != rows.size()) {
      throw DataError("label vector length does not match row count");
    }
    for (const auto& row : rows) {
      if (row.size() != feature_names.size()) {
        throw DataError("row width does not match feature manifest");
      }
      for (double v : row) {
        if (!std::isfinite(v)) throw DataError("non-finite feature value");
      }
    }
  }
};

// Feature-set tags: profile metadata (F), lexical averages (L), both (FL).
enum class FeatureSet { F, L, FL };

inline const char* to_string(FeatureSet s) {
  switch (s) {
    case FeatureSet::F: return "F";
    case FeatureSet::L: return "L";
    case FeatureSet::FL: return "FL";
  }
  return "?";
}

inline FeatureSet feature_set_from_string(const std::string& s) {
  if (s == "F") return FeatureSet::F;
  if (s == "L") return FeatureSet::L;
  if (s == "FL") return FeatureSet::FL;
  throw DataError("unknown feature set tag: " + s + " (expected F, L or FL)");
}

inline const std::vector<std::string>& lexical_feature_columns() {
  static const std::vector<std::string> cols = {
      "avg_ttr", "avg_lexical_diversity", "avg_contraction", "avg_emoticons"};
  return cols;
}

inline const std::vector<std::string>& profile_feature_columns() {
  static const std::vector<std::string> cols = {
      "age_days", "fav_to_tweets", "lists", "followers_to_friends",
      "likes_per_tweet", "retweets_per_tweet", "user_replies", "user_retweets",
      "tweet_frequency", "urls_count"};
  return cols;
}

inline std::vector<std::string> feature_set_columns(FeatureSet set) {
  std::vector<std::string> cols;
  if (set == FeatureSet::F || set == FeatureSet::FL) {
    cols = profile_feature_columns();
  }
  if (set == FeatureSet::L || set == FeatureSet::FL) {
    const auto& l = lexical_feature_columns();
    cols.insert(cols.end(), l.begin(), l.end());
  }
  return cols;
}

// Column projection by name; throws naming every missing column.
inline FeatureMatrix select_features(const FeatureMatrix& m,
                                     const std::vector<std::string>& names) {
  std::vector<std::size_t> idx;
  std::string missing;
  for (const std::string& name : names) {
    bool found = false;
    for (std::size_t j = 0; j < m.feature_names.size(); ++j) {
      if (m.feature_names[j] == name) {
        idx.push_back(j);
        found = true;
        break;
      }
    }
    if (!found) missing += missing.empty() ? name : ", " + name;
  }
  if (!missing.empty()) {
    throw DataError("missing feature columns: " + missing);
  }
  FeatureMatrix out;
  out.feature_names = names;
  out.labels = m.labels;
  out.account_ids = m.account_ids;
  out.rows.reserve(m.rows.size());
  for (const auto& row : m.rows) {
    std::vector<double> r;
    r.reserve(idx.size());
    for (std::size_t j : idx) r.push_back(row[j]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace botlex
