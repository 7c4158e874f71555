#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "botlex/classifiers.hpp"
#include "botlex/error.hpp"
#include "botlex/feature_matrix.hpp"
#include "botlex/rng.hpp"

namespace botlex {

// Stratified fold assignment: rows of each class are shuffled by seed and
// dealt round-robin. Each class starts dealing at a rotated fold so fold
// sizes stay within one of each other.
inline std::vector<int> stratified_kfold(const std::vector<int>& labels, int k,
                                         std::uint64_t seed) {
  if (k < 2) throw DataError("stratified_kfold: k must be at least 2");
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw DataError("stratified_kfold: labels must be 0 or 1");
    }
    by_class[labels[i]].push_back(i);
  }
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < static_cast<std::size_t>(k)) {
      throw DataError("stratified_kfold: class " + std::to_string(c) + " has "
                      + std::to_string(by_class[c].size()) + " members, fewer than k="
                      + std::to_string(k));
    }
  }
  Rng rng(seed);
  std::vector<int> fold(labels.size(), 0);
  std::size_t start = 0;
  for (int c = 0; c < 2; ++c) {
    rng.shuffle(by_class[c]);
    for (std::size_t i = 0; i < by_class[c].size(); ++i) {
      fold[by_class[c][i]] = static_cast<int>((start + i) % k);
    }
    start = (start + by_class[c].size()) % k;
  }
  return fold;
}

struct ConfusionMetrics {
  double accuracy = 0.0;
  double precision = 0.0;  // bot-positive binary framing
  double recall = 0.0;
  double precision_weighted = 0.0;  // support-weighted over both classes
  double recall_weighted = 0.0;
};

inline ConfusionMetrics confusion_metrics(const std::vector<int>& predicted,
                                          const std::vector<int>& actual) {
  if (predicted.size() != actual.size()) {
    throw DataError("confusion_metrics: length mismatch");
  }
  if (predicted.empty()) throw DataError("confusion_metrics: empty input");
  double tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == 1 && actual[i] == 1) ++tp;
    else if (predicted[i] == 1 && actual[i] == 0) ++fp;
    else if (predicted[i] == 0 && actual[i] == 1) ++fn;
    else ++tn;
  }
  const double n = static_cast<double>(predicted.size());
  ConfusionMetrics m;
  m.accuracy = (tp + tn) / n;
  m.precision = (tp + fp) > 0 ? tp / (tp + fp) : 0.0;
  m.recall = (tp + fn) > 0 ? tp / (tp + fn) : 0.0;
  const double prec_neg = (tn + fn) > 0 ? tn / (tn + fn) : 0.0;
  const double rec_neg = (tn + fp) > 0 ? tn / (tn + fp) : 0.0;
  const double support_pos = tp + fn, support_neg = tn + fp;
  m.precision_weighted = (support_pos * m.precision + support_neg * prec_neg) / n;
  m.recall_weighted = (support_pos * m.recall + support_neg * rec_neg) / n;
  return m;
}

// Mann-Whitney AUC with midranks: the probability that a random positive
// outscores a random negative, ties counted half.
inline double roc_auc(const std::vector<double>& scores, const std::vector<int>& actual) {
  if (scores.size() != actual.size()) throw DataError("roc_auc: length mismatch");
  std::size_t n_pos = 0, n_neg = 0;
  for (int a : actual) (a ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0) {
    throw DataError("roc_auc: needs both classes in actual labels");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) {
      if (actual[order[t]]) rank_sum_pos += midrank;
    }
    i = j + 1;
  }
  const double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

struct EvalReport {
  std::string dataset_tag;
  ClassifierKind classifier = ClassifierKind::RandomForest;
  std::string feature_set;  // F, L or FL
  int folds = 0;
  std::uint64_t seed = 0;
  std::string aggregation = "macro-over-folds";
  std::vector<double> fold_accuracy, fold_precision, fold_recall, fold_auc;
  std::vector<double> fold_precision_weighted, fold_recall_weighted;
  double accuracy = 0, precision = 0, recall = 0, auc = 0;
  double precision_weighted = 0, recall_weighted = 0;
};

namespace detail {

inline double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace detail

// Per-fold train/score loop. Fold f trains with seed (seed + f); every
// result is a pure function of (matrix, kind, params, k, seed).
inline EvalReport cross_validate(const FeatureMatrix& m, ClassifierKind kind,
                                 const TrainParams& params, int k, std::uint64_t seed,
                                 const std::string& dataset_tag = "",
                                 const std::string& feature_set_tag = "",
                                 int jobs = 1) {
  if (!m.labeled()) throw DataError("cross_validate requires labels");
  const std::vector<int> fold = stratified_kfold(m.labels, k, seed);

  EvalReport report;
  report.dataset_tag = dataset_tag;
  report.classifier = kind;
  report.feature_set = feature_set_tag;
  report.folds = k;
  report.seed = seed;

  for (int f = 0; f < k; ++f) {
    FeatureMatrix train_m, test_m;
    train_m.feature_names = test_m.feature_names = m.feature_names;
    std::vector<int> test_actual;
    for (std::size_t i = 0; i < m.n(); ++i) {
      if (fold[i] == f) {
        test_m.rows.push_back(m.rows[i]);
        test_actual.push_back(m.labels[i]);
      } else {
        train_m.rows.push_back(m.rows[i]);
        train_m.labels.push_back(m.labels[i]);
      }
    }
    const TrainedModel model =
        train(kind, train_m, params, seed + static_cast<std::uint64_t>(f), jobs);
    const std::vector<double> scores = predict_proba(model, test_m);
    std::vector<int> predicted;
    predicted.reserve(scores.size());
    for (double s : scores) predicted.push_back(s >= 0.5 ? 1 : 0);

    const ConfusionMetrics cm = confusion_metrics(predicted, test_actual);
    report.fold_accuracy.push_back(cm.accuracy);
    report.fold_precision.push_back(cm.precision);
    report.fold_recall.push_back(cm.recall);
    report.fold_precision_weighted.push_back(cm.precision_weighted);
    report.fold_recall_weighted.push_back(cm.recall_weighted);
    report.fold_auc.push_back(roc_auc(scores, test_actual));
  }

  report.accuracy = detail::mean(report.fold_accuracy);
  report.precision = detail::mean(report.fold_precision);
  report.recall = detail::mean(report.fold_recall);
  report.precision_weighted = detail::mean(report.fold_precision_weighted);
  report.recall_weighted = detail::mean(report.fold_recall_weighted);
  report.auc = detail::mean(report.fold_auc);
  return report;
}

inline nlohmann::json eval_report_to_json(const EvalReport& r) {
  return {{"dataset_tag", r.dataset_tag},
          {"classifier", to_string(r.classifier)},
          {"feature_set", r.feature_set},
          {"folds", r.folds},
          {"seed", r.seed},
          {"aggregation", r.aggregation},
          {"mean", {{"accuracy", r.accuracy},
                    {"precision", r.precision},
                    {"recall", r.recall},
                    {"auc", r.auc},
                    {"precision_weighted", r.precision_weighted},
                    {"recall_weighted", r.recall_weighted}}},
          {"per_fold", {{"accuracy", r.fold_accuracy},
                        {"precision", r.fold_precision},
                        {"recall", r.fold_recall},
                        {"auc", r.fold_auc},
                        {"precision_weighted", r.fold_precision_weighted},
                        {"recall_weighted", r.fold_recall_weighted}}}};
}

inline std::string eval_csv_header() {
  return "dataset_tag,classifier,feature_set,accuracy,precision,recall,auc,seed";
}

inline std::string eval_csv_row(const EvalReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,%s,%s,%.6f,%.6f,%.6f,%.6f,%llu",
                r.dataset_tag.c_str(), to_string(r.classifier), r.feature_set.c_str(),
                r.accuracy, r.precision, r.recall, r.auc,
                static_cast<unsigned long long>(r.seed));
  return buf;
}

}  // namespace botlex
