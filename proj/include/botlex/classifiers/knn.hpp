#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "botlex/classifiers/standardize.hpp"
#include "botlex/feature_matrix.hpp"

namespace botlex {

// Euclidean k-nearest-neighbour over internally standardized features.
struct KnnModel {
  int k = 5;
  Standardizer standardizer;
  std::vector<std::vector<double>> rows;  // standardized training rows
  std::vector<int> labels;
};

inline KnnModel train_knn(const FeatureMatrix& m, int k) {
  KnnModel model;
  model.k = std::min<int>(k, static_cast<int>(m.n()));
  model.standardizer.fit(m.rows, m.d());
  model.rows.reserve(m.n());
  for (const auto& row : m.rows) model.rows.push_back(model.standardizer.transform(row));
  model.labels = m.labels;
  return model;
}

// Fraction of the k nearest training rows labeled bot. Distance ties break
// toward the lower training-row index.
inline double knn_score(const KnnModel& model, const std::vector<double>& raw_row) {
  const std::vector<double> q = model.standardizer.transform(raw_row);
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(model.rows.size());
  for (std::size_t i = 0; i < model.rows.size(); ++i) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      const double dv = model.rows[i][j] - q[j];
      d2 += dv * dv;
    }
    dist.emplace_back(d2, i);
  }
  const std::size_t k =
      std::min<std::size_t>(static_cast<std::size_t>(model.k), dist.size());
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
  std::int64_t bots = 0;
  for (std::size_t i = 0; i < k; ++i) bots += model.labels[dist[i].second];
  return static_cast<double>(bots) / static_cast<double>(k);
}

}  // namespace botlex
