#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "botlex/classifiers/standardize.hpp"
#include "botlex/feature_matrix.hpp"
#include "botlex/rng.hpp"

namespace botlex {

// Linear SVM trained by stochastic subgradient descent on the hinge loss
// (Pegasos schedule), over internally standardized features. Stands in for
// the SVC slot of the classifier suite; reported as "svc-linear".
struct SvmModel {
  std::vector<double> weights;
  double bias = 0.0;
  Standardizer standardizer;
};

struct SvmParams {
  double lambda = 1e-4;  // regularization strength
  int epochs = 200;
};

inline SvmModel train_svm(const FeatureMatrix& m, const SvmParams& params,
                          std::uint64_t seed) {
  const std::size_t n = m.n(), d = m.d();
  SvmModel model;
  model.standardizer.fit(m.rows, d);
  std::vector<std::vector<double>> x;
  x.reserve(n);
  for (const auto& row : m.rows) x.push_back(model.standardizer.transform(row));

  model.weights.assign(d, 0.0);
  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::int64_t t = 0;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (params.lambda * static_cast<double>(t));
      const double y = m.labels[i] ? 1.0 : -1.0;
      double margin = model.bias;
      for (std::size_t j = 0; j < d; ++j) margin += model.weights[j] * x[i][j];
      const double shrink = 1.0 - eta * params.lambda;
      for (double& w : model.weights) w *= shrink;
      if (y * margin < 1.0) {
        for (std::size_t j = 0; j < d; ++j) model.weights[j] += eta * y * x[i][j];
        model.bias += eta * y;  // bias is not regularized
      }
    }
  }
  return model;
}

// Logistic squashing of the signed margin.
inline double svm_score(const SvmModel& model, const std::vector<double>& raw_row) {
  const std::vector<double> x = model.standardizer.transform(raw_row);
  double margin = model.bias;
  for (std::size_t j = 0; j < x.size(); ++j) margin += model.weights[j] * x[j];
  return 1.0 / (1.0 + std::exp(-margin));
}

}  // namespace botlex
