#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "botlex/feature_matrix.hpp"

namespace botlex {

// Gaussian Naive Bayes for two classes over continuous features.
struct GnbModel {
  std::array<double, 2> log_priors{0.0, 0.0};
  std::vector<std::vector<double>> means;      // [class][feature]
  std::vector<std::vector<double>> variances;  // floored, see train_gnb
};

// Variances are floored at `var_floor_factor` times the largest per-feature
// variance of the whole training set, so single-valued features cannot
// produce infinite densities.
inline GnbModel train_gnb(const FeatureMatrix& m, double var_floor_factor) {
  const std::size_t d = m.d();
  GnbModel model;
  model.means.assign(2, std::vector<double>(d, 0.0));
  model.variances.assign(2, std::vector<double>(d, 0.0));

  std::array<double, 2> counts{0.0, 0.0};
  for (std::size_t i = 0; i < m.n(); ++i) {
    const int c = m.labels[i];
    counts[c] += 1.0;
    for (std::size_t j = 0; j < d; ++j) model.means[c][j] += m.rows[i][j];
  }
  for (int c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < d; ++j) model.means[c][j] /= counts[c];
    model.log_priors[c] = std::log(counts[c] / static_cast<double>(m.n()));
  }
  for (std::size_t i = 0; i < m.n(); ++i) {
    const int c = m.labels[i];
    for (std::size_t j = 0; j < d; ++j) {
      const double dv = m.rows[i][j] - model.means[c][j];
      model.variances[c][j] += dv * dv;
    }
  }

  // Pooled per-feature variance drives the floor.
  double max_var = 0.0;
  {
    std::vector<double> mean(d, 0.0);
    for (const auto& row : m.rows) {
      for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
    }
    for (std::size_t j = 0; j < d; ++j) mean[j] /= static_cast<double>(m.n());
    for (std::size_t j = 0; j < d; ++j) {
      double v = 0.0;
      for (const auto& row : m.rows) {
        const double dv = row[j] - mean[j];
        v += dv * dv;
      }
      max_var = std::max(max_var, v / static_cast<double>(m.n()));
    }
  }
  double floor = var_floor_factor * max_var;
  if (floor <= 0.0) floor = 1e-12;
  for (int c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < d; ++j) {
      model.variances[c][j] = std::max(model.variances[c][j] / counts[c], floor);
    }
  }
  return model;
}

// Posterior probability of the bot class, computed in log space.
inline double gnb_score(const GnbModel& model, const std::vector<double>& row) {
  std::array<double, 2> log_post;
  for (int c = 0; c < 2; ++c) {
    double lp = model.log_priors[c];
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double var = model.variances[c][j];
      const double dv = row[j] - model.means[c][j];
      lp += -0.5 * std::log(2.0 * 3.141592653589793 * var) - dv * dv / (2.0 * var);
    }
    log_post[c] = lp;
  }
  const double m = std::max(log_post[0], log_post[1]);
  const double e0 = std::exp(log_post[0] - m);
  const double e1 = std::exp(log_post[1] - m);
  return e1 / (e0 + e1);
}

}  // namespace botlex
