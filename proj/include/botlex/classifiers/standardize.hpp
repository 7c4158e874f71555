#pragma once

#include <cmath>
#include <vector>

namespace botlex {

// Per-column mean/stddev transform fitted on training data. Constant
// columns get stddev 1 so they map to zero instead of dividing by zero.
struct Standardizer {
  std::vector<double> means;
  std::vector<double> stddevs;

  void fit(const std::vector<std::vector<double>>& rows, std::size_t d) {
    means.assign(d, 0.0);
    stddevs.assign(d, 0.0);
    if (rows.empty()) return;
    const double n = static_cast<double>(rows.size());
    for (const auto& row : rows) {
      for (std::size_t j = 0; j < d; ++j) means[j] += row[j];
    }
    for (std::size_t j = 0; j < d; ++j) means[j] /= n;
    for (const auto& row : rows) {
      for (std::size_t j = 0; j < d; ++j) {
        const double dv = row[j] - means[j];
        stddevs[j] += dv * dv;
      }
    }
    for (std::size_t j = 0; j < d; ++j) {
      stddevs[j] = std::sqrt(stddevs[j] / n);
      if (stddevs[j] == 0.0) stddevs[j] = 1.0;
    }
  }

  std::vector<double> transform(const std::vector<double>& row) const {
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      out[j] = (row[j] - means[j]) / stddevs[j];
    }
    return out;
  }
};

}  // namespace botlex
