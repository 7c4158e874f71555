#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <thread>
#include <vector>

#include "botlex/feature_matrix.hpp"
#include "botlex/rng.hpp"

namespace botlex {

// feature == -1 marks a leaf. counts are the class tallies of the training
// samples that reached the node; they are kept for internal nodes too so
// impurity-based importance can be recomputed from the serialized tree.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::array<std::int64_t, 2> counts{0, 0};
};

struct Tree {
  std::vector<TreeNode> nodes;  // node 0 is the root
};

struct ForestModel {
  std::vector<Tree> trees;
};

struct ForestParams {
  int trees = 100;
  int min_samples_split = 2;
};

namespace detail {

inline double gini(std::int64_t c0, std::int64_t c1) {
  const double n = static_cast<double>(c0 + c1);
  if (n == 0.0) return 0.0;
  const double p0 = static_cast<double>(c0) / n;
  const double p1 = static_cast<double>(c1) / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

class TreeBuilder {
 public:
  TreeBuilder(const FeatureMatrix& m, int min_samples_split, Rng& rng)
      : m_(m), min_split_(min_samples_split), rng_(rng),
        feature_count_(m.d()),
        subset_size_(std::max<std::size_t>(
            1, static_cast<std::size_t>(
                   std::ceil(std::sqrt(static_cast<double>(m.d())))))) {}

  Tree build(std::vector<std::size_t> sample_idx) {
    Tree tree;
    grow(tree, std::move(sample_idx));
    return tree;
  }

 private:
  int grow(Tree& tree, std::vector<std::size_t> idx) {
    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    std::int64_t c0 = 0, c1 = 0;
    for (std::size_t i : idx) (m_.labels[i] ? c1 : c0)++;
    tree.nodes[node_id].counts = {c0, c1};

    if (c0 == 0 || c1 == 0
        || idx.size() < static_cast<std::size_t>(min_split_)) {
      return node_id;  // pure or too small: leaf
    }

    // Random feature subset of size ceil(sqrt(d)), partial Fisher-Yates.
    std::vector<std::size_t> features(feature_count_);
    std::iota(features.begin(), features.end(), 0);
    for (std::size_t i = 0; i < subset_size_; ++i) {
      const std::size_t j = i + rng_.below(features.size() - i);
      std::swap(features[i], features[j]);
    }
    features.resize(subset_size_);

    double best_impurity = std::numeric_limits<double>::infinity();
    std::size_t best_feature = 0;
    double best_threshold = 0.0;
    bool found = false;

    std::vector<std::size_t> order(idx);
    for (std::size_t f : features) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = m_.rows[a][f], vb = m_.rows[b][f];
        return va != vb ? va < vb : a < b;
      });
      std::int64_t l0 = 0, l1 = 0;
      const double total = static_cast<double>(idx.size());
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        (m_.labels[order[i]] ? l1 : l0)++;
        const double v = m_.rows[order[i]][f];
        const double vn = m_.rows[order[i + 1]][f];
        if (v == vn) continue;
        const double nl = static_cast<double>(i + 1);
        const double nr = total - nl;
        const double impurity =
            (nl * gini(l0, l1) + nr * gini(c0 - l0, c1 - l1)) / total;
        const double threshold = v + (vn - v) / 2.0;
        const bool better = impurity < best_impurity
            || (impurity == best_impurity
                && (f < best_feature
                    || (f == best_feature && threshold < best_threshold)));
        if (!found || better) {
          best_impurity = impurity;
          best_feature = f;
          best_threshold = threshold;
          found = true;
        }
      }
    }

    if (!found) return node_id;  // sampled features all constant: leaf

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx) {
      (m_.rows[i][best_feature] <= best_threshold ? left_idx : right_idx).push_back(i);
    }
    idx.clear();
    idx.shrink_to_fit();

    tree.nodes[node_id].feature = static_cast<int>(best_feature);
    tree.nodes[node_id].threshold = best_threshold;
    const int left = grow(tree, std::move(left_idx));
    tree.nodes[node_id].left = left;
    const int right = grow(tree, std::move(right_idx));
    tree.nodes[node_id].right = right;
    return node_id;
  }

  const FeatureMatrix& m_;
  int min_split_;
  Rng& rng_;
  std::size_t feature_count_;
  std::size_t subset_size_;
};

}  // namespace detail

// Bootstrap-aggregated CART forest with Gini splitting. Tree t draws all
// of its randomness from Rng(seed + t), so parallel training is identical
// to sequential.
inline ForestModel train_forest(const FeatureMatrix& m, const ForestParams& params,
                                std::uint64_t seed, int jobs = 1) {
  ForestModel forest;
  forest.trees.resize(params.trees);
  const std::size_t n = m.n();
  auto train_one = [&](int t) {
    Rng rng(seed + static_cast<std::uint64_t>(t));
    std::vector<std::size_t> bootstrap(n);
    for (std::size_t i = 0; i < n; ++i) bootstrap[i] = rng.below(n);
    detail::TreeBuilder builder(m, params.min_samples_split, rng);
    forest.trees[t] = builder.build(std::move(bootstrap));
  };
  if (jobs <= 1) {
    for (int t = 0; t < params.trees; ++t) train_one(t);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (int t = next.fetch_add(1); t < params.trees; t = next.fetch_add(1)) {
          train_one(t);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return forest;
}

// Leaf majority vote; ties go to the positive (bot) class.
inline int tree_vote(const Tree& tree, const std::vector<double>& row) {
  int node = 0;
  while (tree.nodes[node].feature >= 0) {
    const TreeNode& nd = tree.nodes[node];
    node = row[nd.feature] <= nd.threshold ? nd.left : nd.right;
  }
  const auto& c = tree.nodes[node].counts;
  return c[1] >= c[0] ? 1 : 0;
}

inline double forest_score(const ForestModel& forest, const std::vector<double>& row) {
  std::int64_t votes = 0;
  for (const Tree& t : forest.trees) votes += tree_vote(t, row);
  return static_cast<double>(votes) / static_cast<double>(forest.trees.size());
}

// Mean decrease in Gini impurity, per-tree normalized, averaged across
// trees, renormalized to sum to 1. A forest that never split (pure
// training labels) reports the documented uniform 1/d.
inline std::vector<double> forest_importance(const ForestModel& forest, std::size_t d) {
  std::vector<double> total(d, 0.0);
  std::size_t contributing = 0;
  for (const Tree& tree : forest.trees) {
    std::vector<double> imp(d, 0.0);
    const double n_root =
        static_cast<double>(tree.nodes[0].counts[0] + tree.nodes[0].counts[1]);
    for (const TreeNode& nd : tree.nodes) {
      if (nd.feature < 0) continue;
      const auto& cl = tree.nodes[nd.left].counts;
      const auto& cr = tree.nodes[nd.right].counts;
      const double nn = static_cast<double>(nd.counts[0] + nd.counts[1]);
      const double nl = static_cast<double>(cl[0] + cl[1]);
      const double nr = static_cast<double>(cr[0] + cr[1]);
      const double decrease = detail::gini(nd.counts[0], nd.counts[1])
          - (nl / nn) * detail::gini(cl[0], cl[1])
          - (nr / nn) * detail::gini(cr[0], cr[1]);
      imp[nd.feature] += (nn / n_root) * decrease;
    }
    double sum = 0.0;
    for (double v : imp) sum += v;
    if (sum > 0.0) {
      for (std::size_t j = 0; j < d; ++j) total[j] += imp[j] / sum;
      ++contributing;
    }
  }
  if (contributing == 0) {
    return std::vector<double>(d, 1.0 / static_cast<double>(d));
  }
  double sum = 0.0;
  for (double v : total) sum += v;
  for (double& v : total) v /= sum;
  return total;
}

}  // namespace botlex
