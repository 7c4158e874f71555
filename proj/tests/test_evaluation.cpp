#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include "botlex/evaluation.hpp"
#include "botlex/pipeline.hpp"
#include "botlex/synth.hpp"

using namespace botlex;

namespace {

double brute_auc(const std::vector<double>& scores, const std::vector<int>& actual) {
  double wins = 0, pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!actual[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (actual[j]) continue;
      pairs += 1;
      if (scores[i] > scores[j]) wins += 1;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

FeatureMatrix two_blobs(std::size_t n_per_class, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  FeatureMatrix m;
  m.feature_names = {"f0", "f1"};
  for (int c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < n_per_class; ++i) {
      m.rows.push_back({noise(gen) + c * 12.0, noise(gen)});
      m.labels.push_back(c);
    }
  }
  return m;
}

}  // namespace

TEST(StratifiedKfold, ExactDivisibility) {
  const std::vector<int> labels = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  const std::vector<int> fold = stratified_kfold(labels, 5, 42);
  for (int f = 0; f < 5; ++f) {
    int c0 = 0, c1 = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (fold[i] != f) continue;
      (labels[i] ? c1 : c0)++;
    }
    EXPECT_EQ(c0, 1);
    EXPECT_EQ(c1, 1);
  }
}

TEST(StratifiedKfold, UnevenSizesStayBalanced) {
  std::vector<int> labels(11, 0);
  for (int i = 6; i < 11; ++i) labels[i] = 1;  // 6 vs 5
  const std::vector<int> fold = stratified_kfold(labels, 5, 1);
  std::vector<int> size(5, 0), c0(5, 0), c1(5, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    size[fold[i]]++;
    (labels[i] ? c1 : c0)[fold[i]]++;
  }
  const auto [smin, smax] = std::minmax_element(size.begin(), size.end());
  EXPECT_LE(*smax - *smin, 1);
  for (int f = 0; f < 5; ++f) {
    EXPECT_LE(std::abs(c0[f] - 1), 1);  // ideal 6/5 = 1.2 per fold
    EXPECT_LE(std::abs(c1[f] - 1), 1);
  }
}

TEST(StratifiedKfold, ClassSmallerThanKThrows) {
  std::vector<int> labels(16, 0);
  for (int i = 0; i < 5; ++i) labels[i] = 1;
  EXPECT_THROW(stratified_kfold(labels, 11, 42), DataError);
}

TEST(StratifiedKfold, PartitionProperty) {
  std::mt19937 gen(2024);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 40 + gen() % 460;
    std::vector<int> labels(n);
    std::size_t ones = 10 + gen() % (n - 20);
    for (std::size_t i = 0; i < n; ++i) labels[i] = i < ones ? 1 : 0;
    std::shuffle(labels.begin(), labels.end(), gen);

    const int k = 10;
    const std::vector<int> fold = stratified_kfold(labels, k, iter);
    std::vector<int> per_class_total(2, 0);
    std::vector<std::vector<int>> count(k, std::vector<int>(2, 0));
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_GE(fold[i], 0);
      ASSERT_LT(fold[i], k);
      count[fold[i]][labels[i]]++;
      per_class_total[labels[i]]++;
    }
    for (int c = 0; c < 2; ++c) {
      const int lo = per_class_total[c] / k;
      const int hi = lo + (per_class_total[c] % k ? 1 : 0);
      for (int f = 0; f < k; ++f) {
        EXPECT_GE(count[f][c], lo);
        EXPECT_LE(count[f][c], hi);
      }
    }
  }
}

TEST(ConfusionMetrics, HandComputedExample) {
  const ConfusionMetrics m = confusion_metrics({1, 1, 0, 0}, {1, 0, 1, 0});
  EXPECT_DOUBLE_EQ(m.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(m.precision, 0.5);
  EXPECT_DOUBLE_EQ(m.recall, 0.5);
}

TEST(ConfusionMetrics, PerfectAndDegenerate) {
  const ConfusionMetrics p = confusion_metrics({1, 0, 1}, {1, 0, 1});
  EXPECT_DOUBLE_EQ(p.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(p.precision, 1.0);
  EXPECT_DOUBLE_EQ(p.recall, 1.0);

  const ConfusionMetrics z = confusion_metrics({0, 0, 0}, {1, 1, 0});
  EXPECT_DOUBLE_EQ(z.precision, 0.0);
  EXPECT_DOUBLE_EQ(z.recall, 0.0);

  EXPECT_THROW(confusion_metrics({1}, {1, 0}), DataError);
}

TEST(RocAuc, SpecExamples) {
  EXPECT_DOUBLE_EQ(roc_auc({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(roc_auc({0.5, 0.5}, {1, 0}), 0.5);
  EXPECT_DOUBLE_EQ(roc_auc({0.9, 0.8, 0.3, 0.4}, {1, 0, 0, 1}), 0.75);
  EXPECT_THROW(roc_auc({0.1, 0.2}, {1, 1}), DataError);
}

TEST(RocAuc, MatchesBruteForceWithTies) {
  std::mt19937 gen(77);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 4 + gen() % 46;
    std::vector<double> scores(n);
    std::vector<int> actual(n);
    actual[0] = 0;
    actual[1] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(gen() % 8) / 7.0;  // coarse grid forces ties
      if (i >= 2) actual[i] = gen() % 2;
    }
    EXPECT_NEAR(roc_auc(scores, actual), brute_auc(scores, actual), 1e-12);
  }
}

TEST(RocAuc, InvariantUnderMonotoneTransform) {
  const std::vector<double> scores = {0.1, 0.7, 0.7, 0.3, 0.9, 0.2};
  const std::vector<int> actual = {0, 1, 0, 1, 1, 0};
  const double base = roc_auc(scores, actual);
  std::vector<double> affine, expo;
  for (double s : scores) {
    affine.push_back(3.0 * s + 1.0);
    expo.push_back(std::exp(s));
  }
  EXPECT_DOUBLE_EQ(roc_auc(affine, actual), base);
  EXPECT_DOUBLE_EQ(roc_auc(expo, actual), base);
}

TEST(RocAuc, ComplementSymmetry) {
  std::mt19937 gen(31);
  for (int iter = 0; iter < 20; ++iter) {
    std::vector<double> scores(30);
    std::vector<int> actual(30);
    actual[0] = 0;
    actual[1] = 1;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      scores[i] = static_cast<double>(gen() % 11) / 10.0;
      if (i >= 2) actual[i] = gen() % 2;
    }
    std::vector<int> flipped;
    for (int a : actual) flipped.push_back(1 - a);
    EXPECT_NEAR(roc_auc(scores, actual) + roc_auc(scores, flipped), 1.0, 1e-12);
  }
}

TEST(CrossValidate, SeparableDataIsPerfect) {
  const FeatureMatrix m = two_blobs(50, 8);
  const EvalReport r = cross_validate(m, ClassifierKind::RandomForest, {}, 10, 42,
                                      "blobs", "L");
  EXPECT_DOUBLE_EQ(r.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(r.auc, 1.0);
  EXPECT_EQ(r.fold_accuracy.size(), 10u);
}

TEST(CrossValidate, ShuffledLabelsScoreNearChance) {
  for (unsigned seed : {11u, 12u, 13u}) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    FeatureMatrix m;
    m.feature_names = {"f0", "f1", "f2"};
    for (int i = 0; i < 200; ++i) {
      m.rows.push_back({uni(gen), uni(gen), uni(gen)});
      m.labels.push_back(i % 2);
    }
    std::shuffle(m.labels.begin(), m.labels.end(), gen);
    TrainParams params;
    params.forest_trees = 25;
    const EvalReport r = cross_validate(m, ClassifierKind::RandomForest, params,
                                        10, seed, "null", "L");
    EXPECT_GE(r.auc, 0.35) << seed;
    EXPECT_LE(r.auc, 0.65) << seed;
  }
}

TEST(CrossValidate, DeterministicReports) {
  const FeatureMatrix m = two_blobs(30, 5);
  const EvalReport a = cross_validate(m, ClassifierKind::Knn, {}, 5, 42, "t", "L");
  const EvalReport b = cross_validate(m, ClassifierKind::Knn, {}, 5, 42, "t", "L");
  EXPECT_EQ(eval_report_to_json(a).dump(), eval_report_to_json(b).dump());
}

TEST(CrossValidate, MeansEqualFoldMeans) {
  const FeatureMatrix m = two_blobs(30, 6);
  const EvalReport r = cross_validate(m, ClassifierKind::GaussianNb, {}, 5, 42, "t", "L");
  double acc = 0;
  for (double v : r.fold_accuracy) acc += v;
  EXPECT_NEAR(r.accuracy, acc / 5.0, 1e-15);
}

TEST(ForestSanity, MoreTreesDoNotTankAucOnAcceptanceCorpus) {
  const Lexicons lex = Lexicons::load_dir(BOTLEX_LEXICON_DIR);
  const SynthParams params = SynthParams::defaults();
  const auto corpus = generate_synthetic_corpus(params, lex);
  const auto rows = extract_features(corpus, lex);
  const FeatureMatrix m = feature_matrix_from_rows(rows, FeatureSet::L);

  TrainParams one;
  one.forest_trees = 1;
  const double auc1 =
      cross_validate(m, ClassifierKind::RandomForest, one, 10, 42, "t", "L").auc;
  TrainParams hundred;
  hundred.forest_trees = 100;
  const double auc100 =
      cross_validate(m, ClassifierKind::RandomForest, hundred, 10, 42, "t", "L").auc;
  EXPECT_GE(auc100, auc1 - 0.05);
}
