#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "botlex/classifiers/gaussian_nb.hpp"
#include "botlex/classifiers/knn.hpp"
#include "botlex/classifiers/linear_svm.hpp"
#include "botlex/classifiers/random_forest.hpp"
#include "botlex/error.hpp"
#include "botlex/feature_matrix.hpp"
#include "botlex/version.hpp"

namespace botlex {

enum class ClassifierKind { RandomForest, Knn, GaussianNb, LinearSvm };

// The SVC slot is realized as a linear SVM and reported as "svc-linear".
inline const char* to_string(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::RandomForest: return "random_forest";
    case ClassifierKind::Knn: return "knn";
    case ClassifierKind::GaussianNb: return "gaussian_nb";
    case ClassifierKind::LinearSvm: return "svc-linear";
  }
  return "?";
}

inline ClassifierKind classifier_kind_from_string(const std::string& s) {
  if (s == "random_forest") return ClassifierKind::RandomForest;
  if (s == "knn") return ClassifierKind::Knn;
  if (s == "gaussian_nb") return ClassifierKind::GaussianNb;
  if (s == "svc-linear" || s == "linear_svm") return ClassifierKind::LinearSvm;
  throw DataError("unknown classifier kind: " + s
                  + " (expected random_forest, knn, gaussian_nb or svc-linear)");
}

// Hyperparameters for every kind, with the documented defaults.
struct TrainParams {
  int forest_trees = 100;
  int min_samples_split = 2;
  int knn_k = 5;
  double gnb_var_floor_factor = 1e-9;
  double svm_lambda = 1e-4;
  int svm_epochs = 200;
};

inline nlohmann::json train_params_to_json(const TrainParams& p) {
  return {{"forest_trees", p.forest_trees},
          {"min_samples_split", p.min_samples_split},
          {"knn_k", p.knn_k},
          {"gnb_var_floor_factor", p.gnb_var_floor_factor},
          {"svm_lambda", p.svm_lambda},
          {"svm_epochs", p.svm_epochs}};
}

inline TrainParams train_params_from_json(const nlohmann::json& j) {
  TrainParams p;
  p.forest_trees = j.value("forest_trees", p.forest_trees);
  p.min_samples_split = j.value("min_samples_split", p.min_samples_split);
  p.knn_k = j.value("knn_k", p.knn_k);
  p.gnb_var_floor_factor = j.value("gnb_var_floor_factor", p.gnb_var_floor_factor);
  p.svm_lambda = j.value("svm_lambda", p.svm_lambda);
  p.svm_epochs = j.value("svm_epochs", p.svm_epochs);
  return p;
}

struct TrainedModel {
  ClassifierKind kind = ClassifierKind::RandomForest;
  std::vector<std::string> feature_names;
  std::uint64_t seed = 0;
  TrainParams params;
  std::variant<ForestModel, KnnModel, GnbModel, SvmModel> payload;
};

namespace detail {

inline void check_trainable(const FeatureMatrix& m) {
  if (m.n() == 0 || m.d() == 0) throw DataError("empty feature matrix");
  if (!m.labeled()) throw DataError("training requires labels");
  m.validate();
  std::size_t c0 = 0, c1 = 0;
  for (int l : m.labels) {
    if (l != 0 && l != 1) throw DataError("labels must be 0 (human) or 1 (bot)");
    (l ? c1 : c0)++;
  }
  if (c0 == 0 || c1 == 0) throw DataError("training labels contain a single class");
  if (c0 < 2 || c1 < 2) throw DataError("each class needs at least 2 training samples");
}

inline void check_manifest(const TrainedModel& model, const FeatureMatrix& m) {
  if (m.feature_names != model.feature_names) {
    std::string want, got;
    for (const auto& f : model.feature_names) want += (want.empty() ? "" : ",") + f;
    for (const auto& f : m.feature_names) got += (got.empty() ? "" : ",") + f;
    throw ModelError("feature manifest mismatch: model expects [" + want
                     + "], input has [" + got + "]");
  }
  m.validate();
}

}  // namespace detail

inline TrainedModel train(ClassifierKind kind, const FeatureMatrix& m,
                          const TrainParams& params = {}, std::uint64_t seed = 42,
                          int jobs = 1) {
  detail::check_trainable(m);
  TrainedModel model;
  model.kind = kind;
  model.feature_names = m.feature_names;
  model.seed = seed;
  model.params = params;
  switch (kind) {
    case ClassifierKind::RandomForest:
      model.payload = train_forest(
          m, ForestParams{params.forest_trees, params.min_samples_split}, seed, jobs);
      break;
    case ClassifierKind::Knn:
      model.payload = train_knn(m, params.knn_k);
      break;
    case ClassifierKind::GaussianNb:
      model.payload = train_gnb(m, params.gnb_var_floor_factor);
      break;
    case ClassifierKind::LinearSvm:
      model.payload = train_svm(m, SvmParams{params.svm_lambda, params.svm_epochs}, seed);
      break;
  }
  return model;
}

inline std::vector<double> predict_proba(const TrainedModel& model, const FeatureMatrix& m) {
  detail::check_manifest(model, m);
  std::vector<double> scores;
  scores.reserve(m.n());
  for (const auto& row : m.rows) {
    double s = 0.0;
    if (const auto* forest = std::get_if<ForestModel>(&model.payload)) {
      s = forest_score(*forest, row);
    } else if (const auto* knn = std::get_if<KnnModel>(&model.payload)) {
      s = knn_score(*knn, row);
    } else if (const auto* gnb = std::get_if<GnbModel>(&model.payload)) {
      s = gnb_score(*gnb, row);
    } else if (const auto* svm = std::get_if<SvmModel>(&model.payload)) {
      s = svm_score(*svm, row);
    }
    scores.push_back(s);
  }
  return scores;
}

// Score >= 0.5 maps to bot; the tie at exactly 0.5 is defined to be bot.
inline std::vector<int> predict(const TrainedModel& model, const FeatureMatrix& m) {
  const std::vector<double> scores = predict_proba(model, m);
  std::vector<int> labels;
  labels.reserve(scores.size());
  for (double s : scores) labels.push_back(s >= 0.5 ? 1 : 0);
  return labels;
}

inline std::vector<double> feature_importance(const TrainedModel& model) {
  const auto* forest = std::get_if<ForestModel>(&model.payload);
  if (!forest) {
    throw ModelError("feature_importance requires a random_forest model");
  }
  return forest_importance(*forest, model.feature_names.size());
}

// ---- serialization ---------------------------------------------------------
// A single self-describing JSON document. Numbers survive a round-trip
// bit-exactly, so dump(parse(dump(m))) == dump(m).

inline nlohmann::json model_to_json(const TrainedModel& model) {
  nlohmann::json payload;
  if (const auto* forest = std::get_if<ForestModel>(&model.payload)) {
    nlohmann::json trees = nlohmann::json::array();
    for (const Tree& t : forest->trees) {
      nlohmann::json nodes = nlohmann::json::array();
      for (const TreeNode& nd : t.nodes) {
        nodes.push_back({nd.feature, nd.threshold, nd.left, nd.right,
                         nd.counts[0], nd.counts[1]});
      }
      trees.push_back({{"nodes", std::move(nodes)}});
    }
    payload = {{"trees", std::move(trees)}};
  } else if (const auto* knn = std::get_if<KnnModel>(&model.payload)) {
    payload = {{"k", knn->k},
               {"means", knn->standardizer.means},
               {"stddevs", knn->standardizer.stddevs},
               {"rows", knn->rows},
               {"labels", knn->labels}};
  } else if (const auto* gnb = std::get_if<GnbModel>(&model.payload)) {
    payload = {{"log_priors", gnb->log_priors},
               {"means", gnb->means},
               {"variances", gnb->variances}};
  } else if (const auto* svm = std::get_if<SvmModel>(&model.payload)) {
    payload = {{"weights", svm->weights},
               {"bias", svm->bias},
               {"means", svm->standardizer.means},
               {"stddevs", svm->standardizer.stddevs}};
  }
  return {{"format", "botlex-model"},
          {"version", kVersion},
          {"kind", to_string(model.kind)},
          {"feature_names", model.feature_names},
          {"seed", model.seed},
          {"params", train_params_to_json(model.params)},
          {"payload", std::move(payload)}};
}

namespace detail {

// Structural sanity for deserialized payloads, so a hand-edited model file
// fails with ModelError instead of undefined behaviour at prediction time.
inline void validate_payload(const TrainedModel& model) {
  const std::size_t d = model.feature_names.size();
  if (d == 0) throw ModelError("model has an empty feature manifest");
  if (const auto* forest = std::get_if<ForestModel>(&model.payload)) {
    if (forest->trees.empty()) throw ModelError("forest has no trees");
    for (const Tree& t : forest->trees) {
      if (t.nodes.empty()) throw ModelError("forest tree has no nodes");
      const int n = static_cast<int>(t.nodes.size());
      for (const TreeNode& nd : t.nodes) {
        if (nd.feature >= 0) {
          if (nd.feature >= static_cast<int>(d) || nd.left < 0 || nd.left >= n
              || nd.right < 0 || nd.right >= n) {
            throw ModelError("forest tree node out of range");
          }
        }
        if (nd.counts[0] < 0 || nd.counts[1] < 0) {
          throw ModelError("forest tree node has negative counts");
        }
      }
    }
  } else if (const auto* knn = std::get_if<KnnModel>(&model.payload)) {
    if (knn->k < 1) throw ModelError("knn k must be positive");
    if (knn->rows.empty() || knn->rows.size() != knn->labels.size()) {
      throw ModelError("knn training rows and labels are inconsistent");
    }
    for (const auto& row : knn->rows) {
      if (row.size() != d) throw ModelError("knn row width does not match manifest");
    }
    if (knn->standardizer.means.size() != d || knn->standardizer.stddevs.size() != d) {
      throw ModelError("knn standardizer size does not match manifest");
    }
  } else if (const auto* gnb = std::get_if<GnbModel>(&model.payload)) {
    if (gnb->means.size() != 2 || gnb->variances.size() != 2) {
      throw ModelError("gaussian_nb payload needs two classes");
    }
    for (int c = 0; c < 2; ++c) {
      if (gnb->means[c].size() != d || gnb->variances[c].size() != d) {
        throw ModelError("gaussian_nb parameter width does not match manifest");
      }
      for (double v : gnb->variances[c]) {
        if (!(v > 0.0)) throw ModelError("gaussian_nb variances must be positive");
      }
    }
  } else if (const auto* svm = std::get_if<SvmModel>(&model.payload)) {
    if (svm->weights.size() != d || svm->standardizer.means.size() != d
        || svm->standardizer.stddevs.size() != d) {
      throw ModelError("svm parameter width does not match manifest");
    }
  }
}

}  // namespace detail

inline TrainedModel model_from_json(const nlohmann::json& j) {
  try {
    TrainedModel model;
    model.kind = classifier_kind_from_string(j.at("kind").get<std::string>());
    model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    model.seed = j.at("seed").get<std::uint64_t>();
    model.params = train_params_from_json(j.at("params"));
    const nlohmann::json& p = j.at("payload");
    switch (model.kind) {
      case ClassifierKind::RandomForest: {
        ForestModel forest;
        for (const auto& jt : p.at("trees")) {
          Tree tree;
          for (const auto& jn : jt.at("nodes")) {
            TreeNode nd;
            nd.feature = jn.at(0).get<int>();
            nd.threshold = jn.at(1).get<double>();
            nd.left = jn.at(2).get<int>();
            nd.right = jn.at(3).get<int>();
            nd.counts = {jn.at(4).get<std::int64_t>(), jn.at(5).get<std::int64_t>()};
            tree.nodes.push_back(nd);
          }
          forest.trees.push_back(std::move(tree));
        }
        model.payload = std::move(forest);
        break;
      }
      case ClassifierKind::Knn: {
        KnnModel knn;
        knn.k = p.at("k").get<int>();
        knn.standardizer.means = p.at("means").get<std::vector<double>>();
        knn.standardizer.stddevs = p.at("stddevs").get<std::vector<double>>();
        knn.rows = p.at("rows").get<std::vector<std::vector<double>>>();
        knn.labels = p.at("labels").get<std::vector<int>>();
        model.payload = std::move(knn);
        break;
      }
      case ClassifierKind::GaussianNb: {
        GnbModel gnb;
        gnb.log_priors = p.at("log_priors").get<std::array<double, 2>>();
        gnb.means = p.at("means").get<std::vector<std::vector<double>>>();
        gnb.variances = p.at("variances").get<std::vector<std::vector<double>>>();
        model.payload = std::move(gnb);
        break;
      }
      case ClassifierKind::LinearSvm: {
        SvmModel svm;
        svm.weights = p.at("weights").get<std::vector<double>>();
        svm.bias = p.at("bias").get<double>();
        svm.standardizer.means = p.at("means").get<std::vector<double>>();
        svm.standardizer.stddevs = p.at("stddevs").get<std::vector<double>>();
        model.payload = std::move(svm);
        break;
      }
    }
    detail::validate_payload(model);
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed model document: ") + e.what());
  }
}

}  // namespace botlex
