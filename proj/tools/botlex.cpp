// botlex: lexical bot-detection toolkit.
//
// Workflow: synth/ingest -> tokenize -> features -> annotate -> train ->
// predict -> evaluate -> importance -> plot-data. Given the same arguments
// and input files, every subcommand writes byte-identical output.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "botlex/botlex.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct RunConfig {
  std::string subcommand;
  std::string input, output, report, model, csv_summary, out;
  std::string text;
  std::string feature_set = "L";
  std::string classifier = "random_forest";
  int folds = 10;
  std::uint64_t seed = 42;
  bool lenient = false;
  std::string lexicon_dir;  // effective directory after resolution
  std::string now;          // optional ISO-8601 reference time
  int jobs = 1;
  int trees = 100;
  int knn_k = 5;
  int svm_epochs = 200;
  double svm_lambda = 1e-4;
  bool rate_columns = false;
  int accounts = -1;  // synth overrides, -1 keeps the default
  int tweets = -1;
  std::string params_file;
};

json config_json(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  if (!c.input.empty()) j["input"] = c.input;
  if (!c.output.empty()) j["output"] = c.output;
  if (!c.report.empty()) j["report"] = c.report;
  if (!c.model.empty()) j["model"] = c.model;
  if (!c.csv_summary.empty()) j["csv"] = c.csv_summary;
  if (!c.out.empty()) j["out"] = c.out;
  if (!c.text.empty()) j["text"] = c.text;
  j["feature_set"] = c.feature_set;
  j["classifier"] = c.classifier;
  j["folds"] = c.folds;
  j["seed"] = c.seed;
  j["strict"] = !c.lenient;
  j["lexicon_dir"] = c.lexicon_dir;
  if (!c.now.empty()) j["now"] = c.now;
  // --jobs is an execution detail, not configuration: output is required
  // to be identical for any job count, so it must not appear here.
  if (c.subcommand == "train" || c.subcommand == "evaluate") {
    j["trees"] = c.trees;
    j["knn_k"] = c.knn_k;
    j["svm_epochs"] = c.svm_epochs;
    j["svm_lambda"] = c.svm_lambda;
  }
  if (c.subcommand == "synth") {
    if (c.accounts >= 0) j["accounts"] = c.accounts;
    if (c.tweets >= 0) j["tweets"] = c.tweets;
    if (!c.params_file.empty()) j["params"] = c.params_file;
  }
  if (c.rate_columns) j["rate_columns"] = true;
  return j;
}

std::string resolve_lexicon_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("BOTLEX_LEXICON_DIR"); env && *env) return env;
#ifdef BOTLEX_DEFAULT_LEXICON_DIR
  return BOTLEX_DEFAULT_LEXICON_DIR;
#else
  return "data/lexicons";
#endif
}

json lexicons_json(const botlex::Lexicons& lex) {
  json j;
  for (const auto& [file, sha] : lex.checksums()) j[file] = sha;
  return j;
}

std::vector<std::string> meta_comment_lines(const RunConfig& c, const botlex::Lexicons& lex) {
  return {std::string("botlex ") + botlex::kVersion,
          "config: " + config_json(c).dump(),
          "lexicons: " + lexicons_json(lex).dump()};
}

json meta_json(const RunConfig& c, const botlex::Lexicons& lex) {
  return {{"botlex_version", botlex::kVersion},
          {"config", config_json(c)},
          {"lexicons", lexicons_json(lex)}};
}

// A corpus-style CSV has a literal "text" column; feature CSVs never do.
bool looks_like_tweet_csv(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (cell == "text" || cell == "\"text\"") return true;
    }
    return false;
  }
  return false;
}

// Corpus inputs: .jsonl, or the per-tweet CSV shim (any CSV with a text column).
std::vector<botlex::AccountRecord> load_any_corpus(const RunConfig& c) {
  const fs::path path = c.input;
  if (path.extension() == ".csv") {
    if (!looks_like_tweet_csv(path)) {
      throw botlex::DataError(c.input + " looks like a feature CSV, not a corpus; "
                              "this subcommand needs tweets");
    }
    return botlex::load_tweet_csv(path);
  }
  botlex::CorpusLoadReport report;
  auto accounts = botlex::load_corpus(path, !c.lenient, &report);
  for (const auto& [line, reason] : report.skipped) {
    std::cerr << "warning: " << c.input << ":" << line << " skipped: " << reason << "\n";
  }
  return accounts;
}

std::optional<std::int64_t> parse_now(const RunConfig& c) {
  if (c.now.empty()) return std::nullopt;
  return botlex::parse_iso8601(c.now);
}

// Feature matrix for the requested set, from either a corpus or a feature CSV.
botlex::FeatureMatrix matrix_for(const RunConfig& c, const botlex::Lexicons& lex,
                                 const std::vector<std::string>& columns) {
  const fs::path path = c.input;
  const bool needs_profile = [&] {
    const auto& prof = botlex::profile_feature_columns();
    for (const auto& col : columns) {
      for (const auto& p : prof) {
        if (col == p) return true;
      }
    }
    return false;
  }();
  if (path.extension() == ".csv" && !looks_like_tweet_csv(path)) {
    return botlex::select_features(botlex::read_feature_csv(path), columns);
  }
  const auto accounts = load_any_corpus(c);
  botlex::ExtractOptions opts;
  opts.with_profile = needs_profile;
  opts.now = parse_now(c);
  opts.jobs = c.jobs;
  opts.strict = !c.lenient;
  botlex::ExtractReport report;
  const auto rows = botlex::extract_features(accounts, lex, opts, &report);
  for (const auto& id : report.skipped_accounts) {
    std::cerr << "warning: account " << id << " skipped (no tokens)\n";
  }
  const auto full = botlex::feature_matrix_from_rows(
      rows, needs_profile ? botlex::FeatureSet::FL : botlex::FeatureSet::L);
  return botlex::select_features(full, columns);
}

botlex::TrainParams train_params_for(const RunConfig& c) {
  botlex::TrainParams p;
  p.forest_trees = c.trees;
  p.knn_k = c.knn_k;
  p.svm_epochs = c.svm_epochs;
  p.svm_lambda = c.svm_lambda;
  return p;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw botlex::DataError("cannot write: " + path.string());
  out << content;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw botlex::DataError("cannot write: " + path);
  return file;
}

// ---- subcommands ------------------------------------------------------------

int cmd_tokenize(const RunConfig& c, const botlex::Lexicons& lex) {
  std::vector<std::string> tweets;
  if (!c.text.empty()) {
    tweets.push_back(c.text);
  } else if (!c.input.empty()) {
    std::ifstream in(c.input, std::ios::binary);
    if (!in) throw botlex::DataError("cannot open: " + c.input);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      tweets.push_back(line);
    }
  } else {
    throw botlex::DataError("tokenize needs --text or --input");
  }
  std::ofstream file;
  std::ostream& out = open_output(file, c.output);
  out << json{{"_meta", meta_json(c, lex)}}.dump() << '\n';
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    json toks = json::array();
    for (const botlex::Token& t : botlex::tokenize(tweets[i], lex)) {
      toks.push_back({{"text", t.text},
                      {"kind", botlex::to_string(t.kind)},
                      {"begin", t.begin},
                      {"end", t.end}});
    }
    out << json{{"tweet_index", i}, {"tokens", std::move(toks)}}.dump() << '\n';
  }
  return kExitOk;
}

int cmd_features(const RunConfig& c, const botlex::Lexicons& lex) {
  const auto set = botlex::feature_set_from_string(c.feature_set);
  const auto accounts = load_any_corpus(c);
  botlex::ExtractOptions opts;
  opts.with_profile = set != botlex::FeatureSet::L;
  opts.now = parse_now(c);
  opts.jobs = c.jobs;
  opts.strict = !c.lenient;
  botlex::ExtractReport report;
  const auto rows = botlex::extract_features(accounts, lex, opts, &report);
  for (const auto& id : report.skipped_accounts) {
    std::cerr << "warning: account " << id << " skipped (no tokens)\n";
  }
  const auto meta = meta_comment_lines(c, lex);
  botlex::write_feature_csv(rows, c.output, opts.with_profile, meta, c.rate_columns);
  return kExitOk;
}

int cmd_annotate(const RunConfig& c, const botlex::Lexicons& lex) {
  const auto accounts = load_any_corpus(c);
  std::ofstream file;
  std::ostream& out = open_output(file, c.output);
  out << json{{"_meta", meta_json(c, lex)}}.dump() << '\n';
  for (const auto& account : accounts) {
    try {
      const botlex::AnnotationReport r = botlex::annotate(account, lex);
      out << json{{"account_id", r.account_id},
                  {"autogen_name", r.autogen_name},
                  {"url_hashtag_fraction", r.url_hashtag_fraction},
                  {"url_hashtag_flag", r.url_hashtag_flag},
                  {"max_rate_per_minute", r.max_rate_per_minute},
                  {"rate_flag", r.rate_flag},
                  {"flags_fired", r.flags_fired}}.dump() << '\n';
    } catch (const botlex::Error& e) {
      if (!c.lenient) throw;
      std::cerr << "warning: account " << account.account_id << " skipped: "
                << e.what() << "\n";
    }
  }
  return kExitOk;
}

int cmd_train(const RunConfig& c, const botlex::Lexicons& lex) {
  const auto set = botlex::feature_set_from_string(c.feature_set);
  const auto kind = botlex::classifier_kind_from_string(c.classifier);
  const auto matrix = matrix_for(c, lex, botlex::feature_set_columns(set));
  if (!matrix.labeled()) throw botlex::DataError("training corpus has no labels");
  const auto model = botlex::train(kind, matrix, train_params_for(c), c.seed, c.jobs);
  json doc = botlex::model_to_json(model);
  doc["meta"] = meta_json(c, lex);
  doc["feature_set"] = c.feature_set;
  write_text_file(c.model, doc.dump(2) + "\n");
  return kExitOk;
}

int cmd_predict(const RunConfig& c, const botlex::Lexicons& lex) {
  std::ifstream in(c.model, std::ios::binary);
  if (!in) throw botlex::DataError("cannot open model: " + c.model);
  const json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw botlex::DataError("model file is not JSON: " + c.model);
  const botlex::TrainedModel model = botlex::model_from_json(doc);
  const auto matrix = matrix_for(c, lex, model.feature_names);
  const auto scores = botlex::predict_proba(model, matrix);

  std::ofstream file;
  std::ostream& out = open_output(file, c.output);
  for (const auto& line : meta_comment_lines(c, lex)) out << "# " << line << '\n';
  out << "account_id,score,label\n";
  char buf[128];
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const char* id = i < matrix.account_ids.size() ? matrix.account_ids[i].c_str() : "";
    std::snprintf(buf, sizeof(buf), "%s,%.6f,%s\n", id, scores[i],
                  scores[i] >= 0.5 ? "bot" : "human");
    out << buf;
  }
  return kExitOk;
}

int cmd_evaluate(const RunConfig& c, const botlex::Lexicons& lex) {
  const auto set = botlex::feature_set_from_string(c.feature_set);
  const auto kind = botlex::classifier_kind_from_string(c.classifier);
  const auto matrix = matrix_for(c, lex, botlex::feature_set_columns(set));
  if (!matrix.labeled()) throw botlex::DataError("evaluation corpus has no labels");
  const std::string tag = fs::path(c.input).stem().string() + "_" + c.feature_set;
  const botlex::EvalReport report = botlex::cross_validate(
      matrix, kind, train_params_for(c), c.folds, c.seed, tag, c.feature_set, c.jobs);

  json doc = botlex::eval_report_to_json(report);
  doc["meta"] = meta_json(c, lex);
  write_text_file(c.report, doc.dump(2) + "\n");

  if (!c.csv_summary.empty()) {
    std::string csv;
    for (const auto& line : meta_comment_lines(c, lex)) csv += "# " + line + "\n";
    csv += botlex::eval_csv_header() + std::string("\n");
    csv += botlex::eval_csv_row(report) + std::string("\n");
    write_text_file(c.csv_summary, csv);
  }
  std::fprintf(stdout, "%s %s %s: accuracy=%.4f precision=%.4f recall=%.4f auc=%.4f\n",
               tag.c_str(), botlex::to_string(kind), c.feature_set.c_str(),
               report.accuracy, report.precision, report.recall, report.auc);
  return kExitOk;
}

int cmd_importance(const RunConfig& c, const botlex::Lexicons& lex) {
  std::ifstream in(c.model, std::ios::binary);
  if (!in) throw botlex::DataError("cannot open model: " + c.model);
  const json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw botlex::DataError("model file is not JSON: " + c.model);
  const botlex::TrainedModel model = botlex::model_from_json(doc);
  const auto importance = botlex::feature_importance(model);

  std::vector<std::size_t> order(importance.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (importance[a] != importance[b]) return importance[a] > importance[b];
    return model.feature_names[a] < model.feature_names[b];
  });

  std::ofstream file;
  std::ostream& out = open_output(file, c.output);
  for (const auto& line : meta_comment_lines(c, lex)) out << "# " << line << '\n';
  out << "feature,importance\n";
  char buf[160];
  for (std::size_t i : order) {
    std::snprintf(buf, sizeof(buf), "%s,%.6f\n", model.feature_names[i].c_str(),
                  importance[i]);
    out << buf;
  }
  return kExitOk;
}

int cmd_synth(const RunConfig& c, const botlex::Lexicons& lex) {
  botlex::SynthParams params = botlex::SynthParams::defaults();
  if (!c.params_file.empty()) {
    std::ifstream in(c.params_file, std::ios::binary);
    if (!in) throw botlex::DataError("cannot open params file: " + c.params_file);
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw botlex::DataError("params file is not JSON: " + c.params_file);
    params = botlex::synth_params_from_json(j);
  }
  params.seed = c.seed;
  if (c.accounts >= 0) params.n_accounts_per_class = c.accounts;
  if (c.tweets > 0) params.tweets_per_account = c.tweets;
  const auto corpus = botlex::generate_synthetic_corpus(params, lex);
  botlex::write_corpus(corpus, c.output);
  std::fprintf(stdout, "wrote %zu accounts to %s\n", corpus.size(), c.output.c_str());
  return kExitOk;
}

int cmd_plot_data(const RunConfig& c, const botlex::Lexicons& lex) {
  const botlex::FeatureMatrix m = botlex::read_feature_csv(c.input);
  if (!m.labeled()) throw botlex::DataError("plot-data requires a labeled feature CSV");
  double count[2] = {0, 0};
  std::vector<double> sums[2];
  sums[0].assign(m.d(), 0.0);
  sums[1].assign(m.d(), 0.0);
  for (std::size_t i = 0; i < m.n(); ++i) {
    const int c2 = m.labels[i];
    count[c2] += 1;
    for (std::size_t j = 0; j < m.d(); ++j) sums[c2][j] += m.rows[i][j];
  }
  std::ofstream file;
  std::ostream& out = open_output(file, c.out);
  for (const auto& line : meta_comment_lines(c, lex)) out << "# " << line << '\n';
  out << "label,n_accounts";
  for (const auto& name : m.feature_names) out << ',' << name;
  out << '\n';
  char buf[64];
  for (int c2 : {0, 1}) {
    if (count[c2] == 0) continue;
    out << (c2 ? "bot" : "human") << ',' << static_cast<long long>(count[c2]);
    for (std::size_t j = 0; j < m.d(); ++j) {
      std::snprintf(buf, sizeof(buf), ",%.6f", sums[c2][j] / count[c2]);
      out << buf;
    }
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"botlex: lexical analysis toolkit for social bot detection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("botlex ") + botlex::kVersion);

  RunConfig c;
  std::string lexicon_dir_flag;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lexicon-dir", lexicon_dir_flag,
                    "Lexicon directory (overrides BOTLEX_LEXICON_DIR)");
    sub->add_option("--seed", c.seed, "Master random seed")->capture_default_str();
    sub->add_flag("--lenient", c.lenient, "Skip malformed records instead of aborting");
    sub->add_option("--jobs", c.jobs, "Worker threads; output is identical to --jobs 1")
        ->capture_default_str();
  };

  CLI::App* tok = app.add_subcommand("tokenize", "Lex tweets into classified tokens");
  tok->add_option("--text", c.text, "Tokenize one tweet given inline");
  tok->add_option("--input", c.input, "File with one tweet per line");
  tok->add_option("--output", c.output, "Output JSONL (default stdout)");
  add_common(tok);

  CLI::App* feat = app.add_subcommand("features", "Extract per-account feature CSV");
  feat->add_option("--input", c.input, "Corpus (.jsonl, or per-tweet .csv)")->required();
  feat->add_option("--output", c.output, "Feature CSV path")->required();
  feat->add_option("--feature-set", c.feature_set, "F, L or FL")->capture_default_str();
  feat->add_flag("--rate-columns", c.rate_columns,
                 "Also emit per-token contraction/emoticon rate columns");
  feat->add_option("--now", c.now, "Reference time (ISO-8601) for age features");
  add_common(feat);

  CLI::App* ann = app.add_subcommand("annotate", "Screening flags for candidate bots");
  ann->add_option("--input", c.input, "Corpus (.jsonl, or per-tweet .csv)")->required();
  ann->add_option("--output", c.output, "Report JSONL (default stdout)");
  add_common(ann);

  CLI::App* tr = app.add_subcommand("train", "Train a classifier and save the model");
  tr->add_option("--input", c.input, "Corpus or feature CSV")->required();
  tr->add_option("--model", c.model, "Model JSON output path")->required();
  tr->add_option("--feature-set", c.feature_set, "F, L or FL")->capture_default_str();
  tr->add_option("--classifier", c.classifier,
                 "random_forest, knn, gaussian_nb or svc-linear")->capture_default_str();
  tr->add_option("--trees", c.trees, "Forest size")->capture_default_str();
  tr->add_option("--knn-k", c.knn_k, "Neighbour count for knn")->capture_default_str();
  tr->add_option("--svm-epochs", c.svm_epochs, "SGD epochs for svc-linear")->capture_default_str();
  tr->add_option("--svm-lambda", c.svm_lambda, "Regularization for svc-linear")->capture_default_str();
  tr->add_option("--now", c.now, "Reference time (ISO-8601) for age features");
  add_common(tr);

  CLI::App* pr = app.add_subcommand("predict", "Score accounts with a trained model");
  pr->add_option("--input", c.input, "Corpus or feature CSV")->required();
  pr->add_option("--model", c.model, "Trained model JSON")->required();
  pr->add_option("--output", c.output, "Predictions CSV (default stdout)");
  pr->add_option("--now", c.now, "Reference time (ISO-8601) for age features");
  add_common(pr);

  CLI::App* ev = app.add_subcommand("evaluate", "Stratified k-fold cross-validation");
  ev->add_option("--input", c.input, "Corpus or feature CSV")->required();
  ev->add_option("--report", c.report, "Evaluation report JSON path")->required();
  ev->add_option("--csv", c.csv_summary, "Optional one-line CSV summary path");
  ev->add_option("--feature-set", c.feature_set, "F, L or FL")->capture_default_str();
  ev->add_option("--classifier", c.classifier,
                 "random_forest, knn, gaussian_nb or svc-linear")->capture_default_str();
  ev->add_option("--folds", c.folds, "Fold count")->capture_default_str();
  ev->add_option("--trees", c.trees, "Forest size")->capture_default_str();
  ev->add_option("--knn-k", c.knn_k, "Neighbour count for knn")->capture_default_str();
  ev->add_option("--svm-epochs", c.svm_epochs, "SGD epochs for svc-linear")->capture_default_str();
  ev->add_option("--svm-lambda", c.svm_lambda, "Regularization for svc-linear")->capture_default_str();
  ev->add_option("--now", c.now, "Reference time (ISO-8601) for age features");
  add_common(ev);

  CLI::App* imp = app.add_subcommand("importance", "Forest feature importance ranking");
  imp->add_option("--model", c.model, "Trained random_forest model JSON")->required();
  imp->add_option("--output", c.output, "Importance CSV (default stdout)");
  add_common(imp);

  CLI::App* sy = app.add_subcommand("synth", "Generate a seeded synthetic corpus");
  sy->add_option("--output", c.output, "Corpus JSONL output path")->required();
  sy->add_option("--accounts", c.accounts, "Accounts per class");
  sy->add_option("--tweets", c.tweets, "Tweets per account");
  sy->add_option("--params", c.params_file, "SynthParams JSON overriding the defaults");
  add_common(sy);

  CLI::App* pd = app.add_subcommand("plot-data", "Per-label feature means (figure data)");
  pd->add_option("--input", c.input, "Feature CSV")->required();
  pd->add_option("--out", c.out, "Averages CSV (default stdout)");
  add_common(pd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    std::cout << app.version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    c.lexicon_dir = resolve_lexicon_dir(lexicon_dir_flag);
    const botlex::Lexicons lex = botlex::Lexicons::load_dir(c.lexicon_dir);
    CLI::App* sub = app.get_subcommands().front();
    c.subcommand = sub->get_name();
    if (sub == tok) return cmd_tokenize(c, lex);
    if (sub == feat) return cmd_features(c, lex);
    if (sub == ann) return cmd_annotate(c, lex);
    if (sub == tr) return cmd_train(c, lex);
    if (sub == pr) return cmd_predict(c, lex);
    if (sub == ev) return cmd_evaluate(c, lex);
    if (sub == imp) return cmd_importance(c, lex);
    if (sub == sy) return cmd_synth(c, lex);
    if (sub == pd) return cmd_plot_data(c, lex);
    std::cerr << "error: unknown subcommand\n";
    return kExitUsage;
  } catch (const botlex::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
