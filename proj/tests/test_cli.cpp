#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path()
        / ("botlex_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(BOTLEX_CLI_PATH) + " " + args + " > "
      + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(out), slurp(err)};
}

const fs::path& small_corpus() {
  static const fs::path p = [] {
    const fs::path path = work_dir() / "corpus.jsonl";
    const RunResult r = run("synth --output " + path.string()
                            + " --accounts 15 --tweets 30 --seed 42");
    EXPECT_EQ(r.exit_code, 0) << r.err;
    return path;
  }();
  return p;
}

}  // namespace

TEST(Cli, UnknownFlagIsUsageError) {
  EXPECT_EQ(run("evaluate --no-such-flag").exit_code, 1);
  EXPECT_EQ(run("frobnicate").exit_code, 1);
}

TEST(Cli, MissingInputFileIsDataError) {
  EXPECT_EQ(run("features --input /no/such/file.jsonl --output "
                + (work_dir() / "x.csv").string()).exit_code, 2);
}

TEST(Cli, EvaluateHappyPathWritesReport) {
  const fs::path report = work_dir() / "report.json";
  const fs::path summary = work_dir() / "summary.csv";
  const RunResult r = run("evaluate --input " + small_corpus().string()
                          + " --feature-set L --classifier random_forest --folds 5"
                          + " --seed 42 --report " + report.string()
                          + " --csv " + summary.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const std::string csv = slurp(summary);
  EXPECT_NE(csv.find("dataset_tag,classifier,feature_set,accuracy,precision,"
                     "recall,auc,seed"), std::string::npos);
  EXPECT_NE(csv.find("corpus_L,random_forest,L,"), std::string::npos);
  const json doc = json::parse(slurp(report));
  EXPECT_EQ(doc.at("feature_set"), "L");
  EXPECT_EQ(doc.at("classifier"), "random_forest");
  EXPECT_EQ(doc.at("folds"), 5);
  EXPECT_TRUE(doc.contains("meta"));
  EXPECT_EQ(doc.at("meta").at("botlex_version"), "0.1.0");
  EXPECT_TRUE(doc.at("meta").at("config").contains("seed"));
  EXPECT_EQ(doc.at("meta").at("lexicons").size(), 3u);
  EXPECT_EQ(doc.at("per_fold").at("accuracy").size(), 5u);
  EXPECT_GE(doc.at("mean").at("auc").get<double>(), 0.9);  // defaults separate well
}

TEST(Cli, TrainWithProfileSetOnProfilelessCorpusFails) {
  const fs::path corpus = work_dir() / "noprofile.jsonl";
  std::ofstream out(corpus);
  for (int i = 0; i < 10; ++i) {
    out << R"x({"account_id":"a)x" << i << R"x(","label":")x"
        << (i % 2 ? "bot" : "human")
        << R"x(","tweets":[{"text":"hello there friend"},{"text":"nice day :-)"}]})x"
        << "\n";
  }
  out.close();
  const RunResult r = run("train --input " + corpus.string() + " --feature-set F"
                          + " --model " + (work_dir() / "m.json").string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("profile"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("age_days"), std::string::npos) << r.err;
}

TEST(Cli, TrainPredictCycle) {
  const fs::path model = work_dir() / "model.json";
  const RunResult tr = run("train --input " + small_corpus().string()
                           + " --feature-set L --classifier random_forest --seed 42"
                           + " --model " + model.string());
  ASSERT_EQ(tr.exit_code, 0) << tr.err;
  const json doc = json::parse(slurp(model));
  EXPECT_EQ(doc.at("kind"), "random_forest");
  EXPECT_EQ(doc.at("feature_names").size(), 4u);

  const fs::path pred = work_dir() / "pred.csv";
  const RunResult pr = run("predict --input " + small_corpus().string()
                           + " --model " + model.string()
                           + " --output " + pred.string());
  ASSERT_EQ(pr.exit_code, 0) << pr.err;
  const std::string text = slurp(pred);
  EXPECT_NE(text.find("account_id,score,label"), std::string::npos);
  EXPECT_NE(text.find("human_0000,"), std::string::npos);
  EXPECT_NE(text.find("bot"), std::string::npos);
}

TEST(Cli, FeaturesThenPlotDataMeansCheckOut) {
  const fs::path features = work_dir() / "features.csv";
  const RunResult fr = run("features --input " + small_corpus().string()
                           + " --output " + features.string());
  ASSERT_EQ(fr.exit_code, 0) << fr.err;

  const fs::path averages = work_dir() / "averages.csv";
  const RunResult pr = run("plot-data --input " + features.string()
                           + " --out " + averages.string());
  ASSERT_EQ(pr.exit_code, 0) << pr.err;

  // recompute one mean by hand from the features file
  std::ifstream in(features);
  std::string line;
  double human_sum = 0;
  int human_n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("account_id", 0) == 0) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells[1] == "human") {
      human_sum += std::strtod(cells[2].c_str(), nullptr);  // avg_ttr
      ++human_n;
    }
  }
  ASSERT_GT(human_n, 0);

  std::ifstream ain(averages);
  double reported = -1;
  while (std::getline(ain, line)) {
    if (line.rfind("human,", 0) == 0) {
      std::stringstream ss(line);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      EXPECT_EQ(std::stoi(cells[1]), human_n);
      reported = std::strtod(cells[2].c_str(), nullptr);  // first feature: avg_ttr
    }
  }
  EXPECT_NEAR(reported, human_sum / human_n, 1e-5);
}

TEST(Cli, EvaluateProfilePlusLexicalSets) {
  const fs::path report = work_dir() / "report_fl.json";
  const RunResult r = run("evaluate --input " + small_corpus().string()
                          + " --feature-set FL --classifier random_forest --folds 5"
                          + " --seed 42 --report " + report.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json doc = json::parse(slurp(report));
  EXPECT_EQ(doc.at("feature_set"), "FL");

  const fs::path features = work_dir() / "features_fl.csv";
  ASSERT_EQ(run("features --input " + small_corpus().string() + " --feature-set FL"
                + " --output " + features.string()).exit_code, 0);
  std::ifstream in(features);
  std::string line;
  do {
    std::getline(in, line);
  } while (!line.empty() && line[0] == '#');
  EXPECT_NE(line.find("urls_count"), std::string::npos) << line;  // profile columns present
}

TEST(Cli, AnnotateEmitsOneLinePerAccount) {
  const fs::path out = work_dir() / "annot.jsonl";
  const RunResult r = run("annotate --input " + small_corpus().string()
                          + " --output " + out.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  std::ifstream in(out);
  std::string line;
  int lines = 0, meta = 0;
  while (std::getline(in, line)) {
    const json j = json::parse(line);
    if (j.contains("_meta")) {
      ++meta;
      continue;
    }
    ++lines;
    for (const char* field : {"account_id", "autogen_name", "url_hashtag_fraction",
                              "url_hashtag_flag", "max_rate_per_minute", "rate_flag",
                              "flags_fired"}) {
      EXPECT_TRUE(j.contains(field)) << field;
    }
  }
  EXPECT_EQ(meta, 1);
  EXPECT_EQ(lines, 30);  // 15 accounts per class
}

TEST(Cli, TokenizeInlineText) {
  const RunResult r = run("tokenize --text \"don't stop #now\"");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  std::stringstream ss(r.out);
  std::string meta_line, tok_line;
  std::getline(ss, meta_line);
  std::getline(ss, tok_line);
  const json j = json::parse(tok_line);
  ASSERT_EQ(j.at("tokens").size(), 3u);
  EXPECT_EQ(j.at("tokens")[0].at("kind"), "contraction");
  EXPECT_EQ(j.at("tokens")[2].at("kind"), "hashtag");
}

TEST(Cli, ImportanceRejectsNonForestModel) {
  const fs::path model = work_dir() / "knn.json";
  const RunResult tr = run("train --input " + small_corpus().string()
                           + " --classifier knn --model " + model.string());
  ASSERT_EQ(tr.exit_code, 0) << tr.err;
  const RunResult r = run("importance --model " + model.string());
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, ImportanceRanksForestFeatures) {
  const fs::path model = work_dir() / "forest.json";
  ASSERT_EQ(run("train --input " + small_corpus().string()
                + " --classifier random_forest --seed 42 --model "
                + model.string()).exit_code, 0);
  const fs::path out = work_dir() / "imp.csv";
  const RunResult r = run("importance --model " + model.string()
                          + " --output " + out.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const std::string text = slurp(out);
  EXPECT_NE(text.find("feature,importance"), std::string::npos);
  EXPECT_NE(text.find("avg_emoticons"), std::string::npos);
}

TEST(Cli, BrokenLexiconDirIsDataError) {
  const fs::path dir = work_dir() / "empty_lexicons";
  fs::create_directories(dir);
  const RunResult r = run("tokenize --text hi --lexicon-dir " + dir.string());
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, LexiconDirEnvVarIsHonored) {
  const fs::path dir = work_dir() / "env_lexicons";
  fs::create_directories(dir);
  const fs::path out = work_dir() / "envout.txt";
  const std::string cmd = "BOTLEX_LEXICON_DIR=" + dir.string() + " "
      + BOTLEX_CLI_PATH + " tokenize --text hi > " + out.string() + " 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 2);  // dir is empty

  // flag wins over the environment
  const std::string cmd2 = "BOTLEX_LEXICON_DIR=" + dir.string() + " "
      + BOTLEX_CLI_PATH + " tokenize --text hi --lexicon-dir "
      + std::string(BOTLEX_LEXICON_DIR) + " > " + out.string() + " 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(cmd2.c_str())), 0);
}
