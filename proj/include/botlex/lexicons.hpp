#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "botlex/error.hpp"
#include "botlex/sha256.hpp"
#include "botlex/unicode.hpp"

namespace botlex {

struct LexiconLoadOptions {
  // Verify each file against the manifest.sha256 sitting next to it.
  bool verify_checksums = true;
  // Unicode emoji entries are tagged in the snapshot; drop them here to
  // restrict emoticon matching to the ASCII-art entries.
  bool include_emoji = true;
};

// Immutable after loading; safe to share across threads.
class Lexicons {
 public:
  static Lexicons load(const std::filesystem::path& stopword_path,
                       const std::filesystem::path& contraction_path,
                       const std::filesystem::path& emoticon_path,
                       const LexiconLoadOptions& opts = {});
  static Lexicons load_dir(const std::filesystem::path& dir,
                           const LexiconLoadOptions& opts = {});

  bool is_stopword(std::string_view folded) const {
    return stopwords_.count(std::string(folded)) > 0;
  }
  bool is_contraction(std::string_view folded) const {
    return contractions_.count(std::string(folded)) > 0;
  }

  // Longest emoticon entry starting at byte offset pos; 0 when none matches.
  std::size_t match_emoticon(std::string_view text, std::size_t pos) const {
    const auto it = emoticons_by_first_.find(text[pos]);
    if (it == emoticons_by_first_.end()) return 0;
    for (const std::string& e : it->second) {  // sorted longest first
      if (text.compare(pos, e.size(), e) == 0) return e.size();
    }
    return 0;
  }

  std::size_t stopword_count() const { return stopwords_.size(); }
  std::size_t contraction_count() const { return contractions_.size(); }
  std::size_t emoticon_count() const { return emoticon_list_.size(); }

  // File-order entry lists, for callers that need deterministic indexing
  // (the synthetic-corpus generator draws from these).
  const std::vector<std::string>& stopword_list() const { return stopword_list_; }
  const std::vector<std::string>& contraction_list() const { return contraction_list_; }
  const std::vector<std::string>& emoticon_list() const { return emoticon_list_; }
  bool is_emoji_entry(std::string_view e) const { return emoji_entries_.count(std::string(e)) > 0; }

  // filename -> sha256 of each loaded file, for report provenance.
  const std::map<std::string, std::string>& checksums() const { return checksums_; }

 private:
  static std::vector<std::pair<std::string, std::string>> read_entries(
      const std::filesystem::path& path);
  static std::string read_file(const std::filesystem::path& path);
  static void verify_against_manifest(const std::filesystem::path& path,
                                      const std::string& content);

  std::unordered_set<std::string> stopwords_;
  std::unordered_set<std::string> contractions_;
  std::vector<std::string> stopword_list_;
  std::vector<std::string> contraction_list_;
  std::vector<std::string> emoticon_list_;
  std::unordered_set<std::string> emoji_entries_;
  std::unordered_map<char, std::vector<std::string>> emoticons_by_first_;
  std::map<std::string, std::string> checksums_;
};

inline std::string Lexicons::read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError("cannot open lexicon file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Lines: "entry" or "entry<TAB>annotation"; '#' starts a comment line.
inline std::vector<std::pair<std::string, std::string>> Lexicons::read_entries(
    const std::filesystem::path& path) {
  std::istringstream ss(read_file(path));
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      out.emplace_back(line, "");
    } else {
      out.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
  }
  return out;
}

inline void Lexicons::verify_against_manifest(const std::filesystem::path& path,
                                              const std::string& content) {
  const std::filesystem::path manifest = path.parent_path() / "manifest.sha256";
  std::ifstream in(manifest);
  if (!in) {
    throw LexiconError("missing checksum manifest: " + manifest.string());
  }
  const std::string fname = path.filename().string();
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) continue;
    if (line.substr(0, tab) != fname) continue;
    std::string expected = line.substr(tab + 1);
    if (!expected.empty() && expected.back() == '\r') expected.pop_back();
    const std::string actual = Sha256::hex(content);
    if (actual != expected) {
      throw LexiconError("checksum mismatch for " + fname + ": expected "
                         + expected + ", got " + actual);
    }
    return;
  }
  throw LexiconError("no manifest entry for " + fname + " in " + manifest.string());
}

inline Lexicons Lexicons::load(const std::filesystem::path& stopword_path,
                               const std::filesystem::path& contraction_path,
                               const std::filesystem::path& emoticon_path,
                               const LexiconLoadOptions& opts) {
  Lexicons lex;
  const std::filesystem::path paths[3] = {stopword_path, contraction_path, emoticon_path};
  for (const auto& p : paths) {
    const std::string content = read_file(p);
    if (opts.verify_checksums) verify_against_manifest(p, content);
    lex.checksums_[p.filename().string()] = Sha256::hex(content);
  }

  for (const auto& [entry, tag] : read_entries(stopword_path)) {
    (void)tag;
    if (lex.stopwords_.insert(fold_key(entry)).second) {
      lex.stopword_list_.push_back(fold_key(entry));
    }
  }
  for (const auto& [entry, tag] : read_entries(contraction_path)) {
    (void)tag;
    if (lex.contractions_.insert(fold_key(entry)).second) {
      lex.contraction_list_.push_back(fold_key(entry));
    }
  }
  for (const auto& [entry, tag] : read_entries(emoticon_path)) {
    if (tag == "emoji") lex.emoji_entries_.insert(entry);
    if (!opts.include_emoji && tag == "emoji") continue;
    if (std::find(lex.emoticon_list_.begin(), lex.emoticon_list_.end(), entry)
        == lex.emoticon_list_.end()) {
      lex.emoticon_list_.push_back(entry);
    }
  }

  if (lex.stopwords_.empty()) throw LexiconError("empty lexicon: " + stopword_path.string());
  if (lex.contractions_.empty()) throw LexiconError("empty lexicon: " + contraction_path.string());
  if (lex.emoticon_list_.empty()) throw LexiconError("empty lexicon: " + emoticon_path.string());

  for (const std::string& e : lex.emoticon_list_) {
    lex.emoticons_by_first_[e[0]].push_back(e);
  }
  for (auto& [first, entries] : lex.emoticons_by_first_) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
  }
  return lex;
}

inline Lexicons Lexicons::load_dir(const std::filesystem::path& dir,
                                   const LexiconLoadOptions& opts) {
  return load(dir / "stopwords.txt", dir / "contractions.txt", dir / "emoticons.txt", opts);
}

inline Lexicons load_lexicons(const std::filesystem::path& stopword_path,
                              const std::filesystem::path& contraction_path,
                              const std::filesystem::path& emoticon_path,
                              const LexiconLoadOptions& opts = {}) {
  return Lexicons::load(stopword_path, contraction_path, emoticon_path, opts);
}

}  // namespace botlex
