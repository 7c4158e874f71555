#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "botlex/lexicons.hpp"
#include "botlex/token.hpp"
#include "botlex/unicode.hpp"

namespace botlex {

namespace detail {

struct Match {
  TokenKind kind;
  std::size_t len;
};

inline bool starts_with_url(std::string_view text, std::size_t i) {
  return text.compare(i, 7, "http://") == 0 || text.compare(i, 8, "https://") == 0;
}

// Tries every rule except PUNCT at byte offset i, in precedence order:
// URL > MENTION > HASHTAG > EMOTICON > CONTRACTION > NUMBER > WORD.
inline std::optional<Match> match_at(std::string_view text, std::size_t i,
                                     const Lexicons& lex) {
  const std::size_t n = text.size();

  if (starts_with_url(text, i)) {
    std::size_t j = i;
    while (j < n) {
      const Utf8Char u = utf8_decode(text, j);
      if (is_unicode_space(u.cp)) break;
      j += u.len;
    }
    return Match{TokenKind::Url, j - i};
  }

  if (text[i] == '@') {
    std::size_t j = i + 1, count = 0;
    while (j < n && count < 15 && is_handle_char(static_cast<unsigned char>(text[j]))) {
      ++j;
      ++count;
    }
    if (count >= 1) return Match{TokenKind::Mention, j - i};
  }

  if (text[i] == '#') {
    std::size_t j = i + 1;
    while (j < n && is_handle_char(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i + 1) return Match{TokenKind::Hashtag, j - i};
  }

  if (const std::size_t len = lex.match_emoticon(text, i); len > 0) {
    return Match{TokenKind::Emoticon, len};
  }

  const Utf8Char first = utf8_decode(text, i);
  if (is_letter(first.cp) || is_apostrophe(first.cp)) {
    // Maximal letter/apostrophe run is the contraction candidate.
    std::size_t j = i;
    bool has_apostrophe = false;
    while (j < n) {
      const Utf8Char u = utf8_decode(text, j);
      if (is_letter(u.cp)) {
        j += u.len;
      } else if (is_apostrophe(u.cp)) {
        has_apostrophe = true;
        j += u.len;
      } else {
        break;
      }
    }
    if (has_apostrophe && lex.is_contraction(fold_key(text.substr(i, j - i)))) {
      return Match{TokenKind::Contraction, j - i};
    }
    if (is_letter(first.cp)) {
      j = i;
      while (j < n) {
        const Utf8Char u = utf8_decode(text, j);
        if (!is_letter(u.cp)) break;
        j += u.len;
      }
      return Match{TokenKind::Word, j - i};
    }
    return std::nullopt;  // bare apostrophe: punct territory
  }

  if (is_ascii_digit(first.cp)) {
    // [0-9]+([.,][0-9]+)*
    std::size_t j = i + 1;
    while (j < n && is_ascii_digit(static_cast<unsigned char>(text[j]))) ++j;
    while (j + 1 < n && (text[j] == '.' || text[j] == ',')
           && is_ascii_digit(static_cast<unsigned char>(text[j + 1]))) {
      ++j;
      while (j < n && is_ascii_digit(static_cast<unsigned char>(text[j]))) ++j;
    }
    return Match{TokenKind::Number, j - i};
  }

  return std::nullopt;
}

}  // namespace detail

// Deterministic tweet lexer. Total: every non-whitespace byte lands in
// exactly one token; concatenating spans reproduces the input.
inline std::vector<Token> tokenize(std::string_view text, const Lexicons& lex) {
  std::vector<Token> tokens;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const Utf8Char u = utf8_decode(text, i);
    if (is_unicode_space(u.cp)) {
      i += u.len;
      continue;
    }
    if (const auto m = detail::match_at(text, i, lex)) {
      tokens.push_back({std::string(text.substr(i, m->len)), m->kind, i, i + m->len});
      i += m->len;
      continue;
    }
    // Punct run: symbols up to whitespace or the start of any other token.
    const std::size_t start = i;
    i += u.len;
    while (i < n) {
      const Utf8Char v = utf8_decode(text, i);
      if (is_unicode_space(v.cp) || detail::match_at(text, i, lex)) break;
      i += v.len;
    }
    tokens.push_back({std::string(text.substr(start, i - start)), TokenKind::Punct, start, i});
  }
  return tokens;
}

}  // namespace botlex
