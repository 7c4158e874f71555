#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "botlex/error.hpp"

namespace botlex {

enum class TokenKind { Word, Url, Mention, Hashtag, Emoticon, Contraction, Number, Punct };

inline const char* to_string(TokenKind k) {
  switch (k) {
    case TokenKind::Word: return "word";
    case TokenKind::Url: return "url";
    case TokenKind::Mention: return "mention";
    case TokenKind::Hashtag: return "hashtag";
    case TokenKind::Emoticon: return "emoticon";
    case TokenKind::Contraction: return "contraction";
    case TokenKind::Number: return "number";
    case TokenKind::Punct: return "punct";
  }
  return "?";
}

inline TokenKind token_kind_from_string(std::string_view s) {
  if (s == "word") return TokenKind::Word;
  if (s == "url") return TokenKind::Url;
  if (s == "mention") return TokenKind::Mention;
  if (s == "hashtag") return TokenKind::Hashtag;
  if (s == "emoticon") return TokenKind::Emoticon;
  if (s == "contraction") return TokenKind::Contraction;
  if (s == "number") return TokenKind::Number;
  if (s == "punct") return TokenKind::Punct;
  throw Error("unknown token kind: " + std::string(s));
}

// One lexed unit of tweet text. `text` is the verbatim input slice at
// byte span [begin, end).
struct Token {
  std::string text;
  TokenKind kind;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const Token&) const = default;
};

}  // namespace botlex
