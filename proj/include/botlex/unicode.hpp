#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace botlex {

// Decoded codepoint plus the number of bytes it occupied.
struct Utf8Char {
  char32_t cp;
  std::size_t len;
};

// Decodes one UTF-8 codepoint at byte offset i. Invalid sequences decode as
// U+FFFD consuming a single byte, so scanning is total over any byte string.
inline Utf8Char utf8_decode(std::string_view s, std::size_t i) {
  const auto b = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  const unsigned char c = b(i);
  const std::size_t n = s.size();
  auto cont = [&](std::size_t k) { return k < n && (b(k) & 0xC0) == 0x80; };
  if (c < 0x80) return {c, 1};
  if (c >= 0xC2 && c <= 0xDF && cont(i + 1)) {
    return {static_cast<char32_t>(((c & 0x1Fu) << 6) | (b(i + 1) & 0x3Fu)), 2};
  }
  if (c >= 0xE0 && c <= 0xEF && cont(i + 1) && cont(i + 2)) {
    return {static_cast<char32_t>(((c & 0x0Fu) << 12) | ((b(i + 1) & 0x3Fu) << 6)
                                  | (b(i + 2) & 0x3Fu)), 3};
  }
  if (c >= 0xF0 && c <= 0xF4 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
    return {static_cast<char32_t>(((c & 0x07u) << 18) | ((b(i + 1) & 0x3Fu) << 12)
                                  | ((b(i + 2) & 0x3Fu) << 6) | (b(i + 3) & 0x3Fu)), 4};
  }
  return {0xFFFD, 1};
}

inline bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
    case 0x20: case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

// Word letters for tokenization. Table-driven so classification is identical
// on every platform; covers the scripts that matter for tweet text.
inline bool is_letter(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  if (cp < 0xC0) return false;
  if (cp <= 0x2AF) return cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x370 && cp <= 0x58F) return true;    // Greek, Cyrillic, Armenian
  if (cp >= 0x5D0 && cp <= 0x5EA) return true;    // Hebrew
  if (cp >= 0x600 && cp <= 0x6FF) return true;    // Arabic
  if (cp >= 0x900 && cp <= 0x97F) return true;    // Devanagari
  if (cp >= 0x3040 && cp <= 0x30FF) return true;  // Kana
  if (cp >= 0x4E00 && cp <= 0x9FFF) return true;  // CJK
  if (cp >= 0xAC00 && cp <= 0xD7A3) return true;  // Hangul
  return false;
}

inline bool is_ascii_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

// Mention/hashtag alphabet: [A-Za-z0-9_].
inline bool is_handle_char(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')
      || is_ascii_digit(cp) || cp == '_';
}

// U+0027 or U+2019; both count as the apostrophe in contraction forms.
inline bool is_apostrophe(char32_t cp) { return cp == 0x27 || cp == 0x2019; }

// Case-fold for lexicon membership and vocabulary-type identity:
// ASCII lowercase plus U+2019 normalized to the ASCII apostrophe.
// Other bytes pass through untouched.
inline std::string fold_key(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const Utf8Char u = utf8_decode(s, i);
    if (u.cp >= 'A' && u.cp <= 'Z') {
      out.push_back(static_cast<char>(u.cp - 'A' + 'a'));
    } else if (u.cp == 0x2019) {
      out.push_back('\'');
    } else {
      out.append(s.substr(i, u.len));
    }
    i += u.len;
  }
  return out;
}

}  // namespace botlex
