#!/usr/bin/env python3
"""Brute-force tweet feature oracle.

Independent reference implementation of the tweet tokenizer and the four
per-tweet lexical measurements. Used once to produce the golden fixture
(tests/data/golden_expected.csv) that the library is checked against; kept
in the tree so the fixture can be regenerated and audited.

Usage:
  brute_features.py <lexicon_dir> <tweets_file> > expected.csv
"""

import sys

URL_PREFIXES = ("http://", "https://")

WHITESPACE = set(
    [0x09, 0x0A, 0x0B, 0x0C, 0x0D, 0x20, 0x85, 0xA0, 0x1680]
    + list(range(0x2000, 0x200B))
    + [0x2028, 0x2029, 0x202F, 0x205F, 0x3000]
)

APOSTROPHES = {0x27, 0x2019}

# Codepoint ranges treated as word letters. Deliberately table-driven so the
# classification is identical everywhere and has no locale dependence.
LETTER_RANGES = [
    (0x41, 0x5A), (0x61, 0x7A),
    (0xC0, 0xD6), (0xD8, 0xF6), (0xF8, 0x2AF),
    (0x370, 0x58F),
    (0x5D0, 0x5EA),
    (0x600, 0x6FF),
    (0x900, 0x97F),
    (0x3040, 0x30FF),
    (0x4E00, 0x9FFF),
    (0xAC00, 0xD7A3),
]


def is_letter(cp):
    return any(lo <= cp <= hi for lo, hi in LETTER_RANGES)


def is_ws(cp):
    return cp in WHITESPACE


def is_word_char(cp):  # mention/hashtag alphabet
    return (0x30 <= cp <= 0x39) or (0x41 <= cp <= 0x5A) or (0x61 <= cp <= 0x7A) or cp == 0x5F


def is_digit(cp):
    return 0x30 <= cp <= 0x39


def fold(s):
    """Case-fold for lexicon membership and type identity: ASCII lowercase,
    U+2019 normalized to the ASCII apostrophe."""
    out = []
    for ch in s:
        if "A" <= ch <= "Z":
            out.append(ch.lower())
        elif ord(ch) == 0x2019:
            out.append("'")
        else:
            out.append(ch)
    return "".join(out)


def load_lexicon(path):
    entries = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n").rstrip("\r")
            if not line or line.startswith("#"):
                continue
            entries.append(line.split("\t")[0])
    return entries


class Lexicons:
    def __init__(self, dirpath):
        self.stopwords = set(fold(e) for e in load_lexicon(dirpath + "/stopwords.txt"))
        self.contractions = set(fold(e) for e in load_lexicon(dirpath + "/contractions.txt"))
        self.emoticons = set(load_lexicon(dirpath + "/emoticons.txt"))
        self.emoticon_max_len = max(len(e.encode("utf-8")) for e in self.emoticons)


# Token kinds
URL, MENTION, HASHTAG, EMOTICON, CONTRACTION, NUMBER, WORD, PUNCT = range(8)


def decode(b, i):
    """Decode one UTF-8 codepoint from bytes b at i -> (cp, length).
    Invalid sequences decode as one byte classified as a symbol."""
    c = b[i]
    if c < 0x80:
        return c, 1
    if 0xC2 <= c <= 0xDF and i + 1 < len(b) and 0x80 <= b[i + 1] <= 0xBF:
        return ((c & 0x1F) << 6) | (b[i + 1] & 0x3F), 2
    if 0xE0 <= c <= 0xEF and i + 2 < len(b) and all(0x80 <= b[i + k] <= 0xBF for k in (1, 2)):
        return ((c & 0x0F) << 12) | ((b[i + 1] & 0x3F) << 6) | (b[i + 2] & 0x3F), 3
    if 0xF0 <= c <= 0xF4 and i + 3 < len(b) and all(0x80 <= b[i + k] <= 0xBF for k in (1, 2, 3)):
        return (((c & 0x07) << 18) | ((b[i + 1] & 0x3F) << 12)
                | ((b[i + 2] & 0x3F) << 6) | (b[i + 3] & 0x3F)), 4
    return 0xFFFD, 1


def tokenize(text, lex):
    """Returns list of (kind, byte_start, byte_end)."""
    b = text.encode("utf-8")
    n = len(b)
    tokens = []

    def match_at(i):
        """Try every rule except PUNCT at byte offset i; return (kind, length) or None.
        Precedence: URL > MENTION > HASHTAG > EMOTICON > CONTRACTION > NUMBER > WORD."""
        for pref in URL_PREFIXES:
            pb = pref.encode()
            if b[i:i + len(pb)] == pb:
                j = i
                while j < n:
                    cp, ln = decode(b, j)
                    if is_ws(cp):
                        break
                    j += ln
                return URL, j - i
        if b[i] == 0x40:  # '@'
            j = i + 1
            count = 0
            while j < n and count < 15 and is_word_char(b[j]):
                j += 1
                count += 1
            if count >= 1:
                return MENTION, j - i
        if b[i] == 0x23:  # '#'
            j = i + 1
            while j < n and is_word_char(b[j]):
                j += 1
            if j > i + 1:
                return HASHTAG, j - i
        # emoticon: longest verbatim match
        best = 0
        limit = min(n - i, lex.emoticon_max_len)
        for ln in range(limit, 0, -1):
            cand = b[i:i + ln]
            try:
                s = cand.decode("utf-8")
            except UnicodeDecodeError:
                continue
            if s in lex.emoticons:
                best = ln
                break
        if best:
            return EMOTICON, best
        cp, ln0 = decode(b, i)
        if is_letter(cp) or cp in APOSTROPHES:
            # scan maximal letter/apostrophe run for a contraction candidate
            j = i
            has_apos = False
            while j < n:
                c2, l2 = decode(b, j)
                if is_letter(c2):
                    j += l2
                elif c2 in APOSTROPHES:
                    has_apos = True
                    j += l2
                else:
                    break
            if has_apos and fold(b[i:j].decode("utf-8")) in lex.contractions:
                return CONTRACTION, j - i
            if is_letter(cp):
                j = i
                while j < n:
                    c2, l2 = decode(b, j)
                    if not is_letter(c2):
                        break
                    j += l2
                return WORD, j - i
            return None  # bare apostrophe falls through to PUNCT
        if is_digit(cp):
            j = i + 1
            while j < n and is_digit(b[j]):
                j += 1
            while (j + 1 < n and (b[j] == 0x2E or b[j] == 0x2C) and is_digit(b[j + 1])):
                j += 1
                while j < n and is_digit(b[j]):
                    j += 1
            return NUMBER, j - i
        return None

    i = 0
    while i < n:
        cp, ln = decode(b, i)
        if is_ws(cp):
            i += ln
            continue
        m = match_at(i)
        if m is not None:
            kind, length = m
            tokens.append((kind, i, i + length))
            i += length
            continue
        # punct run: symbols up to whitespace or the start of any other token
        start = i
        i += ln
        while i < n:
            cp, ln = decode(b, i)
            if is_ws(cp) or match_at(i) is not None:
                break
            i += ln
        tokens.append((PUNCT, start, i))
    return tokens


def tweet_features(text, lex):
    b = text.encode("utf-8")
    toks = tokenize(text, lex)
    if not toks:
        return None
    total = len(toks)
    texts = [b[s:e].decode("utf-8") for (_, s, e) in toks]
    folded = [fold(t) for t in texts]
    unique = len(set(folded))
    content = 0
    for (kind, _, _), f in zip(toks, folded):
        if kind in (URL, MENTION):
            continue
        if f in lex.stopwords:
            continue
        content += 1
    contractions = sum(1 for (k, _, _) in toks if k == CONTRACTION)
    emoticons = sum(1 for (k, _, _) in toks if k == EMOTICON)
    return {
        "total": total,
        "unique": unique,
        "ttr": unique / total,
        "diversity": content / total,
        "contractions": contractions,
        "emoticons": emoticons,
    }


def main():
    if len(sys.argv) != 3:
        sys.stderr.write(__doc__)
        return 2
    lex = Lexicons(sys.argv[1])
    print("tweet_index,total_tokens,unique_tokens,ttr,lexical_diversity,contraction_count,emoticon_count")
    with open(sys.argv[2], encoding="utf-8") as fh:
        for idx, line in enumerate(fh):
            tweet = line.rstrip("\n")
            f = tweet_features(tweet, lex)
            if f is None:
                print(f"{idx},0,0,,,0,0")
                continue
            print(f"{idx},{f['total']},{f['unique']},{f['ttr']!r},{f['diversity']!r},"
                  f"{f['contractions']},{f['emoticons']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
