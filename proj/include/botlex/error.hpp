#pragma once

#include <stdexcept>
#include <string>

namespace botlex {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad or missing input data: corpora, CSV files, malformed records.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(what) {}
};

// Lexicon files that are missing, empty or fail checksum verification.
class LexiconError : public Error {
 public:
  explicit LexiconError(const std::string& what) : Error(what) {}
};

// Model misuse: schema drift, wrong kind, broken serialization payload.
class ModelError : public Error {
 public:
  explicit ModelError(const std::string& what) : Error(what) {}
};

}  // namespace botlex
