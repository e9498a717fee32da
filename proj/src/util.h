// Copyright 2026 The triplescore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRIPLESCORE_UTIL_H_
#define TRIPLESCORE_UTIL_H_

#include <cstdint>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace triplescore {

// Error taxonomy, mapped onto CLI exit codes by the front end:
// ConfigError -> 1, IoError/ParseError/ValidationError -> 2,
// InsufficientDataError -> 3.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed content in an input file; carries the file and 1-based line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& msg)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& msg)
      : std::runtime_error(msg) {}
};

// Word characters for boundary checks and tokenization. Bytes >= 0x80 are
// treated as word characters so UTF-8 sequences stay inside one token.
inline bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') ||
         (c >= 'a' && c <= 'z') || c >= 0x80;
}

inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string ascii_lower_copy(std::string_view s);

// Case-insensitive (ASCII) comparison of s against pattern.
bool iequals_ascii(std::string_view s, std::string_view pattern);

std::vector<std::string> split(std::string_view line, char delim);

// Removes a trailing '\r' in place.
void chomp(std::string* line);

// Line-oriented reader that strips trailing '\r' and tracks line numbers.
class LineReader {
 public:
  explicit LineReader(const std::string& path);
  // Returns false at end of file.
  bool next(std::string* line);
  std::size_t line_number() const { return line_number_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ifstream in_;
  std::size_t line_number_ = 0;
};

// Shortest round-trip decimal form, locale independent.
std::string format_double(double value);
std::string format_float(float value);

double parse_double(const std::string& field, const std::string& context);
long long parse_int(const std::string& field, const std::string& context);

// Uniform double in [0,1) using the top 53 bits of one 64-bit draw.
inline double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// splitmix64 finalizer; used to derive per-key seeds from the global seed.
uint64_t mix_seed(uint64_t seed, std::string_view key);

}  // namespace triplescore

#endif  // TRIPLESCORE_UTIL_H_
