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

#ifndef TRIPLESCORE_EMBEDDING_H_
#define TRIPLESCORE_EMBEDDING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace triplescore {

struct EmbeddingConfig {
  int dimension = 100;
  int window = 5;
  int negative_samples = 5;
  int epochs = 5;
  int min_count = 2;
  float learning_rate = 0.025f;  // linearly decayed over training
  uint64_t seed = 1;
};

// Input-side vectors of a trained skip-gram model. Immutable; lookups are
// safe from any thread.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(int dimension, std::vector<std::string> tokens,
                 std::vector<float> vectors);

  int dimension() const { return dimension_; }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<std::size_t> index_of(const std::string& token) const;
  std::span<const float> vector_at(std::size_t index) const;
  // Empty span when the token is out of vocabulary.
  std::span<const float> vector_of(const std::string& token) const;

  // Text format: `<vocab_size> <dimension>` then `token v1 v2 ...` per line.
  void save(const std::string& path) const;
  static EmbeddingTable load(const std::string& path);

 private:
  int dimension_ = 0;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<float> vectors_;  // size() * dimension_, row-major
};

struct TrainStats {
  // Mean SGNS loss per (center, context) pair, one entry per epoch.
  std::vector<double> epoch_loss;
};

// Single-threaded skip-gram with negative sampling over one flat token
// stream; negatives come from the unigram distribution raised to 3/4.
// Deterministic for a fixed config.
EmbeddingTable train_skipgram(const std::vector<std::string>& corpus_tokens,
                              const EmbeddingConfig& config,
                              TrainStats* stats = nullptr);

double cosine(std::span<const float> a, std::span<const float> b);

// (cosine + 1) / 2 between the collapsed person token and the entity token;
// 0.5 when either is out of vocabulary.
double w2v_feature(const std::string& person_token,
                   const std::string& entity_token,
                   const EmbeddingTable& table);

}  // namespace triplescore

#endif  // TRIPLESCORE_EMBEDDING_H_
