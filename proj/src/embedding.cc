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

#include "embedding.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "util.h"

namespace triplescore {

namespace {

constexpr std::size_t kUnigramTableSize = 1 << 20;
constexpr double kUnigramPower = 0.75;
constexpr double kMinLearningRateFactor = 1e-4;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double safe_log(double x) { return std::log(std::max(x, 1e-12)); }

void check_config(const EmbeddingConfig& config) {
  if (config.dimension <= 0 || config.window <= 0 ||
      config.negative_samples <= 0 || config.epochs <= 0 ||
      config.min_count <= 0 || !(config.learning_rate > 0.0f)) {
    throw ValidationError("embedding config fields must be positive");
  }
}

}  // namespace

EmbeddingTable::EmbeddingTable(int dimension, std::vector<std::string> tokens,
                               std::vector<float> vectors)
    : dimension_(dimension),
      tokens_(std::move(tokens)),
      vectors_(std::move(vectors)) {
  if (dimension_ <= 0) throw ValidationError("embedding dimension must be > 0");
  if (vectors_.size() != tokens_.size() * static_cast<std::size_t>(dimension_)) {
    throw ValidationError("embedding vector block size mismatch");
  }
  for (float v : vectors_) {
    if (!std::isfinite(v)) {
      throw ValidationError("non-finite embedding component");
    }
  }
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) {
      throw ValidationError("duplicate token '" + tokens_[i] +
                            "' in embedding table");
    }
  }
}

std::optional<std::size_t> EmbeddingTable::index_of(
    const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const float> EmbeddingTable::vector_at(std::size_t index) const {
  return {vectors_.data() + index * static_cast<std::size_t>(dimension_),
          static_cast<std::size_t>(dimension_)};
}

std::span<const float> EmbeddingTable::vector_of(
    const std::string& token) const {
  auto idx = index_of(token);
  if (!idx) return {};
  return vector_at(*idx);
}

void EmbeddingTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open()) throw IoError("cannot write file: " + path);
  out << tokens_.size() << ' ' << dimension_ << '\n';
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out << tokens_[i];
    auto vec = vector_at(i);
    for (float v : vec) out << ' ' << format_float(v);
    out << '\n';
  }
  if (!out.good()) throw IoError("write failed: " + path);
}

EmbeddingTable EmbeddingTable::load(const std::string& path) {
  LineReader in(path);
  std::string line;
  if (!in.next(&line)) throw ParseError(path, 1, "empty embedding file");
  auto header = split(line, ' ');
  if (header.size() != 2) {
    throw ParseError(path, 1, "expected `<vocab_size> <dimension>` header");
  }
  std::size_t vocab_size =
      static_cast<std::size_t>(parse_int(header[0], path));
  int dimension = static_cast<int>(parse_int(header[1], path));
  std::vector<std::string> tokens;
  std::vector<float> vectors;
  tokens.reserve(vocab_size);
  vectors.reserve(vocab_size * static_cast<std::size_t>(dimension));
  while (in.next(&line)) {
    if (line.empty()) continue;
    auto fields = split(line, ' ');
    if (fields.size() != static_cast<std::size_t>(dimension) + 1) {
      throw ParseError(path, in.line_number(),
                       "expected token plus " + std::to_string(dimension) +
                           " components");
    }
    tokens.push_back(fields[0]);
    for (int d = 0; d < dimension; ++d) {
      vectors.push_back(
          static_cast<float>(parse_double(fields[d + 1], path)));
    }
  }
  if (tokens.size() != vocab_size) {
    throw ParseError(path, in.line_number(),
                     "vocabulary size does not match header");
  }
  return EmbeddingTable(dimension, std::move(tokens), std::move(vectors));
}

EmbeddingTable train_skipgram(const std::vector<std::string>& corpus_tokens,
                              const EmbeddingConfig& config,
                              TrainStats* stats) {
  check_config(config);

  std::unordered_map<std::string, long long> freq;
  for (const auto& token : corpus_tokens) ++freq[token];
  std::vector<std::pair<std::string, long long>> vocab;
  for (auto& [token, count] : freq) {
    if (count >= config.min_count) vocab.emplace_back(token, count);
  }
  if (vocab.empty()) {
    throw InsufficientDataError(
        "no token reaches min_count=" + std::to_string(config.min_count));
  }
  std::sort(vocab.begin(), vocab.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::unordered_map<std::string, int> token_id;
  token_id.reserve(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    token_id.emplace(vocab[i].first, static_cast<int>(i));
  }

  std::vector<int> stream;
  stream.reserve(corpus_tokens.size());
  for (const auto& token : corpus_tokens) {
    auto it = token_id.find(token);
    if (it != token_id.end()) stream.push_back(it->second);
  }

  // Unigram^(3/4) negative-sampling table.
  std::vector<int> unigram(std::max(kUnigramTableSize, vocab.size()));
  {
    double norm = 0.0;
    for (const auto& [token, count] : vocab) {
      norm += std::pow(static_cast<double>(count), kUnigramPower);
    }
    std::size_t word = 0;
    double cumulative =
        std::pow(static_cast<double>(vocab[0].second), kUnigramPower) / norm;
    for (std::size_t j = 0; j < unigram.size(); ++j) {
      unigram[j] = static_cast<int>(word);
      if (static_cast<double>(j) / static_cast<double>(unigram.size()) >
              cumulative &&
          word + 1 < vocab.size()) {
        ++word;
        cumulative +=
            std::pow(static_cast<double>(vocab[word].second), kUnigramPower) /
            norm;
      }
    }
  }

  const int dim = config.dimension;
  const std::size_t vocab_size = vocab.size();
  std::vector<float> input(vocab_size * static_cast<std::size_t>(dim));
  std::vector<float> output(vocab_size * static_cast<std::size_t>(dim), 0.0f);
  std::mt19937_64 init_rng(mix_seed(config.seed, "init"));
  for (float& v : input) {
    v = static_cast<float>((next_unit(init_rng) - 0.5) / dim);
  }

  const double lr0 = static_cast<double>(config.learning_rate);
  const double total_centers =
      static_cast<double>(config.epochs) * static_cast<double>(stream.size()) +
      1.0;
  double processed = 0.0;
  std::vector<double> grad(static_cast<std::size_t>(dim));

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    // Negative draws restart identically each epoch.
    std::mt19937_64 neg_rng(mix_seed(config.seed, "negatives"));
    double loss_sum = 0.0;
    long long pair_count = 0;
    for (std::size_t t = 0; t < stream.size(); ++t) {
      double lr = lr0 * std::max(1.0 - processed / total_centers,
                                 kMinLearningRateFactor);
      processed += 1.0;
      const int center = stream[t];
      float* v_center = input.data() + static_cast<std::size_t>(center) * dim;
      for (int off = -config.window; off <= config.window; ++off) {
        if (off == 0) continue;
        std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(t) + off;
        if (pos < 0 || pos >= static_cast<std::ptrdiff_t>(stream.size())) {
          continue;
        }
        const int context = stream[static_cast<std::size_t>(pos)];
        ++pair_count;
        std::fill(grad.begin(), grad.end(), 0.0);
        for (int k = 0; k <= config.negative_samples; ++k) {
          int target;
          double label;
          if (k == 0) {
            target = context;
            label = 1.0;
          } else {
            target = unigram[neg_rng() % unigram.size()];
            if (target == context) continue;
            label = 0.0;
          }
          float* u_target =
              output.data() + static_cast<std::size_t>(target) * dim;
          double dot = 0.0;
          for (int d = 0; d < dim; ++d) {
            dot += static_cast<double>(v_center[d]) *
                   static_cast<double>(u_target[d]);
          }
          double sigma = sigmoid(dot);
          loss_sum -= label > 0.5 ? safe_log(sigma) : safe_log(1.0 - sigma);
          double g = (label - sigma) * lr;
          for (int d = 0; d < dim; ++d) {
            grad[d] += g * static_cast<double>(u_target[d]);
            u_target[d] += static_cast<float>(g * v_center[d]);
          }
        }
        for (int d = 0; d < dim; ++d) {
          v_center[d] += static_cast<float>(grad[d]);
        }
      }
    }
    if (stats != nullptr) {
      stats->epoch_loss.push_back(
          pair_count > 0 ? loss_sum / static_cast<double>(pair_count) : 0.0);
    }
  }

  std::vector<std::string> tokens;
  tokens.reserve(vocab_size);
  for (auto& [token, count] : vocab) tokens.push_back(token);
  return EmbeddingTable(dim, std::move(tokens), std::move(input));
}

double cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size() || a.empty()) {
    throw ValidationError("cosine requires equal non-empty dimensions");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    na += static_cast<double>(a[i]) * static_cast<double>(a[i]);
    nb += static_cast<double>(b[i]) * static_cast<double>(b[i]);
  }
  if (na == 0.0 || nb == 0.0) {
    throw ValidationError("cosine undefined for zero vector");
  }
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double w2v_feature(const std::string& person_token,
                   const std::string& entity_token,
                   const EmbeddingTable& table) {
  auto person = table.vector_of(person_token);
  auto entity = table.vector_of(entity_token);
  if (person.empty() || entity.empty()) return 0.5;
  double np = 0.0, ne = 0.0;
  for (float v : person) np += static_cast<double>(v) * v;
  for (float v : entity) ne += static_cast<double>(v) * v;
  if (np == 0.0 || ne == 0.0) return 0.5;
  return (cosine(person, entity) + 1.0) / 2.0;
}

}  // namespace triplescore
