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

#include "scorer.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "util.h"

namespace triplescore {

namespace {

constexpr double kRidge = 1e-8;

// Solves a * beta = b in place; gaussian elimination, partial pivoting.
std::vector<double> solve_linear(std::vector<std::vector<double>> a,
                                 std::vector<double> b) {
  const std::size_t m = a.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < m; ++row) {
      if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
    }
    if (std::fabs(a[pivot][col]) < 1e-300) {
      throw ValidationError("singular normal-equation system");
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < m; ++row) {
      double factor = a[row][col] / a[col][col];
      for (std::size_t j = col; j < m; ++j) a[row][j] -= factor * a[col][j];
      b[row] -= factor * b[col];
    }
  }
  std::vector<double> beta(m);
  for (std::size_t i = m; i-- > 0;) {
    double sum = b[i];
    for (std::size_t j = i + 1; j < m; ++j) sum -= a[i][j] * beta[j];
    beta[i] = sum / a[i][i];
  }
  return beta;
}

int round_clamped(double score) {
  return static_cast<int>(std::clamp(std::lround(score), 0L, 7L));
}

struct ParsedTriple {
  std::size_t line_index = 0;  // into the raw line vector
  std::string person_id;
  RelationType relation = RelationType::kProfession;
  std::string entity;
};

}  // namespace

RegressionModel fit_ols(const std::vector<std::vector<double>>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw ValidationError("feature rows and targets differ in count");
  }
  if (x.size() < 2) {
    throw InsufficientDataError("regression needs at least 2 rows, got " +
                                std::to_string(x.size()));
  }
  const std::size_t k = x[0].size();
  if (k == 0) throw ValidationError("regression needs at least one feature");
  for (const auto& row : x) {
    if (row.size() != k) throw ValidationError("ragged feature matrix");
    for (double v : row) {
      if (!std::isfinite(v)) throw ValidationError("non-finite feature value");
    }
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw ValidationError("non-finite target value");
  }

  const std::size_t m = k + 1;  // trailing bias column
  std::vector<std::vector<double>> ata(m, std::vector<double>(m, 0.0));
  std::vector<double> aty(m, 0.0);
  std::vector<double> aug(m);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[j] = x[i][j];
    aug[k] = 1.0;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = 0; q < m; ++q) ata[p][q] += aug[p] * aug[q];
      aty[p] += aug[p] * y[i];
    }
  }
  for (std::size_t p = 0; p < m; ++p) ata[p][p] += kRidge;

  std::vector<double> beta = solve_linear(std::move(ata), std::move(aty));
  RegressionModel model;
  model.weights.assign(beta.begin(), beta.begin() + static_cast<long>(k));
  model.bias = beta[k];
  for (double w : model.weights) {
    if (!std::isfinite(w)) throw ValidationError("non-finite fitted weight");
  }
  if (!std::isfinite(model.bias)) {
    throw ValidationError("non-finite fitted bias");
  }
  return model;
}

double predict(const RegressionModel& model, const FeatureVector& features) {
  if (model.weights.size() != kRegressionFeatures.size()) {
    throw ValidationError("regression model expects " +
                          std::to_string(kRegressionFeatures.size()) +
                          " weights, has " +
                          std::to_string(model.weights.size()));
  }
  double raw = model.bias + model.weights[0] * features.w2v +
               model.weights[1] * features.tfidf;
  return std::clamp(raw, 0.0, 7.0);
}

double combined_score(int occ, double linreg) {
  return 0.5 * static_cast<double>(occ) + 0.5 * linreg;
}

const RelationModel& ScoringModel::relation(RelationType relation_type) const {
  auto it = relations.find(relation_type);
  if (it == relations.end()) {
    throw ValidationError("no trained model for relation '" +
                          to_string(relation_type) + "'");
  }
  return it->second;
}

FeatureContext ScoringModel::context(RelationType relation_type,
                                     const CorpusIndex& corpus) const {
  const RelationModel& rm = relation(relation_type);
  return FeatureContext{&corpus, &rm.lexicon, &rm.profiles, &embeddings,
                        variant};
}

int score_triple(const std::string& person_id, RelationType relation,
                 const std::string& entity, const ScoringModel& model,
                 const CorpusIndex& corpus) {
  const RelationModel& rm = model.relation(relation);
  if (!rm.lexicon.is_canonical(entity)) {
    throw ValidationError("unknown entity '" + entity + "' for relation '" +
                          to_string(relation) + "'");
  }
  const PersonDocument* doc = corpus.find(person_id);
  if (doc == nullptr) return 3;
  Verdict verdict = label(*doc, entity, rm.lexicon);
  if (verdict == Verdict::kPositive) return 7;
  if (verdict == Verdict::kNegative) return 0;
  auto features =
      assemble_features(person_id, entity, model.context(relation, corpus));
  double linreg = predict(rm.regression, *features);
  return round_clamped(combined_score(features->occ, linreg));
}

ScoreFileStats score_file(const std::string& triples_path,
                          const ScoringModel& model, const CorpusIndex& corpus,
                          const std::string& output_path, bool skip_bad,
                          int threads) {
  std::vector<std::string> lines;
  {
    LineReader in(triples_path);
    std::string line;
    while (in.next(&line)) lines.push_back(line);
  }

  std::vector<ParsedTriple> parsed;
  struct Problem {
    std::size_t line_number;
    std::string reason;
  };
  std::vector<Problem> problems;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_number = i + 1;
    auto fields = split(lines[i], '\t');
    if (fields.size() != 3 || fields[0].empty() || fields[2].empty()) {
      problems.push_back(
          {line_number, "expected `person_id TAB relation TAB entity`"});
      continue;
    }
    auto relation = parse_relation(fields[1]);
    if (!relation) {
      problems.push_back({line_number, "unknown relation '" + fields[1] + "'"});
      continue;
    }
    auto rm = model.relations.find(*relation);
    if (rm == model.relations.end()) {
      problems.push_back(
          {line_number, "no trained model for relation '" + fields[1] + "'"});
      continue;
    }
    if (!rm->second.lexicon.is_canonical(fields[2])) {
      problems.push_back({line_number, "unknown entity '" + fields[2] + "'"});
      continue;
    }
    parsed.push_back({i, fields[0], *relation, fields[2]});
  }

  if (!problems.empty()) {
    if (!skip_bad) {
      std::string listing = "invalid input lines:";
      for (const auto& problem : problems) {
        listing += "\n  line " + std::to_string(problem.line_number) + ": " +
                   problem.reason;
      }
      throw ParseError(triples_path, problems.front().line_number, listing);
    }
    for (const auto& problem : problems) {
      std::cerr << "warning: " << triples_path << ":" << problem.line_number
                << ": " << problem.reason << " (line skipped)\n";
    }
  }

  std::vector<int> scores(parsed.size(), 0);
  const int worker_count = std::max(
      1, std::min(threads, static_cast<int>(std::max<std::size_t>(
                               1, parsed.size()))));
  if (worker_count <= 1) {
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      scores[i] = score_triple(parsed[i].person_id, parsed[i].relation,
                               parsed[i].entity, model, corpus);
    }
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> failures(
        static_cast<std::size_t>(worker_count));
    const std::size_t chunk =
        (parsed.size() + static_cast<std::size_t>(worker_count) - 1) /
        static_cast<std::size_t>(worker_count);
    for (int w = 0; w < worker_count; ++w) {
      const std::size_t begin = static_cast<std::size_t>(w) * chunk;
      const std::size_t end = std::min(parsed.size(), begin + chunk);
      workers.emplace_back([&, w, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) {
            scores[i] = score_triple(parsed[i].person_id, parsed[i].relation,
                                     parsed[i].entity, model, corpus);
          }
        } catch (...) {
          failures[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& worker : workers) worker.join();
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }

  std::ofstream out(output_path, std::ios::binary);
  if (!out.is_open()) throw IoError("cannot write file: " + output_path);
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    out << lines[parsed[i].line_index] << '\t' << scores[i] << '\n';
  }
  if (!out.good()) throw IoError("write failed: " + output_path);
  return ScoreFileStats{parsed.size(), problems.size()};
}

void save_model(const ScoringModel& model, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create directory: " + dir + ": " + ec.message());
  }

  std::string relations;
  for (const auto& [relation_type, rm] : model.relations) {
    if (!relations.empty()) relations += ',';
    relations += to_string(relation_type);
  }

  const std::string meta_path = dir + "/meta.tsv";
  std::ofstream meta(meta_path, std::ios::binary);
  if (!meta.is_open()) throw IoError("cannot write file: " + meta_path);
  meta << "dimension\t" << model.embedding_config.dimension << '\n'
       << "epochs\t" << model.embedding_config.epochs << '\n'
       << "format\ttriplescore-model-v1\n"
       << "learning_rate\t" << format_float(model.embedding_config.learning_rate)
       << '\n'
       << "min_count\t" << model.embedding_config.min_count << '\n'
       << "negative_samples\t" << model.embedding_config.negative_samples
       << '\n'
       << "relations\t" << relations << '\n'
       << "seed\t" << model.seed << '\n'
       << "variant\t" << to_string(model.variant) << '\n'
       << "window\t" << model.embedding_config.window << '\n';
  if (!meta.good()) throw IoError("write failed: " + meta_path);

  model.embeddings.save(dir + "/embeddings.txt");
  for (const auto& [relation_type, rm] : model.relations) {
    const std::string name = to_string(relation_type);
    rm.lexicon.save(dir + "/lexicon_" + name + ".tsv");
    save_profiles(rm.profiles, dir + "/profiles_" + name + ".tsv");

    const std::string weights_path = dir + "/weights_" + name + ".tsv";
    std::ofstream weights(weights_path, std::ios::binary);
    if (!weights.is_open()) throw IoError("cannot write file: " + weights_path);
    for (std::size_t i = 0; i < kRegressionFeatures.size(); ++i) {
      weights << kRegressionFeatures[i] << '\t'
              << format_double(rm.regression.weights[i]) << '\n';
    }
    weights << "bias\t" << format_double(rm.regression.bias) << '\n';
    if (!weights.good()) throw IoError("write failed: " + weights_path);
  }
}

ScoringModel load_model(const std::string& dir) {
  const std::string meta_path = dir + "/meta.tsv";
  std::map<std::string, std::string> meta;
  {
    LineReader in(meta_path);
    std::string line;
    while (in.next(&line)) {
      if (line.empty() || line[0] == '#') continue;
      auto fields = split(line, '\t');
      if (fields.size() != 2) {
        throw ParseError(meta_path, in.line_number(),
                         "expected `key TAB value`");
      }
      if (!meta.emplace(fields[0], fields[1]).second) {
        throw ParseError(meta_path, in.line_number(),
                         "duplicate key '" + fields[0] + "'");
      }
    }
  }
  auto need = [&meta, &meta_path](const std::string& key) -> const std::string& {
    auto it = meta.find(key);
    if (it == meta.end()) {
      throw ValidationError(meta_path + ": missing key '" + key + "'");
    }
    return it->second;
  };
  if (need("format") != "triplescore-model-v1") {
    throw ValidationError(meta_path + ": unsupported format '" +
                          need("format") + "'");
  }

  ScoringModel model;
  model.embedding_config.dimension =
      static_cast<int>(parse_int(need("dimension"), meta_path));
  model.embedding_config.window =
      static_cast<int>(parse_int(need("window"), meta_path));
  model.embedding_config.negative_samples =
      static_cast<int>(parse_int(need("negative_samples"), meta_path));
  model.embedding_config.epochs =
      static_cast<int>(parse_int(need("epochs"), meta_path));
  model.embedding_config.min_count =
      static_cast<int>(parse_int(need("min_count"), meta_path));
  model.embedding_config.learning_rate =
      static_cast<float>(parse_double(need("learning_rate"), meta_path));
  model.seed = static_cast<uint64_t>(parse_int(need("seed"), meta_path));
  model.embedding_config.seed = model.seed;
  auto variant = parse_variant(need("variant"));
  if (!variant) {
    throw ValidationError(meta_path + ": unknown variant '" + need("variant") +
                          "'");
  }
  model.variant = *variant;
  model.embeddings = EmbeddingTable::load(dir + "/embeddings.txt");

  for (const auto& name : split(need("relations"), ',')) {
    auto relation_type = parse_relation(name);
    if (!relation_type) {
      throw ValidationError(meta_path + ": unknown relation '" + name + "'");
    }
    EntityLexicon lexicon =
        EntityLexicon::load(dir + "/lexicon_" + name + ".tsv", *relation_type);
    ProfileMap profiles = load_profiles(dir + "/profiles_" + name + ".tsv");
    for (const auto& [entity, profile] : profiles) {
      if (!lexicon.is_canonical(entity)) {
        throw ValidationError("profiled entity '" + entity +
                              "' is not in the " + name + " lexicon");
      }
    }
    for (const auto& entity : lexicon.canonical_entities()) {
      if (!profiles.contains(entity)) {
        profiles.emplace(entity, EntityProfile{entity, {}, 0.0});
      }
    }

    const std::string weights_path = dir + "/weights_" + name + ".tsv";
    std::map<std::string, double> fields;
    {
      LineReader in(weights_path);
      std::string line;
      while (in.next(&line)) {
        if (line.empty() || line[0] == '#') continue;
        auto parts = split(line, '\t');
        if (parts.size() != 2) {
          throw ParseError(weights_path, in.line_number(),
                           "expected `feature TAB weight`");
        }
        if (!fields.emplace(parts[0], parse_double(parts[1], weights_path))
                 .second) {
          throw ParseError(weights_path, in.line_number(),
                           "duplicate feature '" + parts[0] + "'");
        }
      }
    }
    RegressionModel regression;
    for (const auto& feature : kRegressionFeatures) {
      auto it = fields.find(feature);
      if (it == fields.end()) {
        throw ValidationError(weights_path + ": missing feature '" + feature +
                              "'");
      }
      regression.weights.push_back(it->second);
    }
    auto bias = fields.find("bias");
    if (bias == fields.end()) {
      throw ValidationError(weights_path + ": missing feature 'bias'");
    }
    regression.bias = bias->second;
    if (fields.size() != kRegressionFeatures.size() + 1) {
      throw ValidationError(weights_path + ": unexpected extra features");
    }

    model.relations.emplace(
        *relation_type, RelationModel{std::move(lexicon), std::move(profiles),
                                      std::move(regression)});
  }
  if (model.relations.empty()) {
    throw ValidationError(meta_path + ": no relations listed");
  }
  return model;
}

}  // namespace triplescore
