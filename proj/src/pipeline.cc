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

#include "pipeline.h"

#include <filesystem>
#include <iterator>
#include <map>
#include <utility>
#include <vector>

#include "corpus.h"
#include "distsup.h"
#include "embedding.h"
#include "eval.h"
#include "featurize.h"
#include "scorer.h"
#include "util.h"

namespace triplescore {

namespace {

std::string in_workdir(const PipelineConfig& config, const std::string& name) {
  if (config.workdir.empty()) throw ConfigError("workdir must not be empty");
  return config.workdir + "/" + name;
}

void ensure_workdir(const PipelineConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.workdir, ec);
  if (ec) {
    throw IoError("cannot create directory: " + config.workdir + ": " +
                  ec.message());
  }
}

std::vector<std::pair<RelationType, std::string>> lexicon_paths(
    const PipelineConfig& config) {
  std::vector<std::pair<RelationType, std::string>> paths;
  if (!config.profession_lexicon.empty()) {
    paths.emplace_back(RelationType::kProfession, config.profession_lexicon);
  }
  if (!config.nationality_lexicon.empty()) {
    paths.emplace_back(RelationType::kNationality, config.nationality_lexicon);
  }
  if (paths.empty()) {
    throw ConfigError(
        "no lexicon configured; set profession-lexicon and/or "
        "nationality-lexicon");
  }
  return paths;
}

OccurrenceVariant variant_of(const PipelineConfig& config) {
  auto variant = parse_variant(config.variant);
  if (!variant) {
    throw ConfigError("unknown occurrence-order variant '" + config.variant +
                      "'");
  }
  return *variant;
}

void check_positive(long long value, const std::string& name) {
  if (value <= 0) throw ConfigError(name + " must be positive");
}

void check_non_negative(long long value, const std::string& name) {
  if (value < 0) throw ConfigError(name + " must be non-negative");
}

void validate(const PipelineConfig& config) {
  check_positive(config.dimension, "dimension");
  check_positive(config.window, "window");
  check_positive(config.negative_samples, "negative-samples");
  check_positive(config.epochs, "epochs");
  check_positive(config.min_count, "min-count");
  if (!(config.learning_rate > 0.0)) {
    throw ConfigError("learning-rate must be positive");
  }
  check_non_negative(config.max_pos, "max-pos");
  check_non_negative(config.max_neg, "max-neg");
  check_non_negative(config.negatives_per_person, "negatives-per-person");
  check_non_negative(config.seed, "seed");
  check_positive(config.threads, "threads");
  variant_of(config);
}

EmbeddingConfig embedding_config(const PipelineConfig& config) {
  EmbeddingConfig ecfg;
  ecfg.dimension = config.dimension;
  ecfg.window = config.window;
  ecfg.negative_samples = config.negative_samples;
  ecfg.epochs = config.epochs;
  ecfg.min_count = config.min_count;
  ecfg.learning_rate = static_cast<float>(config.learning_rate);
  ecfg.seed = static_cast<uint64_t>(config.seed);
  return ecfg;
}

TrainingLimits training_limits(const PipelineConfig& config) {
  TrainingLimits limits;
  limits.max_pos = static_cast<std::size_t>(config.max_pos);
  limits.max_neg = static_cast<std::size_t>(config.max_neg);
  limits.negatives_per_person =
      static_cast<std::size_t>(config.negatives_per_person);
  limits.seed = static_cast<uint64_t>(config.seed);
  return limits;
}

std::pair<std::size_t, std::size_t> count_labels(
    const std::vector<LabeledTriple>& triples) {
  std::size_t positives = 0, negatives = 0;
  for (const auto& triple : triples) {
    if (triple.score == 7) {
      ++positives;
    } else {
      ++negatives;
    }
  }
  return {positives, negatives};
}

void print_table(const std::vector<std::vector<std::string>>& rows,
                 std::ostream& out) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) line += "  ";
      line += row[i];
      if (i + 1 < row.size()) {
        line.append(widths[i] - row[i].size(), ' ');
      }
    }
    out << line << '\n';
  }
}

const std::vector<std::string> kErrorRows = {"w2v", "tfidf", "occ", "linreg",
                                             "combined"};

void print_error_table(
    const std::map<RelationType, std::map<std::string, double>>& errors,
    std::ostream& out) {
  out << "average error on the training set:\n";
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"feature"};
  for (const auto& [relation, values] : errors) {
    header.push_back(to_string(relation));
  }
  rows.push_back(std::move(header));
  for (const auto& feature : kErrorRows) {
    std::vector<std::string> row = {feature};
    for (const auto& [relation, values] : errors) {
      row.push_back(format_double(values.at(feature)));
    }
    rows.push_back(std::move(row));
  }
  print_table(rows, out);
}

}  // namespace

std::string corpus_cache_path(const PipelineConfig& config) {
  return in_workdir(config, "corpus.tsv");
}

std::string train_set_path(const PipelineConfig& config,
                           RelationType relation) {
  return in_workdir(config, "train_" + to_string(relation) + ".tsv");
}

std::string model_dir(const PipelineConfig& config) {
  return in_workdir(config, "model");
}

void cmd_ingest(const PipelineConfig& config, std::ostream& out) {
  validate(config);
  if (config.sentences.empty()) throw ConfigError("sentences path not set");
  if (config.persons.empty()) throw ConfigError("persons path not set");
  ensure_workdir(config);
  IngestReport report;
  CorpusIndex index =
      ingest_sentences(config.sentences, config.persons, &report);
  save_corpus(index, corpus_cache_path(config),
              static_cast<uint64_t>(config.seed));
  out << "sentence_lines=" << report.sentence_lines << '\n'
      << "skipped_unknown_persons=" << report.skipped_unknown_persons << '\n'
      << "persons_requested=" << index.persons_requested() << '\n'
      << "persons_found=" << index.persons_found() << '\n'
      << "coverage=" << format_double(coverage_fraction(index)) << '\n'
      << "cache=" << corpus_cache_path(config) << '\n';
}

void cmd_gen_train(const PipelineConfig& config, std::ostream& out) {
  validate(config);
  ensure_workdir(config);
  CorpusIndex index = load_corpus(corpus_cache_path(config));
  for (const auto& [relation, path] : lexicon_paths(config)) {
    EntityLexicon lexicon = EntityLexicon::load(path, relation);
    auto triples = generate_training_set(index, lexicon,
                                         training_limits(config));
    save_triples(triples, train_set_path(config, relation),
                 static_cast<uint64_t>(config.seed));
    auto [positives, negatives] = count_labels(triples);
    out << "relation=" << to_string(relation) << " positives=" << positives
        << " negatives=" << negatives << " file="
        << train_set_path(config, relation) << '\n';
  }
}

void cmd_train(const PipelineConfig& config, std::ostream& out) {
  validate(config);
  ensure_workdir(config);
  CorpusIndex index = load_corpus(corpus_cache_path(config));

  std::map<RelationType, EntityLexicon> lexicons;
  for (const auto& [relation, path] : lexicon_paths(config)) {
    lexicons.emplace(relation, EntityLexicon::load(path, relation));
  }

  std::map<RelationType, std::vector<LabeledTriple>> train_sets;
  for (const auto& [relation, lexicon] : lexicons) {
    auto triples = generate_training_set(index, lexicon,
                                         training_limits(config));
    save_triples(triples, train_set_path(config, relation),
                 static_cast<uint64_t>(config.seed));
    auto [positives, negatives] = count_labels(triples);
    out << "relation " << to_string(relation) << ": positives=" << positives
        << " negatives=" << negatives << '\n';
    if (positives < 1 || triples.size() < 2) {
      throw InsufficientDataError(
          "relation " + to_string(relation) + " produced " +
          std::to_string(positives) + " positives and " +
          std::to_string(negatives) +
          " negatives; training needs at least 1 positive and 2 labeled "
          "triples");
    }
    train_sets.emplace(relation, std::move(triples));
  }

  std::vector<const EntityLexicon*> lexicon_ptrs;
  for (const auto& [relation, lexicon] : lexicons) {
    lexicon_ptrs.push_back(&lexicon);
  }
  AliasMatcher matcher(lexicon_ptrs);
  std::vector<std::string> tokens;
  for (const auto& [person_id, doc] : index.documents()) {
    TokenStream stream = normalize_text(doc.text(), matcher, doc.full_name);
    tokens.insert(tokens.end(),
                  std::make_move_iterator(stream.tokens.begin()),
                  std::make_move_iterator(stream.tokens.end()));
  }
  out << "corpus: persons=" << index.persons_found()
      << " tokens=" << tokens.size() << '\n';

  ScoringModel model;
  model.variant = variant_of(config);
  model.seed = static_cast<uint64_t>(config.seed);
  model.embedding_config = embedding_config(config);
  TrainStats stats;
  model.embeddings = train_skipgram(tokens, model.embedding_config, &stats);
  out << "embedding: vocab=" << model.embeddings.size()
      << " dimension=" << model.embeddings.dimension() << '\n';
  for (std::size_t epoch = 0; epoch < stats.epoch_loss.size(); ++epoch) {
    out << "epoch " << epoch + 1 << ": loss="
        << format_double(stats.epoch_loss[epoch]) << '\n';
  }

  for (auto& [relation, lexicon] : lexicons) {
    const auto& triples = train_sets.at(relation);
    ProfileMap profiles = build_entity_profiles(index, lexicon, triples);
    FeatureContext context{&index, &lexicon, &profiles, &model.embeddings,
                           model.variant};
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    x.reserve(triples.size());
    y.reserve(triples.size());
    for (const auto& triple : triples) {
      auto features = assemble_features(triple.person_id, triple.entity,
                                        context);
      x.push_back({features->w2v, features->tfidf});
      y.push_back(static_cast<double>(triple.score));
    }
    RegressionModel regression = fit_ols(x, y);
    out << "relation " << to_string(relation) << ": weights w2v="
        << format_double(regression.weights[0]) << " tfidf="
        << format_double(regression.weights[1]) << " bias="
        << format_double(regression.bias) << '\n';
    model.relations.emplace(relation,
                            RelationModel{std::move(lexicon),
                                          std::move(profiles),
                                          std::move(regression)});
  }

  std::map<RelationType, std::map<std::string, double>> errors;
  for (const auto& [relation, rm] : model.relations) {
    errors.emplace(relation,
                   per_feature_error(train_sets.at(relation), model, index));
  }
  print_error_table(errors, out);

  save_model(model, model_dir(config));
  out << "model bundle: " << model_dir(config) << '\n';
}

void cmd_score(const PipelineConfig& config, const std::string& triples_in,
               const std::string& triples_out, std::ostream& out) {
  validate(config);
  ScoringModel model = load_model(model_dir(config));
  CorpusIndex index = load_corpus(corpus_cache_path(config));
  ScoreFileStats stats = score_file(triples_in, model, index, triples_out,
                                    config.skip_bad, config.threads);
  out << "scored=" << stats.scored << " skipped=" << stats.skipped
      << " output=" << triples_out << '\n';
}

void cmd_eval(const std::string& pred_path, const std::string& truth_path,
              std::ostream& out) {
  auto pred = load_triples(pred_path);
  auto truth = load_triples(truth_path);
  EvalReport report = evaluate(align_scored(pred, truth));
  print_table(
      {{"triples", std::to_string(report.n_triples)},
       {"ranked groups", std::to_string(report.n_ranked_groups)},
       {"skipped groups", std::to_string(report.skipped_groups)},
       {"accuracy", format_double(report.accuracy)},
       {"avg score diff", format_double(report.asd)},
       {"kendall tau-b", format_double(report.tau)}},
      out);
  out << "accuracy=" << format_double(report.accuracy) << '\n'
      << "asd=" << format_double(report.asd) << '\n'
      << "tau=" << format_double(report.tau) << '\n'
      << "n_triples=" << report.n_triples << '\n'
      << "ranked_groups=" << report.n_ranked_groups << '\n'
      << "skipped_groups=" << report.skipped_groups << '\n';
}

void cmd_report(const PipelineConfig& config, std::ostream& out) {
  validate(config);
  ScoringModel model = load_model(model_dir(config));
  CorpusIndex index = load_corpus(corpus_cache_path(config));
  out << "model: seed=" << model.seed
      << " variant=" << to_string(model.variant)
      << " dimension=" << model.embedding_config.dimension
      << " vocab=" << model.embeddings.size() << '\n';
  std::map<RelationType, std::map<std::string, double>> errors;
  for (const auto& [relation, rm] : model.relations) {
    auto triples = load_triples(train_set_path(config, relation));
    out << "relation " << to_string(relation) << ": triples="
        << triples.size()
        << " entities=" << rm.lexicon.canonical_entities().size() << '\n';
    errors.emplace(relation, per_feature_error(triples, model, index));
  }
  print_error_table(errors, out);
}

}  // namespace triplescore
