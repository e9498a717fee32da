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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pipeline.h"
#include "util.h"

namespace {

constexpr const char* kDescription =
    "Relevance scores in [0,7] for (person, relation, entity) triples over "
    "the profession and nationality relations.";

}  // namespace

int main(int argc, char** argv) {
  triplescore::PipelineConfig config;
  std::string score_in, score_out, eval_pred, eval_truth;

  CLI::App app{kDescription};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value config file");

  app.add_option("--sentences", config.sentences,
                 "Sentences file: `person_id TAB sentence` per line");
  app.add_option("--persons", config.persons,
                 "Persons manifest: `person_id TAB full_name` per line");
  app.add_option("--profession-lexicon", config.profession_lexicon,
                 "Profession lexicon: `canonical TAB alias...` per line");
  app.add_option("--nationality-lexicon", config.nationality_lexicon,
                 "Nationality lexicon: `canonical TAB alias...` per line");
  app.add_option("--workdir", config.workdir,
                 "Directory for caches, training sets and the model bundle");
  app.add_option("--dimension", config.dimension, "Embedding dimension")
      ->check(CLI::PositiveNumber);
  app.add_option("--window", config.window, "Skip-gram window size")
      ->check(CLI::PositiveNumber);
  app.add_option("--negative-samples", config.negative_samples,
                 "Negative samples per context pair")
      ->check(CLI::PositiveNumber);
  app.add_option("--epochs", config.epochs, "Embedding training epochs")
      ->check(CLI::PositiveNumber);
  app.add_option("--min-count", config.min_count,
                 "Minimum token frequency kept in the vocabulary")
      ->check(CLI::PositiveNumber);
  app.add_option("--learning-rate", config.learning_rate,
                 "Initial learning rate, decayed linearly")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-pos", config.max_pos,
                 "Cap on positive training triples per relation")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--max-neg", config.max_neg,
                 "Cap on negative training triples per relation")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--negatives-per-person", config.negatives_per_person,
                 "Sampled absent entities per person")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", config.seed, "Seed for all randomness")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--variant", config.variant,
                 "Occurrence-order interpretation")
      ->check(CLI::IsMember({"distinct-entities", "raw-mentions"}));
  app.add_option("--threads", config.threads, "Scoring threads")
      ->check(CLI::PositiveNumber);

  auto* ingest =
      app.add_subcommand("ingest", "Build the corpus cache from raw inputs");
  auto* gen_train = app.add_subcommand(
      "gen-train", "Generate distant-supervision training sets");
  auto* train =
      app.add_subcommand("train", "Train and save the scoring model bundle");
  auto* score = app.add_subcommand("score", "Score a triples file");
  score->add_option("input", score_in,
                    "Triples file: `person_id TAB relation TAB entity`")
      ->required();
  score->add_option("output", score_out, "Scored output file")->required();
  score->add_flag("--skip-bad", config.skip_bad,
                  "Skip malformed or unknown lines instead of failing");
  auto* eval = app.add_subcommand("eval", "Compare two scored files");
  eval->add_option("predictions", eval_pred, "Scored predictions file")
      ->required();
  eval->add_option("truth", eval_truth, "Scored ground-truth file")
      ->required();
  auto* report =
      app.add_subcommand("report", "Summarize an existing model bundle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (ingest->parsed()) {
      triplescore::cmd_ingest(config, std::cout);
    } else if (gen_train->parsed()) {
      triplescore::cmd_gen_train(config, std::cout);
    } else if (train->parsed()) {
      triplescore::cmd_train(config, std::cout);
    } else if (score->parsed()) {
      triplescore::cmd_score(config, score_in, score_out, std::cout);
    } else if (eval->parsed()) {
      triplescore::cmd_eval(eval_pred, eval_truth, std::cout);
    } else if (report->parsed()) {
      triplescore::cmd_report(config, std::cout);
    }
    return 0;
  } catch (const triplescore::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const triplescore::InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
