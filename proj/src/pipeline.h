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

#ifndef TRIPLESCORE_PIPELINE_H_
#define TRIPLESCORE_PIPELINE_H_

#include <ostream>
#include <string>

#include "lexicon.h"

namespace triplescore {

// Every field has a config-file key of the same name with '_' spelled '-';
// command-line flags override config values.
struct PipelineConfig {
  std::string sentences;
  std::string persons;
  std::string profession_lexicon;
  std::string nationality_lexicon;
  std::string workdir = ".";

  int dimension = 100;
  int window = 5;
  int negative_samples = 5;
  int epochs = 5;
  int min_count = 2;
  double learning_rate = 0.025;

  long long max_pos = 1000000;
  long long max_neg = 1000000;
  long long negatives_per_person = 3;

  long long seed = 1;
  std::string variant = "distinct-entities";
  int threads = 1;
  bool skip_bad = false;
};

// Artifact locations inside the workdir.
std::string corpus_cache_path(const PipelineConfig& config);
std::string train_set_path(const PipelineConfig& config, RelationType relation);
std::string model_dir(const PipelineConfig& config);

// Commands throw: ConfigError for bad/missing configuration, IoError,
// ParseError and ValidationError for bad data, InsufficientDataError when
// training lacks labeled triples. The front end maps these to exit codes.
void cmd_ingest(const PipelineConfig& config, std::ostream& out);
void cmd_gen_train(const PipelineConfig& config, std::ostream& out);
void cmd_train(const PipelineConfig& config, std::ostream& out);
void cmd_score(const PipelineConfig& config, const std::string& triples_in,
               const std::string& triples_out, std::ostream& out);
void cmd_eval(const std::string& pred_path, const std::string& truth_path,
              std::ostream& out);
void cmd_report(const PipelineConfig& config, std::ostream& out);

}  // namespace triplescore

#endif  // TRIPLESCORE_PIPELINE_H_
