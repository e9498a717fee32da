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

#ifndef TRIPLESCORE_SCORER_H_
#define TRIPLESCORE_SCORER_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "corpus.h"
#include "distsup.h"
#include "embedding.h"
#include "featurize.h"
#include "lexicon.h"

namespace triplescore {

// Linear predictor over the regression features, in the fixed order
// [w2v, tfidf]. The occurrence-order score is deliberately not a regression
// feature; it enters through the 50/50 combination instead.
struct RegressionModel {
  std::vector<double> weights;
  double bias = 0.0;

  bool operator==(const RegressionModel&) const = default;
};

inline const std::vector<std::string> kRegressionFeatures = {"w2v", "tfidf"};

// Ordinary least squares via normal equations with a ridge term 1e-8 on the
// diagonal. Throws InsufficientDataError on fewer than 2 rows.
RegressionModel fit_ols(const std::vector<std::vector<double>>& x,
                        const std::vector<double>& y);

// bias + weights . [w2v, tfidf], clamped to [0, 7].
double predict(const RegressionModel& model, const FeatureVector& features);

// 0.5 * occ + 0.5 * linreg.
double combined_score(int occ, double linreg);

struct RelationModel {
  EntityLexicon lexicon;
  ProfileMap profiles;
  RegressionModel regression;
};

// Everything needed to score triples; immutable after training, safe to
// share across scoring threads.
struct ScoringModel {
  EmbeddingTable embeddings;
  std::map<RelationType, RelationModel> relations;
  OccurrenceVariant variant = OccurrenceVariant::kDistinctEntities;
  uint64_t seed = 1;
  EmbeddingConfig embedding_config;

  const RelationModel& relation(RelationType relation_type) const;
  FeatureContext context(RelationType relation_type,
                         const CorpusIndex& corpus) const;
};

// Workflow: absent person -> 3; distant-supervision Positive -> 7,
// Negative -> 0; otherwise round(combined_score(occ, predict)) half away
// from zero, clamped to [0, 7].
int score_triple(const std::string& person_id, RelationType relation,
                 const std::string& entity, const ScoringModel& model,
                 const CorpusIndex& corpus);

struct ScoreFileStats {
  std::size_t scored = 0;
  std::size_t skipped = 0;

  bool operator==(const ScoreFileStats&) const = default;
};

// Reads `person_id TAB relation TAB entity` lines, writes each line with a
// TAB score appended, input order preserved. Bad lines fail the run with a
// per-line listing unless skip_bad, which drops them with a warning on
// stderr. threads > 1 scores in parallel without changing the output.
ScoreFileStats score_file(const std::string& triples_path,
                          const ScoringModel& model, const CorpusIndex& corpus,
                          const std::string& output_path, bool skip_bad = false,
                          int threads = 1);

// Model bundle directory: meta.tsv, embeddings.txt, and per relation
// lexicon_<r>.tsv, profiles_<r>.tsv, weights_<r>.tsv. Loading reproduces
// scores bit-exactly.
void save_model(const ScoringModel& model, const std::string& dir);
ScoringModel load_model(const std::string& dir);

}  // namespace triplescore

#endif  // TRIPLESCORE_SCORER_H_
