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

#ifndef TRIPLESCORE_EVAL_H_
#define TRIPLESCORE_EVAL_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corpus.h"
#include "distsup.h"
#include "scorer.h"

namespace triplescore {

// Fraction of positions where |pred - truth| <= 2.
double accuracy(const std::vector<int>& pred, const std::vector<int>& truth);

// Mean absolute difference.
double avg_score_diff(const std::vector<int>& pred,
                      const std::vector<int>& truth);

// Tau-b: (concordant - discordant) / sqrt((n0 - ties_a) * (n0 - ties_b)).
// nullopt when either list is all ties (denominator zero).
std::optional<double> kendall_tau_b(const std::vector<int>& a,
                                    const std::vector<int>& b);

struct EvalPair {
  std::string subject;
  RelationType relation = RelationType::kProfession;
  int pred = 0;
  int truth = 0;

  bool operator==(const EvalPair&) const = default;
};

struct GroupedTauResult {
  double tau = 0.0;
  std::size_t ranked_groups = 0;   // size >= 2 with defined tau
  std::size_t skipped_groups = 0;  // size 1 or all-tied
};

// Unweighted mean of per-(subject, relation) taus. Throws
// InsufficientDataError when no group qualifies.
GroupedTauResult grouped_tau(const std::vector<EvalPair>& pairs);

struct EvalReport {
  double accuracy = 0.0;
  double asd = 0.0;
  double tau = 0.0;
  std::size_t n_triples = 0;
  std::size_t n_ranked_groups = 0;
  std::size_t skipped_groups = 0;
};

EvalReport evaluate(const std::vector<EvalPair>& pairs);

// Joins two scored files line by line; every line must carry the same
// triple in both.
std::vector<EvalPair> align_scored(const std::vector<LabeledTriple>& pred,
                                   const std::vector<LabeledTriple>& truth);

// Mean |score - label| of each standalone scorer over the triples:
// "w2v" and "tfidf" scaled by 7 and rounded, "occ" as is, "linreg" the
// rounded regression output, "combined" the rounded 50/50 combination.
std::map<std::string, double> per_feature_error(
    const std::vector<LabeledTriple>& triples, const ScoringModel& model,
    const CorpusIndex& corpus);

}  // namespace triplescore

#endif  // TRIPLESCORE_EVAL_H_
