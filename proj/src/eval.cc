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

#include "eval.h"

#include <algorithm>
#include <cmath>

#include "util.h"

namespace triplescore {

namespace {

void check_score_lists(const std::vector<int>& pred,
                       const std::vector<int>& truth) {
  if (pred.size() != truth.size()) {
    throw ValidationError("score lists differ in length");
  }
  if (pred.empty()) throw ValidationError("empty score lists");
  for (const auto* list : {&pred, &truth}) {
    for (int v : *list) {
      if (v < 0 || v > 7) {
        throw ValidationError("score " + std::to_string(v) +
                              " outside [0,7]");
      }
    }
  }
}

int round_clamped(double score) {
  return static_cast<int>(std::clamp(std::lround(score), 0L, 7L));
}

}  // namespace

double accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  check_score_lists(pred, truth);
  std::size_t within = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (std::abs(pred[i] - truth[i]) <= 2) ++within;
  }
  return static_cast<double>(within) / static_cast<double>(pred.size());
}

double avg_score_diff(const std::vector<int>& pred,
                      const std::vector<int>& truth) {
  check_score_lists(pred, truth);
  long long sum = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    sum += std::abs(pred[i] - truth[i]);
  }
  return static_cast<double>(sum) / static_cast<double>(pred.size());
}

std::optional<double> kendall_tau_b(const std::vector<int>& a,
                                    const std::vector<int>& b) {
  if (a.size() != b.size()) {
    throw ValidationError("score lists differ in length");
  }
  if (a.size() < 2) {
    throw ValidationError("kendall_tau_b needs at least 2 items");
  }
  long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const int da = a[i] - a[j];
      const int db = b[i] - b[j];
      if (da == 0) ++ties_a;
      if (db == 0) ++ties_b;
      if (da == 0 || db == 0) continue;
      if ((da > 0) == (db > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const long long n = static_cast<long long>(a.size());
  const long long n0 = n * (n - 1) / 2;
  const long long denom_a = n0 - ties_a;
  const long long denom_b = n0 - ties_b;
  if (denom_a == 0 || denom_b == 0) return std::nullopt;
  return static_cast<double>(concordant - discordant) /
         std::sqrt(static_cast<double>(denom_a) *
                   static_cast<double>(denom_b));
}

GroupedTauResult grouped_tau(const std::vector<EvalPair>& pairs) {
  std::map<std::pair<std::string, RelationType>, std::vector<std::size_t>>
      groups;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    groups[{pairs[i].subject, pairs[i].relation}].push_back(i);
  }
  GroupedTauResult result;
  double sum = 0.0;
  for (const auto& [key, members] : groups) {
    if (members.size() < 2) {
      ++result.skipped_groups;
      continue;
    }
    std::vector<int> pred, truth;
    pred.reserve(members.size());
    truth.reserve(members.size());
    for (std::size_t i : members) {
      pred.push_back(pairs[i].pred);
      truth.push_back(pairs[i].truth);
    }
    auto tau = kendall_tau_b(pred, truth);
    if (!tau) {
      ++result.skipped_groups;
      continue;
    }
    sum += *tau;
    ++result.ranked_groups;
  }
  if (result.ranked_groups == 0) {
    throw InsufficientDataError(
        "no (subject, relation) group of size >= 2 has a defined tau");
  }
  result.tau = sum / static_cast<double>(result.ranked_groups);
  return result;
}

EvalReport evaluate(const std::vector<EvalPair>& pairs) {
  if (pairs.empty()) throw ValidationError("nothing to evaluate");
  std::vector<int> pred, truth;
  pred.reserve(pairs.size());
  truth.reserve(pairs.size());
  for (const auto& pair : pairs) {
    pred.push_back(pair.pred);
    truth.push_back(pair.truth);
  }
  GroupedTauResult tau = grouped_tau(pairs);
  EvalReport report;
  report.accuracy = accuracy(pred, truth);
  report.asd = avg_score_diff(pred, truth);
  report.tau = tau.tau;
  report.n_triples = pairs.size();
  report.n_ranked_groups = tau.ranked_groups;
  report.skipped_groups = tau.skipped_groups;
  return report;
}

std::vector<EvalPair> align_scored(const std::vector<LabeledTriple>& pred,
                                   const std::vector<LabeledTriple>& truth) {
  if (pred.size() != truth.size()) {
    throw ValidationError("prediction and truth files differ in triple count");
  }
  std::vector<EvalPair> pairs;
  pairs.reserve(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i].person_id != truth[i].person_id ||
        pred[i].relation != truth[i].relation ||
        pred[i].entity != truth[i].entity) {
      throw ValidationError("triple " + std::to_string(i + 1) +
                            " differs between prediction and truth files");
    }
    pairs.push_back({pred[i].person_id, pred[i].relation, pred[i].score,
                     truth[i].score});
  }
  return pairs;
}

std::map<std::string, double> per_feature_error(
    const std::vector<LabeledTriple>& triples, const ScoringModel& model,
    const CorpusIndex& corpus) {
  if (triples.empty()) throw ValidationError("empty training set");
  std::map<std::string, double> sums = {
      {"w2v", 0.0}, {"tfidf", 0.0}, {"occ", 0.0},
      {"linreg", 0.0}, {"combined", 0.0}};
  for (const auto& triple : triples) {
    const RelationModel& rm = model.relation(triple.relation);
    auto features = assemble_features(triple.person_id, triple.entity,
                                      model.context(triple.relation, corpus));
    if (!features) {
      throw ValidationError("person '" + triple.person_id +
                            "' has no document");
    }
    const double linreg = predict(rm.regression, *features);
    const int label = triple.score;
    sums["w2v"] += std::abs(round_clamped(7.0 * features->w2v) - label);
    sums["tfidf"] += std::abs(round_clamped(7.0 * features->tfidf) - label);
    sums["occ"] += std::abs(features->occ - label);
    sums["linreg"] += std::abs(round_clamped(linreg) - label);
    sums["combined"] +=
        std::abs(round_clamped(combined_score(features->occ, linreg)) - label);
  }
  for (auto& [feature, sum] : sums) {
    sum /= static_cast<double>(triples.size());
  }
  return sums;
}

}  // namespace triplescore
