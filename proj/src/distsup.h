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

#ifndef TRIPLESCORE_DISTSUP_H_
#define TRIPLESCORE_DISTSUP_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "corpus.h"
#include "lexicon.h"

namespace triplescore {

struct LabeledTriple {
  std::string person_id;
  RelationType relation;
  std::string entity;
  int score;  // 0..7; distant supervision emits only 0 and 7

  bool operator==(const LabeledTriple&) const = default;
};

enum class Verdict { kPositive, kNegative, kUnknown };

// Entity mention summary for one normalized document; build once per person
// when labeling many entities.
struct DocumentMentions {
  std::set<std::string> anywhere;
  std::set<std::string> in_first_sentence;

  DocumentMentions(const PersonDocument& doc, const EntityLexicon& lexicon);
};

// Negative: zero mentions in the whole document. Positive: mentioned in the
// first sentence and no other same-relation entity mentioned anywhere.
Verdict label(const DocumentMentions& doc_mentions, const std::string& entity,
              const EntityLexicon& lexicon);
Verdict label(const PersonDocument& doc, const std::string& entity,
              const EntityLexicon& lexicon);

struct TrainingLimits {
  std::size_t max_pos = 1000000;
  std::size_t max_neg = 1000000;
  std::size_t negatives_per_person = 3;
  uint64_t seed = 1;
};

// Positives scored 7, sampled negatives scored 0; output sorted by
// (person_id, entity). Negative sampling is seeded per person, so the result
// depends only on the seed, not on iteration order.
std::vector<LabeledTriple> generate_training_set(const CorpusIndex& index,
                                                 const EntityLexicon& lexicon,
                                                 const TrainingLimits& limits);

// train.tsv: `person_id TAB relation TAB entity TAB score` plus '#' headers.
void save_triples(const std::vector<LabeledTriple>& triples,
                  const std::string& path, uint64_t seed);
std::vector<LabeledTriple> load_triples(const std::string& path);

}  // namespace triplescore

#endif  // TRIPLESCORE_DISTSUP_H_
