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

#ifndef TRIPLESCORE_FEATURIZE_H_
#define TRIPLESCORE_FEATURIZE_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "corpus.h"
#include "distsup.h"
#include "embedding.h"
#include "lexicon.h"

namespace triplescore {

inline constexpr std::size_t kProfileSize = 20;

struct ProfileWord {
  std::string word;
  double weight = 0.0;

  bool operator==(const ProfileWord&) const = default;
};

// Top TF-IDF words of one entity's pseudo-document; empty when the entity
// has no positively labeled person. The entity's own token never appears.
struct EntityProfile {
  std::string entity;
  // Weight descending, ties broken lexicographically; at most kProfileSize.
  std::vector<ProfileWord> top_words;
  double max_weight = 0.0;  // top_words[0].weight, 0 when empty

  bool operator==(const EntityProfile&) const = default;
};

using ProfileMap = std::map<std::string, EntityProfile>;

// Pseudo-document of entity e = concatenated normalized documents of the
// persons positively labeled with e; weight(t) = tf(t)/|D_e| * ln(N/df(t))
// over the N non-empty pseudo-documents. Zero-weight words are dropped.
// Every lexicon entity gets an entry, possibly empty.
ProfileMap build_entity_profiles(const CorpusIndex& index,
                                 const EntityLexicon& lexicon,
                                 const std::vector<LabeledTriple>& labels);

// (1/20) * sum over top words present in the document of weight/max_weight.
double tfidf_feature(const std::set<std::string>& doc_tokens,
                     const EntityProfile& profile);
double tfidf_feature(const PersonDocument& doc, const EntityProfile& profile,
                     const EntityLexicon& lexicon);

enum class OccurrenceVariant {
  kDistinctEntities,  // k-th distinct entity by first mention scores 8-k
  kRawMentions,       // comparison variant: k counts every prior mention
};

// "distinct-entities" / "raw-mentions", the config-file spelling.
const std::string& to_string(OccurrenceVariant variant);
std::optional<OccurrenceVariant> parse_variant(const std::string& name);

// Quoted spans are stripped before normalization; an entity never mentioned
// scores 0.
int occurrence_order_score(
    const PersonDocument& doc, const std::string& entity,
    const EntityLexicon& lexicon,
    OccurrenceVariant variant = OccurrenceVariant::kDistinctEntities);

struct FeatureVector {
  double w2v = 0.5;   // in [0,1]
  double tfidf = 0.0;  // in [0,1]
  int occ = 0;         // in [0,7]

  bool operator==(const FeatureVector&) const = default;
};

// Borrowed model pieces needed to featurize one relation's triples.
struct FeatureContext {
  const CorpusIndex* corpus = nullptr;
  const EntityLexicon* lexicon = nullptr;
  const ProfileMap* profiles = nullptr;
  const EmbeddingTable* embeddings = nullptr;
  OccurrenceVariant variant = OccurrenceVariant::kDistinctEntities;
};

// nullopt when the person has no document; the scoring workflow turns that
// into the fixed absent-person score.
std::optional<FeatureVector> assemble_features(const std::string& person_id,
                                               const std::string& entity,
                                               const FeatureContext& context);

// profiles.tsv: `entity TAB word TAB weight`, weight descending per entity.
// Empty profiles produce no lines.
void save_profiles(const ProfileMap& profiles, const std::string& path);
ProfileMap load_profiles(const std::string& path);

}  // namespace triplescore

#endif  // TRIPLESCORE_FEATURIZE_H_
