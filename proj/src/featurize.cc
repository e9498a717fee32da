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

#include "featurize.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "util.h"

namespace triplescore {

const std::string& to_string(OccurrenceVariant variant) {
  static const std::string kDistinct = "distinct-entities";
  static const std::string kRaw = "raw-mentions";
  return variant == OccurrenceVariant::kDistinctEntities ? kDistinct : kRaw;
}

std::optional<OccurrenceVariant> parse_variant(const std::string& name) {
  if (name == "distinct-entities") return OccurrenceVariant::kDistinctEntities;
  if (name == "raw-mentions") return OccurrenceVariant::kRawMentions;
  return std::nullopt;
}

ProfileMap build_entity_profiles(const CorpusIndex& index,
                                 const EntityLexicon& lexicon,
                                 const std::vector<LabeledTriple>& labels) {
  AliasMatcher matcher({&lexicon});
  std::map<std::string, std::map<std::string, long long>> term_counts;
  std::map<std::string, long long> doc_length;
  for (const auto& triple : labels) {
    if (triple.relation != lexicon.relation_type() || triple.score != 7) {
      continue;
    }
    if (!lexicon.is_canonical(triple.entity)) {
      throw ValidationError("labeled entity '" + triple.entity +
                            "' is not in the lexicon");
    }
    const PersonDocument* doc = index.find(triple.person_id);
    if (doc == nullptr) {
      throw ValidationError("labeled person '" + triple.person_id +
                            "' has no document");
    }
    TokenStream tokens = normalize_text(doc->text(), matcher, doc->full_name);
    auto& counts = term_counts[triple.entity];
    for (const auto& token : tokens.tokens) ++counts[token];
    doc_length[triple.entity] += static_cast<long long>(tokens.tokens.size());
  }

  std::map<std::string, long long> df;
  for (const auto& [entity, counts] : term_counts) {
    for (const auto& [token, count] : counts) ++df[token];
  }
  const double n_docs = static_cast<double>(term_counts.size());

  ProfileMap profiles;
  for (const auto& entity : lexicon.canonical_entities()) {
    EntityProfile profile;
    profile.entity = entity;
    auto it = term_counts.find(entity);
    if (it != term_counts.end() && doc_length[entity] > 0) {
      const std::string& own_token = lexicon.canonical_token(entity);
      const double length = static_cast<double>(doc_length[entity]);
      std::vector<ProfileWord> words;
      for (const auto& [token, count] : it->second) {
        if (token == own_token) continue;
        double weight = (static_cast<double>(count) / length) *
                        std::log(n_docs / static_cast<double>(df[token]));
        if (weight > 0.0) words.push_back({token, weight});
      }
      std::sort(words.begin(), words.end(),
                [](const ProfileWord& a, const ProfileWord& b) {
                  return a.weight != b.weight ? a.weight > b.weight
                                              : a.word < b.word;
                });
      if (words.size() > kProfileSize) words.resize(kProfileSize);
      profile.top_words = std::move(words);
      profile.max_weight =
          profile.top_words.empty() ? 0.0 : profile.top_words.front().weight;
    }
    profiles.emplace(entity, std::move(profile));
  }
  return profiles;
}

double tfidf_feature(const std::set<std::string>& doc_tokens,
                     const EntityProfile& profile) {
  if (profile.top_words.empty() || !(profile.max_weight > 0.0)) return 0.0;
  double sum = 0.0;
  for (const auto& word : profile.top_words) {
    if (doc_tokens.contains(word.word)) sum += word.weight / profile.max_weight;
  }
  return sum / static_cast<double>(kProfileSize);
}

double tfidf_feature(const PersonDocument& doc, const EntityProfile& profile,
                     const EntityLexicon& lexicon) {
  if (profile.top_words.empty()) return 0.0;
  TokenStream tokens = normalize_text(doc.text(), lexicon, doc.full_name);
  std::set<std::string> doc_tokens(tokens.tokens.begin(), tokens.tokens.end());
  return tfidf_feature(doc_tokens, profile);
}

int occurrence_order_score(const PersonDocument& doc, const std::string& entity,
                           const EntityLexicon& lexicon,
                           OccurrenceVariant variant) {
  if (!lexicon.is_canonical(entity)) {
    throw ValidationError("unknown entity '" + entity + "'");
  }
  TokenStream tokens =
      normalize_text(strip_quoted(doc.text()), lexicon, doc.full_name);
  const std::vector<Mention> seq = mentions(tokens, lexicon);
  if (variant == OccurrenceVariant::kDistinctEntities) {
    std::set<std::string> seen;
    int rank = 0;
    for (const auto& mention : seq) {
      if (!seen.insert(mention.entity).second) continue;
      ++rank;
      if (mention.entity == entity) return std::max(0, 8 - rank);
    }
    return 0;
  }
  int position = 0;
  for (const auto& mention : seq) {
    ++position;
    if (mention.entity == entity) return std::max(0, 8 - position);
  }
  return 0;
}

std::optional<FeatureVector> assemble_features(const std::string& person_id,
                                               const std::string& entity,
                                               const FeatureContext& context) {
  const PersonDocument* doc = context.corpus->find(person_id);
  if (doc == nullptr) return std::nullopt;
  if (!context.lexicon->is_canonical(entity)) {
    throw ValidationError("unknown entity '" + entity + "'");
  }
  FeatureVector features;
  features.w2v = w2v_feature(collapse_spaces(doc->full_name),
                             context.lexicon->canonical_token(entity),
                             *context.embeddings);
  auto it = context.profiles->find(entity);
  features.tfidf = it == context.profiles->end()
                       ? 0.0
                       : tfidf_feature(*doc, it->second, *context.lexicon);
  features.occ =
      occurrence_order_score(*doc, entity, *context.lexicon, context.variant);
  return features;
}

void save_profiles(const ProfileMap& profiles, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open()) throw IoError("cannot write file: " + path);
  for (const auto& [entity, profile] : profiles) {
    for (const auto& word : profile.top_words) {
      out << entity << '\t' << word.word << '\t' << format_double(word.weight)
          << '\n';
    }
  }
  if (!out.good()) throw IoError("write failed: " + path);
}

ProfileMap load_profiles(const std::string& path) {
  LineReader in(path);
  ProfileMap profiles;
  std::string line;
  while (in.next(&line)) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(path, in.line_number(),
                       "expected `entity TAB word TAB weight`");
    }
    double weight = parse_double(fields[2], path);
    if (!std::isfinite(weight) || weight < 0.0) {
      throw ParseError(path, in.line_number(), "weight must be finite and >= 0");
    }
    auto& profile = profiles[fields[0]];
    profile.entity = fields[0];
    if (profile.top_words.size() >= kProfileSize) {
      throw ParseError(path, in.line_number(),
                       "more than " + std::to_string(kProfileSize) +
                           " words for entity '" + fields[0] + "'");
    }
    if (!profile.top_words.empty() &&
        weight > profile.top_words.back().weight) {
      throw ParseError(path, in.line_number(),
                       "profile weights must be non-increasing");
    }
    profile.top_words.push_back({fields[1], weight});
    profile.max_weight = profile.top_words.front().weight;
  }
  return profiles;
}

}  // namespace triplescore
