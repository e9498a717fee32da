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

#include "distsup.h"

#include <algorithm>
#include <fstream>
#include <random>

#include "util.h"

namespace triplescore {

DocumentMentions::DocumentMentions(const PersonDocument& doc,
                                   const EntityLexicon& lexicon) {
  AliasMatcher matcher({&lexicon});
  TokenStream all = normalize_text(doc.text(), matcher, doc.full_name);
  for (const Mention& m : mentions(all, lexicon)) anywhere.insert(m.entity);
  TokenStream first =
      normalize_text(first_sentence(doc), matcher, doc.full_name);
  for (const Mention& m : mentions(first, lexicon)) {
    in_first_sentence.insert(m.entity);
  }
}

Verdict label(const DocumentMentions& doc_mentions, const std::string& entity,
              const EntityLexicon& lexicon) {
  if (!lexicon.is_canonical(entity)) {
    throw ValidationError("unknown " + to_string(lexicon.relation_type()) +
                          " entity '" + entity + "'");
  }
  if (doc_mentions.anywhere.count(entity) == 0) return Verdict::kNegative;
  bool other_mentioned = doc_mentions.anywhere.size() > 1;
  if (doc_mentions.in_first_sentence.count(entity) != 0 && !other_mentioned) {
    return Verdict::kPositive;
  }
  return Verdict::kUnknown;
}

Verdict label(const PersonDocument& doc, const std::string& entity,
              const EntityLexicon& lexicon) {
  return label(DocumentMentions(doc, lexicon), entity, lexicon);
}

std::vector<LabeledTriple> generate_training_set(const CorpusIndex& index,
                                                 const EntityLexicon& lexicon,
                                                 const TrainingLimits& limits) {
  const RelationType relation = lexicon.relation_type();
  AliasMatcher matcher({&lexicon});
  std::vector<LabeledTriple> out;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  for (const auto& [person_id, doc] : index.documents()) {
    if (n_pos >= limits.max_pos && n_neg >= limits.max_neg) break;
    DocumentMentions summary(doc, lexicon);

    // At most one positive per person: the sole mentioned entity, and it has
    // to appear in the first sentence.
    if (n_pos < limits.max_pos && summary.anywhere.size() == 1) {
      const std::string& sole = *summary.anywhere.begin();
      if (summary.in_first_sentence.count(sole) != 0) {
        out.push_back(LabeledTriple{person_id, relation, sole, 7});
        ++n_pos;
      }
    }

    if (n_neg >= limits.max_neg || limits.negatives_per_person == 0) continue;
    std::vector<const std::string*> absent;
    for (const std::string& entity : lexicon.canonical_entities()) {
      if (summary.anywhere.count(entity) == 0) absent.push_back(&entity);
    }
    // Selection sampling over the sorted candidate list.
    std::mt19937_64 rng(mix_seed(limits.seed, person_id));
    std::size_t want = std::min(limits.negatives_per_person, absent.size());
    std::size_t remaining = absent.size();
    for (const std::string* entity : absent) {
      if (want == 0 || n_neg >= limits.max_neg) break;
      if (next_unit(rng) * static_cast<double>(remaining) <
          static_cast<double>(want)) {
        out.push_back(LabeledTriple{person_id, relation, *entity, 0});
        ++n_neg;
        --want;
      }
      --remaining;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const LabeledTriple& a, const LabeledTriple& b) {
              return std::tie(a.person_id, a.entity) <
                     std::tie(b.person_id, b.entity);
            });
  return out;
}

void save_triples(const std::vector<LabeledTriple>& triples,
                  const std::string& path, uint64_t seed) {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open()) throw IoError("cannot write file: " + path);
  out << "# triplescore training triples v1\n";
  out << "# seed=" << seed << '\n';
  for (const auto& t : triples) {
    out << t.person_id << '\t' << to_string(t.relation) << '\t' << t.entity
        << '\t' << t.score << '\n';
  }
  if (!out.good()) throw IoError("write failed: " + path);
}

std::vector<LabeledTriple> load_triples(const std::string& path) {
  LineReader in(path);
  std::vector<LabeledTriple> triples;
  std::string line;
  while (in.next(&line)) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 4) {
      throw ParseError(path, in.line_number(),
                       "expected `person TAB relation TAB entity TAB score`");
    }
    auto relation = parse_relation(fields[1]);
    if (!relation) {
      throw ParseError(path, in.line_number(),
                       "unknown relation '" + fields[1] + "'");
    }
    long long score = parse_int(fields[3], path);
    if (score < 0 || score > 7) {
      throw ParseError(path, in.line_number(), "score out of range [0,7]");
    }
    triples.push_back(LabeledTriple{fields[0], *relation, fields[2],
                                    static_cast<int>(score)});
  }
  return triples;
}

}  // namespace triplescore
