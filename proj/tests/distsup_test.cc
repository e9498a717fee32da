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

#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "test_util.h"
#include "util.h"

namespace triplescore {
namespace {

using testing::TempDir;
using testing::make_doc;
using testing::make_index;
using testing::make_lexicon;

EntityLexicon profession_lexicon() {
  return make_lexicon(RelationType::kProfession,
                      {{"Actor", {"Actor", "actress"}},
                       {"Director", {"Director"}},
                       {"Chemist", {"Chemist"}},
                       {"Painter", {"Painter"}}});
}

TEST(Label, SoleFirstSentenceMentionIsPositive) {
  const EntityLexicon lexicon = profession_lexicon();
  const PersonDocument doc =
      make_doc("p1", "X", {"X was an actor.", "X lived long."});
  EXPECT_EQ(label(doc, "Actor", lexicon), Verdict::kPositive);
}

TEST(Label, RepeatMentionsOfTheSameEntityStayPositive) {
  const EntityLexicon lexicon = profession_lexicon();
  const PersonDocument doc = make_doc(
      "p1", "X", {"X was an actor.", "As an actor, X won every prize."});
  EXPECT_EQ(label(doc, "Actor", lexicon), Verdict::kPositive);
}

TEST(Label, NoMentionAnywhereIsNegative) {
  const EntityLexicon lexicon = profession_lexicon();
  const PersonDocument doc =
      make_doc("p1", "X", {"X was an actor.", "X lived long."});
  EXPECT_EQ(label(doc, "Chemist", lexicon), Verdict::kNegative);
}

TEST(Label, CompetitorAnywhereBlocksPositive) {
  const EntityLexicon lexicon = profession_lexicon();
  const PersonDocument doc = make_doc(
      "p1", "X",
      {"X was an actor.", "X retired early.", "X worked as a director."});
  EXPECT_EQ(label(doc, "Actor", lexicon), Verdict::kUnknown);
  EXPECT_EQ(label(doc, "Director", lexicon), Verdict::kUnknown);
}

TEST(Label, MentionOutsideFirstSentenceIsUnknown) {
  const EntityLexicon lexicon = profession_lexicon();
  const PersonDocument doc =
      make_doc("p1", "X", {"X was born in 1900.", "X was a painter."});
  EXPECT_EQ(label(doc, "Painter", lexicon), Verdict::kUnknown);
}

TEST(Label, AliasMentionsCount) {
  const EntityLexicon lexicon = profession_lexicon();
  const PersonDocument doc = make_doc("p1", "X", {"X was an actress."});
  EXPECT_EQ(label(doc, "Actor", lexicon), Verdict::kPositive);
}

TEST(Label, UnknownEntityThrows) {
  const EntityLexicon lexicon = profession_lexicon();
  const PersonDocument doc = make_doc("p1", "X", {"X was an actor."});
  EXPECT_THROW(label(doc, "Astronaut", lexicon), ValidationError);
}

TEST(DocumentMentions, SplitsFirstSentenceFromWholeDocument) {
  const EntityLexicon lexicon = profession_lexicon();
  const PersonDocument doc =
      make_doc("p1", "X", {"X was an actor.", "X was a director too."});
  const DocumentMentions summary(doc, lexicon);
  EXPECT_EQ(summary.anywhere, (std::set<std::string>{"Actor", "Director"}));
  EXPECT_EQ(summary.in_first_sentence, (std::set<std::string>{"Actor"}));
}

TEST(GenerateTrainingSet, OnePositivePlusSampledNegatives) {
  std::map<std::string, std::set<std::string>> entries;
  for (int i = 0; i < 9; ++i) {
    const std::string name = "Job" + std::to_string(i);
    entries[name] = {name};
  }
  entries["Actor"] = {"Actor", "actor"};
  const EntityLexicon lexicon =
      make_lexicon(RelationType::kProfession, entries);
  const CorpusIndex index =
      make_index({make_doc("p1", "X", {"X was an actor."})});
  TrainingLimits limits;
  limits.negatives_per_person = 2;
  const std::vector<LabeledTriple> triples =
      generate_training_set(index, lexicon, limits);
  ASSERT_EQ(triples.size(), 3u);
  int positives = 0;
  for (const auto& t : triples) {
    EXPECT_EQ(t.person_id, "p1");
    EXPECT_EQ(t.relation, RelationType::kProfession);
    if (t.score == 7) {
      ++positives;
      EXPECT_EQ(t.entity, "Actor");
    } else {
      EXPECT_EQ(t.score, 0);
      EXPECT_NE(t.entity, "Actor");
    }
  }
  EXPECT_EQ(positives, 1);
}

TEST(GenerateTrainingSet, MaxPosZeroYieldsOnlyNegatives) {
  const EntityLexicon lexicon = profession_lexicon();
  const CorpusIndex index =
      make_index({make_doc("p1", "X", {"X was an actor."})});
  TrainingLimits limits;
  limits.max_pos = 0;
  limits.negatives_per_person = 2;
  const std::vector<LabeledTriple> triples =
      generate_training_set(index, lexicon, limits);
  ASSERT_FALSE(triples.empty());
  for (const auto& t : triples) EXPECT_EQ(t.score, 0);
}

TEST(GenerateTrainingSet, EmptyCorpusYieldsEmptyList) {
  const EntityLexicon lexicon = profession_lexicon();
  const CorpusIndex index = make_index({});
  EXPECT_TRUE(generate_training_set(index, lexicon, {}).empty());
}

TEST(GenerateTrainingSet, ScoresAreZeroOrSevenAndVerdictsConsistent) {
  const EntityLexicon lexicon = profession_lexicon();
  const CorpusIndex index = make_index({
      make_doc("p01", "A", {"A was an actor."}),
      make_doc("p02", "B", {"B was a chemist.", "B later directed plays."}),
      make_doc("p03", "C", {"C wrote books."}),
      make_doc("p04", "D", {"D was a painter.", "D painted."}),
      make_doc("p05", "E", {"E, a director, retired."}),
  });
  const std::vector<LabeledTriple> triples =
      generate_training_set(index, lexicon, {});
  ASSERT_FALSE(triples.empty());
  for (const auto& t : triples) {
    ASSERT_TRUE(t.score == 0 || t.score == 7);
    const Verdict verdict = label(*index.find(t.person_id), t.entity, lexicon);
    if (t.score == 7) {
      EXPECT_EQ(verdict, Verdict::kPositive) << t.person_id << " " << t.entity;
    } else {
      EXPECT_EQ(verdict, Verdict::kNegative) << t.person_id << " " << t.entity;
    }
  }
}

TEST(GenerateTrainingSet, DeterministicAndSortedByPersonThenEntity) {
  const EntityLexicon lexicon = profession_lexicon();
  const CorpusIndex index = make_index({
      make_doc("p2", "B", {"B was a chemist."}),
      make_doc("p1", "A", {"A was an actor."}),
  });
  const auto first = generate_training_set(index, lexicon, {});
  const auto second = generate_training_set(index, lexicon, {});
  EXPECT_EQ(first, second);
  for (std::size_t i = 1; i < first.size(); ++i) {
    EXPECT_LE(std::tie(first[i - 1].person_id, first[i - 1].entity),
              std::tie(first[i].person_id, first[i].entity));
  }
}

TEST(GenerateTrainingSet, SeedChangesNegativeSample) {
  std::map<std::string, std::set<std::string>> entries;
  for (int i = 0; i < 30; ++i) {
    const std::string name = "Job" + std::to_string(i);
    entries[name] = {name};
  }
  const EntityLexicon lexicon =
      make_lexicon(RelationType::kProfession, entries);
  const CorpusIndex index = make_index({make_doc("p1", "X", {"X lived."})});
  TrainingLimits limits_a;
  limits_a.seed = 1;
  TrainingLimits limits_b;
  limits_b.seed = 2;
  const auto a = generate_training_set(index, lexicon, limits_a);
  const auto b = generate_training_set(index, lexicon, limits_b);
  ASSERT_EQ(a.size(), 3u);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_NE(a, b);  // 3 of 30 entities; collision over seeds is ~1e-3
}

TEST(SaveLoadTriples, RoundTrips) {
  TempDir tmp;
  const std::vector<LabeledTriple> triples = {
      {"p1", RelationType::kProfession, "Actor", 7},
      {"p1", RelationType::kProfession, "Chemist", 0},
      {"p2", RelationType::kNationality, "Italy", 7},
  };
  save_triples(triples, tmp.path("train.tsv"), 42);
  EXPECT_EQ(load_triples(tmp.path("train.tsv")), triples);
}

TEST(LoadTriples, RejectsMalformedLines) {
  TempDir tmp;
  testing::write_file(tmp.path("bad1.tsv"), "p1\tprofession\tActor\n");
  EXPECT_THROW(load_triples(tmp.path("bad1.tsv")), ParseError);
  testing::write_file(tmp.path("bad2.tsv"), "p1\tcolor\tActor\t7\n");
  EXPECT_THROW(load_triples(tmp.path("bad2.tsv")), ParseError);
  testing::write_file(tmp.path("bad3.tsv"), "p1\tprofession\tActor\t9\n");
  EXPECT_THROW(load_triples(tmp.path("bad3.tsv")), ParseError);
}

}  // namespace
}  // namespace triplescore
