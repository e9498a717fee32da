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

#include "corpus.h"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "test_util.h"
#include "util.h"

namespace triplescore {
namespace {

using testing::TempDir;
using testing::make_doc;
using testing::make_index;
using testing::read_file;
using testing::write_file;

TEST(PersonDocument, TextJoinsSentencesWithSingleSpaces) {
  const PersonDocument doc = make_doc("p1", "Ada Lovelace", {"A.", "B.", "C."});
  EXPECT_EQ(doc.text(), "A. B. C.");
  EXPECT_EQ(make_doc("p", "P", {"Only."}).text(), "Only.");
}

TEST(FirstSentence, ReturnsFirstIngestedSentence) {
  const PersonDocument doc =
      make_doc("p1", "X", {"X was an actor.", "X died."});
  EXPECT_EQ(first_sentence(doc), "X was an actor.");
  const PersonDocument single = make_doc("p2", "Y", {"Solo."});
  EXPECT_EQ(first_sentence(single), "Solo.");
}

TEST(CorpusIndex, ValidatesInvariants) {
  EXPECT_NO_THROW(make_index({make_doc("p1", "A", {"s"})}));
  // A document with no sentences violates the construction invariant.
  std::map<std::string, PersonDocument> docs;
  docs.emplace("p1", PersonDocument{"p1", "A", {}});
  EXPECT_THROW(CorpusIndex(std::move(docs), 1), ValidationError);
  std::map<std::string, PersonDocument> mismatched;
  mismatched.emplace("other", PersonDocument{"p1", "A", {"s"}});
  EXPECT_THROW(CorpusIndex(std::move(mismatched), 1), ValidationError);
  std::map<std::string, PersonDocument> overfull;
  overfull.emplace("p1", PersonDocument{"p1", "A", {"s"}});
  EXPECT_THROW(CorpusIndex(std::move(overfull), 0), ValidationError);
}

TEST(IngestSentences, EmptySentencesFile) {
  TempDir tmp;
  write_file(tmp.path("sentences.tsv"), "");
  write_file(tmp.path("persons.tsv"), "p1\tAlice\np2\tBob\np3\tCarol\n");
  const CorpusIndex index =
      ingest_sentences(tmp.path("sentences.tsv"), tmp.path("persons.tsv"));
  EXPECT_EQ(index.persons_requested(), 3u);
  EXPECT_EQ(index.persons_found(), 0u);
}

TEST(IngestSentences, SentencesAppearInFileOrder) {
  TempDir tmp;
  write_file(tmp.path("sentences.tsv"), "p1\tA.\np1\tB.\n");
  write_file(tmp.path("persons.tsv"), "p1\tAlice\n");
  const CorpusIndex index =
      ingest_sentences(tmp.path("sentences.tsv"), tmp.path("persons.tsv"));
  const PersonDocument* doc = index.find("p1");
  ASSERT_NE(doc, nullptr);
  EXPECT_EQ(doc->sentences, (std::vector<std::string>{"A.", "B."}));
  EXPECT_EQ(doc->text(), "A. B.");
  EXPECT_EQ(doc->full_name, "Alice");
}

TEST(IngestSentences, OrderHoldsUnderInterleaving) {
  TempDir tmp;
  write_file(tmp.path("sentences.tsv"),
             "p1\tfirst of one.\np2\tfirst of two.\np1\tsecond of one.\n"
             "p2\tsecond of two.\np1\tthird of one.\n");
  write_file(tmp.path("persons.tsv"), "p1\tOne\np2\tTwo\n");
  const CorpusIndex index =
      ingest_sentences(tmp.path("sentences.tsv"), tmp.path("persons.tsv"));
  EXPECT_EQ(index.find("p1")->sentences,
            (std::vector<std::string>{"first of one.", "second of one.",
                                      "third of one."}));
  EXPECT_EQ(index.find("p2")->sentences,
            (std::vector<std::string>{"first of two.", "second of two."}));
}

TEST(IngestSentences, UnknownPersonLinesAreCountedAndSkipped) {
  TempDir tmp;
  write_file(tmp.path("sentences.tsv"), "p1\tA.\nghost\tB.\n");
  write_file(tmp.path("persons.tsv"), "p1\tAlice\n");
  IngestReport report;
  const CorpusIndex index = ingest_sentences(
      tmp.path("sentences.tsv"), tmp.path("persons.tsv"), &report);
  EXPECT_EQ(index.persons_found(), 1u);
  EXPECT_EQ(report.sentence_lines, 2u);
  EXPECT_EQ(report.skipped_unknown_persons, 1u);
  EXPECT_EQ(index.find("ghost"), nullptr);
}

TEST(IngestSentences, MalformedLineCarriesLineNumber) {
  TempDir tmp;
  write_file(tmp.path("sentences.tsv"), "p1\tA.\nno-tab-here\n");
  write_file(tmp.path("persons.tsv"), "p1\tAlice\n");
  try {
    ingest_sentences(tmp.path("sentences.tsv"), tmp.path("persons.tsv"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 2u);
  }
}

TEST(IngestSentences, DuplicatePersonIdRejected) {
  TempDir tmp;
  write_file(tmp.path("sentences.tsv"), "");
  write_file(tmp.path("persons.tsv"), "p1\tAlice\np1\tAlice Again\n");
  EXPECT_THROW(
      ingest_sentences(tmp.path("sentences.tsv"), tmp.path("persons.tsv")),
      ValidationError);
}

TEST(CoverageFraction, MatchesPublishedValueAndEdges) {
  EXPECT_NEAR(coverage_fraction(385102, 385426), 0.9991, 0.0001);
  EXPECT_EQ(coverage_fraction(0, 5), 0.0);
  EXPECT_EQ(coverage_fraction(7, 7), 1.0);
  EXPECT_THROW(coverage_fraction(0, 0), ValidationError);
}

TEST(CoverageFraction, IndexOverload) {
  const CorpusIndex index = make_index({make_doc("p1", "A", {"s"})});
  EXPECT_EQ(coverage_fraction(index), 1.0);
}

TEST(SaveLoadCorpus, RoundTripsExactly) {
  TempDir tmp;
  const CorpusIndex index = make_index(
      {make_doc("p1", "Ada Lovelace", {"First sentence.", "Second one."}),
       make_doc("p2", "Bob", {"Tab\\escaped? No, plain text with spaces."})});
  save_corpus(index, tmp.path("cache.tsv"), 42);
  const CorpusIndex loaded = load_corpus(tmp.path("cache.tsv"));
  EXPECT_EQ(loaded.persons_requested(), index.persons_requested());
  EXPECT_EQ(loaded.persons_found(), index.persons_found());
  ASSERT_NE(loaded.find("p1"), nullptr);
  EXPECT_EQ(loaded.find("p1")->full_name, "Ada Lovelace");
  EXPECT_EQ(loaded.find("p1")->sentences, index.find("p1")->sentences);
  EXPECT_EQ(loaded.find("p2")->sentences, index.find("p2")->sentences);
}

TEST(SaveLoadCorpus, SerializationIsDeterministic) {
  TempDir tmp;
  const CorpusIndex index =
      make_index({make_doc("p1", "A", {"x."}), make_doc("p2", "B", {"y."})});
  save_corpus(index, tmp.path("a.tsv"), 1);
  save_corpus(index, tmp.path("b.tsv"), 1);
  EXPECT_EQ(read_file(tmp.path("a.tsv")), read_file(tmp.path("b.tsv")));
}

TEST(LoadCorpus, RejectsForeignFile) {
  TempDir tmp;
  write_file(tmp.path("bogus.tsv"), "not a cache\n");
  EXPECT_THROW(load_corpus(tmp.path("bogus.tsv")), ParseError);
}

}  // namespace
}  // namespace triplescore
