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

#include "scorer.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "oracles.h"
#include "test_util.h"
#include "util.h"

namespace triplescore {
namespace {

using testing::TempDir;
using testing::make_doc;
using testing::make_index;
using testing::make_lexicon;
using testing::read_file;
using testing::write_file;

EntityLexicon eight_professions() {
  std::map<std::string, std::set<std::string>> entries;
  for (int i = 1; i <= 8; ++i) {
    const std::string name = "Prof" + std::to_string(i);
    entries[name] = {name};
  }
  return make_lexicon(RelationType::kProfession, entries);
}

// Model whose regression ignores the features: linreg output equals `bias`.
ScoringModel constant_regression_model(double bias) {
  ScoringModel model;
  RelationModel relation{eight_professions(), {}, {{0.0, 0.0}, bias}};
  model.relations.emplace(RelationType::kProfession, std::move(relation));
  return model;
}

TEST(FitOls, RecoversExactLinearRelation) {
  // y = 7 x1, second feature identically zero.
  const std::vector<std::vector<double>> x = {{0.0, 0.0}, {0.5, 0.0},
                                              {1.0, 0.0}};
  const std::vector<double> y = {0.0, 3.5, 7.0};
  const RegressionModel model = fit_ols(x, y);
  ASSERT_EQ(model.weights.size(), 2u);
  EXPECT_NEAR(model.weights[0], 7.0, 1e-6);
  EXPECT_NEAR(model.weights[1], 0.0, 1e-6);
  EXPECT_NEAR(model.bias, 0.0, 1e-6);
}

TEST(FitOls, TwoPointSystemReproducesTargets) {
  const std::vector<std::vector<double>> x = {{0.0, 0.0}, {1.0, 1.0}};
  const std::vector<double> y = {0.0, 7.0};
  const RegressionModel model = fit_ols(x, y);
  EXPECT_NEAR(predict(model, FeatureVector{0.0, 0.0, 0}), 0.0, 1e-6);
  EXPECT_NEAR(predict(model, FeatureVector{1.0, 1.0, 0}), 7.0, 1e-6);
}

TEST(FitOls, SingularDuplicatedRowsMatchPseudoinverse) {
  const std::vector<std::vector<double>> x(4, {0.3, 0.4});
  const std::vector<double> y(4, 5.0);
  const RegressionModel model = fit_ols(x, y);
  for (double w : model.weights) EXPECT_TRUE(std::isfinite(w));
  EXPECT_TRUE(std::isfinite(model.bias));
  EXPECT_NEAR(predict(model, FeatureVector{0.3, 0.4, 0}), 5.0, 1e-6);
  const testing::OracleFit oracle = testing::oracle_ols(x, y);
  EXPECT_NEAR(model.weights[0], oracle.weights[0], 1e-5);
  EXPECT_NEAR(model.weights[1], oracle.weights[1], 1e-5);
  EXPECT_NEAR(model.bias, oracle.bias, 1e-5);
}

TEST(FitOls, MatchesOracleOnRandomSystems) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 10 + rng() % 21;
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < n; ++i) {
      x.push_back({next_unit(rng), next_unit(rng)});
      y.push_back(next_unit(rng) * 7.0);
    }
    const RegressionModel model = fit_ols(x, y);
    const testing::OracleFit oracle = testing::oracle_ols(x, y);
    ASSERT_EQ(model.weights.size(), oracle.weights.size());
    for (std::size_t j = 0; j < model.weights.size(); ++j) {
      EXPECT_NEAR(model.weights[j], oracle.weights[j], 1e-6) << trial;
    }
    EXPECT_NEAR(model.bias, oracle.bias, 1e-6) << trial;
  }
}

TEST(FitOls, RejectsBadInput) {
  EXPECT_THROW(fit_ols({{0.5, 0.5}}, {3.0}), InsufficientDataError);
  EXPECT_THROW(fit_ols({}, {}), InsufficientDataError);
  EXPECT_THROW(fit_ols({{0.5, 0.5}, {0.2}}, {3.0, 4.0}), ValidationError);
  EXPECT_THROW(fit_ols({{0.5, 0.5}, {0.2, 0.1}}, {3.0}), ValidationError);
  const double nan = std::nan("");
  EXPECT_THROW(fit_ols({{nan, 0.5}, {0.2, 0.1}}, {3.0, 4.0}), ValidationError);
}

TEST(Predict, BiasClampAndRange) {
  EXPECT_EQ(predict(RegressionModel{{0.0, 0.0}, 3.2},
                    FeatureVector{0.9, 0.9, 0}),
            3.2);
  EXPECT_EQ(predict(RegressionModel{{5.0, 5.0}, 0.1},
                    FeatureVector{0.9, 0.9, 0}),
            7.0);  // raw 9.1 clamps down
  EXPECT_EQ(predict(RegressionModel{{-1.0, 0.0}, 0.0},
                    FeatureVector{0.5, 0.0, 0}),
            0.0);  // raw -0.5 clamps up
  EXPECT_THROW(predict(RegressionModel{{1.0}, 0.0}, FeatureVector{}),
               ValidationError);
}

TEST(Predict, FeatureOrderPermutationWithPermutedWeights) {
  const RegressionModel model{{2.0, 5.0}, 0.5};
  const RegressionModel swapped{{5.0, 2.0}, 0.5};
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const double a = next_unit(rng), b = next_unit(rng);
    // Summation order differs, so agreement is up to rounding, not bitwise.
    EXPECT_DOUBLE_EQ(predict(model, FeatureVector{a, b, 0}),
                     predict(swapped, FeatureVector{b, a, 0}));
  }
}

TEST(CombinedScore, FormulaAndMonotonicity) {
  EXPECT_EQ(combined_score(7, 7.0), 7.0);
  EXPECT_EQ(combined_score(0, 7.0), 3.5);
  EXPECT_EQ(combined_score(6, 2.0), 4.0);
  for (int occ = 0; occ < 7; ++occ) {
    EXPECT_LE(combined_score(occ, 3.0), combined_score(occ + 1, 3.0));
    EXPECT_LE(combined_score(occ, 3.0), combined_score(occ, 3.5));
  }
}

TEST(ScoreTriple, AbsentPersonScoresThree) {
  const ScoringModel model = constant_regression_model(0.0);
  const CorpusIndex corpus = make_index({});
  EXPECT_EQ(score_triple("ghost", RelationType::kProfession, "Prof1", model,
                         corpus),
            3);
}

TEST(ScoreTriple, DistantVerdictsOverrideFeatures) {
  // Regression would predict 7; the Negative verdict must still win.
  const ScoringModel model = constant_regression_model(7.0);
  const CorpusIndex corpus =
      make_index({make_doc("p1", "Ann", {"Ann was a Prof1."})});
  EXPECT_EQ(score_triple("p1", RelationType::kProfession, "Prof1", model,
                         corpus),
            7);
  EXPECT_EQ(score_triple("p1", RelationType::kProfession, "Prof2", model,
                         corpus),
            0);
}

TEST(ScoreTriple, UnknownEntityAndRelationAreErrors) {
  const ScoringModel model = constant_regression_model(0.0);
  const CorpusIndex corpus =
      make_index({make_doc("p1", "Ann", {"Ann was a Prof1."})});
  EXPECT_THROW(score_triple("p1", RelationType::kProfession, "Quark", model,
                            corpus),
               ValidationError);
  EXPECT_THROW(score_triple("p1", RelationType::kNationality, "Prof1", model,
                            corpus),
               ValidationError);
}

TEST(ScoreTriple, WorkflowTableOverForcedLinregAndOcc) {
  // One document mentioning Prof1..Prof8 in order: occ(ProfK) = 8-K, all
  // verdicts Unknown because eight entities appear.
  std::string sentence = "Ann knows";
  for (int i = 1; i <= 8; ++i) sentence += " Prof" + std::to_string(i);
  const CorpusIndex corpus = make_index({make_doc("p1", "Ann", {sentence + "."})});

  const std::map<double, std::vector<int>> expected = {
      // occ:              0  1  2  3  4  5  6  7
      {0.0, std::vector<int>{0, 1, 1, 2, 2, 3, 3, 4}},
      {3.5, std::vector<int>{2, 2, 3, 3, 4, 4, 5, 5}},
      {7.0, std::vector<int>{4, 4, 5, 5, 6, 6, 7, 7}},
  };
  for (const auto& [bias, by_occ] : expected) {
    const ScoringModel model = constant_regression_model(bias);
    for (int k = 1; k <= 8; ++k) {
      const std::string entity = "Prof" + std::to_string(k);
      const int occ = 8 - k;
      EXPECT_EQ(score_triple("p1", RelationType::kProfession, entity, model,
                             corpus),
                by_occ[static_cast<std::size_t>(occ)])
          << "bias=" << bias << " occ=" << occ;
    }
  }
}

TEST(ScoreFile, AppendsScoresPreservingOrder) {
  TempDir tmp;
  const ScoringModel model = constant_regression_model(0.0);
  const CorpusIndex corpus =
      make_index({make_doc("p1", "Ann", {"Ann was a Prof1."})});
  write_file(tmp.path("in.tsv"),
             "p1\tprofession\tProf1\n"
             "p1\tprofession\tProf2\n"
             "ghost\tprofession\tProf3\n");
  const ScoreFileStats stats =
      score_file(tmp.path("in.tsv"), model, corpus, tmp.path("out.tsv"));
  EXPECT_EQ(stats, (ScoreFileStats{3, 0}));
  EXPECT_EQ(read_file(tmp.path("out.tsv")),
            "p1\tprofession\tProf1\t7\n"
            "p1\tprofession\tProf2\t0\n"
            "ghost\tprofession\tProf3\t3\n");
}

TEST(ScoreFile, EmptyInputYieldsEmptyOutput) {
  TempDir tmp;
  const ScoringModel model = constant_regression_model(0.0);
  const CorpusIndex corpus = make_index({});
  write_file(tmp.path("in.tsv"), "");
  const ScoreFileStats stats =
      score_file(tmp.path("in.tsv"), model, corpus, tmp.path("out.tsv"));
  EXPECT_EQ(stats, (ScoreFileStats{0, 0}));
  EXPECT_EQ(read_file(tmp.path("out.tsv")), "");
}

TEST(ScoreFile, IdempotentAndThreadCountInvariant) {
  TempDir tmp;
  const ScoringModel model = constant_regression_model(3.5);
  std::vector<PersonDocument> docs;
  std::string triples;
  for (int p = 0; p < 20; ++p) {
    const std::string id = "p" + std::to_string(p);
    docs.push_back(make_doc(id, "N" + std::to_string(p),
                            {"knows Prof" + std::to_string(1 + p % 8) + "."}));
    for (int e = 1; e <= 8; ++e) {
      triples += id + "\tprofession\tProf" + std::to_string(e) + "\n";
    }
  }
  const CorpusIndex corpus = make_index(std::move(docs));
  write_file(tmp.path("in.tsv"), triples);
  score_file(tmp.path("in.tsv"), model, corpus, tmp.path("a.tsv"));
  score_file(tmp.path("in.tsv"), model, corpus, tmp.path("b.tsv"));
  score_file(tmp.path("in.tsv"), model, corpus, tmp.path("c.tsv"), false, 4);
  const std::string a = read_file(tmp.path("a.tsv"));
  EXPECT_EQ(a, read_file(tmp.path("b.tsv")));
  EXPECT_EQ(a, read_file(tmp.path("c.tsv")));
}

TEST(ScoreFile, MalformedLinesFailWithLineNumbers) {
  TempDir tmp;
  const ScoringModel model = constant_regression_model(0.0);
  const CorpusIndex corpus = make_index({});
  write_file(tmp.path("in.tsv"),
             "p1\tprofession\tProf1\n"
             "broken line\n"
             "p1\tprofession\tAtlantis\n");
  try {
    score_file(tmp.path("in.tsv"), model, corpus, tmp.path("out.tsv"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 2u);
    const std::string what = err.what();
    EXPECT_NE(what.find("line 2"), std::string::npos);
    EXPECT_NE(what.find("line 3"), std::string::npos);
    EXPECT_NE(what.find("Atlantis"), std::string::npos);
  }
  EXPECT_FALSE(std::filesystem::exists(tmp.path("out.tsv")));
}

TEST(ScoreFile, SkipBadKeepsGoodLines) {
  TempDir tmp;
  const ScoringModel model = constant_regression_model(0.0);
  const CorpusIndex corpus = make_index({});
  write_file(tmp.path("in.tsv"),
             "p1\tprofession\tProf1\n"
             "broken line\n"
             "p2\tprofession\tProf2\n");
  const ScoreFileStats stats = score_file(tmp.path("in.tsv"), model, corpus,
                                          tmp.path("out.tsv"), true);
  EXPECT_EQ(stats, (ScoreFileStats{2, 1}));
  EXPECT_EQ(read_file(tmp.path("out.tsv")),
            "p1\tprofession\tProf1\t3\np2\tprofession\tProf2\t3\n");
}

ScoringModel trained_fixture_model() {
  std::vector<std::string> corpus_tokens;
  for (int i = 0; i < 200; ++i) {
    corpus_tokens.push_back("AnnSmith");
    corpus_tokens.push_back("Prof1");
    corpus_tokens.push_back("filler" + std::to_string(i % 3));
  }
  EmbeddingConfig config;
  config.dimension = 8;
  config.window = 2;
  config.negative_samples = 2;
  config.epochs = 2;
  config.min_count = 1;
  config.seed = 5;
  ScoringModel model;
  model.embeddings = train_skipgram(corpus_tokens, config);
  model.embedding_config = config;
  model.seed = 5;
  ProfileMap profiles;
  EntityProfile prof1;
  prof1.entity = "Prof1";
  prof1.top_words = {{"stage", 0.5}, {"film", 0.25}};
  prof1.max_weight = 0.5;
  profiles.emplace("Prof1", prof1);
  for (int i = 2; i <= 8; ++i) {
    EntityProfile empty;
    empty.entity = "Prof" + std::to_string(i);
    profiles.emplace(empty.entity, empty);
  }
  RelationModel relation{eight_professions(), std::move(profiles),
                         {{1.25, -0.5}, 2.0}};
  model.relations.emplace(RelationType::kProfession, std::move(relation));
  return model;
}

TEST(SaveLoadModel, RoundTripsAndScoresIdentically) {
  TempDir tmp;
  const ScoringModel model = trained_fixture_model();
  save_model(model, tmp.path("bundle"));
  const ScoringModel loaded = load_model(tmp.path("bundle"));

  EXPECT_EQ(loaded.seed, model.seed);
  EXPECT_EQ(loaded.variant, model.variant);
  const auto& relation = loaded.relation(RelationType::kProfession);
  EXPECT_EQ(relation.regression,
            model.relation(RelationType::kProfession).regression);

  const CorpusIndex corpus = make_index(
      {make_doc("p1", "Ann Smith", {"Ann Smith knows Prof1 and Prof2."}),
       make_doc("p2", "Bo Craig", {"Bo Craig knows Prof3."})});
  for (int e = 1; e <= 8; ++e) {
    const std::string entity = "Prof" + std::to_string(e);
    for (const auto& person : {"p1", "p2", "ghost"}) {
      EXPECT_EQ(score_triple(person, RelationType::kProfession, entity, loaded,
                             corpus),
                score_triple(person, RelationType::kProfession, entity, model,
                             corpus))
          << person << " " << entity;
    }
  }

  // Re-saving the loaded model reproduces the bundle byte for byte.
  save_model(loaded, tmp.path("bundle2"));
  for (const auto& name :
       {"meta.tsv", "embeddings.txt", "lexicon_profession.tsv",
        "profiles_profession.tsv", "weights_profession.tsv"}) {
    EXPECT_EQ(read_file(tmp.path("bundle") + "/" + name),
              read_file(tmp.path("bundle2") + "/" + name))
        << name;
  }
}

TEST(LoadModel, RejectsDamagedBundles) {
  TempDir tmp;
  const ScoringModel model = trained_fixture_model();
  save_model(model, tmp.path("bundle"));

  EXPECT_THROW(load_model(tmp.path("missing")), IoError);

  write_file(tmp.path("bundle") + "/weights_profession.tsv",
             "w2v\t1.25\nbias\t2\n");
  EXPECT_THROW(load_model(tmp.path("bundle")), ValidationError);
  write_file(tmp.path("bundle") + "/weights_profession.tsv",
             "w2v\t1.25\ntfidf\t-0.5\nbias\t2\nextra\t1\n");
  EXPECT_THROW(load_model(tmp.path("bundle")), ValidationError);
}

TEST(ScoringModel, MissingRelationIsAnError) {
  const ScoringModel model = constant_regression_model(0.0);
  EXPECT_THROW(model.relation(RelationType::kNationality), ValidationError);
}

}  // namespace
}  // namespace triplescore
