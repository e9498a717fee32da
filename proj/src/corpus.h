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

#ifndef TRIPLESCORE_CORPUS_H_
#define TRIPLESCORE_CORPUS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace triplescore {

// One person's assembled text. Sentences keep the order of their lines in
// the sentences file; text() is the single-space join and is never re-split.
struct PersonDocument {
  std::string person_id;
  std::string full_name;
  std::vector<std::string> sentences;

  std::string text() const;
};

// Returns sentences[0]; documents in a CorpusIndex always have at least one.
const std::string& first_sentence(const PersonDocument& doc);

// Immutable after construction; safe to share across threads read-only.
class CorpusIndex {
 public:
  CorpusIndex() = default;
  // Validates the invariants: non-empty sentence lists, keys matching
  // person_id, persons_found <= persons_requested.
  CorpusIndex(std::map<std::string, PersonDocument> documents,
              std::size_t persons_requested);

  const std::map<std::string, PersonDocument>& documents() const {
    return documents_;
  }
  // Null when the person has no document.
  const PersonDocument* find(const std::string& person_id) const;

  std::size_t persons_requested() const { return persons_requested_; }
  std::size_t persons_found() const { return documents_.size(); }

 private:
  std::map<std::string, PersonDocument> documents_;
  std::size_t persons_requested_ = 0;
};

struct IngestReport {
  std::size_t sentence_lines = 0;
  std::size_t skipped_unknown_persons = 0;
};

// sentences file: one `person_id TAB sentence` per line; persons manifest:
// one `person_id TAB full_name` per line. Lines naming persons outside the
// manifest are skipped and counted in the report.
CorpusIndex ingest_sentences(const std::string& sentences_path,
                             const std::string& persons_path,
                             IngestReport* report = nullptr);

double coverage_fraction(std::size_t persons_found,
                         std::size_t persons_requested);
double coverage_fraction(const CorpusIndex& index);

// Text cache, deterministic and exactly round-tripping.
void save_corpus(const CorpusIndex& index, const std::string& path,
                 uint64_t seed);
CorpusIndex load_corpus(const std::string& path);

}  // namespace triplescore

#endif  // TRIPLESCORE_CORPUS_H_
