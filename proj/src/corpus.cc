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

#include <fstream>
#include <unordered_map>

#include "util.h"

namespace triplescore {

namespace {
constexpr char kCacheMagic[] = "# triplescore corpus cache v1";
}

std::string PersonDocument::text() const {
  std::string joined;
  std::size_t total = 0;
  for (const auto& s : sentences) total += s.size() + 1;
  joined.reserve(total);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (i > 0) joined += ' ';
    joined += sentences[i];
  }
  return joined;
}

const std::string& first_sentence(const PersonDocument& doc) {
  if (doc.sentences.empty()) {
    throw ValidationError("document for '" + doc.person_id +
                          "' has no sentences");
  }
  return doc.sentences.front();
}

CorpusIndex::CorpusIndex(std::map<std::string, PersonDocument> documents,
                         std::size_t persons_requested)
    : documents_(std::move(documents)), persons_requested_(persons_requested) {
  if (documents_.size() > persons_requested_) {
    throw ValidationError("corpus has more documents than requested persons");
  }
  for (const auto& [id, doc] : documents_) {
    if (doc.person_id != id) {
      throw ValidationError("document key mismatch for '" + id + "'");
    }
    if (doc.sentences.empty()) {
      throw ValidationError("document for '" + id + "' has no sentences");
    }
  }
}

const PersonDocument* CorpusIndex::find(const std::string& person_id) const {
  auto it = documents_.find(person_id);
  return it == documents_.end() ? nullptr : &it->second;
}

CorpusIndex ingest_sentences(const std::string& sentences_path,
                             const std::string& persons_path,
                             IngestReport* report) {
  std::unordered_map<std::string, std::string> names;
  {
    LineReader persons(persons_path);
    std::string line;
    while (persons.next(&line)) {
      if (line.empty()) continue;
      auto fields = split(line, '\t');
      if (fields.size() != 2) {
        throw ParseError(persons_path, persons.line_number(),
                         "expected `person_id TAB full_name`, got " +
                             std::to_string(fields.size()) + " fields");
      }
      if (!names.emplace(fields[0], fields[1]).second) {
        throw ValidationError("duplicate person_id '" + fields[0] + "' at " +
                              persons_path + ":" +
                              std::to_string(persons.line_number()));
      }
    }
  }

  std::map<std::string, PersonDocument> documents;
  IngestReport local;
  {
    LineReader sentences(sentences_path);
    std::string line;
    while (sentences.next(&line)) {
      if (line.empty()) continue;
      auto fields = split(line, '\t');
      if (fields.size() != 2) {
        throw ParseError(sentences_path, sentences.line_number(),
                         "expected `person_id TAB sentence`, got " +
                             std::to_string(fields.size()) + " fields");
      }
      ++local.sentence_lines;
      auto name_it = names.find(fields[0]);
      if (name_it == names.end()) {
        ++local.skipped_unknown_persons;
        continue;
      }
      auto [it, inserted] = documents.try_emplace(fields[0]);
      if (inserted) {
        it->second.person_id = fields[0];
        it->second.full_name = name_it->second;
      }
      it->second.sentences.push_back(std::move(fields[1]));
    }
  }
  if (report != nullptr) *report = local;
  return CorpusIndex(std::move(documents), names.size());
}

double coverage_fraction(std::size_t persons_found,
                         std::size_t persons_requested) {
  if (persons_requested == 0) {
    throw ValidationError("coverage undefined: no persons requested");
  }
  return static_cast<double>(persons_found) /
         static_cast<double>(persons_requested);
}

double coverage_fraction(const CorpusIndex& index) {
  return coverage_fraction(index.persons_found(), index.persons_requested());
}

void save_corpus(const CorpusIndex& index, const std::string& path,
                 uint64_t seed) {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open()) throw IoError("cannot write file: " + path);
  out << kCacheMagic << '\n';
  out << "meta\tseed\t" << seed << '\n';
  out << "meta\tpersons_requested\t" << index.persons_requested() << '\n';
  for (const auto& [id, doc] : index.documents()) {
    out << "doc\t" << id << '\t' << doc.full_name << '\t'
        << doc.sentences.size() << '\n';
    for (const auto& s : doc.sentences) out << "sent\t" << s << '\n';
  }
  if (!out.good()) throw IoError("write failed: " + path);
}

CorpusIndex load_corpus(const std::string& path) {
  LineReader in(path);
  std::string line;
  if (!in.next(&line) || line != kCacheMagic) {
    throw ParseError(path, 1, "not a triplescore corpus cache");
  }
  std::size_t persons_requested = 0;
  bool have_requested = false;
  std::map<std::string, PersonDocument> documents;
  PersonDocument* current = nullptr;
  std::size_t pending_sentences = 0;
  while (in.next(&line)) {
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    const std::string& tag = fields[0];
    if (tag == "meta") {
      if (fields.size() != 3) {
        throw ParseError(path, in.line_number(), "malformed meta record");
      }
      if (fields[1] == "persons_requested") {
        persons_requested = static_cast<std::size_t>(
            parse_int(fields[2], "corpus cache meta"));
        have_requested = true;
      }
    } else if (tag == "doc") {
      if (pending_sentences != 0) {
        throw ParseError(path, in.line_number(), "truncated sentence block");
      }
      if (fields.size() != 4) {
        throw ParseError(path, in.line_number(), "malformed doc record");
      }
      auto [it, inserted] = documents.try_emplace(fields[1]);
      if (!inserted) {
        throw ParseError(path, in.line_number(),
                         "duplicate document '" + fields[1] + "'");
      }
      it->second.person_id = fields[1];
      it->second.full_name = fields[2];
      pending_sentences =
          static_cast<std::size_t>(parse_int(fields[3], "corpus cache doc"));
      current = &it->second;
    } else if (tag == "sent") {
      if (current == nullptr || pending_sentences == 0) {
        throw ParseError(path, in.line_number(), "unexpected sentence record");
      }
      // The sentence is everything after the tag; it contains no tabs.
      current->sentences.push_back(line.substr(5));
      --pending_sentences;
    } else {
      throw ParseError(path, in.line_number(), "unknown record tag '" + tag +
                                                   "'");
    }
  }
  if (pending_sentences != 0) {
    throw ParseError(path, in.line_number(), "truncated sentence block");
  }
  if (!have_requested) {
    throw ParseError(path, in.line_number(), "missing persons_requested meta");
  }
  return CorpusIndex(std::move(documents), persons_requested);
}

}  // namespace triplescore
