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

#ifndef TRIPLESCORE_LEXICON_H_
#define TRIPLESCORE_LEXICON_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace triplescore {

enum class RelationType { kProfession, kNationality };

const std::string& to_string(RelationType relation);
std::optional<RelationType> parse_relation(const std::string& name);

// Removes spaces and tabs; the single-token form of multi-word names.
std::string collapse_spaces(const std::string& s);

// Canonical entities of one relation plus their alias surfaces. Alias lookup
// is case-insensitive; each canonical is implicitly its own alias, and its
// space-collapsed token form is recognized too (keeps normalization
// idempotent). Immutable after load.
class EntityLexicon {
 public:
  // File format: `canonical TAB alias1 TAB alias2 ...` per line.
  static EntityLexicon load(const std::string& path, RelationType relation);
  // entries: canonical -> alias surfaces (the canonical itself included).
  EntityLexicon(RelationType relation,
                std::map<std::string, std::set<std::string>> entries);

  RelationType relation_type() const { return relation_; }
  // Sorted canonical names.
  const std::vector<std::string>& canonical_entities() const {
    return canonicals_;
  }
  bool is_canonical(const std::string& entity) const;
  // Canonical name with internal spaces removed; the token that mention
  // detection looks for.
  const std::string& canonical_token(const std::string& entity) const;
  // Reverse lookup for mention scanning; null when the token is no entity.
  const std::string* canonical_for_token(const std::string& token) const;
  const std::set<std::string>& aliases(const std::string& entity) const;

  void save(const std::string& path) const;

 private:
  friend class AliasMatcher;
  RelationType relation_ = RelationType::kProfession;
  std::vector<std::string> canonicals_;
  std::map<std::string, std::set<std::string>> entries_;
  std::map<std::string, std::string> token_to_canonical_;
  std::map<std::string, std::string> canonical_to_token_;
};

struct TokenStream {
  std::vector<std::string> tokens;

  bool operator==(const TokenStream&) const = default;
  // Single-space join; normalizing the result again reproduces the stream.
  std::string joined() const;
};

// Longest-match-first, word-boundary, case-insensitive alias scanner over
// one or more lexicons. Building it is the expensive part, so pipeline
// code constructs one per lexicon set and reuses it across documents.
class AliasMatcher {
 public:
  explicit AliasMatcher(std::vector<const EntityLexicon*> lexicons);

  const std::vector<const EntityLexicon*>& lexicons() const {
    return lexicons_;
  }

 private:
  friend TokenStream normalize_text(const std::string&, const AliasMatcher&,
                                    const std::string&);
  struct Pattern {
    std::string surface_lower;
    const std::string* replacement;  // canonical token form
  };
  std::vector<const EntityLexicon*> lexicons_;
  // Patterns grouped by lowercase first byte, longest first.
  std::map<char, std::vector<Pattern>> by_first_;
};

// Alias canonicalization, person-name collapsing, lowercasing, splitting on
// non-alphanumeric bytes. Canonical entity tokens and the collapsed person
// name keep their casing.
TokenStream normalize_text(const std::string& text,
                           const AliasMatcher& matcher,
                           const std::string& person_full_name);
TokenStream normalize_text(const std::string& text,
                           const EntityLexicon& lexicon,
                           const std::string& person_full_name);

// Removes double-quoted spans (straight or curly); an unmatched quote is
// dropped by itself.
std::string strip_quoted(const std::string& text);

struct Mention {
  std::string entity;
  std::size_t position;

  bool operator==(const Mention&) const = default;
};

// All canonical-entity tokens of the lexicon in stream order, repeats kept.
std::vector<Mention> mentions(const TokenStream& tokens,
                              const EntityLexicon& lexicon);

}  // namespace triplescore

#endif  // TRIPLESCORE_LEXICON_H_
