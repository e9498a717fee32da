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

#include "lexicon.h"

#include <algorithm>
#include <fstream>

#include "util.h"

namespace triplescore {

const std::string& to_string(RelationType relation) {
  static const std::string kProfession = "profession";
  static const std::string kNationality = "nationality";
  return relation == RelationType::kProfession ? kProfession : kNationality;
}

std::optional<RelationType> parse_relation(const std::string& name) {
  if (name == "profession") return RelationType::kProfession;
  if (name == "nationality") return RelationType::kNationality;
  return std::nullopt;
}

std::string collapse_spaces(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c != ' ' && c != '\t') out += c;
  }
  return out;
}

EntityLexicon::EntityLexicon(
    RelationType relation, std::map<std::string, std::set<std::string>> entries)
    : relation_(relation), entries_(std::move(entries)) {
  std::map<std::string, std::string> alias_owner;  // lowercase alias -> canonical
  for (auto& [canonical, aliases] : entries_) {
    if (canonical.empty()) throw ValidationError("empty canonical entity name");
    canonicals_.push_back(canonical);
    std::string token = collapse_spaces(canonical);
    auto [it, inserted] = token_to_canonical_.emplace(token, canonical);
    if (!inserted) {
      throw ValidationError("canonical token '" + token + "' is shared by '" +
                            it->second + "' and '" + canonical + "'");
    }
    canonical_to_token_.emplace(canonical, token);
    aliases.insert(canonical);
    aliases.insert(token);
    for (const auto& alias : aliases) {
      if (alias.empty()) {
        throw ValidationError("empty alias for entity '" + canonical + "'");
      }
      auto [owner, fresh] =
          alias_owner.emplace(ascii_lower_copy(alias), canonical);
      if (!fresh && owner->second != canonical) {
        throw ValidationError("alias '" + alias + "' claimed by both '" +
                              owner->second + "' and '" + canonical + "'");
      }
    }
  }
}

EntityLexicon EntityLexicon::load(const std::string& path,
                                  RelationType relation) {
  LineReader in(path);
  std::map<std::string, std::set<std::string>> entries;
  std::string line;
  while (in.next(&line)) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields[0].empty()) {
      throw ParseError(path, in.line_number(), "empty canonical entity name");
    }
    auto [it, inserted] = entries.try_emplace(fields[0]);
    if (!inserted) {
      throw ValidationError("duplicate canonical entity '" + fields[0] +
                            "' at " + path + ":" +
                            std::to_string(in.line_number()));
    }
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i].empty()) {
        throw ParseError(path, in.line_number(), "empty alias field");
      }
      it->second.insert(fields[i]);
    }
  }
  return EntityLexicon(relation, std::move(entries));
}

bool EntityLexicon::is_canonical(const std::string& entity) const {
  return entries_.count(entity) != 0;
}

const std::string& EntityLexicon::canonical_token(
    const std::string& entity) const {
  auto it = canonical_to_token_.find(entity);
  if (it == canonical_to_token_.end()) {
    throw ValidationError("unknown " + to_string(relation_) + " entity '" +
                          entity + "'");
  }
  return it->second;
}

const std::string* EntityLexicon::canonical_for_token(
    const std::string& token) const {
  auto it = token_to_canonical_.find(token);
  return it == token_to_canonical_.end() ? nullptr : &it->second;
}

const std::set<std::string>& EntityLexicon::aliases(
    const std::string& entity) const {
  auto it = entries_.find(entity);
  if (it == entries_.end()) {
    throw ValidationError("unknown " + to_string(relation_) + " entity '" +
                          entity + "'");
  }
  return it->second;
}

void EntityLexicon::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open()) throw IoError("cannot write file: " + path);
  for (const auto& canonical : canonicals_) {
    out << canonical;
    for (const auto& alias : entries_.at(canonical)) {
      out << '\t' << alias;
    }
    out << '\n';
  }
  if (!out.good()) throw IoError("write failed: " + path);
}

std::string TokenStream::joined() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

AliasMatcher::AliasMatcher(std::vector<const EntityLexicon*> lexicons)
    : lexicons_(std::move(lexicons)) {
  std::set<std::string> seen;  // first lexicon wins on duplicate surfaces
  for (const EntityLexicon* lexicon : lexicons_) {
    for (const auto& canonical : lexicon->canonicals_) {
      const std::string* token = &lexicon->canonical_to_token_.at(canonical);
      for (const auto& alias : lexicon->entries_.at(canonical)) {
        std::string lower = ascii_lower_copy(alias);
        if (!seen.insert(lower).second) continue;
        by_first_[lower[0]].push_back(Pattern{std::move(lower), token});
      }
    }
  }
  for (auto& [first, patterns] : by_first_) {
    std::stable_sort(patterns.begin(), patterns.end(),
                     [](const Pattern& a, const Pattern& b) {
                       return a.surface_lower.size() > b.surface_lower.size();
                     });
  }
}

namespace {

struct Span {
  std::size_t begin;
  std::size_t end;
  const std::string* replacement;
};

bool boundary_before(const std::string& text, std::size_t pos) {
  return pos == 0 || !is_word_byte(static_cast<unsigned char>(text[pos - 1]));
}

bool boundary_after(const std::string& text, std::size_t pos) {
  return pos == text.size() ||
         !is_word_byte(static_cast<unsigned char>(text[pos]));
}

bool matches_at(const std::string& text, std::size_t pos,
                const std::string& surface_lower) {
  if (pos + surface_lower.size() > text.size()) return false;
  for (std::size_t i = 0; i < surface_lower.size(); ++i) {
    if (ascii_lower(text[pos + i]) != surface_lower[i]) return false;
  }
  return boundary_after(text, pos + surface_lower.size());
}

}  // namespace

TokenStream normalize_text(const std::string& text, const AliasMatcher& matcher,
                           const std::string& person_full_name) {
  std::vector<Span> spans;

  // Alias canonicalization pass.
  std::size_t i = 0;
  while (i < text.size()) {
    if (boundary_before(text, i)) {
      auto group = matcher.by_first_.find(ascii_lower(text[i]));
      if (group != matcher.by_first_.end()) {
        bool matched = false;
        for (const auto& pattern : group->second) {
          if (matches_at(text, i, pattern.surface_lower)) {
            spans.push_back(
                Span{i, i + pattern.surface_lower.size(), pattern.replacement});
            i += pattern.surface_lower.size();
            matched = true;
            break;
          }
        }
        if (matched) continue;
      }
    }
    ++i;
  }

  // Person-name collapsing pass over the uncovered gaps. The collapsed full
  // name itself is a pattern so already-normalized text passes through.
  std::string collapsed = collapse_spaces(person_full_name);
  std::vector<std::string> name_patterns;
  if (!person_full_name.empty()) {
    std::set<std::string> parts;
    std::string part;
    for (char c : person_full_name + " ") {
      if (c == ' ' || c == '\t') {
        if (part.size() >= 3) parts.insert(ascii_lower_copy(part));
        part.clear();
      } else {
        part += c;
      }
    }
    if (collapsed.size() >= 3) parts.insert(ascii_lower_copy(collapsed));
    name_patterns.assign(parts.begin(), parts.end());
    std::stable_sort(name_patterns.begin(), name_patterns.end(),
                     [](const std::string& a, const std::string& b) {
                       return a.size() > b.size();
                     });
  }
  if (!name_patterns.empty()) {
    std::vector<Span> name_spans;
    std::size_t gap_begin = 0;
    auto scan_gap = [&](std::size_t begin, std::size_t end) {
      std::size_t pos = begin;
      while (pos < end) {
        if (boundary_before(text, pos)) {
          bool matched = false;
          for (const auto& pattern : name_patterns) {
            if (pos + pattern.size() <= end &&
                matches_at(text, pos, pattern)) {
              name_spans.push_back(Span{pos, pos + pattern.size(), &collapsed});
              pos += pattern.size();
              matched = true;
              break;
            }
          }
          if (matched) continue;
        }
        ++pos;
      }
    };
    for (const Span& span : spans) {
      scan_gap(gap_begin, span.begin);
      gap_begin = span.end;
    }
    scan_gap(gap_begin, text.size());
    spans.insert(spans.end(), name_spans.begin(), name_spans.end());
    std::sort(spans.begin(), spans.end(),
              [](const Span& a, const Span& b) { return a.begin < b.begin; });
  }

  // Emit: protected spans as-is, everything else lowercased and split on
  // non-word bytes.
  TokenStream out;
  std::string buffer;
  auto flush = [&]() {
    if (!buffer.empty()) {
      out.tokens.push_back(std::move(buffer));
      buffer.clear();
    }
  };
  std::size_t span_idx = 0;
  i = 0;
  while (i < text.size()) {
    if (span_idx < spans.size() && spans[span_idx].begin == i) {
      flush();
      out.tokens.push_back(*spans[span_idx].replacement);
      i = spans[span_idx].end;
      ++span_idx;
      continue;
    }
    char c = text[i];
    if (is_word_byte(static_cast<unsigned char>(c))) {
      buffer += ascii_lower(c);
    } else {
      flush();
    }
    ++i;
  }
  flush();
  return out;
}

TokenStream normalize_text(const std::string& text,
                           const EntityLexicon& lexicon,
                           const std::string& person_full_name) {
  AliasMatcher matcher({&lexicon});
  return normalize_text(text, matcher, person_full_name);
}

namespace {

constexpr unsigned char kUtf8Quote0 = 0xE2;
constexpr unsigned char kUtf8Quote1 = 0x80;
constexpr unsigned char kCurlyOpen2 = 0x9C;   // U+201C
constexpr unsigned char kCurlyClose2 = 0x9D;  // U+201D

bool curly_at(const std::string& text, std::size_t pos, unsigned char third) {
  return pos + 2 < text.size() &&
         static_cast<unsigned char>(text[pos]) == kUtf8Quote0 &&
         static_cast<unsigned char>(text[pos + 1]) == kUtf8Quote1 &&
         static_cast<unsigned char>(text[pos + 2]) == third;
}

std::size_t find_curly_close(const std::string& text, std::size_t from) {
  for (std::size_t j = from; j + 2 < text.size(); ++j) {
    if (curly_at(text, j, kCurlyClose2)) return j;
  }
  return std::string::npos;
}

}  // namespace

std::string strip_quoted(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '"') {
      std::size_t close = text.find('"', i + 1);
      if (close == std::string::npos) {
        ++i;  // unmatched: drop the quote character alone
      } else {
        i = close + 1;
      }
    } else if (curly_at(text, i, kCurlyOpen2)) {
      std::size_t close = find_curly_close(text, i + 3);
      if (close == std::string::npos) {
        i += 3;
      } else {
        i = close + 3;
      }
    } else if (curly_at(text, i, kCurlyClose2)) {
      i += 3;  // stray closer
    } else {
      out += text[i];
      ++i;
    }
  }
  return out;
}

std::vector<Mention> mentions(const TokenStream& tokens,
                              const EntityLexicon& lexicon) {
  std::vector<Mention> found;
  for (std::size_t pos = 0; pos < tokens.tokens.size(); ++pos) {
    const std::string* canonical =
        lexicon.canonical_for_token(tokens.tokens[pos]);
    if (canonical != nullptr) found.push_back(Mention{*canonical, pos});
  }
  return found;
}

}  // namespace triplescore
