// Copyright 2026 The Smellscape Authors
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

#include "smellscape/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "smellscape/error.hpp"
#include "smellscape/text.hpp"

namespace smellscape {

namespace {

constexpr std::string_view kCategoriesDirective = "#categories:";

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(errc::io_error, "cannot open " + path);
  return in;
}

void warn(LoadReport* report, std::string message) {
  if (report) report->warnings.push_back(std::move(message));
}

// Strips a UTF-8 BOM and trailing CR so files from any platform load.
std::string clean_line(std::string line, bool first) {
  if (first && line.rfind("\xef\xbb\xbf", 0) == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::optional<std::size_t> emotion_index(std::string_view name) {
  for (std::size_t i = 0; i < kEmotionNames.size(); ++i)
    if (kEmotionNames[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> color_index(std::string_view name) {
  for (std::size_t i = 0; i < kCanonicalColors.size(); ++i)
    if (kCanonicalColors[i] == name) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// SmellTaxonomy

SmellTaxonomy SmellTaxonomy::load(std::istream& in, LoadReport* report) {
  SmellTaxonomy tax;
  std::unordered_map<std::string, std::uint32_t> category_index;
  bool categories_declared = false;

  auto intern_category = [&](const std::string& name,
                             int line_no) -> std::uint32_t {
    auto it = category_index.find(name);
    if (it != category_index.end()) return it->second;
    if (categories_declared)
      throw Error(errc::unknown_category,
                  "'" + name + "' at line " + std::to_string(line_no) +
                      " is not a declared category");
    auto idx = static_cast<std::uint32_t>(tax.categories_.size());
    tax.categories_.push_back(name);
    category_index.emplace(name, idx);
    return idx;
  };

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = clean_line(std::move(raw), line_no == 1);
    if (trim(line).empty()) continue;
    if (line.rfind(kCategoriesDirective, 0) == 0) {
      for (const auto& name :
           split_fields(line.substr(kCategoriesDirective.size()), ',')) {
        std::string cat = normalize_tag(name);
        if (cat.empty()) continue;
        if (category_index.count(cat))
          throw Error(errc::malformed_row,
                      "category '" + cat + "' declared twice");
        category_index.emplace(cat,
                               static_cast<std::uint32_t>(tax.categories_.size()));
        tax.categories_.push_back(cat);
      }
      categories_declared = true;
      continue;
    }
    if (line[0] == '#') continue;

    auto fields = split_fields(line, ',');
    if (fields.size() != 3)
      throw Error(errc::malformed_row, "line " + std::to_string(line_no) +
                                           ": expected category,subcategory,word");
    std::string category = normalize_tag(fields[0]);
    std::string subcategory = normalize_tag(fields[1]);
    std::string word = normalize_tag(fields[2]);
    if (category.empty() || word.empty())
      throw Error(errc::malformed_row, "line " + std::to_string(line_no) +
                                           ": empty category or word");
    if (tax.entries_.count(word))
      throw Error(errc::duplicate_word, "'" + word + "' at line " +
                                            std::to_string(line_no));
    Entry entry;
    entry.category = intern_category(category, line_no);
    entry.subcategory = subcategory;
    tax.entries_.emplace(std::move(word), std::move(entry));
  }

  if (tax.entries_.empty())
    warn(report, "smell taxonomy has no entries");
  if (report) report->entries = tax.entries_.size();
  return tax;
}

SmellTaxonomy SmellTaxonomy::load_file(const std::string& path,
                                       LoadReport* report) {
  auto in = open_or_throw(path);
  return load(in, report);
}

const SmellTaxonomy::Entry* SmellTaxonomy::find(
    std::string_view normalized_word) const {
  auto it = entries_.find(std::string(normalized_word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> SmellTaxonomy::words_in_category(
    std::uint32_t category) const {
  std::vector<std::string> words;
  for (const auto& [word, entry] : entries_)
    if (entry.category == category) words.push_back(word);
  std::sort(words.begin(), words.end());
  return words;
}

void SmellTaxonomy::serialize(std::ostream& out) const {
  out << kCategoriesDirective << ' ';
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    if (i > 0) out << ',';
    out << categories_[i];
  }
  out << '\n';
  std::map<std::string, const Entry*> sorted;
  for (const auto& [word, entry] : entries_) sorted.emplace(word, &entry);
  for (const auto& [word, entry] : sorted)
    out << categories_[entry->category] << ',' << entry->subcategory << ','
        << word << '\n';
}

// ---------------------------------------------------------------------------
// AffectLexicon

AffectLexicon AffectLexicon::load(std::istream& in, LoadReport* report) {
  AffectLexicon lex;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = clean_line(std::move(raw), line_no == 1);
    if (trim(line).empty() || line[0] == '#') continue;

    auto fields = split_fields(line, ',');
    if (fields.size() < 2 || fields.size() > 3)
      throw Error(errc::malformed_row, "line " + std::to_string(line_no) +
                                           ": expected word,polarity[,emotions]");
    std::string word = normalize_tag(fields[0]);
    if (word.empty())
      throw Error(errc::malformed_row,
                  "line " + std::to_string(line_no) + ": empty word");

    Entry& entry = lex.entries_[word];
    std::string polarity = trim(fields[1]);
    if (!polarity.empty()) {
      Polarity p;
      if (polarity == "positive") {
        p = Polarity::positive;
      } else if (polarity == "negative") {
        p = Polarity::negative;
      } else {
        throw Error(errc::malformed_row, "line " + std::to_string(line_no) +
                                             ": unknown polarity '" + polarity +
                                             "'");
      }
      if (entry.polarity && *entry.polarity != p)
        throw Error(errc::malformed_row, "'" + word +
                                             "' carries conflicting polarities");
      entry.polarity = p;
    }
    if (fields.size() == 3) {
      for (const auto& e : split_fields(fields[2], ';')) {
        std::string name = trim(e);
        if (name.empty()) continue;
        auto idx = emotion_index(name);
        if (!idx)
          throw Error(errc::malformed_row, "line " + std::to_string(line_no) +
                                               ": unknown emotion '" + name +
                                               "'");
        entry.emotions.set(*idx);
      }
    }
  }
  if (lex.entries_.empty()) warn(report, "affect lexicon has no entries");
  if (report) report->entries = lex.entries_.size();
  return lex;
}

AffectLexicon AffectLexicon::load_file(const std::string& path,
                                       LoadReport* report) {
  auto in = open_or_throw(path);
  return load(in, report);
}

const AffectLexicon::Entry* AffectLexicon::find(
    std::string_view normalized_word) const {
  auto it = entries_.find(std::string(normalized_word));
  return it == entries_.end() ? nullptr : &it->second;
}

void AffectLexicon::serialize(std::ostream& out) const {
  std::map<std::string, const Entry*> sorted;
  for (const auto& [word, entry] : entries_) sorted.emplace(word, &entry);
  for (const auto& [word, entry] : sorted) {
    out << word << ',';
    if (entry->polarity)
      out << (*entry->polarity == Polarity::positive ? "positive" : "negative");
    out << ',';
    bool first = true;
    for (std::size_t i = 0; i < kEmotionCount; ++i) {
      if (!entry->emotions.test(i)) continue;
      if (!first) out << ';';
      out << kEmotionNames[i];
      first = false;
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// ColorLexicon

ColorLexicon::ColorLexicon() {
  // Canonical colors are always valid nuances of themselves.
  for (std::size_t i = 0; i < kCanonicalColors.size(); ++i)
    nuances_.emplace(std::string(kCanonicalColors[i]), i);
}

ColorLexicon ColorLexicon::load(std::istream& in, LoadReport* report) {
  ColorLexicon lex;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = clean_line(std::move(raw), line_no == 1);
    if (trim(line).empty() || line[0] == '#') continue;

    auto fields = split_fields(line, ',');
    if (fields.size() != 2)
      throw Error(errc::malformed_row, "line " + std::to_string(line_no) +
                                           ": expected nuance,canonical");
    std::string nuance = normalize_tag(fields[0]);
    std::string canonical = normalize_tag(fields[1]);
    if (nuance.empty())
      throw Error(errc::malformed_row,
                  "line " + std::to_string(line_no) + ": empty nuance");
    auto idx = color_index(canonical);
    if (!idx)
      throw Error(errc::unknown_color, "line " + std::to_string(line_no) +
                                           ": '" + canonical +
                                           "' is not a canonical color");
    auto [it, inserted] = lex.nuances_.emplace(std::move(nuance), *idx);
    if (!inserted && it->second != *idx)
      throw Error(errc::duplicate_word,
                  "'" + it->first + "' maps to two canonical colors");
  }
  if (lex.nuances_.size() == kCanonicalColors.size())
    warn(report, "color lexicon has no nuances beyond the canonical colors");
  if (report) report->entries = lex.nuances_.size();
  return lex;
}

ColorLexicon ColorLexicon::load_file(const std::string& path,
                                     LoadReport* report) {
  auto in = open_or_throw(path);
  return load(in, report);
}

std::optional<std::size_t> ColorLexicon::find(
    std::string_view normalized_word) const {
  auto it = nuances_.find(std::string(normalized_word));
  if (it == nuances_.end()) return std::nullopt;
  return it->second;
}

void ColorLexicon::serialize(std::ostream& out) const {
  std::map<std::string, std::size_t> sorted(nuances_.begin(), nuances_.end());
  for (const auto& [nuance, idx] : sorted)
    out << nuance << ',' << kCanonicalColors[idx] << '\n';
}

// ---------------------------------------------------------------------------
// PleasantnessLists

PleasantnessLists PleasantnessLists::load(std::istream& in,
                                          LoadReport* report) {
  PleasantnessLists lists;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = clean_line(std::move(raw), line_no == 1);
    if (trim(line).empty() || line[0] == '#') continue;

    auto fields = split_fields(line, ',');
    if (fields.size() != 2)
      throw Error(errc::malformed_row, "line " + std::to_string(line_no) +
                                           ": expected word,pleasant|unpleasant");
    std::string word = normalize_tag(fields[0]);
    std::string cls = trim(fields[1]);
    if (word.empty())
      throw Error(errc::malformed_row,
                  "line " + std::to_string(line_no) + ": empty word");
    if (cls == "pleasant") {
      if (lists.unpleasant_.count(word))
        throw Error(errc::duplicate_word,
                    "'" + word + "' listed as both pleasant and unpleasant");
      lists.pleasant_.insert(std::move(word));
    } else if (cls == "unpleasant") {
      if (lists.pleasant_.count(word))
        throw Error(errc::duplicate_word,
                    "'" + word + "' listed as both pleasant and unpleasant");
      lists.unpleasant_.insert(std::move(word));
    } else {
      throw Error(errc::malformed_row, "line " + std::to_string(line_no) +
                                           ": unknown class '" + cls + "'");
    }
  }
  if (lists.size() == 0) warn(report, "pleasantness lists are empty");
  if (report) report->entries = lists.size();
  return lists;
}

PleasantnessLists PleasantnessLists::load_file(const std::string& path,
                                               LoadReport* report) {
  auto in = open_or_throw(path);
  return load(in, report);
}

bool PleasantnessLists::is_pleasant(std::string_view normalized_word) const {
  return pleasant_.count(std::string(normalized_word)) > 0;
}

bool PleasantnessLists::is_unpleasant(std::string_view normalized_word) const {
  return unpleasant_.count(std::string(normalized_word)) > 0;
}

void PleasantnessLists::serialize(std::ostream& out) const {
  std::map<std::string, const char*> sorted;
  for (const auto& w : pleasant_) sorted.emplace(w, "pleasant");
  for (const auto& w : unpleasant_) sorted.emplace(w, "unpleasant");
  for (const auto& [word, cls] : sorted) out << word << ',' << cls << '\n';
}

// ---------------------------------------------------------------------------
// Classification

std::optional<SmellTaxonomy::Entry> classify_tag(
    std::string_view raw_tag, const SmellTaxonomy& taxonomy) {
  const SmellTaxonomy::Entry* entry = taxonomy.find(normalize_tag(raw_tag));
  if (!entry) return std::nullopt;
  return *entry;
}

AffectLexicon::Entry classify_affect(std::string_view raw_tag,
                                     const AffectLexicon& lexicon) {
  const AffectLexicon::Entry* entry = lexicon.find(normalize_tag(raw_tag));
  if (!entry) return {};
  return *entry;
}

std::optional<std::size_t> classify_color(std::string_view raw_tag,
                                          const ColorLexicon& lexicon) {
  return lexicon.find(normalize_tag(raw_tag));
}

}  // namespace smellscape
