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

#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace smellscape {

// The eight Plutchik primary emotions carried by the affect lexicon, in the
// fixed (alphabetical) order used for every emotion vector and CSV column.
inline constexpr std::array<std::string_view, 8> kEmotionNames = {
    "anger", "anticipation", "disgust", "fear",
    "joy",   "sadness",      "surprise", "trust"};

inline constexpr std::size_t kEmotionCount = kEmotionNames.size();

// The ten canonical colors, in the fixed order used for strength vectors,
// argmax tie-breaking and CSV columns.
inline constexpr std::array<std::string_view, 10> kCanonicalColors = {
    "black", "blue",   "brown", "gray",  "green",
    "orange", "red",   "violet", "white", "yellow"};

inline constexpr std::size_t kColorCount = kCanonicalColors.size();

// Returns the index into kEmotionNames / kCanonicalColors, or nullopt.
std::optional<std::size_t> emotion_index(std::string_view name);
std::optional<std::size_t> color_index(std::string_view name);

enum class Polarity : std::uint8_t { positive, negative };

using EmotionSet = std::bitset<kEmotionCount>;

// Non-fatal observations made while loading a lexicon (empty file, skipped
// blank lines, ...). Fatal problems throw Error instead.
struct LoadReport {
  std::size_t entries = 0;
  std::vector<std::string> warnings;
};

// Hierarchical smell dictionary: word -> (category, optional subcategory).
// Words are stored normalized; every word belongs to exactly one category.
class SmellTaxonomy {
 public:
  struct Entry {
    std::uint32_t category;  // index into categories()
    std::string subcategory; // empty when the word sits directly under the category
  };

  // File format, one row per word:
  //   category,subcategory,word
  // An optional directive line "#categories: a,b,c" pre-declares the category
  // list and order; rows referencing anything else fail with UnknownCategory.
  // Without the directive, categories are taken in order of first appearance.
  // Other lines starting with '#' are comments.
  static SmellTaxonomy load(std::istream& in, LoadReport* report = nullptr);
  static SmellTaxonomy load_file(const std::string& path,
                                 LoadReport* report = nullptr);

  const std::vector<std::string>& categories() const { return categories_; }
  std::size_t size() const { return entries_.size(); }

  // Exact lookup of an already-normalized word.
  const Entry* find(std::string_view normalized_word) const;

  // All (word, entry) pairs in unspecified order.
  const std::unordered_map<std::string, Entry>& entries() const {
    return entries_;
  }

  // Words of one category, sorted. Used by the chroma category aggregation.
  std::vector<std::string> words_in_category(std::uint32_t category) const;

  void serialize(std::ostream& out) const;

 private:
  std::vector<std::string> categories_;
  std::unordered_map<std::string, Entry> entries_;
};

// Word polarity plus Plutchik emotion sets. A word may carry several
// emotions but at most one polarity.
class AffectLexicon {
 public:
  struct Entry {
    std::optional<Polarity> polarity;
    EmotionSet emotions;
  };

  // File format, one row per word:
  //   word,polarity,emotion;emotion;...
  // polarity is "positive", "negative" or empty; the emotion list may be
  // empty. Repeated rows for one word merge, but conflicting polarities fail.
  static AffectLexicon load(std::istream& in, LoadReport* report = nullptr);
  static AffectLexicon load_file(const std::string& path,
                                 LoadReport* report = nullptr);

  std::size_t size() const { return entries_.size(); }
  const Entry* find(std::string_view normalized_word) const;
  const std::unordered_map<std::string, Entry>& entries() const {
    return entries_;
  }

  void serialize(std::ostream& out) const;

 private:
  std::unordered_map<std::string, Entry> entries_;
};

// 249-ish color nuance terms grouped into the ten canonical colors. The
// canonical color names always map to themselves.
class ColorLexicon {
 public:
  // Starts with just the canonical colors mapping to themselves.
  ColorLexicon();

  // File format, one row per nuance: nuance,canonical
  static ColorLexicon load(std::istream& in, LoadReport* report = nullptr);
  static ColorLexicon load_file(const std::string& path,
                                LoadReport* report = nullptr);

  std::size_t size() const { return nuances_.size(); }

  // Canonical color index for a normalized nuance term, or nullopt.
  std::optional<std::size_t> find(std::string_view normalized_word) const;

  const std::unordered_map<std::string, std::size_t>& nuances() const {
    return nuances_;
  }

  void serialize(std::ostream& out) const;

 private:
  std::unordered_map<std::string, std::size_t> nuances_;
};

// The pleasant / unpleasant word lists. Disjoint by construction; a row
// appearing in both sets fails the load.
class PleasantnessLists {
 public:
  // File format, one row per word: word,pleasant|unpleasant
  static PleasantnessLists load(std::istream& in, LoadReport* report = nullptr);
  static PleasantnessLists load_file(const std::string& path,
                                     LoadReport* report = nullptr);

  bool is_pleasant(std::string_view normalized_word) const;
  bool is_unpleasant(std::string_view normalized_word) const;
  std::size_t size() const { return pleasant_.size() + unpleasant_.size(); }

  const std::unordered_set<std::string>& pleasant() const { return pleasant_; }
  const std::unordered_set<std::string>& unpleasant() const {
    return unpleasant_;
  }

  void serialize(std::ostream& out) const;

 private:
  std::unordered_set<std::string> pleasant_;
  std::unordered_set<std::string> unpleasant_;
};

// Everything tag classification needs, loaded once and immutable afterwards;
// safe for concurrent reads.
struct Lexicons {
  SmellTaxonomy taxonomy;
  AffectLexicon affect;
  ColorLexicon colors;
  PleasantnessLists pleasantness;
};

// Normalizes the raw tag and looks it up. Non-matches return nullopt/empty.
std::optional<SmellTaxonomy::Entry> classify_tag(std::string_view raw_tag,
                                                 const SmellTaxonomy& taxonomy);
AffectLexicon::Entry classify_affect(std::string_view raw_tag,
                                     const AffectLexicon& lexicon);
std::optional<std::size_t> classify_color(std::string_view raw_tag,
                                          const ColorLexicon& lexicon);

}  // namespace smellscape
