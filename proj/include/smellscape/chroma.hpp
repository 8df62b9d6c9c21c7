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
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smellscape/lexicon.hpp"
#include "smellscape/record.hpp"

namespace smellscape::chroma {

using ColorVector = std::array<double, kColorCount>;
using ColorCountVector = std::array<std::uint64_t, kColorCount>;

// Photo-level co-occurrence counts. A photo contributes at most one to any
// given cell no matter how many of its tags map there.
struct CoCounts {
  std::map<std::string, ColorCountVector> word_color;  // p_cs
  ColorCountVector color_photos{};                     // p_c
  std::map<std::string, std::uint64_t> word_photos;    // p_s
  std::uint64_t photos_seen = 0;
  std::uint64_t monochrome_excluded = 0;
};

// Counts smell-word / canonical-color co-occurrences across photos.
// Monochrome-flagged records are excluded entirely.
CoCounts count_cooccurrences(std::span<const GeoTaggedRecord> records,
                             const SmellTaxonomy& taxonomy,
                             const ColorLexicon& colors);

// Association strength of one smell word with each canonical color:
// p_cs / (p_c + p_s), renormalized over the colors with p_cs >= min_photos
// so the surviving entries sum to 1. Throws NoQualifyingColors when no color
// passes the filter.
struct WordStrength {
  std::string word;
  ColorVector strength{};           // zero outside surviving colors
  std::array<bool, kColorCount> surviving{};
  std::uint64_t word_photos = 0;
  std::size_t strongest_color = 0;  // argmax; ties take the canonical order
};
WordStrength word_color_strength(const std::string& word,
                                 const CoCounts& counts,
                                 std::uint64_t min_photos = 10);

// Color profile of a whole smell category: every qualifying word drops its
// strongest color's strength into that color's bucket; buckets are kept raw
// and renormalized, with the entropy of the normalized mixture. Throws
// EmptyCategory when no word of the category qualifies.
struct CategoryColor {
  std::string category;
  ColorVector raw{};         // summed strengths per strongest color
  ColorVector normalized{};  // raw scaled to sum 1
  ColorCountVector photos{}; // co-occurrence photos backing each bucket
  double entropy_bits = 0.0;
  std::size_t n_words = 0;
};
CategoryColor category_color_strength(const std::string& category,
                                      std::span<const WordStrength> words,
                                      const CoCounts& counts);

// Full association build: word strengths for every word with qualifying
// counts, category profiles for every category with qualifying words.
// Categories are sorted ascending by entropy of their color mixture.
struct ColorAssociation {
  std::vector<WordStrength> words;             // sorted by word
  std::vector<CategoryColor> categories;       // ascending entropy
  std::vector<std::string> skipped_words;      // no qualifying colors
  std::vector<std::string> skipped_categories; // no qualifying words
  std::uint64_t min_photos = 10;
};
ColorAssociation build_associations(std::span<const GeoTaggedRecord> records,
                                    const SmellTaxonomy& taxonomy,
                                    const ColorLexicon& colors,
                                    std::uint64_t min_photos = 10);

}  // namespace smellscape::chroma
