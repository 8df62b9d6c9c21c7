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

#include "smellscape/chroma.hpp"

#include <algorithm>
#include <set>

#include "smellscape/error.hpp"
#include "smellscape/stats.hpp"
#include "smellscape/text.hpp"

namespace smellscape::chroma {

CoCounts count_cooccurrences(std::span<const GeoTaggedRecord> records,
                             const SmellTaxonomy& taxonomy,
                             const ColorLexicon& colors) {
  CoCounts counts;
  for (const auto& record : records) {
    if (record.monochrome && *record.monochrome) {
      counts.monochrome_excluded += 1;
      continue;
    }
    counts.photos_seen += 1;

    // Photo-level sets: several nuances of one color, or a repeated smell
    // tag, still count the photo once.
    std::set<std::string> smells;
    std::set<std::size_t> photo_colors;
    for (const auto& raw : record.tags) {
      const std::string tag = normalize_tag(raw);
      if (tag.empty()) continue;
      if (taxonomy.find(tag)) smells.insert(tag);
      if (auto color = colors.find(tag)) photo_colors.insert(*color);
    }

    for (std::size_t c : photo_colors) counts.color_photos[c] += 1;
    for (const auto& word : smells) {
      counts.word_photos[word] += 1;
      if (photo_colors.empty()) continue;
      auto& row = counts.word_color[word];
      for (std::size_t c : photo_colors) row[c] += 1;
    }
  }
  return counts;
}

WordStrength word_color_strength(const std::string& word,
                                 const CoCounts& counts,
                                 std::uint64_t min_photos) {
  WordStrength result;
  result.word = word;

  auto photos_it = counts.word_photos.find(word);
  result.word_photos = photos_it == counts.word_photos.end() ? 0
                                                             : photos_it->second;
  auto row_it = counts.word_color.find(word);
  if (row_it == counts.word_color.end())
    throw Error(errc::no_qualifying_colors,
                "'" + word + "' co-occurs with no color");
  const ColorCountVector& row = row_it->second;

  const double p_s = static_cast<double>(result.word_photos);
  ColorVector ratio{};
  double total = 0.0;
  for (std::size_t c = 0; c < kColorCount; ++c) {
    if (row[c] < min_photos) continue;
    const double p_c = static_cast<double>(counts.color_photos[c]);
    ratio[c] = static_cast<double>(row[c]) / (p_c + p_s);
    result.surviving[c] = true;
    total += ratio[c];
  }
  if (total <= 0.0)
    throw Error(errc::no_qualifying_colors,
                "'" + word + "' has no color with at least " +
                    std::to_string(min_photos) + " photos");

  for (std::size_t c = 0; c < kColorCount; ++c) {
    result.strength[c] = ratio[c] / total;
    if (result.strength[c] > result.strength[result.strongest_color])
      result.strongest_color = c;  // strict improvement keeps canonical order on ties
  }
  return result;
}

CategoryColor category_color_strength(const std::string& category,
                                      std::span<const WordStrength> words,
                                      const CoCounts& counts) {
  CategoryColor result;
  result.category = category;
  for (const auto& word : words) {
    const std::size_t c = word.strongest_color;
    result.raw[c] += word.strength[c];
    auto row_it = counts.word_color.find(word.word);
    if (row_it != counts.word_color.end())
      result.photos[c] += row_it->second[c];
    result.n_words += 1;
  }
  if (result.n_words == 0)
    throw Error(errc::empty_category,
                "no word of '" + category + "' has a color association");

  double total = 0.0;
  for (double v : result.raw) total += v;
  for (std::size_t c = 0; c < kColorCount; ++c)
    result.normalized[c] = result.raw[c] / total;
  result.entropy_bits = stats::shannon_entropy(result.normalized);
  return result;
}

ColorAssociation build_associations(std::span<const GeoTaggedRecord> records,
                                    const SmellTaxonomy& taxonomy,
                                    const ColorLexicon& colors,
                                    std::uint64_t min_photos) {
  const CoCounts counts = count_cooccurrences(records, taxonomy, colors);

  ColorAssociation assoc;
  assoc.min_photos = min_photos;

  // word_color is an ordered map, so words come out sorted.
  std::map<std::string, WordStrength> by_word;
  for (const auto& [word, row] : counts.word_color) {
    try {
      by_word.emplace(word, word_color_strength(word, counts, min_photos));
    } catch (const Error&) {
      assoc.skipped_words.push_back(word);
    }
  }

  for (std::size_t cat = 0; cat < taxonomy.categories().size(); ++cat) {
    const std::string& name = taxonomy.categories()[cat];
    std::vector<WordStrength> members;
    for (const auto& word : taxonomy.words_in_category(
             static_cast<std::uint32_t>(cat))) {
      auto it = by_word.find(word);
      if (it != by_word.end()) members.push_back(it->second);
    }
    try {
      assoc.categories.push_back(
          category_color_strength(name, members, counts));
    } catch (const Error&) {
      assoc.skipped_categories.push_back(name);
    }
  }

  std::stable_sort(assoc.categories.begin(), assoc.categories.end(),
                   [](const CategoryColor& a, const CategoryColor& b) {
                     if (a.entropy_bits != b.entropy_bits)
                       return a.entropy_bits < b.entropy_bits;
                     return a.category < b.category;
                   });

  assoc.words.reserve(by_word.size());
  for (auto& [word, strength] : by_word)
    assoc.words.push_back(std::move(strength));
  return assoc;
}

}  // namespace smellscape::chroma
