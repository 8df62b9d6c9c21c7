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

// Deterministic synthetic city with known ground truth. Every per-segment
// quantity the pipeline should recover is planted by quota allocation, so the
// recovered value differs from the planted one only by integer rounding of
// the tag counts.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "smellscape/ingest.hpp"
#include "smellscape/record.hpp"

namespace planted {

inline constexpr std::size_t kCategories = 10;
inline constexpr std::size_t kEmissionsIndex = 2;  // matches category order
inline constexpr std::size_t kWasteIndex = 9;

struct SegmentTruth {
  std::string id;
  std::array<double, kCategories> smell_fractions{};
  double pleasant_fraction = 0.0;    // of smell tags
  double unpleasant_fraction = 0.0;  // of smell tags
  double positive_fraction = 0.0;    // of polarity tags
  // joy, disgust, fear, trust shares of the emotion tags
  double joy = 0.0, disgust = 0.0, fear = 0.0, trust = 0.0;
  double no2 = 0.0, pm10 = 0.0, pm25 = 0.0;
  std::uint64_t records = 0;
  std::uint64_t smell_tags = 0;
  double length_m = 0.0;
};

struct City {
  std::vector<SegmentTruth> truth;           // by segment index
  std::vector<smellscape::GeoTaggedRecord> records;
  std::vector<smellscape::StreetSegment> streets;
  smellscape::PollutantTable pollutants;
  smellscape::VenueTable venues;

  // Lexicon file bodies matching the planted vocabulary.
  std::string smell_dictionary_csv;
  std::string affect_lexicon_csv;
  std::string color_dictionary_csv;
  std::string pleasantness_csv;

  // Spearman of the planted pleasure/sentiment latent ranks: the value the
  // pipeline is expected to reproduce.
  double planted_pleasure_sentiment_spearman = 0.0;
};

// Builds the city: `segments` street segments and roughly `records_hint`
// records (an odd per-segment count keeps the word rotation collision-free
// under per-record tag de-duplication).
City build_city(std::uint64_t seed, std::size_t segments,
                std::size_t records_hint);

}  // namespace planted
