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
#include <span>
#include <string>
#include <vector>

#include "smellscape/geo.hpp"
#include "smellscape/lexicon.hpp"
#include "smellscape/record.hpp"

namespace smellscape {

// Counter block for one (segment, month) bucket. Every matched tag falls
// into exactly one bucket per layer: one smell category, one pleasantness
// class, one polarity, and one count per carried emotion.
struct LayerCounts {
  std::vector<std::uint64_t> smell;  // one slot per taxonomy category
  std::uint64_t pleasant = 0;
  std::uint64_t unpleasant = 0;
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  std::array<std::uint64_t, kEmotionCount> emotions{};
  std::uint64_t records = 0;

  explicit LayerCounts(std::size_t n_categories = 0) : smell(n_categories) {}

  std::uint64_t smell_total() const;
  std::uint64_t affect_total() const { return positive + negative; }
  std::uint64_t emotion_total() const;
  std::uint64_t pleasantness_total() const { return pleasant + unpleasant; }

  // Commutative, associative merge; parallel aggregation relies on it.
  void add(const LayerCounts& other);
};

struct SegmentTally {
  std::map<MonthKey, LayerCounts> months;

  // Fold over all months.
  LayerCounts total(std::size_t n_categories) const;
  const LayerCounts* month(MonthKey key) const;
};

struct AggregateOptions {
  double max_dist_m = 50.0;
  // Duplicate tags on one record count once by default (set semantics);
  // multiset counting is available for comparison runs.
  bool multiset_tags = false;
  int threads = 1;
};

// Aggregation output: per-segment monthly tallies plus the network geometry
// needed by downstream exports and density validation.
struct TallySet {
  std::vector<std::string> categories;
  Timezone timezone;
  std::vector<StreetSegment> network;            // sorted by id
  std::map<std::string, SegmentTally> segments;  // only segments with records
  std::uint64_t records_total = 0;
  std::uint64_t records_snapped = 0;
  std::uint64_t records_unsnapped = 0;
  double max_dist_m = 50.0;
  bool multiset_tags = false;

  const StreetSegment* segment_geometry(const std::string& id) const;
};

// Snaps every record and increments the per-layer counters of its segment's
// month bucket. Data-parallel over records; the merged result is independent
// of chunking and thread count.
TallySet aggregate(std::span<const GeoTaggedRecord> records,
                   const SegmentIndex& index, const Lexicons& lexicons,
                   const Timezone& timezone, const AggregateOptions& options);

// Versioned binary snapshot ("SSTL" magic) of a TallySet.
void write_tallies(const TallySet& tallies, const std::string& path);
TallySet read_tallies(const std::string& path);

}  // namespace smellscape
