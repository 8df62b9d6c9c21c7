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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smellscape/tally.hpp"

namespace smellscape::metrics {

// Per-segment smell-category fractions: category count over all smell tags
// at the segment. Undefined (nullopt) when the segment has no smell tags.
std::optional<std::vector<double>> smell_fractions(const LayerCounts& counts);

// Share of the bucket's smell tags that match the pleasant (unpleasant)
// list. The two fractions share the smell-tag denominator and vary
// independently; both are undefined when the bucket has no smell tags.
std::optional<double> pleasant_fraction(const LayerCounts& counts);
std::optional<double> unpleasant_fraction(const LayerCounts& counts);

struct SegmentProfile {
  std::string segment_id;
  std::vector<double> smell_fractions;  // empty when undefined
  std::uint64_t n_smell_tags = 0;
  std::uint64_t n_records = 0;

  bool defined() const { return !smell_fractions.empty(); }
};

// All-months profile per segment, sorted by segment id.
std::vector<SegmentProfile> segment_profiles(const TallySet& tallies);

// Counts pooled by calendar month across years; [0] is January.
std::array<LayerCounts, 12> pooled_calendar_months(const TallySet& tallies);

// Chronological per-(year,month) counts over the whole span of the data.
std::map<MonthKey, LayerCounts> chronological_months(const TallySet& tallies);

// Lag autocorrelation of a monthly fraction series: the mean over valid t of
// (f_t - mu)(f_{t+lag} - mu), divided by the population variance, with mu and
// the variance taken over the whole series. Requires length >= 2 * lag.
double lag_autocorrelation(std::span<const double> series, std::size_t lag);

// Chronological fraction series for one smell category. Leading/trailing
// months without smell tags are dropped; interior gaps are linearly
// interpolated and flagged.
struct CategorySeries {
  MonthKey first{};
  std::vector<double> values;
  std::vector<std::size_t> interpolated;  // indices into values
};
CategorySeries category_series(const TallySet& tallies,
                               std::size_t category);

struct SeasonalityEntry {
  std::string category;
  std::optional<double> autocorrelation;  // unset when the series is degenerate
  std::string error;                      // why, when unset
  std::size_t months_used = 0;
  std::size_t months_interpolated = 0;
};

// Lag-12 (by default) seasonality per category.
std::vector<SeasonalityEntry> category_seasonality(const TallySet& tallies,
                                                   std::size_t lag = 12);

// Entropy in bits of a month's smell-fraction vector.
double month_entropy(std::span<const double> fractions);

struct MonthDistinctiveness {
  int month = 0;  // 1..12
  std::optional<double> entropy_bits;
  std::uint64_t n_smell_tags = 0;
};

// All twelve months ranked most-distinctive (lowest entropy) first; months
// without smell tags sort last. Ties break on the month number.
std::vector<MonthDistinctiveness> months_by_distinctiveness(
    const TallySet& tallies);

struct PleasureByMonth {
  int month = 0;  // 1..12
  std::optional<double> f_pleasant;
  std::optional<double> f_unpleasant;
  std::optional<double> z_pleasure;
};

// Pleasure score per calendar month: z-score of the month's pleasant
// fraction minus z-score of its unpleasant fraction, each normalized over
// the population of defined calendar months. Throws ZeroVariance when a
// population is constant.
std::vector<PleasureByMonth> pleasure_by_month(const TallySet& tallies);

struct PleasureBySegment {
  std::string segment_id;
  double f_pleasant = 0.0;
  double f_unpleasant = 0.0;
  double z_pleasure = 0.0;
  std::uint64_t n_smell_tags = 0;
};

// Pleasure score per street segment, over the population of segments with at
// least min_tags smell tags and a defined pleasantness fraction.
std::vector<PleasureBySegment> pleasure_by_segment(const TallySet& tallies,
                                                   std::uint64_t min_tags);

struct SmellOfMonth {
  int month = 0;
  std::size_t category = 0;
  std::string category_name;
  double category_fraction = 0.0;
  // Best segment for that category in that month, among segments with at
  // least min_tags smell tags in the month. Unset when none qualifies.
  std::optional<std::string> segment_id;
  double segment_fraction = 0.0;
  LatLon segment_midpoint{};
  std::uint64_t segment_month_tags = 0;
};

// Top category of calendar month t and where it is strongest. Category ties
// break alphabetically, segment ties on the smaller id. Throws MonthEmpty
// when the pooled month has no smell tags.
SmellOfMonth smell_of_month(const TallySet& tallies, int month,
                            std::uint64_t min_tags);

// Same, restricted to one concrete (year, month) instead of pooling the
// calendar month across years.
SmellOfMonth smell_of_month_at(const TallySet& tallies, MonthKey key,
                               std::uint64_t min_tags);

// Midpoint of a polyline by arc length; used to attach a representative
// coordinate to per-segment report rows.
LatLon polyline_midpoint(std::span<const LatLon> polyline);

}  // namespace smellscape::metrics
