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

#include "smellscape/smellmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "smellscape/error.hpp"
#include "smellscape/stats.hpp"

namespace smellscape::metrics {

std::optional<std::vector<double>> smell_fractions(const LayerCounts& counts) {
  const std::uint64_t total = counts.smell_total();
  if (total == 0) return std::nullopt;
  std::vector<double> fractions(counts.smell.size());
  for (std::size_t i = 0; i < counts.smell.size(); ++i)
    fractions[i] =
        static_cast<double>(counts.smell[i]) / static_cast<double>(total);
  return fractions;
}

std::optional<double> pleasant_fraction(const LayerCounts& counts) {
  const std::uint64_t total = counts.smell_total();
  if (total == 0) return std::nullopt;
  return static_cast<double>(counts.pleasant) / static_cast<double>(total);
}

std::optional<double> unpleasant_fraction(const LayerCounts& counts) {
  const std::uint64_t total = counts.smell_total();
  if (total == 0) return std::nullopt;
  return static_cast<double>(counts.unpleasant) / static_cast<double>(total);
}

std::vector<SegmentProfile> segment_profiles(const TallySet& tallies) {
  std::vector<SegmentProfile> profiles;
  profiles.reserve(tallies.segments.size());
  const std::size_t ncats = tallies.categories.size();
  for (const auto& [id, tally] : tallies.segments) {
    const LayerCounts total = tally.total(ncats);
    SegmentProfile profile;
    profile.segment_id = id;
    profile.n_smell_tags = total.smell_total();
    profile.n_records = total.records;
    if (auto fractions = smell_fractions(total))
      profile.smell_fractions = std::move(*fractions);
    profiles.push_back(std::move(profile));
  }
  return profiles;
}

std::array<LayerCounts, 12> pooled_calendar_months(const TallySet& tallies) {
  const std::size_t ncats = tallies.categories.size();
  std::array<LayerCounts, 12> pooled;
  for (auto& counts : pooled) counts = LayerCounts(ncats);
  for (const auto& [id, tally] : tallies.segments)
    for (const auto& [key, counts] : tally.months)
      pooled[static_cast<std::size_t>(key.month() - 1)].add(counts);
  return pooled;
}

std::map<MonthKey, LayerCounts> chronological_months(const TallySet& tallies) {
  const std::size_t ncats = tallies.categories.size();
  std::map<MonthKey, LayerCounts> series;
  for (const auto& [id, tally] : tallies.segments)
    for (const auto& [key, counts] : tally.months) {
      auto [it, inserted] = series.try_emplace(key, LayerCounts(ncats));
      it->second.add(counts);
    }
  return series;
}

double lag_autocorrelation(std::span<const double> series, std::size_t lag) {
  if (lag == 0 || series.size() < 2 * lag)
    throw Error(errc::series_too_short,
                "need at least " + std::to_string(2 * lag) + " months, got " +
                    std::to_string(series.size()));
  const double mu = stats::mean(series);
  const double var = stats::population_variance(series);
  if (var == 0.0)
    throw Error(errc::zero_variance, "constant monthly series");
  double acc = 0.0;
  const std::size_t terms = series.size() - lag;
  for (std::size_t t = 0; t < terms; ++t)
    acc += (series[t] - mu) * (series[t + lag] - mu);
  return acc / static_cast<double>(terms) / var;
}

CategorySeries category_series(const TallySet& tallies, std::size_t category) {
  const auto months = chronological_months(tallies);
  CategorySeries series;
  if (months.empty()) return series;

  // Defined value per month between the first and last month with records.
  const MonthKey first = months.begin()->first;
  const MonthKey last = months.rbegin()->first;
  std::vector<std::optional<double>> raw;
  raw.reserve(static_cast<std::size_t>(last.index - first.index) + 1);
  for (std::int32_t k = first.index; k <= last.index; ++k) {
    auto it = months.find(MonthKey{k});
    if (it == months.end()) {
      raw.push_back(std::nullopt);
      continue;
    }
    const std::uint64_t total = it->second.smell_total();
    if (total == 0) {
      raw.push_back(std::nullopt);
    } else {
      raw.push_back(static_cast<double>(it->second.smell[category]) /
                    static_cast<double>(total));
    }
  }

  // Trim undefined leading/trailing months, then interpolate interior gaps.
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && !raw[begin]) ++begin;
  while (end > begin && !raw[end - 1]) --end;
  if (begin == end) return series;

  series.first = MonthKey{first.index + static_cast<std::int32_t>(begin)};
  series.values.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    if (raw[i]) {
      series.values.push_back(*raw[i]);
      continue;
    }
    std::size_t prev = i - 1;  // defined: leading gap was trimmed
    std::size_t next = i + 1;
    while (!raw[next]) ++next;  // bounded: trailing gap was trimmed
    const double lo = *raw[prev];
    const double hi = *raw[next];
    const double t = static_cast<double>(i - prev) /
                     static_cast<double>(next - prev);
    series.values.push_back(lo + t * (hi - lo));
    series.interpolated.push_back(series.values.size() - 1);
  }
  return series;
}

std::vector<SeasonalityEntry> category_seasonality(const TallySet& tallies,
                                                   std::size_t lag) {
  std::vector<SeasonalityEntry> entries;
  for (std::size_t c = 0; c < tallies.categories.size(); ++c) {
    SeasonalityEntry entry;
    entry.category = tallies.categories[c];
    const CategorySeries series = category_series(tallies, c);
    entry.months_used = series.values.size();
    entry.months_interpolated = series.interpolated.size();
    try {
      entry.autocorrelation = lag_autocorrelation(series.values, lag);
    } catch (const Error& e) {
      entry.error = errc_name(e.code());
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

double month_entropy(std::span<const double> fractions) {
  return stats::shannon_entropy(fractions);
}

std::vector<MonthDistinctiveness> months_by_distinctiveness(
    const TallySet& tallies) {
  const auto pooled = pooled_calendar_months(tallies);
  std::vector<MonthDistinctiveness> months(12);
  for (int m = 0; m < 12; ++m) {
    months[m].month = m + 1;
    months[m].n_smell_tags = pooled[m].smell_total();
    if (auto fractions = smell_fractions(pooled[m]))
      months[m].entropy_bits = month_entropy(*fractions);
  }
  std::sort(months.begin(), months.end(),
            [](const MonthDistinctiveness& a, const MonthDistinctiveness& b) {
              if (a.entropy_bits.has_value() != b.entropy_bits.has_value())
                return a.entropy_bits.has_value();
              if (a.entropy_bits.has_value() &&
                  *a.entropy_bits != *b.entropy_bits)
                return *a.entropy_bits < *b.entropy_bits;
              return a.month < b.month;
            });
  return months;
}

std::vector<PleasureByMonth> pleasure_by_month(const TallySet& tallies) {
  const auto pooled = pooled_calendar_months(tallies);
  std::vector<PleasureByMonth> rows(12);
  std::vector<double> pleasant_population;
  std::vector<double> unpleasant_population;
  for (int m = 0; m < 12; ++m) {
    rows[m].month = m + 1;
    rows[m].f_pleasant = pleasant_fraction(pooled[m]);
    rows[m].f_unpleasant = unpleasant_fraction(pooled[m]);
    if (rows[m].f_pleasant) {
      pleasant_population.push_back(*rows[m].f_pleasant);
      unpleasant_population.push_back(*rows[m].f_unpleasant);
    }
  }
  if (pleasant_population.empty()) return rows;
  for (auto& row : rows) {
    if (!row.f_pleasant) continue;
    row.z_pleasure = stats::zscore(*row.f_pleasant, pleasant_population) -
                     stats::zscore(*row.f_unpleasant, unpleasant_population);
  }
  return rows;
}

std::vector<PleasureBySegment> pleasure_by_segment(const TallySet& tallies,
                                                   std::uint64_t min_tags) {
  const std::size_t ncats = tallies.categories.size();
  std::vector<PleasureBySegment> rows;
  for (const auto& [id, tally] : tallies.segments) {
    const LayerCounts total = tally.total(ncats);
    if (total.smell_total() < min_tags) continue;
    const auto f_pleasant = pleasant_fraction(total);
    if (!f_pleasant) continue;
    PleasureBySegment row;
    row.segment_id = id;
    row.f_pleasant = *f_pleasant;
    row.f_unpleasant = *unpleasant_fraction(total);
    row.n_smell_tags = total.smell_total();
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return rows;

  std::vector<double> pleasant_population;
  std::vector<double> unpleasant_population;
  pleasant_population.reserve(rows.size());
  unpleasant_population.reserve(rows.size());
  for (const auto& row : rows) {
    pleasant_population.push_back(row.f_pleasant);
    unpleasant_population.push_back(row.f_unpleasant);
  }
  for (auto& row : rows) {
    row.z_pleasure = stats::zscore(row.f_pleasant, pleasant_population) -
                     stats::zscore(row.f_unpleasant, unpleasant_population);
  }
  return rows;
}

LatLon polyline_midpoint(std::span<const LatLon> polyline) {
  if (polyline.empty()) return {};
  const double half = polyline_length_m(polyline) / 2.0;
  double walked = 0.0;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    const double step = haversine_m(polyline[i], polyline[i + 1]);
    if (walked + step >= half && step > 0.0) {
      const double t = (half - walked) / step;
      return LatLon{
          polyline[i].lat + t * (polyline[i + 1].lat - polyline[i].lat),
          polyline[i].lon + t * (polyline[i + 1].lon - polyline[i].lon)};
    }
    walked += step;
  }
  return polyline.back();
}

namespace {

// Shared argmax machinery for the pooled-calendar-month and per-(year,month)
// variants. month_filter selects which of a segment's month buckets count.
SmellOfMonth top_smell(const TallySet& tallies, const LayerCounts& pooled,
                       int display_month,
                       const std::function<bool(MonthKey)>& month_filter,
                       std::uint64_t min_tags) {
  const auto fractions = smell_fractions(pooled);
  if (!fractions)
    throw Error(errc::month_empty,
                "no smell tags in month " + std::to_string(display_month));

  // Alphabetical tie-break over categories with equal fractions.
  std::size_t best = 0;
  for (std::size_t c = 1; c < fractions->size(); ++c) {
    const double delta = (*fractions)[c] - (*fractions)[best];
    if (delta > 0.0 ||
        (delta == 0.0 && tallies.categories[c] < tallies.categories[best]))
      best = c;
  }

  SmellOfMonth result;
  result.month = display_month;
  result.category = best;
  result.category_name = tallies.categories[best];
  result.category_fraction = (*fractions)[best];

  const std::size_t ncats = tallies.categories.size();
  for (const auto& [id, tally] : tallies.segments) {
    LayerCounts seg_month(ncats);
    for (const auto& [key, counts] : tally.months)
      if (month_filter(key)) seg_month.add(counts);
    const std::uint64_t total = seg_month.smell_total();
    if (total < min_tags || total == 0) continue;
    const double f = static_cast<double>(seg_month.smell[best]) /
                     static_cast<double>(total);
    // Segments iterate in ascending id order, so strict improvement keeps
    // the smallest id on ties.
    if (!result.segment_id || f > result.segment_fraction) {
      result.segment_id = id;
      result.segment_fraction = f;
      result.segment_month_tags = total;
      if (const auto* geometry = tallies.segment_geometry(id))
        result.segment_midpoint = polyline_midpoint(geometry->polyline);
    }
  }
  return result;
}

}  // namespace

SmellOfMonth smell_of_month(const TallySet& tallies, int month,
                            std::uint64_t min_tags) {
  if (month < 1 || month > 12)
    throw Error(errc::bad_argument, "month must be 1..12");
  const auto pooled = pooled_calendar_months(tallies);
  return top_smell(
      tallies, pooled[static_cast<std::size_t>(month - 1)], month,
      [month](MonthKey key) { return key.month() == month; }, min_tags);
}

SmellOfMonth smell_of_month_at(const TallySet& tallies, MonthKey key,
                               std::uint64_t min_tags) {
  const std::size_t ncats = tallies.categories.size();
  LayerCounts pooled(ncats);
  for (const auto& [id, tally] : tallies.segments)
    if (const auto* counts = tally.month(key)) pooled.add(*counts);
  return top_smell(
      tallies, pooled, key.month(),
      [key](MonthKey candidate) { return candidate == key; }, min_tags);
}

}  // namespace smellscape::metrics
