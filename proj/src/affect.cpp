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

#include "smellscape/affect.hpp"

#include <map>

#include "smellscape/error.hpp"
#include "smellscape/smellmetrics.hpp"
#include "smellscape/stats.hpp"

namespace smellscape::affect {

std::optional<double> positive_fraction(const LayerCounts& counts) {
  const std::uint64_t total = counts.affect_total();
  if (total == 0) return std::nullopt;
  return static_cast<double>(counts.positive) / static_cast<double>(total);
}

std::optional<std::vector<double>> emotion_fractions(
    const LayerCounts& counts) {
  const std::uint64_t total = counts.emotion_total();
  if (total == 0) return std::nullopt;
  std::vector<double> fractions(kEmotionCount);
  for (std::size_t e = 0; e < kEmotionCount; ++e)
    fractions[e] =
        static_cast<double>(counts.emotions[e]) / static_cast<double>(total);
  return fractions;
}

std::vector<SentimentBySegment> sentiment_by_segment(const TallySet& tallies,
                                                     std::uint64_t min_tags) {
  const std::size_t ncats = tallies.categories.size();
  std::vector<SentimentBySegment> rows;
  for (const auto& [id, tally] : tallies.segments) {
    const LayerCounts total = tally.total(ncats);
    if (total.smell_total() < min_tags) continue;
    const auto f_positive = positive_fraction(total);
    if (!f_positive) continue;
    SentimentBySegment row;
    row.segment_id = id;
    row.f_positive = *f_positive;
    row.f_negative = 1.0 - *f_positive;
    row.n_smell_tags = total.smell_total();
    row.n_affect_tags = total.affect_total();
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return rows;

  std::vector<double> positive_population;
  std::vector<double> negative_population;
  positive_population.reserve(rows.size());
  negative_population.reserve(rows.size());
  for (const auto& row : rows) {
    positive_population.push_back(row.f_positive);
    negative_population.push_back(row.f_negative);
  }
  for (auto& row : rows) {
    row.z_sentiment = stats::zscore(row.f_positive, positive_population) -
                      stats::zscore(row.f_negative, negative_population);
  }
  return rows;
}

std::vector<CategoryCorrelation> correlate_smell_sentiment(
    const TallySet& tallies, std::span<const std::uint64_t> thresholds) {
  const std::size_t ncats = tallies.categories.size();
  std::vector<CategoryCorrelation> rows;
  for (std::uint64_t min_tags : thresholds) {
    const auto sentiments = sentiment_by_segment(tallies, min_tags);

    // Column extraction: f_S per qualifying segment with a defined profile.
    std::vector<std::vector<double>> smell_columns(ncats);
    std::vector<double> sentiment_column;
    for (const auto& row : sentiments) {
      const auto& tally = tallies.segments.at(row.segment_id);
      const auto fractions = metrics::smell_fractions(tally.total(ncats));
      if (!fractions) continue;
      sentiment_column.push_back(row.z_sentiment);
      for (std::size_t c = 0; c < ncats; ++c)
        smell_columns[c].push_back((*fractions)[c]);
    }

    for (std::size_t c = 0; c < ncats; ++c) {
      CategoryCorrelation cell;
      cell.category = tallies.categories[c];
      cell.min_tags = min_tags;
      cell.n_segments = sentiment_column.size();
      try {
        cell.pearson = stats::pearson(smell_columns[c], sentiment_column);
      } catch (const Error& e) {
        cell.error = errc_name(e.code());
      }
      try {
        cell.spearman = stats::spearman(smell_columns[c], sentiment_column);
      } catch (const Error& e) {
        cell.error = errc_name(e.code());
      }
      rows.push_back(std::move(cell));
    }
  }
  return rows;
}

std::vector<PleasureSentimentPoint> correlate_pleasure_sentiment(
    const TallySet& tallies, std::span<const std::uint64_t> thresholds) {
  std::vector<PleasureSentimentPoint> points;
  for (std::uint64_t min_tags : thresholds) {
    PleasureSentimentPoint point;
    point.min_tags = min_tags;

    const auto pleasures = metrics::pleasure_by_segment(tallies, min_tags);
    const auto sentiments = sentiment_by_segment(tallies, min_tags);
    std::map<std::string, double> sentiment_of;
    for (const auto& row : sentiments)
      sentiment_of.emplace(row.segment_id, row.z_sentiment);

    std::vector<double> x;
    std::vector<double> y;
    for (const auto& row : pleasures) {
      auto it = sentiment_of.find(row.segment_id);
      if (it == sentiment_of.end()) continue;
      x.push_back(row.z_pleasure);
      y.push_back(it->second);
    }
    point.n_segments = x.size();
    try {
      point.spearman = stats::spearman(x, y);
    } catch (const Error& e) {
      point.error = errc_name(e.code());
    }
    try {
      point.pearson = stats::pearson(x, y);
    } catch (const Error& e) {
      point.error = errc_name(e.code());
    }
    points.push_back(std::move(point));
  }
  return points;
}

EmotionMatrix emotion_matrix(const TallySet& tallies, std::uint64_t min_tags,
                             bool use_spearman) {
  const std::size_t ncats = tallies.categories.size();
  EmotionMatrix matrix;
  matrix.categories = tallies.categories;
  matrix.cells.resize(ncats);
  matrix.errors.resize(ncats);
  matrix.spearman = use_spearman;

  std::vector<std::vector<double>> smell_columns(ncats);
  std::vector<std::vector<double>> emotion_columns(kEmotionCount);
  for (const auto& [id, tally] : tallies.segments) {
    const LayerCounts total = tally.total(ncats);
    if (total.smell_total() < min_tags) continue;
    const auto smells = metrics::smell_fractions(total);
    const auto emotions = emotion_fractions(total);
    if (!smells || !emotions) continue;
    for (std::size_t c = 0; c < ncats; ++c)
      smell_columns[c].push_back((*smells)[c]);
    for (std::size_t e = 0; e < kEmotionCount; ++e)
      emotion_columns[e].push_back((*emotions)[e]);
  }
  matrix.n_segments = smell_columns.empty() ? 0 : smell_columns[0].size();

  for (std::size_t c = 0; c < ncats; ++c) {
    for (std::size_t e = 0; e < kEmotionCount; ++e) {
      try {
        matrix.cells[c][e] =
            use_spearman ? stats::spearman(smell_columns[c], emotion_columns[e])
                         : stats::pearson(smell_columns[c], emotion_columns[e]);
      } catch (const Error& err) {
        matrix.errors[c][e] = errc_name(err.code());
      }
    }
  }
  return matrix;
}

}  // namespace smellscape::affect
