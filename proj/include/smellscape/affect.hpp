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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smellscape/tally.hpp"

namespace smellscape::affect {

// Positive fraction of a bucket's polarity-carrying tags. Undefined when no
// tag carried a polarity.
std::optional<double> positive_fraction(const LayerCounts& counts);

// Emotion fractions over all emotion instances at the bucket; a tag carrying
// k emotions contributes k instances. Undefined when there are none.
std::optional<std::vector<double>> emotion_fractions(const LayerCounts& counts);

struct SentimentBySegment {
  std::string segment_id;
  double f_positive = 0.0;
  double f_negative = 0.0;
  double z_sentiment = 0.0;
  std::uint64_t n_smell_tags = 0;
  std::uint64_t n_affect_tags = 0;
};

// Sentiment score per segment: z-score of the positive fraction minus
// z-score of the negative fraction, over the population of segments with at
// least min_tags smell tags and at least one polarity-carrying tag.
std::vector<SentimentBySegment> sentiment_by_segment(const TallySet& tallies,
                                                     std::uint64_t min_tags);

struct CategoryCorrelation {
  std::string category;
  std::uint64_t min_tags = 0;
  std::optional<double> pearson;
  std::optional<double> spearman;
  std::string error;  // set when both statistics are unavailable
  std::size_t n_segments = 0;
};

// Correlation of f_S@l against z_sentiment@l across qualifying segments,
// one row per (category, threshold). Both statistics are always computed.
std::vector<CategoryCorrelation> correlate_smell_sentiment(
    const TallySet& tallies, std::span<const std::uint64_t> thresholds);

struct PleasureSentimentPoint {
  std::uint64_t min_tags = 0;
  std::optional<double> spearman;
  std::optional<double> pearson;
  std::string error;
  std::size_t n_segments = 0;
};

// Correlation of z_pleasure@l against z_sentiment@l per threshold, across
// segments qualifying for both scores.
std::vector<PleasureSentimentPoint> correlate_pleasure_sentiment(
    const TallySet& tallies, std::span<const std::uint64_t> thresholds);

struct EmotionMatrix {
  std::vector<std::string> categories;
  // cells[s][e]: correlation of f_S@l vs f_E@l, unset where degenerate.
  std::vector<std::array<std::optional<double>, kEmotionCount>> cells;
  std::vector<std::array<std::string, kEmotionCount>> errors;
  std::size_t n_segments = 0;
  bool spearman = false;
};

// Smell-category x emotion correlation matrix over segments with at least
// min_tags smell tags, defined smell fractions and defined emotion
// fractions. Cells where either column is constant carry an error marker.
EmotionMatrix emotion_matrix(const TallySet& tallies, std::uint64_t min_tags,
                             bool use_spearman = false);

}  // namespace smellscape::affect
