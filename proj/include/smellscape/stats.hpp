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

#include <cstdint>
#include <span>
#include <vector>

namespace smellscape::stats {

// Population mean and population (not sample) standard deviation. All the
// normalizations downstream are over fully enumerated populations of months
// or segments, so N is the right divisor throughout.
double mean(std::span<const double> xs);
double population_stddev(std::span<const double> xs);
double population_variance(std::span<const double> xs);

// Product-moment correlation. Requires |x| == |y| >= 3 and nonzero variance
// on both sides; throws LengthMismatch / TooFewPoints / ZeroVariance.
double pearson(std::span<const double> x, std::span<const double> y);

// Pearson correlation of average-ranked values; tied values receive the mean
// of their rank range. Same preconditions as pearson.
double spearman(std::span<const double> x, std::span<const double> y);

// Average ranks (1-based); ties get the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> xs);

// (value - mu) / sigma over the given population. Throws ZeroVariance when
// the population is constant.
double zscore(double value, std::span<const double> population);

// Shannon entropy in bits of a probability vector. Components must be >= 0
// and sum to 1 within 1e-9 (the vector is renormalized within that
// tolerance); 0 * log 0 counts as 0. Throws NotADistribution otherwise.
double shannon_entropy(std::span<const double> p);

// Two-sided permutation p-value for a spearman correlation: the fraction of
// seeded shuffles of y whose |rho| meets or exceeds the observed |rho|.
// Used by significance checks in validation reports and tests.
double spearman_permutation_pvalue(std::span<const double> x,
                                   std::span<const double> y,
                                   int shuffles = 10000,
                                   std::uint64_t seed = 1);

}  // namespace smellscape::stats
