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

#include "smellscape/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "smellscape/error.hpp"
#include "smellscape/rng.hpp"

namespace smellscape::stats {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(errc::length_mismatch, "series lengths " +
                                           std::to_string(x.size()) + " vs " +
                                           std::to_string(y.size()));
  if (x.size() < 3)
    throw Error(errc::too_few_points,
                "need at least 3 points, got " + std::to_string(x.size()));
}

}  // namespace

double mean(std::span<const double> xs) {
  if (xs.empty()) throw Error(errc::too_few_points, "mean of empty series");
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double population_variance(std::span<const double> xs) {
  double mu = mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - mu) * (x - mu);
  return acc / static_cast<double>(xs.size());
}

double population_stddev(std::span<const double> xs) {
  return std::sqrt(population_variance(xs));
}

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw Error(errc::zero_variance, "correlation input is constant");
  double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    // Tied block [i, j]: everyone gets the mean of ranks i+1 .. j+1.
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  return pearson(rx, ry);
}

double zscore(double value, std::span<const double> population) {
  const double sigma = population_stddev(population);
  if (sigma == 0.0)
    throw Error(errc::zero_variance, "population is constant");
  return (value - mean(population)) / sigma;
}

double shannon_entropy(std::span<const double> p) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw Error(errc::not_a_distribution, "negative or non-finite component");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(errc::not_a_distribution,
                "components sum to " + std::to_string(sum));
  double h = 0.0;
  for (double v : p) {
    const double q = v / sum;
    if (q > 0.0) h -= q * std::log2(q);
  }
  return h < 0.0 ? 0.0 : h;
}

double spearman_permutation_pvalue(std::span<const double> x,
                                   std::span<const double> y, int shuffles,
                                   std::uint64_t seed) {
  const double observed = std::abs(spearman(x, y));
  std::vector<double> shuffled(y.begin(), y.end());
  Rng rng(seed);
  int hits = 0;
  for (int s = 0; s < shuffles; ++s) {
    rng.shuffle(shuffled);
    if (std::abs(spearman(x, shuffled)) >= observed) ++hits;
  }
  return (static_cast<double>(hits) + 1.0) / (static_cast<double>(shuffles) + 1.0);
}

}  // namespace smellscape::stats
