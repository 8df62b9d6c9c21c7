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

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "smellscape/error.hpp"
#include "smellscape/rng.hpp"
#include "smellscape/smellmetrics.hpp"

using namespace smellscape;
namespace mt = smellscape::metrics;

namespace {

TallySet make_tallies(std::vector<std::string> categories) {
  TallySet tallies;
  tallies.categories = std::move(categories);
  return tallies;
}

LayerCounts& bucket(TallySet& tallies, const std::string& segment, int year,
                    int month) {
  auto [it, inserted] = tallies.segments[segment].months.try_emplace(
      MonthKey::from_parts(year, month), LayerCounts(tallies.categories.size()));
  return it->second;
}

}  // namespace

TEST_CASE("segment fractions per the count ratios") {
  auto tallies = make_tallies({"nature", "food", "waste"});
  auto& counts = bucket(tallies, "a", 2013, 5);

  SUBCASE("symmetric split") {
    counts.smell = {2, 2, 0};
    const auto f = mt::smell_fractions(counts);
    REQUIRE(f.has_value());
    CHECK((*f)[0] == 0.5);
    CHECK((*f)[1] == 0.5);
    CHECK((*f)[2] == 0.0);
  }
  SUBCASE("single category") {
    counts.smell = {0, 0, 7};
    const auto f = mt::smell_fractions(counts);
    REQUIRE(f.has_value());
    CHECK((*f)[2] == 1.0);
    CHECK((*f)[0] == 0.0);
  }
  SUBCASE("no smell tags is undefined") {
    counts.smell = {0, 0, 0};
    CHECK_FALSE(mt::smell_fractions(counts).has_value());
  }
}

TEST_CASE("monthly pooled fractions") {
  auto tallies = make_tallies({"soil", "food"});
  // January across two years pools 30 soil + 10 food.
  bucket(tallies, "a", 2012, 1).smell = {20, 0};
  bucket(tallies, "b", 2013, 1).smell = {10, 10};

  const auto pooled = mt::pooled_calendar_months(tallies);
  const auto f = mt::smell_fractions(pooled[0]);
  REQUIRE(f.has_value());
  CHECK((*f)[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK((*f)[1] == doctest::Approx(0.25).epsilon(1e-12));
  // February has nothing.
  CHECK_FALSE(mt::smell_fractions(pooled[1]).has_value());
}

TEST_CASE("lag autocorrelation of an exact period-12 signal is 1") {
  std::vector<double> series(120);
  for (std::size_t t = 0; t < series.size(); ++t)
    series[t] = 0.3 + 0.2 * std::sin(2.0 * 3.141592653589793 * (t % 12) / 12.0);
  CHECK(mt::lag_autocorrelation(series, 12) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("lag autocorrelation is affine invariant") {
  Rng rng(5);
  std::vector<double> series(120);
  for (auto& v : series) v = rng.next_double();
  const double base = mt::lag_autocorrelation(series, 12);
  std::vector<double> scaled;
  for (double v : series) scaled.push_back(3.5 * v + 11.0);
  CHECK(mt::lag_autocorrelation(scaled, 12) ==
        doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("lag autocorrelation preconditions") {
  std::vector<double> short_series(23, 0.5);
  CHECK_THROWS_AS((void)mt::lag_autocorrelation(short_series, 12), Error);
  std::vector<double> constant(120, 0.5);
  try {
    (void)mt::lag_autocorrelation(constant, 12);
    FAIL("expected ZeroVariance");
  } catch (const Error& e) {
    CHECK(e.code() == errc::zero_variance);
  }
}

TEST_CASE("category series interpolates interior gaps only") {
  auto tallies = make_tallies({"soil"});
  // Months: 2013-01 (f=0.0? no, single category so f=1 when nonzero)...
  // use records with zero smell tags to create gaps.
  bucket(tallies, "a", 2013, 1).smell = {4};
  bucket(tallies, "a", 2013, 2).records = 1;  // gap: no smell tags
  bucket(tallies, "a", 2013, 3).smell = {2};
  // leading/trailing gaps: 2012-12 and 2013-04 have records, no tags
  bucket(tallies, "a", 2012, 12).records = 1;
  bucket(tallies, "a", 2013, 4).records = 1;

  const auto series = mt::category_series(tallies, 0);
  CHECK(series.first == MonthKey::from_parts(2013, 1));
  REQUIRE(series.values.size() == 3);
  CHECK(series.values[0] == 1.0);
  CHECK(series.values[1] == 1.0);  // interpolated between 1 and 1
  CHECK(series.values[2] == 1.0);
  CHECK(series.interpolated == std::vector<std::size_t>{1});
}

TEST_CASE("month entropy and distinctiveness ranking") {
  auto tallies = make_tallies({"a", "b", "c", "d", "e",
                               "f", "g", "h", "i", "j"});
  // January: all one smell (entropy 0, most distinctive).
  bucket(tallies, "s", 2013, 1).smell = {10, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  // February: uniform over 10 (log2 10, least distinctive).
  bucket(tallies, "s", 2013, 2).smell = {3, 3, 3, 3, 3, 3, 3, 3, 3, 3};
  // March: two-way split (1 bit).
  bucket(tallies, "s", 2013, 3).smell = {5, 5, 0, 0, 0, 0, 0, 0, 0, 0};

  const auto pooled = mt::pooled_calendar_months(tallies);
  CHECK(mt::month_entropy(*mt::smell_fractions(pooled[0])) == 0.0);
  CHECK(mt::month_entropy(*mt::smell_fractions(pooled[1])) ==
        doctest::Approx(std::log2(10.0)).epsilon(1e-12));
  CHECK(mt::month_entropy(*mt::smell_fractions(pooled[2])) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const auto ranking = mt::months_by_distinctiveness(tallies);
  REQUIRE(ranking.size() == 12);
  CHECK(ranking[0].month == 1);  // entropy 0 first
  CHECK(ranking[1].month == 3);
  CHECK(ranking[2].month == 2);
  CHECK_FALSE(ranking[11].entropy_bits.has_value());  // empty months last
}

TEST_CASE("pleasure by segment matches the hand-computed toy population") {
  auto tallies = make_tallies({"nature"});
  // Three segments, 10 smell tags each; pleasant counts 2/4/6 and
  // unpleasant counts 1/1/4 give fractions [0.2,0.4,0.6] and [0.1,0.1,0.4].
  const struct {
    const char* id;
    std::uint64_t pleasant, unpleasant;
  } rows[] = {{"s1", 2, 1}, {"s2", 4, 1}, {"s3", 6, 4}};
  for (const auto& row : rows) {
    auto& counts = bucket(tallies, row.id, 2013, 5);
    counts.smell = {10};
    counts.pleasant = row.pleasant;
    counts.unpleasant = row.unpleasant;
  }

  const auto scored = mt::pleasure_by_segment(tallies, 0);
  REQUIRE(scored.size() == 3);
  const double sigma_p = std::sqrt(0.08 / 3.0);
  const double sigma_u = std::sqrt(0.02);
  const double expected_s3 = 0.2 / sigma_p - 0.2 / sigma_u;
  CHECK(scored[2].segment_id == "s3");
  CHECK(scored[2].z_pleasure == doctest::Approx(expected_s3).epsilon(1e-12));
  // Segment s1 mirrors s3 in the pleasant dimension.
  CHECK(scored[0].z_pleasure ==
        doctest::Approx(-0.2 / sigma_p + 0.1 / sigma_u).epsilon(1e-12));
}

TEST_CASE("pleasure scores match a naive recomputation of their z-scores") {
  auto tallies = make_tallies({"nature"});
  const struct {
    const char* id;
    std::uint64_t pleasant, unpleasant;
  } rows[] = {{"a", 4, 4}, {"b", 12, 12}, {"c", 8, 8}, {"d", 12, 8}};
  for (const auto& row : rows) {
    auto& counts = bucket(tallies, row.id, 2013, 1);
    counts.smell = {16};
    counts.pleasant = row.pleasant;
    counts.unpleasant = row.unpleasant;
  }

  const auto scored = mt::pleasure_by_segment(tallies, 0);
  REQUIRE(scored.size() == 4);
  std::vector<double> fp, fu;
  for (const auto& row : scored) {
    fp.push_back(row.f_pleasant);
    fu.push_back(row.f_unpleasant);
  }
  auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  };
  auto sigma = [&](const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += (x - mean(v)) * (x - mean(v));
    return std::sqrt(acc / v.size());
  };
  for (const auto& row : scored) {
    const double naive = (row.f_pleasant - mean(fp)) / sigma(fp) -
                         (row.f_unpleasant - mean(fu)) / sigma(fu);
    CHECK(row.z_pleasure == doctest::Approx(naive).epsilon(1e-12));
  }
}

TEST_CASE("pleasure by month normalizes over defined calendar months") {
  auto tallies = make_tallies({"nature"});
  for (int month = 1; month <= 4; ++month) {
    auto& counts = bucket(tallies, "s", 2013, month);
    counts.smell = {16};
    counts.pleasant = static_cast<std::uint64_t>(month * 2);  // 2,4,6,8
    counts.unpleasant = 4;                                    // constant
  }
  // Constant unpleasant population across months: ZeroVariance.
  CHECK_THROWS_AS((void)mt::pleasure_by_month(tallies), Error);

  bucket(tallies, "s", 2013, 4).unpleasant = 6;
  const auto rows = mt::pleasure_by_month(tallies);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0].z_pleasure.has_value());
  CHECK_FALSE(rows[11].z_pleasure.has_value());  // December has no data

  // Naive recomputation.
  std::vector<double> fp, fu;
  for (const auto& row : rows) {
    if (!row.f_pleasant) continue;
    fp.push_back(*row.f_pleasant);
    fu.push_back(*row.f_unpleasant);
  }
  REQUIRE(fp.size() == 4);
  const double mu_p = std::accumulate(fp.begin(), fp.end(), 0.0) / 4.0;
  const double mu_u = std::accumulate(fu.begin(), fu.end(), 0.0) / 4.0;
  double sp = 0.0, su = 0.0;
  for (int i = 0; i < 4; ++i) {
    sp += (fp[i] - mu_p) * (fp[i] - mu_p);
    su += (fu[i] - mu_u) * (fu[i] - mu_u);
  }
  sp = std::sqrt(sp / 4.0);
  su = std::sqrt(su / 4.0);
  CHECK(*rows[2].z_pleasure ==
        doctest::Approx((*rows[2].f_pleasant - mu_p) / sp -
                        (*rows[2].f_unpleasant - mu_u) / su)
            .epsilon(1e-12));
}

TEST_CASE("smell of the month finds the planted park segment") {
  auto tallies = make_tallies({"nature", "waste"});
  // April: the park segment is 90% nature; a noisy segment is waste-heavy.
  auto& park2012 = bucket(tallies, "park", 2012, 4);
  park2012.smell = {45, 5};
  auto& park2013 = bucket(tallies, "park", 2013, 4);
  park2013.smell = {45, 5};
  auto& road = bucket(tallies, "road", 2013, 4);
  road.smell = {10, 30};

  StreetSegment park_geom;
  park_geom.id = "park";
  park_geom.polyline = {{51.5, 0.0}, {51.5, 0.01}};
  park_geom.length_m = polyline_length_m(park_geom.polyline);
  StreetSegment road_geom;
  road_geom.id = "road";
  road_geom.polyline = {{51.6, 0.0}, {51.6, 0.01}};
  road_geom.length_m = polyline_length_m(road_geom.polyline);
  tallies.network = {park_geom, road_geom};

  const auto result = mt::smell_of_month(tallies, 4, 30);
  CHECK(result.category_name == "nature");
  // Pooled April: nature 100, waste 40 -> f = 100/140.
  CHECK(result.category_fraction == doctest::Approx(100.0 / 140.0).epsilon(1e-12));
  REQUIRE(result.segment_id.has_value());
  CHECK(*result.segment_id == "park");
  CHECK(result.segment_fraction == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(result.segment_month_tags == 100);
  CHECK(result.segment_midpoint.lat == doctest::Approx(51.5));

  // May has nothing.
  CHECK_THROWS_AS((void)mt::smell_of_month(tallies, 5, 30), Error);
  try {
    (void)mt::smell_of_month(tallies, 5, 30);
  } catch (const Error& e) {
    CHECK(e.code() == errc::month_empty);
  }
}

TEST_CASE("smell of the month breaks category ties alphabetically") {
  auto tallies = make_tallies({"waste", "food"});  // declared order != alpha
  auto& counts = bucket(tallies, "s", 2013, 7);
  counts.smell = {5, 5};
  const auto result = mt::smell_of_month(tallies, 7, 0);
  CHECK(result.category_name == "food");
}

TEST_CASE("per-(year,month) variant does not pool across years") {
  auto tallies = make_tallies({"nature", "waste"});
  bucket(tallies, "a", 2012, 4).smell = {10, 0};
  bucket(tallies, "a", 2013, 4).smell = {0, 10};

  // Pooled April ties 10:10 and resolves alphabetically to nature.
  CHECK(mt::smell_of_month(tallies, 4, 0).category_name == "nature");
  // The individual years keep their own winners.
  CHECK(mt::smell_of_month_at(tallies, MonthKey::from_parts(2012, 4), 0)
            .category_name == "nature");
  CHECK(mt::smell_of_month_at(tallies, MonthKey::from_parts(2013, 4), 0)
            .category_name == "waste");
  CHECK_THROWS_AS(
      (void)mt::smell_of_month_at(tallies, MonthKey::from_parts(2014, 4), 0),
      Error);
}

TEST_CASE("smell of the month is invariant to rescaling all counts") {
  auto tallies = make_tallies({"nature", "waste", "food"});
  bucket(tallies, "a", 2013, 4).smell = {9, 2, 5};
  bucket(tallies, "b", 2013, 4).smell = {1, 7, 3};
  const auto base = mt::smell_of_month(tallies, 4, 0);

  auto scaled = tallies;
  for (auto& [id, tally] : scaled.segments)
    for (auto& [key, counts] : tally.months)
      for (auto& v : counts.smell) v *= 13;
  const auto rescaled = mt::smell_of_month(scaled, 4, 0);
  CHECK(rescaled.category_name == base.category_name);
  CHECK(rescaled.segment_id == base.segment_id);
  CHECK(rescaled.segment_fraction ==
        doctest::Approx(base.segment_fraction).epsilon(1e-12));
}

TEST_CASE("pleasure scores are invariant under segment relabeling") {
  auto tallies = make_tallies({"nature"});
  const struct {
    const char* id;
    std::uint64_t pleasant, unpleasant;
  } rows[] = {{"x1", 2, 1}, {"x2", 4, 1}, {"x3", 6, 4}};
  for (const auto& row : rows) {
    auto& counts = bucket(tallies, row.id, 2013, 5);
    counts.smell = {10};
    counts.pleasant = row.pleasant;
    counts.unpleasant = row.unpleasant;
  }
  // Relabel so the lexicographic order reverses.
  auto relabeled = make_tallies({"nature"});
  const char* reversed[] = {"z3", "z2", "z1"};
  int i = 0;
  for (const auto& row : rows) {
    auto& counts = bucket(relabeled, reversed[i++], 2013, 5);
    counts.smell = {10};
    counts.pleasant = row.pleasant;
    counts.unpleasant = row.unpleasant;
  }

  const auto base = mt::pleasure_by_segment(tallies, 0);
  const auto renamed = mt::pleasure_by_segment(relabeled, 0);
  REQUIRE(base.size() == renamed.size());
  // Scores travel with the underlying counts, not with the labels.
  for (const auto& row : base) {
    const char* expected_label =
        row.segment_id == "x1" ? "z3" : (row.segment_id == "x2" ? "z2" : "z1");
    bool found = false;
    for (const auto& other : renamed)
      if (other.segment_id == expected_label) {
        CHECK(other.z_pleasure == doctest::Approx(row.z_pleasure).epsilon(1e-12));
        found = true;
      }
    CHECK(found);
  }
}

TEST_CASE("naive oracle equivalence on random tallies") {
  Rng rng(909);
  const std::size_t ncats = 10;
  std::vector<std::string> categories;
  for (std::size_t c = 0; c < ncats; ++c)
    categories.push_back("cat" + std::to_string(c));
  auto tallies = make_tallies(categories);

  for (int s = 0; s < 20; ++s) {
    const std::string id = "seg" + std::to_string(s);
    for (int m = 0; m < 24; ++m) {
      if (rng.next_below(5) == 0) continue;  // leave holes
      auto& counts = bucket(tallies, id, 2012 + m / 12, 1 + m % 12);
      for (std::size_t c = 0; c < ncats; ++c)
        counts.smell[c] = rng.next_below(20);
      counts.pleasant = rng.next_below(10);
      counts.unpleasant = rng.next_below(10);
      counts.records = 1 + rng.next_below(40);
    }
  }

  // Per-segment smell fractions, naive.
  for (const auto& profile : mt::segment_profiles(tallies)) {
    const auto& tally = tallies.segments.at(profile.segment_id);
    std::vector<std::uint64_t> sums(ncats, 0);
    std::uint64_t total = 0;
    for (const auto& [key, counts] : tally.months)
      for (std::size_t c = 0; c < ncats; ++c) {
        sums[c] += counts.smell[c];
        total += counts.smell[c];
      }
    if (total == 0) {
      CHECK_FALSE(profile.defined());
      continue;
    }
    double f_sum = 0.0;
    for (std::size_t c = 0; c < ncats; ++c) {
      const double expected =
          static_cast<double>(sums[c]) / static_cast<double>(total);
      CHECK(profile.smell_fractions[c] ==
            doctest::Approx(expected).epsilon(1e-12));
      f_sum += profile.smell_fractions[c];
    }
    CHECK(f_sum == doctest::Approx(1.0).epsilon(1e-9));
  }

  // Per-segment pleasure scores, naive z-scores.
  const std::uint64_t min_tags = 30;
  std::vector<double> fp, fu;
  std::vector<std::string> qualifying;
  for (const auto& [id, tally] : tallies.segments) {
    const auto total = tally.total(ncats);
    if (total.smell_total() < min_tags) continue;
    fp.push_back(static_cast<double>(total.pleasant) /
                 static_cast<double>(total.smell_total()));
    fu.push_back(static_cast<double>(total.unpleasant) /
                 static_cast<double>(total.smell_total()));
    qualifying.push_back(id);
  }
  const auto scored = mt::pleasure_by_segment(tallies, min_tags);
  REQUIRE(scored.size() == qualifying.size());
  if (!scored.empty()) {
    const double mu_p = std::accumulate(fp.begin(), fp.end(), 0.0) / fp.size();
    const double mu_u = std::accumulate(fu.begin(), fu.end(), 0.0) / fu.size();
    double sp = 0.0, su = 0.0;
    for (std::size_t i = 0; i < fp.size(); ++i) {
      sp += (fp[i] - mu_p) * (fp[i] - mu_p);
      su += (fu[i] - mu_u) * (fu[i] - mu_u);
    }
    sp = std::sqrt(sp / fp.size());
    su = std::sqrt(su / fu.size());
    for (std::size_t i = 0; i < scored.size(); ++i) {
      CHECK(scored[i].segment_id == qualifying[i]);
      const double naive = (fp[i] - mu_p) / sp - (fu[i] - mu_u) / su;
      CHECK(scored[i].z_pleasure == doctest::Approx(naive).epsilon(1e-9));
    }
  }

  // Monthly fractions, naive pooling.
  const auto pooled = mt::pooled_calendar_months(tallies);
  for (int month = 1; month <= 12; ++month) {
    std::vector<std::uint64_t> sums(ncats, 0);
    std::uint64_t total = 0;
    for (const auto& [id, tally] : tallies.segments)
      for (const auto& [key, counts] : tally.months)
        if (key.month() == month)
          for (std::size_t c = 0; c < ncats; ++c) {
            sums[c] += counts.smell[c];
            total += counts.smell[c];
          }
    const auto fractions = mt::smell_fractions(pooled[month - 1]);
    if (total == 0) {
      CHECK_FALSE(fractions.has_value());
      continue;
    }
    REQUIRE(fractions.has_value());
    for (std::size_t c = 0; c < ncats; ++c)
      CHECK((*fractions)[c] == doctest::Approx(static_cast<double>(sums[c]) /
                                               static_cast<double>(total))
                                   .epsilon(1e-12));
  }
}
