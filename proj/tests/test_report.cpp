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

#include <sstream>

#include "smellscape/error.hpp"
#include "smellscape/report.hpp"
#include "smellscape/rng.hpp"
#include "smellscape/stats.hpp"

using namespace smellscape;
namespace rp = smellscape::report;

namespace {

TallySet grid_tallies(int n_segments, Rng& rng) {
  TallySet tallies;
  tallies.categories = {"emissions", "nature"};
  for (int s = 0; s < n_segments; ++s) {
    char id[16];
    std::snprintf(id, sizeof(id), "s%03d", s);
    const double lat = 51.3 + 0.01 * s;
    StreetSegment seg;
    seg.id = id;
    seg.polyline = {{lat, 0.0}, {lat, 0.001 + 0.0005 * (s % 7)}};
    seg.length_m = polyline_length_m(seg.polyline);
    tallies.network.push_back(seg);

    auto& counts =
        tallies.segments[id]
            .months
            .try_emplace(MonthKey::from_parts(2013, 5), LayerCounts(2))
            .first->second;
    const double f_emissions = static_cast<double>(s) / (n_segments - 1);
    const std::uint64_t total = 40 + rng.next_below(400);
    counts.smell[0] =
        static_cast<std::uint64_t>(std::llround(f_emissions * total));
    counts.smell[1] = total - counts.smell[0];
    counts.records = total;
    counts.pleasant = counts.smell[1];
    counts.unpleasant = counts.smell[0];
    counts.positive = counts.smell[1] + 1;
    counts.negative = counts.smell[0] + 1;
  }
  return tallies;
}

}  // namespace

TEST_CASE("fixed formatting and sweep parsing") {
  CHECK(rp::fixed6(0.5) == "0.500000");
  CHECK(rp::fixed6(-0.0) == "0.000000");
  CHECK(rp::fixed6(1.23456789) == "1.234568");
  CHECK(rp::parse_sweep("30") == std::vector<std::uint64_t>{30});
  CHECK(rp::parse_sweep("10:30:10") ==
        std::vector<std::uint64_t>{10, 20, 30});
  CHECK_THROWS_AS((void)rp::parse_sweep("30:10:5"), Error);
  CHECK_THROWS_AS((void)rp::parse_sweep("abc"), Error);
}

TEST_CASE("pollution validation prefers fractions on planted data") {
  Rng rng(808);
  const auto tallies = grid_tallies(60, rng);

  // NO2 rises monotonically with the planted emissions fraction.
  PollutantTable pollutants;
  for (int s = 0; s < 60; ++s) {
    char id[16];
    std::snprintf(id, sizeof(id), "s%03d", s);
    const double f = static_cast<double>(s) / 59.0;
    pollutants[id] = {20.0 + 30.0 * f + rng.next_gaussian() * 0.5,
                      15.0 + 10.0 * f + rng.next_gaussian() * 0.5,
                      10.0 + 5.0 * f + rng.next_gaussian() * 0.5};
  }

  const std::uint64_t thresholds[] = {1};
  const auto cells = rp::validate_pollution(tallies, pollutants, thresholds);
  // 2 categories x 3 methods x 3 pollutants.
  REQUIRE(cells.size() == 18);

  auto find_cell = [&](const char* cat, rp::Aggregation m,
                       const char* pollutant) -> const rp::PollutionCell& {
    for (const auto& cell : cells)
      if (cell.category == cat && cell.method == m &&
          cell.pollutant == pollutant)
        return cell;
    FAIL("cell not found");
    return cells[0];
  };

  const auto& fraction =
      find_cell("emissions", rp::Aggregation::fraction, "no2");
  const auto& count = find_cell("emissions", rp::Aggregation::count, "no2");
  const auto& density = find_cell("emissions", rp::Aggregation::density, "no2");
  REQUIRE(fraction.spearman.has_value());
  CHECK(*fraction.spearman > 0.9);
  CHECK(*fraction.spearman >= *count.spearman);
  CHECK(*fraction.spearman >= *density.spearman);

  // Cell values equal direct stats-kernel calls on hand-extracted columns.
  std::vector<double> f_col, no2_col;
  for (int s = 0; s < 60; ++s) {
    char id[16];
    std::snprintf(id, sizeof(id), "s%03d", s);
    const auto total = tallies.segments.at(id).total(2);
    f_col.push_back(static_cast<double>(total.smell[0]) /
                    static_cast<double>(total.smell_total()));
    no2_col.push_back(pollutants.at(id).no2);
  }
  CHECK(*fraction.spearman ==
        doctest::Approx(stats::spearman(f_col, no2_col)).epsilon(1e-12));
}

TEST_CASE("buffered-corridor density uses the corridor area") {
  Rng rng(515);
  const auto tallies = grid_tallies(30, rng);
  PollutantTable pollutants;
  for (int s = 0; s < 30; ++s) {
    char id[16];
    std::snprintf(id, sizeof(id), "s%03d", s);
    pollutants[id] = {20.0 + s, 10.0 + s, 5.0 + s};
  }
  const std::uint64_t thresholds[] = {1};
  const double buffer = 25.0;
  const auto cells =
      rp::validate_pollution(tallies, pollutants, thresholds, buffer);

  std::vector<double> density_col, no2_col;
  for (int s = 0; s < 30; ++s) {
    char id[16];
    std::snprintf(id, sizeof(id), "s%03d", s);
    const auto total = tallies.segments.at(id).total(2);
    const double length = tallies.segment_geometry(id)->length_m;
    const double area =
        length * 2.0 * buffer + 3.141592653589793 * buffer * buffer;
    density_col.push_back(static_cast<double>(total.smell[0]) / area);
    no2_col.push_back(pollutants.at(id).no2);
  }
  for (const auto& cell : cells) {
    if (cell.category != "emissions" || cell.method != rp::Aggregation::density ||
        cell.pollutant != "no2")
      continue;
    REQUIRE(cell.spearman.has_value());
    CHECK(*cell.spearman ==
          doctest::Approx(stats::spearman(density_col, no2_col)).epsilon(1e-12));
  }
}

TEST_CASE("pollution validation degenerate cases") {
  Rng rng(11);
  const auto tallies = grid_tallies(10, rng);
  const std::uint64_t thresholds[] = {1};

  SUBCASE("empty table yields an empty report") {
    CHECK(rp::validate_pollution(tallies, {}, thresholds).empty());
  }
  SUBCASE("constant pollutant yields ZeroVariance cells") {
    PollutantTable constant;
    for (const auto& seg : tallies.network)
      constant[seg.id] = {5.0, 5.0, 5.0};
    const auto cells = rp::validate_pollution(tallies, constant, thresholds);
    REQUIRE_FALSE(cells.empty());
    for (const auto& cell : cells) {
      CHECK_FALSE(cell.spearman.has_value());
      CHECK(cell.error == "ZeroVariance");
    }
  }
}

TEST_CASE("venue validation recovers planted sign structure") {
  Rng rng(909);
  const auto tallies = grid_tallies(50, rng);

  // Nature venues pile up where the planted nature fraction is high (low s).
  VenueTable venues;
  for (int s = 0; s < 50; ++s) {
    const double lat = 51.3 + 0.01 * s;
    const int n_natural = (50 - s) / 5;
    for (int v = 0; v < n_natural; ++v)
      venues.push_back({{lat, 0.0005}, "natural"});
    const int n_cuisine = s / 10;
    for (int v = 0; v < n_cuisine; ++v)
      venues.push_back({{lat, 0.0004}, "cuisine"});
  }

  const std::uint64_t thresholds[] = {1};
  const auto cells = rp::validate_venues(tallies, venues, 50.0, thresholds);
  REQUIRE_FALSE(cells.empty());
  bool saw_nature_natural = false;
  for (const auto& cell : cells) {
    if (cell.category == "nature" && cell.kind == "natural") {
      saw_nature_natural = true;
      REQUIRE(cell.spearman.has_value());
      CHECK(*cell.spearman > 0.8);
    }
    if (cell.category == "emissions" && cell.kind == "natural") {
      REQUIRE(cell.spearman.has_value());
      CHECK(*cell.spearman < -0.8);
    }
  }
  CHECK(saw_nature_natural);

  CHECK(rp::validate_venues(tallies, {}, 50.0, thresholds).empty());
}

TEST_CASE("geojson export is deterministic and round-trips geometry") {
  Rng rng(3003);
  const auto tallies = grid_tallies(12, rng);

  rp::Provenance provenance;
  provenance.add("command", "export");
  rp::ExportOptions options;
  options.layer = rp::MapLayer::pleasure;
  options.min_tags = 1;

  std::ostringstream first, second;
  rp::export_geojson(tallies, options, provenance, first);
  rp::export_geojson(tallies, options, provenance, second);
  CHECK(first.str() == second.str());

  // Re-parse the exported file as a street network: same segment count and
  // 6-decimal geometry.
  std::istringstream in(first.str());
  const auto reparsed = parse_street_network(in);
  REQUIRE(reparsed.size() == tallies.network.size());
  for (std::size_t i = 0; i < reparsed.size(); ++i) {
    CHECK(reparsed[i].id == tallies.network[i].id);
    REQUIRE(reparsed[i].polyline.size() == tallies.network[i].polyline.size());
    for (std::size_t p = 0; p < reparsed[i].polyline.size(); ++p) {
      CHECK(reparsed[i].polyline[p].lat ==
            doctest::Approx(tallies.network[i].polyline[p].lat).epsilon(1e-6));
      CHECK(reparsed[i].polyline[p].lon ==
            doctest::Approx(tallies.network[i].polyline[p].lon).epsilon(1e-6));
    }
  }
}

TEST_CASE("geojson features carry metrics, ramps and null markers") {
  TallySet tallies;
  tallies.categories = {"nature"};
  StreetSegment a;
  a.id = "a";
  a.polyline = {{51.5, 0.0}, {51.5, 0.001}};
  a.length_m = polyline_length_m(a.polyline);
  StreetSegment b = a;
  b.id = "b";
  b.polyline = {{51.6, 0.0}, {51.6, 0.001}};
  StreetSegment empty_seg = a;
  empty_seg.id = "zz_empty";
  empty_seg.polyline = {{51.7, 0.0}, {51.7, 0.001}};
  tallies.network = {a, b, empty_seg};

  // Two mirrored segments make both means sit exactly between them, so each
  // gets z = z_p - z_u = +/- 2 and the map needs the full ramp; a third
  // segment with no tags must come out null.
  auto& ca = tallies.segments["a"]
                 .months.try_emplace(MonthKey::from_parts(2013, 5),
                                     LayerCounts(1))
                 .first->second;
  ca.smell = {10};
  ca.pleasant = 8;
  ca.unpleasant = 2;
  auto& cb = tallies.segments["b"]
                 .months.try_emplace(MonthKey::from_parts(2013, 5),
                                     LayerCounts(1))
                 .first->second;
  cb.smell = {10};
  cb.pleasant = 2;
  cb.unpleasant = 8;

  rp::Provenance provenance;
  rp::ExportOptions options;
  options.layer = rp::MapLayer::pleasure;
  options.min_tags = 1;
  std::ostringstream out;
  rp::export_geojson(tallies, options, provenance, out);
  const std::string geojson = out.str();

  // Pleasant segment in the green end, unpleasant in the red end.
  CHECK(geojson.find("\"metric\":2.000000") != std::string::npos);
  CHECK(geojson.find("\"metric\":-2.000000") != std::string::npos);
  CHECK(geojson.find("#1a9850") != std::string::npos);
  CHECK(geojson.find("#d73027") != std::string::npos);
  // Untagged segment: null metric and no color property.
  const auto empty_pos = geojson.find("zz_empty");
  REQUIRE(empty_pos != std::string::npos);
  CHECK(geojson.find("\"metric\":null", empty_pos) != std::string::npos);
  CHECK(geojson.find("\"color\"", empty_pos) == std::string::npos);

  // Unknown layer name.
  rp::ExportOptions bad;
  bad.layer = rp::MapLayer::category;
  bad.name = "nope";
  std::ostringstream sink;
  CHECK_THROWS_AS(rp::export_geojson(tallies, bad, provenance, sink), Error);
}

TEST_CASE("provenance header renders as comment lines") {
  rp::Provenance provenance;
  provenance.add("command", "seasonality");
  std::ostringstream out;
  rp::write_provenance(provenance, out);
  const std::string text = out.str();
  CHECK(text.find("# tool: smellscape\n") != std::string::npos);
  CHECK(text.find("# command: seasonality\n") != std::string::npos);
}
