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
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "smellscape/affect.hpp"
#include "smellscape/chroma.hpp"
#include "smellscape/ingest.hpp"
#include "smellscape/smellmetrics.hpp"
#include "smellscape/tally.hpp"
#include "smellscape/taxonomy.hpp"

namespace smellscape::report {

inline constexpr std::string_view kToolVersion = "1.0.0";

// Missing-value marker used in every CSV cell whose statistic is
// unavailable (zero variance, too few points, ...).
inline constexpr std::string_view kMissingCell = "NA";

// Fixed 6-decimal rendering used for every floating-point value in report
// files, so identical inputs produce byte-identical outputs.
std::string fixed6(double value);

// FNV-1a 64-bit digest of a file, as a 16-hex-digit string. Used for the
// provenance header; fails with IoError when the file cannot be read.
std::string file_digest(const std::string& path);

// Key/value pairs echoed at the top of every report, as '# key: value'
// comment lines. Contains the tool version, the parameters of the run and
// the digests of its inputs; deliberately no timestamps or machine state.
struct Provenance {
  std::vector<std::pair<std::string, std::string>> entries;

  Provenance();
  void add(std::string key, std::string value);
  void add_file(std::string key, const std::string& path);
};

void write_provenance(const Provenance& provenance, std::ostream& out);

// --- validation studies -----------------------------------------------------

enum class Aggregation { fraction, count, density };
std::string_view aggregation_name(Aggregation method);

struct PollutionCell {
  std::string category;
  Aggregation method = Aggregation::fraction;
  std::string pollutant;  // no2, pm10, pm25
  std::uint64_t min_tags = 0;
  std::optional<double> spearman;
  std::string error;
  std::size_t n_segments = 0;
};

// Spearman correlation of each smell category against each pollutant across
// segments, for the three tag aggregations: fraction (share of the
// segment's smell tags), count (raw tags) and density. Density defaults to
// tags per meter of segment length; a positive buffer_m switches it to tags
// per square meter of the corridor obtained by buffering the polyline by
// that radius. One cell per (category, method, pollutant, threshold).
std::vector<PollutionCell> validate_pollution(
    const TallySet& tallies, const PollutantTable& pollutants,
    std::span<const std::uint64_t> thresholds, double buffer_m = 0.0);

struct VenueCell {
  std::string category;
  std::string kind;
  std::uint64_t min_tags = 0;
  std::optional<double> spearman;
  std::string error;
  std::size_t n_segments = 0;
};

// Snaps venues onto the network and correlates per-segment venue counts by
// kind against the smell fractions, per threshold.
std::vector<VenueCell> validate_venues(const TallySet& tallies,
                                       const VenueTable& venues,
                                       double max_dist_m,
                                       std::span<const std::uint64_t> thresholds);

void write_pollution_csv(std::span<const PollutionCell> cells,
                         const Provenance& provenance, std::ostream& out);
void write_venues_csv(std::span<const VenueCell> cells,
                      const Provenance& provenance, std::ostream& out);

// --- tabular reports --------------------------------------------------------

void write_seasonality_csv(const TallySet& tallies, std::size_t lag,
                           const Provenance& provenance, std::ostream& out);
void write_pleasantness_month_csv(const TallySet& tallies,
                                  const Provenance& provenance,
                                  std::ostream& out);
void write_pleasantness_segment_csv(const TallySet& tallies,
                                    std::uint64_t min_tags,
                                    const Provenance& provenance,
                                    std::ostream& out);
void write_month_report_csv(const TallySet& tallies, std::uint64_t min_tags,
                            const Provenance& provenance, std::ostream& out);
// Per-(year, month) variant of the month report: one row per concrete month
// present in the data instead of pooling calendar months across years.
void write_month_report_per_year_csv(const TallySet& tallies,
                                     std::uint64_t min_tags,
                                     const Provenance& provenance,
                                     std::ostream& out);
void write_emotion_matrix_csv(const affect::EmotionMatrix& matrix,
                              const Provenance& provenance, std::ostream& out);
void write_smell_sentiment_csv(std::span<const affect::CategoryCorrelation> rows,
                               const Provenance& provenance, std::ostream& out);
void write_pleasure_sentiment_csv(
    std::span<const affect::PleasureSentimentPoint> points,
    const Provenance& provenance, std::ostream& out);

// --- chroma exports ---------------------------------------------------------

// Matrix rows ascending by entropy of the color mixture; both normalized and
// raw strengths are emitted. Category rows whose buckets are backed by fewer
// than min_photos photos drop those buckets (and renormalize the rest).
void write_color_matrix_csv(const chroma::ColorAssociation& assoc,
                            const Provenance& provenance, std::ostream& out);
void write_word_color_csv(const chroma::ColorAssociation& assoc,
                          const Provenance& provenance, std::ostream& out);

// Bipartite smell-category / color graph with per-color marginals.
void write_color_graph_json(const chroma::ColorAssociation& assoc,
                            const Provenance& provenance, std::ostream& out);

// --- map export -------------------------------------------------------------

enum class MapLayer { category, pleasure, sentiment, emotion };

struct ExportOptions {
  MapLayer layer = MapLayer::pleasure;
  std::string name;          // category or emotion name for those layers
  std::uint64_t min_tags = 30;  // population threshold for the z-scored layers
  // category name -> dominant canonical color index, from the chroma module;
  // categories without an entry fall back to a neutral ramp.
  std::map<std::string, std::size_t> dominant_colors;
};

// GeoJSON FeatureCollection, one LineString feature per network segment,
// carrying the selected metric, the full profile, and a ramp color.
// Pleasure and sentiment use a 5-stop green-to-red diverging ramp centered
// at z = 0; category/emotion layers shade white toward the layer color.
void export_geojson(const TallySet& tallies, const ExportOptions& options,
                    const Provenance& provenance, std::ostream& out);

// Cluster export for the taxonomy builder CLI.
void write_clusters_json(const taxonomy::CoOccurrenceGraph& graph,
                         std::span<const std::uint32_t> partition,
                         double resolution, std::uint64_t seed,
                         const Provenance& provenance, std::ostream& out);

// Parses "lo:hi:step" (or a single integer) into a threshold list.
std::vector<std::uint64_t> parse_sweep(const std::string& spec);

}  // namespace smellscape::report
