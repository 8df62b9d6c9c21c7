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

#include "smellscape/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>

#include "smellscape/error.hpp"
#include "smellscape/stats.hpp"

namespace smellscape::report {

namespace {

std::string opt_cell(const std::optional<double>& value) {
  return value ? fixed6(*value) : std::string(kMissingCell);
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

void provenance_json(const Provenance& provenance, std::ostream& out) {
  out << "{";
  for (std::size_t i = 0; i < provenance.entries.size(); ++i) {
    if (i > 0) out << ",";
    out << '"' << json_escape(provenance.entries[i].first) << "\":\""
        << json_escape(provenance.entries[i].second) << '"';
  }
  out << "}";
}

std::string csv_safe(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

struct RGB {
  int r, g, b;
};

std::string hex_color(const RGB& c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

RGB lerp(const RGB& a, const RGB& b, double t) {
  auto mix = [t](int x, int y) {
    return static_cast<int>(std::lround(x + t * (y - x)));
  };
  return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

// 5-stop diverging ramp for the z-scored layers, centered at z = 0:
// -2 red, -1 orange, 0 pale yellow, +1 light green, +2 green.
std::string diverging_ramp(double z) {
  static const RGB stops[5] = {
      {0xd7, 0x30, 0x27}, {0xfd, 0xae, 0x61}, {0xff, 0xff, 0xbf},
      {0xa6, 0xd9, 0x6a}, {0x1a, 0x98, 0x50}};
  const double clamped = std::clamp(z, -2.0, 2.0);
  const double pos = (clamped + 2.0) / 1.0;  // 0..4
  const int lo = static_cast<int>(std::floor(pos));
  if (lo >= 4) return hex_color(stops[4]);
  return hex_color(lerp(stops[lo], stops[lo + 1], pos - lo));
}

// White toward the layer color as the fraction grows.
std::string shade_ramp(double fraction, const RGB& target) {
  const double t = std::clamp(fraction, 0.0, 1.0);
  return hex_color(lerp({0xff, 0xff, 0xff}, target, t));
}

const RGB kNeutralTarget{0x4d, 0x4d, 0x4d};

// Display colors for the ten canonical colors, in kCanonicalColors order.
const RGB kCanonicalRgb[kColorCount] = {
    {0x00, 0x00, 0x00},  // black
    {0x1f, 0x78, 0xb4},  // blue
    {0x8c, 0x51, 0x0a},  // brown
    {0x80, 0x80, 0x80},  // gray
    {0x33, 0xa0, 0x2c},  // green
    {0xff, 0x7f, 0x00},  // orange
    {0xe3, 0x1a, 0x1c},  // red
    {0x6a, 0x3d, 0x9a},  // violet
    {0xff, 0xff, 0xff},  // white
    {0xff, 0xff, 0x99},  // yellow
};

// Category color vector after the export-time photo filter: buckets backed
// by fewer than min_photos co-occurrence photos are dropped and the rest is
// renormalized. Nullopt when nothing survives.
struct ExportedCategory {
  chroma::ColorVector normalized{};
  chroma::ColorVector raw{};
  chroma::ColorCountVector photos{};
  double entropy_bits = 0.0;
};

std::optional<ExportedCategory> exported_category(
    const chroma::CategoryColor& category, std::uint64_t min_photos) {
  ExportedCategory result;
  double total = 0.0;
  for (std::size_t c = 0; c < kColorCount; ++c) {
    if (category.raw[c] <= 0.0 || category.photos[c] < min_photos) continue;
    result.raw[c] = category.raw[c];
    result.photos[c] = category.photos[c];
    total += category.raw[c];
  }
  if (total <= 0.0) return std::nullopt;
  for (std::size_t c = 0; c < kColorCount; ++c)
    result.normalized[c] = result.raw[c] / total;
  result.entropy_bits = stats::shannon_entropy(result.normalized);
  return result;
}

// Per-segment metric columns shared by the validators: smell counts plus the
// denominators needed for the three aggregation methods.
struct SegmentColumns {
  std::vector<std::string> ids;
  std::vector<std::uint64_t> smell_totals;
  std::vector<std::vector<std::uint64_t>> smell_counts;  // [segment][category]
  std::vector<double> lengths_m;
};

SegmentColumns collect_columns(const TallySet& tallies, std::uint64_t min_tags) {
  const std::size_t ncats = tallies.categories.size();
  SegmentColumns cols;
  const std::uint64_t threshold = std::max<std::uint64_t>(min_tags, 1);
  for (const auto& [id, tally] : tallies.segments) {
    const LayerCounts total = tally.total(ncats);
    if (total.smell_total() < threshold) continue;
    const auto* geometry = tallies.segment_geometry(id);
    if (!geometry) continue;
    cols.ids.push_back(id);
    cols.smell_totals.push_back(total.smell_total());
    cols.smell_counts.push_back(total.smell);
    cols.lengths_m.push_back(geometry->length_m);
  }
  return cols;
}

}  // namespace

std::string fixed6(double value) {
  if (value == 0.0) value = 0.0;  // fold -0.0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::io_error, "cannot open " + path + " for digest");
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(hash));
  return hex;
}

Provenance::Provenance() {
  add("tool", "smellscape");
  add("version", std::string(kToolVersion));
}

void Provenance::add(std::string key, std::string value) {
  entries.emplace_back(std::move(key), std::move(value));
}

void Provenance::add_file(std::string key, const std::string& path) {
  // Only the basename is recorded: the digest pins the content, and absolute
  // paths would make otherwise-identical runs produce different headers.
  const auto slash = path.find_last_of('/');
  const std::string name =
      slash == std::string::npos ? path : path.substr(slash + 1);
  add(std::move(key), name + " fnv1a:" + file_digest(path));
}

void write_provenance(const Provenance& provenance, std::ostream& out) {
  for (const auto& [key, value] : provenance.entries)
    out << "# " << key << ": " << value << "\n";
}

std::string_view aggregation_name(Aggregation method) {
  switch (method) {
    case Aggregation::fraction: return "fraction";
    case Aggregation::count: return "count";
    case Aggregation::density: return "density";
  }
  return "unknown";
}

std::vector<PollutionCell> validate_pollution(
    const TallySet& tallies, const PollutantTable& pollutants,
    std::span<const std::uint64_t> thresholds, double buffer_m) {
  const std::size_t ncats = tallies.categories.size();
  // Corridor area of a polyline buffered by r: length * 2r plus the caps.
  auto density_denominator = [buffer_m](double length_m) {
    if (buffer_m <= 0.0) return length_m;
    return length_m * 2.0 * buffer_m +
           3.141592653589793 * buffer_m * buffer_m;
  };
  static constexpr std::array<Aggregation, 3> kMethods = {
      Aggregation::fraction, Aggregation::count, Aggregation::density};
  static constexpr std::array<std::string_view, 3> kPollutants = {"no2", "pm10",
                                                                  "pm25"};
  std::vector<PollutionCell> cells;
  if (pollutants.empty()) return cells;  // nothing to correlate against
  for (std::uint64_t min_tags : thresholds) {
    SegmentColumns cols = collect_columns(tallies, min_tags);

    // Keep only segments with pollutant data.
    std::vector<std::size_t> keep;
    std::array<std::vector<double>, 3> pollutant_columns;
    for (std::size_t i = 0; i < cols.ids.size(); ++i) {
      auto it = pollutants.find(cols.ids[i]);
      if (it == pollutants.end()) continue;
      keep.push_back(i);
      pollutant_columns[0].push_back(it->second.no2);
      pollutant_columns[1].push_back(it->second.pm10);
      pollutant_columns[2].push_back(it->second.pm25);
    }

    for (std::size_t c = 0; c < ncats; ++c) {
      for (Aggregation method : kMethods) {
        std::vector<double> metric;
        metric.reserve(keep.size());
        for (std::size_t i : keep) {
          const double count = static_cast<double>(cols.smell_counts[i][c]);
          switch (method) {
            case Aggregation::fraction:
              metric.push_back(count /
                               static_cast<double>(cols.smell_totals[i]));
              break;
            case Aggregation::count:
              metric.push_back(count);
              break;
            case Aggregation::density:
              metric.push_back(count / density_denominator(cols.lengths_m[i]));
              break;
          }
        }
        for (std::size_t p = 0; p < kPollutants.size(); ++p) {
          PollutionCell cell;
          cell.category = tallies.categories[c];
          cell.method = method;
          cell.pollutant = kPollutants[p];
          cell.min_tags = min_tags;
          cell.n_segments = keep.size();
          try {
            cell.spearman = stats::spearman(metric, pollutant_columns[p]);
          } catch (const Error& e) {
            cell.error = errc_name(e.code());
          }
          cells.push_back(std::move(cell));
        }
      }
    }
  }
  return cells;
}

std::vector<VenueCell> validate_venues(
    const TallySet& tallies, const VenueTable& venues, double max_dist_m,
    std::span<const std::uint64_t> thresholds) {
  const std::size_t ncats = tallies.categories.size();
  if (venues.empty()) return {};  // nothing to correlate against
  SegmentIndex index(tallies.network);

  // Venue counts per (segment id, kind).
  std::map<std::string, std::map<std::string, std::uint64_t>> venue_counts;
  std::set<std::string> kinds;
  for (const auto& venue : venues) {
    kinds.insert(venue.kind);
    auto hit = index.snap(venue.position, max_dist_m);
    if (!hit) continue;
    venue_counts[index.segments()[hit->segment].id][venue.kind] += 1;
  }

  std::vector<VenueCell> cells;
  for (std::uint64_t min_tags : thresholds) {
    SegmentColumns cols = collect_columns(tallies, min_tags);
    for (std::size_t c = 0; c < ncats; ++c) {
      std::vector<double> fractions;
      fractions.reserve(cols.ids.size());
      for (std::size_t i = 0; i < cols.ids.size(); ++i)
        fractions.push_back(static_cast<double>(cols.smell_counts[i][c]) /
                            static_cast<double>(cols.smell_totals[i]));
      for (const auto& kind : kinds) {
        std::vector<double> counts;
        counts.reserve(cols.ids.size());
        for (const auto& id : cols.ids) {
          auto seg_it = venue_counts.find(id);
          std::uint64_t n = 0;
          if (seg_it != venue_counts.end()) {
            auto kind_it = seg_it->second.find(kind);
            if (kind_it != seg_it->second.end()) n = kind_it->second;
          }
          counts.push_back(static_cast<double>(n));
        }
        VenueCell cell;
        cell.category = tallies.categories[c];
        cell.kind = kind;
        cell.min_tags = min_tags;
        cell.n_segments = cols.ids.size();
        try {
          cell.spearman = stats::spearman(fractions, counts);
        } catch (const Error& e) {
          cell.error = errc_name(e.code());
        }
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

void write_pollution_csv(std::span<const PollutionCell> cells,
                         const Provenance& provenance, std::ostream& out) {
  write_provenance(provenance, out);
  out << "category,method,pollutant,min_tags,n_segments,spearman,error\n";
  for (const auto& cell : cells) {
    out << csv_safe(cell.category) << ',' << aggregation_name(cell.method)
        << ',' << cell.pollutant << ',' << cell.min_tags << ','
        << cell.n_segments << ',' << opt_cell(cell.spearman) << ','
        << csv_safe(cell.error) << '\n';
  }
}

void write_venues_csv(std::span<const VenueCell> cells,
                      const Provenance& provenance, std::ostream& out) {
  write_provenance(provenance, out);
  out << "category,kind,min_tags,n_segments,spearman,error\n";
  for (const auto& cell : cells) {
    out << csv_safe(cell.category) << ',' << csv_safe(cell.kind) << ','
        << cell.min_tags << ',' << cell.n_segments << ','
        << opt_cell(cell.spearman) << ',' << csv_safe(cell.error) << '\n';
  }
}

void write_seasonality_csv(const TallySet& tallies, std::size_t lag,
                           const Provenance& provenance, std::ostream& out) {
  write_provenance(provenance, out);
  out << "category,autocorrelation,months_used,months_interpolated,error\n";
  for (const auto& entry : metrics::category_seasonality(tallies, lag)) {
    out << csv_safe(entry.category) << ',' << opt_cell(entry.autocorrelation)
        << ',' << entry.months_used << ',' << entry.months_interpolated << ','
        << csv_safe(entry.error) << '\n';
  }
}

void write_pleasantness_month_csv(const TallySet& tallies,
                                  const Provenance& provenance,
                                  std::ostream& out) {
  write_provenance(provenance, out);
  out << "month,f_pleasant,f_unpleasant,z_pleasure\n";
  for (const auto& row : metrics::pleasure_by_month(tallies)) {
    out << row.month << ',' << opt_cell(row.f_pleasant) << ','
        << opt_cell(row.f_unpleasant) << ',' << opt_cell(row.z_pleasure)
        << '\n';
  }
}

void write_pleasantness_segment_csv(const TallySet& tallies,
                                    std::uint64_t min_tags,
                                    const Provenance& provenance,
                                    std::ostream& out) {
  write_provenance(provenance, out);
  out << "segment_id,n_smell_tags,f_pleasant,f_unpleasant,z_pleasure\n";
  for (const auto& row : metrics::pleasure_by_segment(tallies, min_tags)) {
    out << csv_safe(row.segment_id) << ',' << row.n_smell_tags << ','
        << fixed6(row.f_pleasant) << ',' << fixed6(row.f_unpleasant) << ','
        << fixed6(row.z_pleasure) << '\n';
  }
}

void write_month_report_csv(const TallySet& tallies, std::uint64_t min_tags,
                            const Provenance& provenance, std::ostream& out) {
  write_provenance(provenance, out);
  const auto ranking = metrics::months_by_distinctiveness(tallies);
  std::array<std::size_t, 13> rank_of{};
  for (std::size_t i = 0; i < ranking.size(); ++i)
    rank_of[static_cast<std::size_t>(ranking[i].month)] = i + 1;

  out << "month,n_smell_tags,entropy_bits,distinctiveness_rank,smell,"
         "f_smell,where_segment,where_lat,where_lon,where_f,where_n_tags\n";
  const auto pooled = metrics::pooled_calendar_months(tallies);
  for (int month = 1; month <= 12; ++month) {
    const auto& counts = pooled[static_cast<std::size_t>(month - 1)];
    out << month << ',' << counts.smell_total() << ',';
    const auto fractions = metrics::smell_fractions(counts);
    if (!fractions) {
      out << kMissingCell << ',' << kMissingCell << ',' << kMissingCell << ','
          << kMissingCell << ',' << kMissingCell << ',' << kMissingCell << ','
          << kMissingCell << ',' << kMissingCell << ',' << kMissingCell
          << '\n';
      continue;
    }
    out << fixed6(metrics::month_entropy(*fractions)) << ','
        << rank_of[static_cast<std::size_t>(month)] << ',';
    const auto top = metrics::smell_of_month(tallies, month, min_tags);
    out << csv_safe(top.category_name) << ',' << fixed6(top.category_fraction)
        << ',';
    if (top.segment_id) {
      out << csv_safe(*top.segment_id) << ','
          << fixed6(top.segment_midpoint.lat) << ','
          << fixed6(top.segment_midpoint.lon) << ','
          << fixed6(top.segment_fraction) << ',' << top.segment_month_tags
          << '\n';
    } else {
      out << kMissingCell << ',' << kMissingCell << ',' << kMissingCell << ','
          << kMissingCell << ",0\n";
    }
  }
}

void write_month_report_per_year_csv(const TallySet& tallies,
                                     std::uint64_t min_tags,
                                     const Provenance& provenance,
                                     std::ostream& out) {
  write_provenance(provenance, out);
  out << "year,month,n_smell_tags,entropy_bits,smell,f_smell,where_segment,"
         "where_lat,where_lon,where_f,where_n_tags\n";
  for (const auto& [key, counts] : metrics::chronological_months(tallies)) {
    out << key.year() << ',' << key.month() << ',' << counts.smell_total()
        << ',';
    const auto fractions = metrics::smell_fractions(counts);
    if (!fractions) {
      out << kMissingCell << ',' << kMissingCell << ',' << kMissingCell << ','
          << kMissingCell << ',' << kMissingCell << ',' << kMissingCell
          << ",0\n";
      continue;
    }
    out << fixed6(metrics::month_entropy(*fractions)) << ',';
    const auto top = metrics::smell_of_month_at(tallies, key, min_tags);
    out << csv_safe(top.category_name) << ',' << fixed6(top.category_fraction)
        << ',';
    if (top.segment_id) {
      out << csv_safe(*top.segment_id) << ','
          << fixed6(top.segment_midpoint.lat) << ','
          << fixed6(top.segment_midpoint.lon) << ','
          << fixed6(top.segment_fraction) << ',' << top.segment_month_tags
          << '\n';
    } else {
      out << kMissingCell << ',' << kMissingCell << ',' << kMissingCell << ','
          << kMissingCell << ",0\n";
    }
  }
}

void write_emotion_matrix_csv(const affect::EmotionMatrix& matrix,
                              const Provenance& provenance, std::ostream& out) {
  write_provenance(provenance, out);
  out << "category";
  for (const auto& emotion : kEmotionNames) out << ',' << emotion;
  out << '\n';
  for (std::size_t c = 0; c < matrix.categories.size(); ++c) {
    out << csv_safe(matrix.categories[c]);
    for (std::size_t e = 0; e < kEmotionCount; ++e)
      out << ',' << opt_cell(matrix.cells[c][e]);
    out << '\n';
  }
}

void write_smell_sentiment_csv(
    std::span<const affect::CategoryCorrelation> rows,
    const Provenance& provenance, std::ostream& out) {
  write_provenance(provenance, out);
  out << "category,min_tags,n_segments,pearson,spearman,error\n";
  for (const auto& row : rows) {
    out << csv_safe(row.category) << ',' << row.min_tags << ','
        << row.n_segments << ',' << opt_cell(row.pearson) << ','
        << opt_cell(row.spearman) << ',' << csv_safe(row.error) << '\n';
  }
}

void write_pleasure_sentiment_csv(
    std::span<const affect::PleasureSentimentPoint> points,
    const Provenance& provenance, std::ostream& out) {
  write_provenance(provenance, out);
  out << "min_tags,n_segments,spearman,pearson,error\n";
  for (const auto& point : points) {
    out << point.min_tags << ',' << point.n_segments << ','
        << opt_cell(point.spearman) << ',' << opt_cell(point.pearson) << ','
        << csv_safe(point.error) << '\n';
  }
}

void write_color_matrix_csv(const chroma::ColorAssociation& assoc,
                            const Provenance& provenance, std::ostream& out) {
  write_provenance(provenance, out);
  out << "category,n_words,entropy_bits";
  for (const auto& color : kCanonicalColors) out << ",strength_" << color;
  for (const auto& color : kCanonicalColors) out << ",raw_" << color;
  out << '\n';

  // Re-rank by post-filter entropy so the emitted rows are self-consistent.
  std::vector<std::pair<const chroma::CategoryColor*, ExportedCategory>> rows;
  for (const auto& category : assoc.categories) {
    if (auto exported = exported_category(category, assoc.min_photos))
      rows.emplace_back(&category, std::move(*exported));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second.entropy_bits != b.second.entropy_bits)
      return a.second.entropy_bits < b.second.entropy_bits;
    return a.first->category < b.first->category;
  });

  for (const auto& [category, exported] : rows) {
    out << csv_safe(category->category) << ',' << category->n_words << ','
        << fixed6(exported.entropy_bits);
    for (std::size_t c = 0; c < kColorCount; ++c)
      out << ',' << fixed6(exported.normalized[c]);
    for (std::size_t c = 0; c < kColorCount; ++c)
      out << ',' << fixed6(exported.raw[c]);
    out << '\n';
  }
}

void write_word_color_csv(const chroma::ColorAssociation& assoc,
                          const Provenance& provenance, std::ostream& out) {
  write_provenance(provenance, out);
  out << "word,photos,strongest_color";
  for (const auto& color : kCanonicalColors) out << ",strength_" << color;
  out << '\n';
  for (const auto& word : assoc.words) {
    out << csv_safe(word.word) << ',' << word.word_photos << ','
        << kCanonicalColors[word.strongest_color];
    for (std::size_t c = 0; c < kColorCount; ++c)
      out << ',' << fixed6(word.strength[c]);
    out << '\n';
  }
}

void write_color_graph_json(const chroma::ColorAssociation& assoc,
                            const Provenance& provenance, std::ostream& out) {
  std::vector<std::pair<const chroma::CategoryColor*, ExportedCategory>> rows;
  for (const auto& category : assoc.categories) {
    if (auto exported = exported_category(category, assoc.min_photos))
      rows.emplace_back(&category, std::move(*exported));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.first->category < b.first->category;
  });

  out << "{\"provenance\":";
  provenance_json(provenance, out);
  out << ",\"nodes\":[";
  bool first = true;
  for (const auto& [category, exported] : rows) {
    if (!first) out << ',';
    out << "{\"id\":\"" << json_escape(category->category)
        << "\",\"kind\":\"smell\"}";
    first = false;
  }
  for (const auto& color : kCanonicalColors) {
    if (!first) out << ',';
    out << "{\"id\":\"" << color << "\",\"kind\":\"color\"}";
    first = false;
  }

  out << "],\"edges\":[";
  first = true;
  for (const auto& [category, exported] : rows) {
    for (std::size_t c = 0; c < kColorCount; ++c) {
      if (exported.normalized[c] <= 0.0) continue;
      if (!first) out << ',';
      out << "{\"smell\":\"" << json_escape(category->category)
          << "\",\"color\":\"" << kCanonicalColors[c]
          << "\",\"strength\":" << fixed6(exported.normalized[c])
          << ",\"photos\":" << exported.photos[c] << '}';
      first = false;
    }
  }

  // Average fraction of each color across the exported categories.
  out << "],\"marginals\":{";
  for (std::size_t c = 0; c < kColorCount; ++c) {
    double total = 0.0;
    for (const auto& [category, exported] : rows) total += exported.normalized[c];
    const double marginal = rows.empty() ? 0.0 : total / static_cast<double>(rows.size());
    if (c > 0) out << ',';
    out << '"' << kCanonicalColors[c] << "\":" << fixed6(marginal);
  }
  out << "}}\n";
}

void export_geojson(const TallySet& tallies, const ExportOptions& options,
                    const Provenance& provenance, std::ostream& out) {
  const std::size_t ncats = tallies.categories.size();

  std::optional<std::size_t> category_index;
  std::optional<std::size_t> emotion_idx;
  if (options.layer == MapLayer::category) {
    for (std::size_t c = 0; c < ncats; ++c)
      if (tallies.categories[c] == options.name) category_index = c;
    if (!category_index)
      throw Error(errc::unknown_layer,
                  "unknown smell category '" + options.name + "'");
  } else if (options.layer == MapLayer::emotion) {
    emotion_idx = emotion_index(options.name);
    if (!emotion_idx)
      throw Error(errc::unknown_layer, "unknown emotion '" + options.name + "'");
  }

  // Both score maps ride along on every feature regardless of layer. A
  // degenerate population (constant fractions) leaves the scores undefined,
  // which renders as null properties rather than failing the export.
  std::map<std::string, double> pleasure_of;
  std::map<std::string, double> sentiment_of;
  try {
    for (const auto& row :
         metrics::pleasure_by_segment(tallies, options.min_tags))
      pleasure_of.emplace(row.segment_id, row.z_pleasure);
  } catch (const Error&) {
    pleasure_of.clear();
  }
  try {
    for (const auto& row :
         affect::sentiment_by_segment(tallies, options.min_tags))
      sentiment_of.emplace(row.segment_id, row.z_sentiment);
  } catch (const Error&) {
    sentiment_of.clear();
  }
  const std::map<std::string, double>& z_values =
      options.layer == MapLayer::sentiment ? sentiment_of : pleasure_of;

  RGB category_target = kNeutralTarget;
  if (options.layer == MapLayer::category) {
    auto it = options.dominant_colors.find(options.name);
    if (it != options.dominant_colors.end() && it->second < kColorCount)
      category_target = kCanonicalRgb[it->second];
  }

  out << "{\"type\":\"FeatureCollection\",\"provenance\":";
  provenance_json(provenance, out);
  out << ",\"features\":[";

  bool first_feature = true;
  for (const auto& segment : tallies.network) {
    const auto tally_it = tallies.segments.find(segment.id);
    LayerCounts total(ncats);
    if (tally_it != tallies.segments.end())
      total = tally_it->second.total(ncats);
    const auto fractions = metrics::smell_fractions(total);

    std::optional<double> metric;
    switch (options.layer) {
      case MapLayer::category:
        if (fractions) metric = (*fractions)[*category_index];
        break;
      case MapLayer::pleasure:
      case MapLayer::sentiment: {
        auto it = z_values.find(segment.id);
        if (it != z_values.end()) metric = it->second;
        break;
      }
      case MapLayer::emotion: {
        const auto emotions = affect::emotion_fractions(total);
        if (emotions) metric = (*emotions)[*emotion_idx];
        break;
      }
    }

    std::optional<std::string> color;
    if (metric) {
      switch (options.layer) {
        case MapLayer::pleasure:
        case MapLayer::sentiment:
          color = diverging_ramp(*metric);
          break;
        case MapLayer::category:
          color = shade_ramp(*metric, category_target);
          break;
        case MapLayer::emotion:
          color = shade_ramp(*metric, kNeutralTarget);
          break;
      }
    }

    // Properties with sorted keys.
    std::vector<std::pair<std::string, std::string>> properties;
    if (color) properties.emplace_back("color", '"' + *color + '"');
    if (fractions)
      for (std::size_t c = 0; c < ncats; ++c)
        properties.emplace_back("f_" + tallies.categories[c],
                                fixed6((*fractions)[c]));
    properties.emplace_back("metric", metric ? fixed6(*metric) : "null");
    properties.emplace_back("n_records", std::to_string(total.records));
    properties.emplace_back("n_smell_tags", std::to_string(total.smell_total()));
    properties.emplace_back("segment_id", '"' + json_escape(segment.id) + '"');
    const auto pleasure_it = pleasure_of.find(segment.id);
    properties.emplace_back("z_pleasure", pleasure_it != pleasure_of.end()
                                              ? fixed6(pleasure_it->second)
                                              : "null");
    const auto sentiment_it = sentiment_of.find(segment.id);
    properties.emplace_back("z_sentiment", sentiment_it != sentiment_of.end()
                                               ? fixed6(sentiment_it->second)
                                               : "null");
    std::sort(properties.begin(), properties.end());

    if (!first_feature) out << ',';
    first_feature = false;
    out << "{\"type\":\"Feature\",\"id\":\"" << json_escape(segment.id)
        << "\",\"geometry\":{\"type\":\"LineString\",\"coordinates\":[";
    for (std::size_t p = 0; p < segment.polyline.size(); ++p) {
      if (p > 0) out << ',';
      out << '[' << fixed6(segment.polyline[p].lon) << ','
          << fixed6(segment.polyline[p].lat) << ']';
    }
    out << "]},\"properties\":{";
    for (std::size_t p = 0; p < properties.size(); ++p) {
      if (p > 0) out << ',';
      out << '"' << properties[p].first << "\":" << properties[p].second;
    }
    out << "}}";
  }
  out << "]}\n";
}

void write_clusters_json(const taxonomy::CoOccurrenceGraph& graph,
                         std::span<const std::uint32_t> partition,
                         double resolution, std::uint64_t seed,
                         const Provenance& provenance, std::ostream& out) {
  std::vector<double> degree(graph.size(), 0.0);
  for (const auto& [key, w] : graph.edges) {
    degree[key.first] += w;
    degree[key.second] += w;
  }
  std::uint32_t n_communities = 0;
  for (std::uint32_t c : partition)
    n_communities = std::max(n_communities, c + 1);

  out << "{\"provenance\":";
  provenance_json(provenance, out);
  out << ",\"resolution\":" << fixed6(resolution) << ",\"seed\":" << seed
      << ",\"n_nodes\":" << graph.size()
      << ",\"modularity\":" << fixed6(taxonomy::modularity(graph, partition,
                                                           resolution))
      << ",\"communities\":[";
  for (std::uint32_t c = 0; c < n_communities; ++c) {
    // Members sorted by weighted degree descending: the strongest words name
    // the cluster for the human labeling step.
    std::vector<std::uint32_t> members;
    for (std::uint32_t v = 0; v < partition.size(); ++v)
      if (partition[v] == c) members.push_back(v);
    std::sort(members.begin(), members.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                if (degree[a] != degree[b]) return degree[a] > degree[b];
                return graph.nodes[a] < graph.nodes[b];
              });
    if (c > 0) out << ',';
    out << "{\"id\":" << c << ",\"size\":" << members.size() << ",\"words\":[";
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i > 0) out << ',';
      out << "{\"word\":\"" << json_escape(graph.nodes[members[i]])
          << "\",\"degree\":" << fixed6(degree[members[i]]) << '}';
    }
    out << "]}";
  }
  out << "]}\n";
}

std::vector<std::uint64_t> parse_sweep(const std::string& spec) {
  auto parse_u64 = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw Error(errc::bad_argument, "bad sweep component '" + s + "'");
    return std::stoull(s);
  };
  const auto colon1 = spec.find(':');
  if (colon1 == std::string::npos) return {parse_u64(spec)};
  const auto colon2 = spec.find(':', colon1 + 1);
  if (colon2 == std::string::npos)
    throw Error(errc::bad_argument, "sweep must be lo:hi:step, got '" + spec + "'");
  const std::uint64_t lo = parse_u64(spec.substr(0, colon1));
  const std::uint64_t hi = parse_u64(spec.substr(colon1 + 1, colon2 - colon1 - 1));
  const std::uint64_t step = parse_u64(spec.substr(colon2 + 1));
  if (step == 0 || hi < lo)
    throw Error(errc::bad_argument, "sweep must satisfy lo <= hi, step > 0");
  std::vector<std::uint64_t> thresholds;
  for (std::uint64_t v = lo; v <= hi; v += step) thresholds.push_back(v);
  return thresholds;
}

}  // namespace smellscape::report
