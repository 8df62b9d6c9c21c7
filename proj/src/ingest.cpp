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

#include "smellscape/ingest.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "binio.hpp"
#include "smellscape/error.hpp"
#include "smellscape/geo.hpp"
#include "smellscape/text.hpp"

namespace smellscape {

namespace {

using nlohmann::json;

constexpr char kDatasetMagic[9] = "SSDS0001";

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

bool parse_double(const std::string& s, double& out) {
  if (trim(s).empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

// Returns the reason the record is invalid, or empty if it is fine.
std::string validate_record(const GeoTaggedRecord& r) {
  if (r.id.empty()) return "empty id";
  if (!(r.position.lat >= -90.0 && r.position.lat <= 90.0))
    return "lat out of range";
  if (!(r.position.lon >= -180.0 && r.position.lon <= 180.0))
    return "lon out of range";
  return {};
}

bool record_from_json(const std::string& line, GeoTaggedRecord& r,
                      std::string& reason) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    reason = "not a JSON object";
    return false;
  }
  try {
    if (!j.contains("id") || !j["id"].is_string()) {
      reason = "missing id";
      return false;
    }
    r.id = j["id"].get<std::string>();
    if (!j.contains("lat") || !j["lat"].is_number() || !j.contains("lon") ||
        !j["lon"].is_number()) {
      reason = "missing lat/lon";
      return false;
    }
    r.position.lat = j["lat"].get<double>();
    r.position.lon = j["lon"].get<double>();
    if (!j.contains("timestamp")) {
      reason = "missing timestamp";
      return false;
    }
    std::optional<std::int64_t> ts;
    if (j["timestamp"].is_number_integer()) {
      ts = j["timestamp"].get<std::int64_t>();
    } else if (j["timestamp"].is_string()) {
      ts = parse_timestamp(j["timestamp"].get<std::string>());
    }
    if (!ts) {
      reason = "unparseable timestamp";
      return false;
    }
    r.timestamp_utc = *ts;
    r.tags.clear();
    if (j.contains("tags")) {
      if (!j["tags"].is_array()) {
        reason = "tags is not an array";
        return false;
      }
      for (const auto& t : j["tags"]) {
        if (!t.is_string()) {
          reason = "non-string tag";
          return false;
        }
        r.tags.push_back(t.get<std::string>());
      }
    }
    r.source = RecordSource::photo;
    if (j.contains("source")) {
      std::string s = j["source"].get<std::string>();
      if (s == "photo") {
        r.source = RecordSource::photo;
      } else if (s == "micropost") {
        r.source = RecordSource::micropost;
      } else {
        reason = "unknown source '" + s + "'";
        return false;
      }
    }
    r.monochrome.reset();
    if (j.contains("monochrome")) {
      if (!j["monochrome"].is_boolean()) {
        reason = "monochrome is not a boolean";
        return false;
      }
      r.monochrome = j["monochrome"].get<bool>();
    }
  } catch (const json::exception& e) {
    reason = e.what();
    return false;
  }
  reason = validate_record(r);
  return reason.empty();
}

bool record_from_csv(const std::string& line, GeoTaggedRecord& r,
                     std::string& reason) {
  auto fields = split_fields(line, ',');
  if (fields.size() < 5 || fields.size() > 7) {
    reason = "expected id,lat,lon,timestamp,tags[,source[,monochrome]]";
    return false;
  }
  r.id = trim(fields[0]);
  if (!parse_double(fields[1], r.position.lat) ||
      !parse_double(fields[2], r.position.lon)) {
    reason = "unparseable lat/lon";
    return false;
  }
  auto ts = parse_timestamp(fields[3]);
  if (!ts) {
    reason = "unparseable timestamp";
    return false;
  }
  r.timestamp_utc = *ts;
  r.tags.clear();
  for (const auto& t : split_fields(fields[4], ';'))
    if (!trim(t).empty()) r.tags.push_back(trim(t));
  r.source = RecordSource::photo;
  if (fields.size() >= 6 && !trim(fields[5]).empty()) {
    std::string s = trim(fields[5]);
    if (s == "photo") {
      r.source = RecordSource::photo;
    } else if (s == "micropost") {
      r.source = RecordSource::micropost;
    } else {
      reason = "unknown source '" + s + "'";
      return false;
    }
  }
  r.monochrome.reset();
  if (fields.size() == 7 && !trim(fields[6]).empty()) {
    std::string m = trim(fields[6]);
    if (m == "true" || m == "1") {
      r.monochrome = true;
    } else if (m == "false" || m == "0") {
      r.monochrome = false;
    } else {
      reason = "bad monochrome flag '" + m + "'";
      return false;
    }
  }
  reason = validate_record(r);
  return reason.empty();
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
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

std::string coord_repr(double v) {
  // Shortest representation that round-trips the double exactly.
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

std::vector<GeoTaggedRecord> parse_records(std::istream& in,
                                           RecordFormat format,
                                           ParseReport& report) {
  std::vector<GeoTaggedRecord> records;
  std::string raw;
  while (std::getline(in, raw)) {
    ++report.lines;
    std::string line = strip_cr(std::move(raw));
    if (trim(line).empty()) {
      report.rejects.push_back({report.lines, "blank line"});
      continue;
    }
    GeoTaggedRecord r;
    std::string reason;
    const bool ok = format == RecordFormat::jsonl
                        ? record_from_json(line, r, reason)
                        : record_from_csv(line, r, reason);
    if (ok) {
      ++report.accepted;
      records.push_back(std::move(r));
    } else {
      report.rejects.push_back({report.lines, reason});
    }
  }
  if (in.bad()) throw Error(errc::io_error, "stream error while reading records");
  return records;
}

void serialize_records(std::span<const GeoTaggedRecord> records,
                       std::ostream& out) {
  for (const auto& r : records) {
    out << "{\"id\":\"" << json_escape(r.id) << "\",\"lat\":" << coord_repr(r.position.lat)
        << ",\"lon\":" << coord_repr(r.position.lon)
        << ",\"timestamp\":" << r.timestamp_utc << ",\"tags\":[";
    for (std::size_t i = 0; i < r.tags.size(); ++i) {
      if (i > 0) out << ',';
      out << '"' << json_escape(r.tags[i]) << '"';
    }
    out << "],\"source\":\""
        << (r.source == RecordSource::photo ? "photo" : "micropost") << '"';
    if (r.monochrome)
      out << ",\"monochrome\":" << (*r.monochrome ? "true" : "false");
    out << "}\n";
  }
}

std::vector<StreetSegment> parse_street_network(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(errc::bad_format, std::string("invalid GeoJSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
      !doc.contains("features") || !doc["features"].is_array())
    throw Error(errc::bad_format, "expected a GeoJSON FeatureCollection");

  std::vector<StreetSegment> segments;
  std::unordered_set<std::string> seen;
  std::size_t feature_no = 0;
  for (const auto& feature : doc["features"]) {
    ++feature_no;
    const std::string where = "feature " + std::to_string(feature_no);

    std::string id;
    if (feature.contains("id")) {
      id = feature["id"].is_string() ? feature["id"].get<std::string>()
                                     : feature["id"].dump();
    } else if (feature.contains("properties") &&
               feature["properties"].is_object() &&
               feature["properties"].contains("id")) {
      const auto& pid = feature["properties"]["id"];
      id = pid.is_string() ? pid.get<std::string>() : pid.dump();
    }
    if (id.empty())
      throw Error(errc::bad_format, where + " has no id");
    if (!seen.insert(id).second)
      throw Error(errc::duplicate_segment_id, "'" + id + "'");

    if (!feature.contains("geometry") || !feature["geometry"].is_object() ||
        feature["geometry"].value("type", "") != "LineString")
      throw Error(errc::bad_format, where + " is not a LineString");
    const auto& coords = feature["geometry"]["coordinates"];
    if (!coords.is_array())
      throw Error(errc::bad_format, where + " has no coordinates");

    StreetSegment seg;
    seg.id = id;
    for (const auto& pt : coords) {
      if (!pt.is_array() || pt.size() < 2 || !pt[0].is_number() ||
          !pt[1].is_number())
        throw Error(errc::bad_format, where + " has a malformed coordinate");
      // GeoJSON order is [lon, lat].
      LatLon p{pt[1].get<double>(), pt[0].get<double>()};
      if (!(p.lat >= -90.0 && p.lat <= 90.0 && p.lon >= -180.0 &&
            p.lon <= 180.0))
        throw Error(errc::bad_format, where + " has out-of-range coordinates");
      if (!seg.polyline.empty() && seg.polyline.back() == p)
        continue;  // drop exact duplicates, then re-check the point count
      seg.polyline.push_back(p);
    }
    if (seg.polyline.size() < 2)
      throw Error(errc::degenerate_geometry,
                  "'" + id + "' has fewer than 2 distinct points");
    seg.length_m = polyline_length_m(seg.polyline);
    if (!(seg.length_m > 0.0))
      throw Error(errc::degenerate_geometry, "'" + id + "' has zero length");
    segments.push_back(std::move(seg));
  }
  return segments;
}

PollutantTable parse_pollutants(std::istream& in, ParseReport& report) {
  PollutantTable table;
  std::string raw;
  while (std::getline(in, raw)) {
    ++report.lines;
    std::string line = strip_cr(std::move(raw));
    if (trim(line).empty() || line[0] == '#') {
      report.rejects.push_back({report.lines, "blank or comment line"});
      continue;
    }
    auto fields = split_fields(line, ',');
    if (fields.size() != 4) {
      report.rejects.push_back(
          {report.lines, "expected segment_id,no2,pm10,pm25"});
      continue;
    }
    std::string id = trim(fields[0]);
    PollutantLevels levels;
    if (id.empty() || !parse_double(fields[1], levels.no2) ||
        !parse_double(fields[2], levels.pm10) ||
        !parse_double(fields[3], levels.pm25)) {
      report.rejects.push_back({report.lines, "unparseable row"});
      continue;
    }
    if (levels.no2 < 0.0 || levels.pm10 < 0.0 || levels.pm25 < 0.0) {
      report.rejects.push_back({report.lines, "negative concentration"});
      continue;
    }
    table[id] = levels;
    ++report.accepted;
  }
  if (in.bad()) throw Error(errc::io_error, "stream error while reading pollutants");
  return table;
}

VenueTable parse_venues(std::istream& in, ParseReport& report) {
  VenueTable table;
  std::string raw;
  while (std::getline(in, raw)) {
    ++report.lines;
    std::string line = strip_cr(std::move(raw));
    if (trim(line).empty() || line[0] == '#') {
      report.rejects.push_back({report.lines, "blank or comment line"});
      continue;
    }
    auto fields = split_fields(line, ',');
    if (fields.size() != 3) {
      report.rejects.push_back({report.lines, "expected lat,lon,kind"});
      continue;
    }
    Venue v;
    if (!parse_double(fields[0], v.position.lat) ||
        !parse_double(fields[1], v.position.lon)) {
      report.rejects.push_back({report.lines, "unparseable coordinates"});
      continue;
    }
    if (!(v.position.lat >= -90.0 && v.position.lat <= 90.0 &&
          v.position.lon >= -180.0 && v.position.lon <= 180.0)) {
      report.rejects.push_back({report.lines, "coordinates out of range"});
      continue;
    }
    v.kind = normalize_tag(fields[2]);
    if (v.kind.empty()) {
      report.rejects.push_back({report.lines, "empty kind"});
      continue;
    }
    table.push_back(std::move(v));
    ++report.accepted;
  }
  if (in.bad()) throw Error(errc::io_error, "stream error while reading venues");
  return table;
}

void expand_tags_to_ngrams(std::vector<GeoTaggedRecord>& records,
                           std::size_t max_n) {
  for (auto& r : records) {
    std::vector<std::string> words;
    for (const auto& tag : r.tags) {
      auto tag_words = split_words(normalize_tag(tag));
      words.insert(words.end(), tag_words.begin(), tag_words.end());
    }
    r.tags = ngrams(words, max_n);
  }
}

void write_dataset(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::io_error, "cannot write " + path);
  binio::put_magic(out, kDatasetMagic);
  binio::put<std::int32_t>(out, dataset.timezone.offset_seconds());
  binio::put_string(out, dataset.timezone.name());

  binio::put<std::uint64_t>(out, dataset.records.size());
  for (const auto& r : dataset.records) {
    binio::put_string(out, r.id);
    binio::put<double>(out, r.position.lat);
    binio::put<double>(out, r.position.lon);
    binio::put<std::int64_t>(out, r.timestamp_utc);
    binio::put<std::uint8_t>(out, static_cast<std::uint8_t>(r.source));
    binio::put<std::uint8_t>(
        out, r.monochrome ? (*r.monochrome ? 2 : 1) : 0);
    binio::put<std::uint32_t>(out, static_cast<std::uint32_t>(r.tags.size()));
    for (const auto& t : r.tags) binio::put_string(out, t);
  }

  binio::put<std::uint64_t>(out, dataset.streets.size());
  for (const auto& s : dataset.streets) {
    binio::put_string(out, s.id);
    binio::put<std::uint32_t>(out,
                              static_cast<std::uint32_t>(s.polyline.size()));
    for (const auto& p : s.polyline) {
      binio::put<double>(out, p.lat);
      binio::put<double>(out, p.lon);
    }
  }

  binio::put<std::uint64_t>(out, dataset.pollutants.size());
  for (const auto& [id, levels] : dataset.pollutants) {
    binio::put_string(out, id);
    binio::put<double>(out, levels.no2);
    binio::put<double>(out, levels.pm10);
    binio::put<double>(out, levels.pm25);
  }

  binio::put<std::uint64_t>(out, dataset.venues.size());
  for (const auto& v : dataset.venues) {
    binio::put<double>(out, v.position.lat);
    binio::put<double>(out, v.position.lon);
    binio::put_string(out, v.kind);
  }
  out.flush();
  if (!out) throw Error(errc::io_error, "failed writing " + path);
}

Dataset read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::io_error, "cannot open " + path);
  binio::expect_magic(in, kDatasetMagic);
  Dataset dataset;
  const auto offset = binio::get<std::int32_t>(in);
  const std::string name = binio::get_string(in);
  dataset.timezone = Timezone::parse(name);
  if (dataset.timezone.offset_seconds() != offset)
    throw Error(errc::bad_format, "inconsistent timezone in snapshot");

  auto nrecords = binio::get<std::uint64_t>(in);
  dataset.records.reserve(nrecords);
  for (std::uint64_t i = 0; i < nrecords; ++i) {
    GeoTaggedRecord r;
    r.id = binio::get_string(in);
    r.position.lat = binio::get<double>(in);
    r.position.lon = binio::get<double>(in);
    r.timestamp_utc = binio::get<std::int64_t>(in);
    r.source = static_cast<RecordSource>(binio::get<std::uint8_t>(in));
    const auto mono = binio::get<std::uint8_t>(in);
    if (mono == 1) r.monochrome = false;
    if (mono == 2) r.monochrome = true;
    auto ntags = binio::get<std::uint32_t>(in);
    r.tags.reserve(ntags);
    for (std::uint32_t t = 0; t < ntags; ++t)
      r.tags.push_back(binio::get_string(in));
    dataset.records.push_back(std::move(r));
  }

  auto nstreets = binio::get<std::uint64_t>(in);
  dataset.streets.reserve(nstreets);
  for (std::uint64_t i = 0; i < nstreets; ++i) {
    StreetSegment s;
    s.id = binio::get_string(in);
    auto npoints = binio::get<std::uint32_t>(in);
    s.polyline.reserve(npoints);
    for (std::uint32_t p = 0; p < npoints; ++p) {
      LatLon pt;
      pt.lat = binio::get<double>(in);
      pt.lon = binio::get<double>(in);
      s.polyline.push_back(pt);
    }
    s.length_m = polyline_length_m(s.polyline);
    dataset.streets.push_back(std::move(s));
  }

  auto npoll = binio::get<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < npoll; ++i) {
    std::string id = binio::get_string(in);
    PollutantLevels levels;
    levels.no2 = binio::get<double>(in);
    levels.pm10 = binio::get<double>(in);
    levels.pm25 = binio::get<double>(in);
    dataset.pollutants.emplace(std::move(id), levels);
  }

  auto nvenues = binio::get<std::uint64_t>(in);
  dataset.venues.reserve(nvenues);
  for (std::uint64_t i = 0; i < nvenues; ++i) {
    Venue v;
    v.position.lat = binio::get<double>(in);
    v.position.lon = binio::get<double>(in);
    v.kind = binio::get_string(in);
    dataset.venues.push_back(std::move(v));
  }
  return dataset;
}

void write_rejects_csv(const ParseReport& report, const std::string& source,
                       std::ostream& out) {
  out << "source,line,reason\n";
  for (const auto& reject : report.rejects) {
    std::string reason = reject.reason;
    for (char& c : reason)
      if (c == ',' || c == '\n') c = ';';
    out << source << ',' << reject.line_no << ',' << reason << '\n';
  }
}

}  // namespace smellscape
