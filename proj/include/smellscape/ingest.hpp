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

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "smellscape/record.hpp"

namespace smellscape {

enum class RecordFormat { jsonl, csv };

// One rejected input line. Rejections never abort the parse; they are
// collected so accepted + rejected always accounts for every input line.
struct Reject {
  std::size_t line_no;
  std::string reason;
};

struct ParseReport {
  std::size_t lines = 0;
  std::size_t accepted = 0;
  std::vector<Reject> rejects;
};

using PollutantTable = std::map<std::string, PollutantLevels>;
using VenueTable = std::vector<Venue>;

// Line-delimited records, one record per line.
//
// jsonl: {"id":"r1","lat":51.5,"lon":-0.12,"timestamp":"2013-05-04T10:20:30Z",
//         "tags":["grass"],"source":"photo","monochrome":false}
//        source and monochrome are optional; timestamp also accepts epoch
//        seconds.
// csv:   id,lat,lon,timestamp,tag;tag;...[,source[,monochrome]]
std::vector<GeoTaggedRecord> parse_records(std::istream& in,
                                           RecordFormat format,
                                           ParseReport& report);

// Deterministic JSONL rendering; parse_records(serialize_records(r), jsonl)
// reproduces r exactly (coordinates are printed with round-trip precision).
void serialize_records(std::span<const GeoTaggedRecord> records,
                       std::ostream& out);

// GeoJSON FeatureCollection of LineString features. The feature id (or an
// "id" property) names the segment and must be unique. Lengths are computed
// at parse time. Throws DuplicateSegmentId / DegenerateGeometry / BadFormat.
std::vector<StreetSegment> parse_street_network(std::istream& in);

// CSV rows: segment_id,no2,pm10,pm25 (values finite and >= 0).
PollutantTable parse_pollutants(std::istream& in, ParseReport& report);

// CSV rows: lat,lon,kind
VenueTable parse_venues(std::istream& in, ParseReport& report);

// Replaces every record's tags with the n-grams (n <= max_n) of its
// whitespace-tokenized tag strings. Ingest-time preprocessing for micropost
// text, where "tags" arrive as free-text fragments.
void expand_tags_to_ngrams(std::vector<GeoTaggedRecord>& records,
                           std::size_t max_n);

// Everything one city analysis needs, as loaded by the ingest step.
struct Dataset {
  Timezone timezone;
  std::vector<GeoTaggedRecord> records;
  std::vector<StreetSegment> streets;
  PollutantTable pollutants;
  VenueTable venues;
};

// Versioned binary snapshot ("SSDS" magic). Self-describing enough to fail
// loudly on a foreign or truncated file.
void write_dataset(const Dataset& dataset, const std::string& path);
Dataset read_dataset(const std::string& path);

void write_rejects_csv(const ParseReport& report, const std::string& source,
                       std::ostream& out);

}  // namespace smellscape
