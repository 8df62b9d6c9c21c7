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
#include <optional>
#include <string>
#include <vector>

namespace smellscape {

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;

  bool operator==(const LatLon&) const = default;
};

enum class RecordSource : std::uint8_t { photo, micropost };

// One geo-tagged photo or micropost. Tags are kept raw; normalization
// happens at classification time so the snapshot round-trips exactly.
struct GeoTaggedRecord {
  std::string id;
  LatLon position;
  std::int64_t timestamp_utc = 0;  // epoch seconds
  std::vector<std::string> tags;
  RecordSource source = RecordSource::photo;
  std::optional<bool> monochrome;  // unset when the attribute was absent

  bool operator==(const GeoTaggedRecord&) const = default;
};

// Street portion between two intersections. length_m is derived from the
// polyline at parse time (haversine over consecutive points).
struct StreetSegment {
  std::string id;
  std::vector<LatLon> polyline;  // >= 2 points, consecutive points distinct
  double length_m = 0.0;
};

struct PollutantLevels {
  double no2 = 0.0;
  double pm10 = 0.0;
  double pm25 = 0.0;
};

struct PollutantRow {
  std::string segment_id;
  PollutantLevels levels;
};

struct Venue {
  LatLon position;
  std::string kind;  // natural, vegetation, surface, cuisine, ...
};

// Calendar month in the configured civil timezone, counted from year 0 so
// that consecutive MonthKeys differ by 1 across year boundaries.
struct MonthKey {
  std::int32_t index = 0;  // year * 12 + (month - 1)

  static MonthKey from_parts(int year, int month) {
    return MonthKey{year * 12 + (month - 1)};
  }
  int year() const { return index >= 0 ? index / 12 : (index - 11) / 12; }
  int month() const {
    int m = index % 12;
    if (m < 0) m += 12;
    return m + 1;  // 1..12
  }
  auto operator<=>(const MonthKey&) const = default;
};

// Fixed civil-time offset used to bucket timestamps into calendar months.
// Accepts "UTC" or "+HH[:MM]" / "-HH[:MM]".
class Timezone {
 public:
  Timezone() = default;
  static Timezone parse(const std::string& spec);

  std::int32_t offset_seconds() const { return offset_seconds_; }
  const std::string& name() const { return name_; }

  MonthKey month_of(std::int64_t timestamp_utc) const;

 private:
  std::int32_t offset_seconds_ = 0;
  std::string name_ = "UTC";
};

// RFC-3339 ("2013-05-04T10:20:30Z", fractional seconds and numeric offsets
// accepted) or plain epoch seconds. Returns epoch seconds UTC.
std::optional<std::int64_t> parse_timestamp(const std::string& text);

// Deterministic RFC-3339 UTC rendering of an epoch-second timestamp.
std::string format_timestamp_utc(std::int64_t timestamp_utc);

}  // namespace smellscape
