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
#include <span>
#include <unordered_map>
#include <vector>

#include "smellscape/record.hpp"

namespace smellscape {

inline constexpr double kEarthRadiusM = 6371000.0;

// Two candidate distances within this window count as a tie, resolved by
// the lexicographically smaller segment id.
inline constexpr double kSnapTieEpsilonM = 1e-9;

// Great-circle distance on a sphere of radius kEarthRadiusM.
double haversine_m(const LatLon& a, const LatLon& b);

// Distance from p to the segment (a, b): the closest point is located by
// Euclidean projection in a local equirectangular frame around p, then the
// returned value is the haversine distance to that point. Exact enough at
// snap radii that the flat-frame projection error is far below the tie
// window.
double segment_distance_m(const LatLon& p, const LatLon& a, const LatLon& b);

// Minimum of segment_distance_m over consecutive polyline points.
double polyline_distance_m(const LatLon& p, std::span<const LatLon> polyline);

// Sum of haversine lengths over consecutive polyline points.
double polyline_length_m(std::span<const LatLon> polyline);

// Uniform lat/lon grid over segment bounding boxes. The grid only prunes:
// every segment whose true distance to the query point is within the query
// radius is guaranteed to be among the candidates examined.
class SegmentIndex {
 public:
  SegmentIndex() = default;
  explicit SegmentIndex(std::vector<StreetSegment> segments);

  const std::vector<StreetSegment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

  struct Hit {
    std::uint32_t segment;  // index into segments()
    double distance_m;
  };

  // Nearest segment within max_dist_m, or nullopt. Distance ties within
  // kSnapTieEpsilonM go to the lexicographically smallest segment id.
  std::optional<Hit> snap(const LatLon& point, double max_dist_m) const;

  // All segments within max_dist_m with their distances, in ascending
  // segment-id order. snap() is the fold of this list.
  std::vector<Hit> within(const LatLon& point, double max_dist_m) const;

 private:
  std::vector<StreetSegment> segments_;
  // ids_by_rank_[k] = segment index with the k-th smallest id; candidates are
  // examined in this order so tie-breaking never depends on grid layout.
  std::vector<std::uint32_t> rank_of_segment_;
  std::unordered_map<std::int64_t, std::vector<std::uint32_t>> cells_;
  double cell_deg_ = 0.005;

  std::int64_t cell_key(std::int64_t row, std::int64_t col) const;
};

}  // namespace smellscape
