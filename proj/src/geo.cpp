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

#include "smellscape/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace smellscape {

namespace {

constexpr double kDegToRad = 0.017453292519943295;
constexpr double kRadToDeg = 57.29577951308232;

double clamp01(double t) { return t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t); }

}  // namespace

double haversine_m(const LatLon& a, const LatLon& b) {
  const double lat1 = a.lat * kDegToRad;
  const double lat2 = b.lat * kDegToRad;
  const double dlat = (b.lat - a.lat) * kDegToRad;
  const double dlon = (b.lon - a.lon) * kDegToRad;
  const double sl = std::sin(dlat / 2.0);
  const double so = std::sin(dlon / 2.0);
  const double h = sl * sl + std::cos(lat1) * std::cos(lat2) * so * so;
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(std::min(1.0, h)));
}

double segment_distance_m(const LatLon& p, const LatLon& a, const LatLon& b) {
  // Local frame centered at p: x = lon * cos(lat_p), y = lat.
  const double coslat = std::cos(p.lat * kDegToRad);
  const double ax = (a.lon - p.lon) * coslat;
  const double ay = a.lat - p.lat;
  const double bx = (b.lon - p.lon) * coslat;
  const double by = b.lat - p.lat;
  const double dx = bx - ax;
  const double dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = clamp01(-(ax * dx + ay * dy) / len2);
  const LatLon closest{a.lat + t * (b.lat - a.lat), a.lon + t * (b.lon - a.lon)};
  return haversine_m(p, closest);
}

double polyline_distance_m(const LatLon& p, std::span<const LatLon> polyline) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i)
    best = std::min(best, segment_distance_m(p, polyline[i], polyline[i + 1]));
  if (polyline.size() == 1) best = haversine_m(p, polyline[0]);
  return best;
}

double polyline_length_m(std::span<const LatLon> polyline) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i)
    total += haversine_m(polyline[i], polyline[i + 1]);
  return total;
}

SegmentIndex::SegmentIndex(std::vector<StreetSegment> segments)
    : segments_(std::move(segments)) {
  const auto n = static_cast<std::uint32_t>(segments_.size());

  // Rank segments by id once so candidate scans run in id order.
  std::vector<std::uint32_t> by_id(n);
  std::iota(by_id.begin(), by_id.end(), 0u);
  std::sort(by_id.begin(), by_id.end(), [&](std::uint32_t a, std::uint32_t b) {
    return segments_[a].id < segments_[b].id;
  });
  rank_of_segment_.assign(n, 0);
  for (std::uint32_t rank = 0; rank < n; ++rank)
    rank_of_segment_[by_id[rank]] = rank;

  for (std::uint32_t i = 0; i < n; ++i) {
    double lat_lo = 90.0, lat_hi = -90.0, lon_lo = 180.0, lon_hi = -180.0;
    for (const auto& pt : segments_[i].polyline) {
      lat_lo = std::min(lat_lo, pt.lat);
      lat_hi = std::max(lat_hi, pt.lat);
      lon_lo = std::min(lon_lo, pt.lon);
      lon_hi = std::max(lon_hi, pt.lon);
    }
    const auto row_lo = static_cast<std::int64_t>(std::floor(lat_lo / cell_deg_));
    const auto row_hi = static_cast<std::int64_t>(std::floor(lat_hi / cell_deg_));
    const auto col_lo = static_cast<std::int64_t>(std::floor(lon_lo / cell_deg_));
    const auto col_hi = static_cast<std::int64_t>(std::floor(lon_hi / cell_deg_));
    for (std::int64_t r = row_lo; r <= row_hi; ++r)
      for (std::int64_t c = col_lo; c <= col_hi; ++c)
        cells_[cell_key(r, c)].push_back(i);
  }
}

std::int64_t SegmentIndex::cell_key(std::int64_t row, std::int64_t col) const {
  return row * 0x100000 + col;  // lat rows are < 2^16, lon cols < 2^17
}

std::vector<SegmentIndex::Hit> SegmentIndex::within(const LatLon& point,
                                                    double max_dist_m) const {
  std::vector<Hit> hits;
  if (segments_.empty() || max_dist_m <= 0.0) return hits;

  // Conservative query box. |dlat| of any point within r is at most r/R;
  // the longitude span follows from the haversine identity evaluated at the
  // poleward edge of the box.
  const double r_rad = max_dist_m / kEarthRadiusM;
  const double dlat_deg = r_rad * kRadToDeg + 1e-12;
  const double lat_edge =
      std::min(89.9, std::abs(point.lat) + dlat_deg) * kDegToRad;
  const double sin_half = std::sin(r_rad / 2.0) / std::cos(lat_edge);
  const double dlon_deg =
      (sin_half >= 1.0 ? 180.0
                       : 2.0 * std::asin(sin_half) * kRadToDeg) + 1e-12;

  const auto row_lo =
      static_cast<std::int64_t>(std::floor((point.lat - dlat_deg) / cell_deg_));
  const auto row_hi =
      static_cast<std::int64_t>(std::floor((point.lat + dlat_deg) / cell_deg_));
  const auto col_lo =
      static_cast<std::int64_t>(std::floor((point.lon - dlon_deg) / cell_deg_));
  const auto col_hi =
      static_cast<std::int64_t>(std::floor((point.lon + dlon_deg) / cell_deg_));

  std::vector<std::uint32_t> candidates;
  for (std::int64_t r = row_lo; r <= row_hi; ++r) {
    for (std::int64_t c = col_lo; c <= col_hi; ++c) {
      auto it = cells_.find(cell_key(r, c));
      if (it == cells_.end()) continue;
      candidates.insert(candidates.end(), it->second.begin(), it->second.end());
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              return rank_of_segment_[a] < rank_of_segment_[b];
            });
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  for (std::uint32_t idx : candidates) {
    const double d = polyline_distance_m(point, segments_[idx].polyline);
    if (d <= max_dist_m) hits.push_back(Hit{idx, d});
  }
  return hits;
}

std::optional<SegmentIndex::Hit> SegmentIndex::snap(const LatLon& point,
                                                    double max_dist_m) const {
  std::optional<Hit> best;
  for (const Hit& hit : within(point, max_dist_m)) {
    if (!best) {
      best = hit;
      continue;
    }
    // within() yields ascending ids, so on a tie the incumbent already has
    // the smaller id.
    if (hit.distance_m < best->distance_m - kSnapTieEpsilonM) best = hit;
  }
  return best;
}

}  // namespace smellscape
