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

#include "smellscape/tally.hpp"

#include <algorithm>
#include <fstream>
#include <thread>
#include <unordered_map>

#include "binio.hpp"
#include "smellscape/error.hpp"
#include "smellscape/text.hpp"

namespace smellscape {

namespace {

constexpr char kTalliesMagic[9] = "SSTL0001";

// Per-worker partial result, keyed by segment index to avoid string churn in
// the hot loop.
using PartialTallies = std::unordered_map<std::uint32_t, SegmentTally>;

void count_record_tags(const GeoTaggedRecord& record, const Lexicons& lexicons,
                       bool multiset_tags, LayerCounts& bucket) {
  bucket.records += 1;
  std::vector<std::string> tags;
  tags.reserve(record.tags.size());
  for (const auto& raw : record.tags) {
    std::string tag = normalize_tag(raw);
    if (!tag.empty()) tags.push_back(std::move(tag));
  }
  if (!multiset_tags) {
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
  }
  for (const auto& tag : tags) {
    if (const auto* smell = lexicons.taxonomy.find(tag))
      bucket.smell[smell->category] += 1;
    if (lexicons.pleasantness.is_pleasant(tag)) bucket.pleasant += 1;
    if (lexicons.pleasantness.is_unpleasant(tag)) bucket.unpleasant += 1;
    if (const auto* affect = lexicons.affect.find(tag)) {
      if (affect->polarity) {
        if (*affect->polarity == Polarity::positive)
          bucket.positive += 1;
        else
          bucket.negative += 1;
      }
      for (std::size_t e = 0; e < kEmotionCount; ++e)
        if (affect->emotions.test(e)) bucket.emotions[e] += 1;
    }
  }
}

}  // namespace

std::uint64_t LayerCounts::smell_total() const {
  std::uint64_t total = 0;
  for (std::uint64_t c : smell) total += c;
  return total;
}

std::uint64_t LayerCounts::emotion_total() const {
  std::uint64_t total = 0;
  for (std::uint64_t c : emotions) total += c;
  return total;
}

void LayerCounts::add(const LayerCounts& other) {
  if (smell.size() < other.smell.size()) smell.resize(other.smell.size());
  for (std::size_t i = 0; i < other.smell.size(); ++i) smell[i] += other.smell[i];
  pleasant += other.pleasant;
  unpleasant += other.unpleasant;
  positive += other.positive;
  negative += other.negative;
  for (std::size_t e = 0; e < kEmotionCount; ++e)
    emotions[e] += other.emotions[e];
  records += other.records;
}

LayerCounts SegmentTally::total(std::size_t n_categories) const {
  LayerCounts folded(n_categories);
  for (const auto& [key, counts] : months) folded.add(counts);
  return folded;
}

const LayerCounts* SegmentTally::month(MonthKey key) const {
  auto it = months.find(key);
  return it == months.end() ? nullptr : &it->second;
}

const StreetSegment* TallySet::segment_geometry(const std::string& id) const {
  auto it = std::lower_bound(
      network.begin(), network.end(), id,
      [](const StreetSegment& s, const std::string& key) { return s.id < key; });
  if (it == network.end() || it->id != id) return nullptr;
  return &*it;
}

TallySet aggregate(std::span<const GeoTaggedRecord> records,
                   const SegmentIndex& index, const Lexicons& lexicons,
                   const Timezone& timezone, const AggregateOptions& options) {
  const std::size_t n_categories = lexicons.taxonomy.categories().size();

  const int threads = std::max(1, options.threads);
  const std::size_t n = records.size();
  const std::size_t chunks = static_cast<std::size_t>(threads);

  std::vector<PartialTallies> partials(chunks);
  std::vector<std::uint64_t> unsnapped(chunks, 0);

  auto work = [&](std::size_t chunk) {
    const std::size_t begin = n * chunk / chunks;
    const std::size_t end = n * (chunk + 1) / chunks;
    PartialTallies& local = partials[chunk];
    for (std::size_t i = begin; i < end; ++i) {
      const GeoTaggedRecord& record = records[i];
      auto hit = index.snap(record.position, options.max_dist_m);
      if (!hit) {
        unsnapped[chunk] += 1;
        continue;
      }
      const MonthKey month = timezone.month_of(record.timestamp_utc);
      auto [it, inserted] = local[hit->segment].months.try_emplace(
          month, LayerCounts(n_categories));
      count_record_tags(record, lexicons, options.multiset_tags, it->second);
    }
  };

  if (chunks == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) pool.emplace_back(work, c);
    for (auto& t : pool) t.join();
  }

  TallySet result;
  result.categories = lexicons.taxonomy.categories();
  result.timezone = timezone;
  result.max_dist_m = options.max_dist_m;
  result.multiset_tags = options.multiset_tags;
  result.records_total = n;
  result.network = index.segments();
  std::sort(result.network.begin(), result.network.end(),
            [](const StreetSegment& a, const StreetSegment& b) {
              return a.id < b.id;
            });

  // Count merges are associative and commutative, so folding the partials in
  // chunk order yields the same tallies as any other partition of the input.
  for (std::size_t c = 0; c < chunks; ++c) {
    result.records_unsnapped += unsnapped[c];
    for (auto& [seg_idx, tally] : partials[c]) {
      SegmentTally& target = result.segments[index.segments()[seg_idx].id];
      for (auto& [month, counts] : tally.months) {
        auto [it, inserted] =
            target.months.try_emplace(month, LayerCounts(n_categories));
        it->second.add(counts);
      }
    }
  }
  result.records_snapped = result.records_total - result.records_unsnapped;
  return result;
}

void write_tallies(const TallySet& tallies, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::io_error, "cannot write " + path);
  binio::put_magic(out, kTalliesMagic);

  binio::put<std::uint32_t>(out,
                            static_cast<std::uint32_t>(tallies.categories.size()));
  for (const auto& c : tallies.categories) binio::put_string(out, c);
  binio::put_string(out, tallies.timezone.name());
  binio::put<double>(out, tallies.max_dist_m);
  binio::put<std::uint8_t>(out, tallies.multiset_tags ? 1 : 0);
  binio::put<std::uint64_t>(out, tallies.records_total);
  binio::put<std::uint64_t>(out, tallies.records_snapped);
  binio::put<std::uint64_t>(out, tallies.records_unsnapped);

  binio::put<std::uint64_t>(out, tallies.network.size());
  for (const auto& s : tallies.network) {
    binio::put_string(out, s.id);
    binio::put<std::uint32_t>(out,
                              static_cast<std::uint32_t>(s.polyline.size()));
    for (const auto& p : s.polyline) {
      binio::put<double>(out, p.lat);
      binio::put<double>(out, p.lon);
    }
  }

  binio::put<std::uint64_t>(out, tallies.segments.size());
  for (const auto& [id, tally] : tallies.segments) {
    binio::put_string(out, id);
    binio::put<std::uint32_t>(out,
                              static_cast<std::uint32_t>(tally.months.size()));
    for (const auto& [month, counts] : tally.months) {
      binio::put<std::int32_t>(out, month.index);
      binio::put<std::uint64_t>(out, counts.records);
      for (std::uint64_t c : counts.smell) binio::put<std::uint64_t>(out, c);
      binio::put<std::uint64_t>(out, counts.pleasant);
      binio::put<std::uint64_t>(out, counts.unpleasant);
      binio::put<std::uint64_t>(out, counts.positive);
      binio::put<std::uint64_t>(out, counts.negative);
      for (std::uint64_t c : counts.emotions) binio::put<std::uint64_t>(out, c);
    }
  }
  out.flush();
  if (!out) throw Error(errc::io_error, "failed writing " + path);
}

TallySet read_tallies(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::io_error, "cannot open " + path);
  binio::expect_magic(in, kTalliesMagic);

  TallySet tallies;
  auto ncats = binio::get<std::uint32_t>(in);
  for (std::uint32_t i = 0; i < ncats; ++i)
    tallies.categories.push_back(binio::get_string(in));
  tallies.timezone = Timezone::parse(binio::get_string(in));
  tallies.max_dist_m = binio::get<double>(in);
  tallies.multiset_tags = binio::get<std::uint8_t>(in) != 0;
  tallies.records_total = binio::get<std::uint64_t>(in);
  tallies.records_snapped = binio::get<std::uint64_t>(in);
  tallies.records_unsnapped = binio::get<std::uint64_t>(in);

  auto nsegments = binio::get<std::uint64_t>(in);
  tallies.network.reserve(nsegments);
  for (std::uint64_t i = 0; i < nsegments; ++i) {
    StreetSegment s;
    s.id = binio::get_string(in);
    auto npoints = binio::get<std::uint32_t>(in);
    for (std::uint32_t p = 0; p < npoints; ++p) {
      LatLon pt;
      pt.lat = binio::get<double>(in);
      pt.lon = binio::get<double>(in);
      s.polyline.push_back(pt);
    }
    s.length_m = polyline_length_m(s.polyline);
    tallies.network.push_back(std::move(s));
  }

  auto ntallies = binio::get<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < ntallies; ++i) {
    std::string id = binio::get_string(in);
    SegmentTally tally;
    auto nmonths = binio::get<std::uint32_t>(in);
    for (std::uint32_t m = 0; m < nmonths; ++m) {
      MonthKey key{binio::get<std::int32_t>(in)};
      LayerCounts counts(ncats);
      counts.records = binio::get<std::uint64_t>(in);
      for (std::uint32_t c = 0; c < ncats; ++c)
        counts.smell[c] = binio::get<std::uint64_t>(in);
      counts.pleasant = binio::get<std::uint64_t>(in);
      counts.unpleasant = binio::get<std::uint64_t>(in);
      counts.positive = binio::get<std::uint64_t>(in);
      counts.negative = binio::get<std::uint64_t>(in);
      for (std::size_t e = 0; e < kEmotionCount; ++e)
        counts.emotions[e] = binio::get<std::uint64_t>(in);
      tally.months.emplace(key, std::move(counts));
    }
    tallies.segments.emplace(std::move(id), std::move(tally));
  }
  return tallies;
}

}  // namespace smellscape
