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

#include <map>
#include <set>

#include "smellscape/error.hpp"
#include "smellscape/rng.hpp"
#include "smellscape/taxonomy.hpp"

using namespace smellscape;
namespace tx = smellscape::taxonomy;

namespace {

GeoTaggedRecord record_with(std::vector<std::string> tags) {
  static int counter = 0;
  GeoTaggedRecord r;
  r.id = "r" + std::to_string(counter++);
  r.position = {51.5, 0.0};
  r.timestamp_utc = 0;
  r.tags = std::move(tags);
  return r;
}

// Adjusted Rand index between two labelings.
double adjusted_rand(const std::vector<std::uint32_t>& a,
                     const std::vector<std::uint32_t>& b) {
  REQUIRE(a.size() == b.size());
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
  std::map<std::uint32_t, double> ma, mb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1;
    ma[a[i]] += 1;
    mb[b[i]] += 1;
  }
  auto choose2 = [](double n) { return n * (n - 1) / 2.0; };
  double sum_joint = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [k, n] : joint) sum_joint += choose2(n);
  for (const auto& [k, n] : ma) sum_a += choose2(n);
  for (const auto& [k, n] : mb) sum_b += choose2(n);
  const double total = choose2(static_cast<double>(a.size()));
  const double expected = sum_a * sum_b / total;
  const double max_index = (sum_a + sum_b) / 2.0;
  return (sum_joint - expected) / (max_index - expected);
}

}  // namespace

TEST_CASE("build_graph counts pairwise record co-occurrences") {
  std::unordered_set<std::string> vocab = {"grass", "flower", "soil", "a", "b",
                                           "c"};
  std::vector<GeoTaggedRecord> records;
  records.push_back(record_with({"grass", "flower"}));
  records.push_back(record_with({"Grass", "flower", "flower"}));  // dedup
  records.push_back(record_with({"soil"}));
  records.push_back(record_with({"a", "b", "c"}));
  records.push_back(record_with({"skyscraper", "grass"}));  // out of vocab

  const auto graph = tx::build_graph(records, vocab);
  REQUIRE(graph.nodes.size() == 6);
  auto index_of = [&](const std::string& w) -> std::uint32_t {
    for (std::uint32_t i = 0; i < graph.nodes.size(); ++i)
      if (graph.nodes[i] == w) return i;
    FAIL("node missing");
    return 0;
  };
  const auto grass = index_of("grass");
  const auto flower = index_of("flower");
  const auto key = std::make_pair(std::min(grass, flower),
                                  std::max(grass, flower));
  REQUIRE(graph.edges.count(key) == 1);
  CHECK(graph.edges.at(key) == 2.0);  // two records share the pair

  // {a,b,c} expands to three pairwise edges.
  int abc_edges = 0;
  for (const char* u : {"a", "b", "c"})
    for (const char* v : {"b", "c"})
      if (std::string(u) < v) {
        const auto k = std::make_pair(std::min(index_of(u), index_of(v)),
                                      std::max(index_of(u), index_of(v)));
        if (graph.edges.count(k)) ++abc_edges;
      }
  CHECK(abc_edges == 3);

  // soil co-occurs with nothing.
  for (const auto& [k, w] : graph.edges) {
    CHECK(k.first != index_of("soil"));
    CHECK(k.second != index_of("soil"));
  }
}

TEST_CASE("clustering separates disjoint cliques") {
  std::unordered_set<std::string> vocab;
  std::vector<GeoTaggedRecord> records;
  // Two 4-word cliques tied together by repeated records.
  const std::vector<std::string> left = {"la", "lb", "lc", "ld"};
  const std::vector<std::string> right = {"ra", "rb", "rc", "rd"};
  for (const auto& w : left) vocab.insert(w);
  for (const auto& w : right) vocab.insert(w);
  for (int i = 0; i < 5; ++i) {
    records.push_back(record_with(left));
    records.push_back(record_with(right));
  }

  const auto graph = tx::build_graph(records, vocab);
  const auto partition = tx::cluster(graph, 1.0, 7);
  REQUIRE(partition.size() == 8);

  std::set<std::uint32_t> left_labels, right_labels;
  for (std::uint32_t i = 0; i < graph.nodes.size(); ++i) {
    if (graph.nodes[i][0] == 'l')
      left_labels.insert(partition[i]);
    else
      right_labels.insert(partition[i]);
  }
  CHECK(left_labels.size() == 1);
  CHECK(right_labels.size() == 1);
  CHECK(*left_labels.begin() != *right_labels.begin());

  // A single clique is one community.
  std::vector<GeoTaggedRecord> one;
  one.push_back(record_with(left));
  const auto single = tx::build_graph(one, vocab);
  const auto single_partition = tx::cluster(single, 1.0, 7);
  for (std::uint32_t label : single_partition) CHECK(label == 0);
}

TEST_CASE("cluster rejects an empty graph") {
  tx::CoOccurrenceGraph empty;
  CHECK_THROWS_AS((void)tx::cluster(empty, 1.0, 7), Error);
}

TEST_CASE("planted 10-block graph is recovered with high ARI") {
  // 10 blocks x 30 words; intra-block pair weight 10, inter-block weight 1
  // on a sparse random subset.
  Rng rng(4242);
  tx::CoOccurrenceGraph graph;
  const int blocks = 10;
  const int per_block = 30;
  std::vector<std::uint32_t> truth;
  for (int b = 0; b < blocks; ++b)
    for (int w = 0; w < per_block; ++w) {
      char name[16];
      std::snprintf(name, sizeof(name), "w%02d_%02d", b, w);
      graph.nodes.push_back(name);
      truth.push_back(static_cast<std::uint32_t>(b));
    }
  const auto n = static_cast<std::uint32_t>(graph.nodes.size());
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (truth[u] == truth[v]) {
        graph.edges[{u, v}] = 10.0;
      } else if (rng.next_below(10) == 0) {
        graph.edges[{u, v}] = 1.0;
      }
    }

  const auto partition = tx::cluster(graph, 1.0, 7);
  CHECK(adjusted_rand(partition, truth) >= 0.9);

  // Determinism across repeated runs.
  for (int run = 0; run < 4; ++run)
    CHECK(tx::cluster(graph, 1.0, 7) == partition);

  // Modularity sanity: at least as good as the singleton partition.
  std::vector<std::uint32_t> singleton(n);
  for (std::uint32_t i = 0; i < n; ++i) singleton[i] = i;
  CHECK(tx::modularity(graph, partition, 1.0) >=
        tx::modularity(graph, singleton, 1.0));

  // Every node is covered exactly once by construction of the label vector.
  CHECK(partition.size() == graph.nodes.size());
}
