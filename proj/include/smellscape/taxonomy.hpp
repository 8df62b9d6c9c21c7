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
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "smellscape/record.hpp"

namespace smellscape::taxonomy {

// Undirected word co-occurrence graph. Nodes are vocabulary words observed
// in the corpus; an edge's weight counts the records whose tag sets contain
// both endpoints. No self-loops; weights >= 1.
struct CoOccurrenceGraph {
  std::vector<std::string> nodes;  // sorted
  // key (u, v) with u < v (node indices)
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> edges;

  std::size_t size() const { return nodes.size(); }
  double total_weight() const;
};

// Counts pairwise tag co-occurrences per record, restricted to the given
// vocabulary. Tags are normalized and de-duplicated per record first.
CoOccurrenceGraph build_graph(std::span<const GeoTaggedRecord> records,
                              const std::unordered_set<std::string>& vocabulary);

// Greedy modularity maximization (Louvain-style passes) with the resolution
// parameter gamma. Fully deterministic: nodes are visited in sorted order,
// gain ties go to the smallest community index, and coarsening renumbers
// communities by their smallest member. The seed is accepted for interface
// stability and recorded by callers; the algorithm itself takes no random
// decisions. Returns one community id per node, numbered from 0 in order of
// first appearance. Throws EmptyGraph when the graph has no nodes.
std::vector<std::uint32_t> cluster(const CoOccurrenceGraph& graph,
                                   double resolution, std::uint64_t seed);

// Modularity of a partition at the given resolution.
double modularity(const CoOccurrenceGraph& graph,
                  std::span<const std::uint32_t> partition, double resolution);

}  // namespace smellscape::taxonomy
