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

#include "smellscape/taxonomy.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "smellscape/error.hpp"
#include "smellscape/text.hpp"

namespace smellscape::taxonomy {

namespace {

// Adjacency-list view used by the clustering passes.
struct WorkGraph {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;
  std::vector<double> self_loop;  // intra-weight accumulated by coarsening
  std::vector<double> degree;     // weighted degree incl. 2 * self_loop
  double two_m = 0.0;

  static WorkGraph from(const CoOccurrenceGraph& graph) {
    WorkGraph wg;
    wg.n = graph.size();
    wg.adjacency.resize(wg.n);
    wg.self_loop.assign(wg.n, 0.0);
    wg.degree.assign(wg.n, 0.0);
    for (const auto& [key, weight] : graph.edges) {
      wg.adjacency[key.first].emplace_back(key.second, weight);
      wg.adjacency[key.second].emplace_back(key.first, weight);
      wg.degree[key.first] += weight;
      wg.degree[key.second] += weight;
      wg.two_m += 2.0 * weight;
    }
    return wg;
  }
};

// One pass of local moves; returns the community of each node and whether
// anything moved.
bool local_moves(const WorkGraph& graph, double resolution,
                 std::vector<std::uint32_t>& community) {
  const std::size_t n = graph.n;
  std::vector<double> community_total(n, 0.0);  // sum of degrees per community
  for (std::size_t v = 0; v < n; ++v)
    community_total[community[v]] += graph.degree[v] + 2.0 * graph.self_loop[v];

  bool any_move = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::uint32_t v = 0; v < n; ++v) {
      const std::uint32_t own = community[v];
      const double k_v = graph.degree[v] + 2.0 * graph.self_loop[v];
      community_total[own] -= k_v;

      // Weight from v into each neighboring community (own included).
      std::map<std::uint32_t, double> weight_to;
      weight_to[own] += 0.0;
      for (const auto& [u, w] : graph.adjacency[v])
        if (u != v) weight_to[community[u]] += w;

      // Gain of joining community C relative to staying isolated:
      //   w(v,C) / m  -  gamma * k_v * tot(C) / (2 m^2)
      // weight_to iterates in ascending community index, so requiring a
      // strict improvement resolves ties toward the smallest index.
      std::uint32_t best = own;
      double best_gain = 0.0;
      bool first = true;
      for (const auto& [c, w_vc] : weight_to) {
        const double gain =
            w_vc / (graph.two_m / 2.0) -
            resolution * k_v * community_total[c] /
                (graph.two_m * graph.two_m / 2.0);
        if (first || gain > best_gain + 1e-12) {
          best = c;
          best_gain = gain;
          first = false;
        }
      }

      community_total[best] += k_v;
      if (best != own) {
        community[v] = best;
        moved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

// Renumbers community labels 0..k-1 in order of their smallest member node.
std::uint32_t compact_labels(std::vector<std::uint32_t>& community) {
  std::map<std::uint32_t, std::uint32_t> remap;
  std::uint32_t next = 0;
  for (std::uint32_t label : community)
    if (remap.try_emplace(label, next).second) ++next;
  for (auto& label : community) label = remap[label];
  return next;
}

WorkGraph coarsen(const WorkGraph& graph,
                  const std::vector<std::uint32_t>& community,
                  std::uint32_t n_communities) {
  WorkGraph coarse;
  coarse.n = n_communities;
  coarse.adjacency.resize(n_communities);
  coarse.self_loop.assign(n_communities, 0.0);
  coarse.degree.assign(n_communities, 0.0);

  std::map<std::pair<std::uint32_t, std::uint32_t>, double> merged;
  for (std::uint32_t v = 0; v < graph.n; ++v) {
    coarse.self_loop[community[v]] += graph.self_loop[v];
    for (const auto& [u, w] : graph.adjacency[v]) {
      if (u < v) continue;  // each undirected edge once
      const std::uint32_t cu = community[u];
      const std::uint32_t cv = community[v];
      if (cu == cv) {
        coarse.self_loop[cu] += w;
      } else {
        merged[{std::min(cu, cv), std::max(cu, cv)}] += w;
      }
    }
  }
  for (const auto& [key, w] : merged) {
    coarse.adjacency[key.first].emplace_back(key.second, w);
    coarse.adjacency[key.second].emplace_back(key.first, w);
    coarse.degree[key.first] += w;
    coarse.degree[key.second] += w;
    coarse.two_m += 2.0 * w;
  }
  for (std::uint32_t c = 0; c < n_communities; ++c)
    coarse.two_m += 2.0 * coarse.self_loop[c];
  return coarse;
}

}  // namespace

double CoOccurrenceGraph::total_weight() const {
  double total = 0.0;
  for (const auto& [key, weight] : edges) total += weight;
  return total;
}

CoOccurrenceGraph build_graph(
    std::span<const GeoTaggedRecord> records,
    const std::unordered_set<std::string>& vocabulary) {
  std::set<std::string> seen;
  std::vector<std::set<std::string>> record_words;
  record_words.reserve(records.size());
  for (const auto& record : records) {
    std::set<std::string> words;
    for (const auto& raw : record.tags) {
      std::string tag = normalize_tag(raw);
      if (!tag.empty() && vocabulary.count(tag)) words.insert(std::move(tag));
    }
    for (const auto& w : words) seen.insert(w);
    record_words.push_back(std::move(words));
  }

  CoOccurrenceGraph graph;
  graph.nodes.assign(seen.begin(), seen.end());
  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < graph.nodes.size(); ++i)
    index.emplace(graph.nodes[i], i);

  for (const auto& words : record_words) {
    std::vector<std::uint32_t> ids;
    ids.reserve(words.size());
    for (const auto& w : words) ids.push_back(index.at(w));
    for (std::size_t a = 0; a < ids.size(); ++a)
      for (std::size_t b = a + 1; b < ids.size(); ++b)
        graph.edges[{std::min(ids[a], ids[b]), std::max(ids[a], ids[b])}] += 1.0;
  }
  return graph;
}

std::vector<std::uint32_t> cluster(const CoOccurrenceGraph& graph,
                                   double resolution, std::uint64_t seed) {
  (void)seed;
  if (graph.size() == 0) throw Error(errc::empty_graph, "no nodes");

  WorkGraph work = WorkGraph::from(graph);
  // Isolated nodes or an edgeless graph: every node is its own community.
  std::vector<std::uint32_t> assignment(graph.size());
  std::iota(assignment.begin(), assignment.end(), 0u);
  if (work.two_m == 0.0) return assignment;

  // mapping[v] = community of original node v in the current coarse graph
  std::vector<std::uint32_t> mapping = assignment;
  while (true) {
    std::vector<std::uint32_t> community(work.n);
    std::iota(community.begin(), community.end(), 0u);
    const bool improved = local_moves(work, resolution, community);
    const std::uint32_t n_communities = compact_labels(community);
    for (auto& m : mapping) m = community[m];
    if (!improved || n_communities == work.n) break;
    work = coarsen(work, community, n_communities);
  }
  compact_labels(mapping);
  return mapping;
}

double modularity(const CoOccurrenceGraph& graph,
                  std::span<const std::uint32_t> partition, double resolution) {
  if (graph.size() == 0) throw Error(errc::empty_graph, "no nodes");
  const double m = graph.total_weight();
  if (m == 0.0) return 0.0;

  std::map<std::uint32_t, double> intra;
  std::map<std::uint32_t, double> total;
  std::vector<double> degree(graph.size(), 0.0);
  for (const auto& [key, w] : graph.edges) {
    degree[key.first] += w;
    degree[key.second] += w;
    if (partition[key.first] == partition[key.second])
      intra[partition[key.first]] += w;
  }
  for (std::size_t v = 0; v < graph.size(); ++v)
    total[partition[v]] += degree[v];

  double q = 0.0;
  for (const auto& [c, tot] : total) {
    const double in_c = intra.count(c) ? intra.at(c) : 0.0;
    q += in_c / m - resolution * (tot / (2.0 * m)) * (tot / (2.0 * m));
  }
  return q;
}

}  // namespace smellscape::taxonomy
