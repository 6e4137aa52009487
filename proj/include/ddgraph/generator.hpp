// Copyright 2026 The ddgraph Authors
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

// The duplication-divergence growth process.
//
// Step i -> i+1: pick a parent u uniformly from 1..i, link the newcomer to
// each neighbor of u with probability p (p-edges) and to each non-neighbor
// of u, u itself included, with probability r/i (r-edges). The p-edges cost
// one coin per neighbor of u. The r-edge count is drawn as
// Binomial(i - deg(u), r/i) and the endpoints are then chosen uniformly among
// the non-neighbors, so a step costs O(deg(u) + r + 1) in expectation rather
// than O(i).

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ddgraph/error.hpp"
#include "ddgraph/graph.hpp"
#include "ddgraph/params.hpp"
#include "ddgraph/random.hpp"

namespace ddgraph {

struct GrowthStepRecord {
  Vertex new_vertex = 0;
  Vertex parent = 0;
  std::vector<Vertex> p_edges;  // sorted, subset of N(parent)
  std::vector<Vertex> r_edges;  // sorted, disjoint from N(parent)
  std::vector<Vertex> neighbors;  // sorted union of the two
};

struct GenerateOptions {
  // Refuse runs whose expected final edge count exceeds this.
  std::uint64_t max_edges = 200'000'000;
};

/// Rebuilds g in place as the seed graph; g's list storage is reused.
inline void build_seed_into(Graph& g, const SeedGraphSpec& spec, std::uint32_t t0) {
  validate_seed(spec, t0);
  g.reset(t0);
  switch (spec.kind) {
    case SeedGraphKind::complete:
      for (Vertex u = 1; u <= t0; ++u)
        for (Vertex v = u + 1; v <= t0; ++v) g.add_edge(u, v);
      break;
    case SeedGraphKind::path:
      for (Vertex u = 1; u < t0; ++u) g.add_edge(u, u + 1);
      break;
    case SeedGraphKind::cycle:
      for (Vertex u = 1; u < t0; ++u) g.add_edge(u, u + 1);
      // C_1 and C_2 would need a loop or a multi-edge.
      if (t0 >= 3) g.add_edge(t0, 1);
      break;
    case SeedGraphKind::empty:
      break;
    case SeedGraphKind::explicit_edges:
      for (auto [u, v] : spec.explicit_edges) g.add_edge(u, v);
      break;
  }
}

inline Graph make_seed_graph(const SeedGraphSpec& spec, std::uint32_t t0) {
  Graph g;
  build_seed_into(g, spec, t0);
  return g;
}

/// Expected edge count at the horizon, from the exact mean recurrence
/// E[m_{i+1}] = E[m_i] + p D_i + r - r D_i / i with D_i = 2 m_i / i.
inline double projected_edge_count(const DDParams& params) {
  const Graph seed = make_seed_graph(params.seed_graph, params.t0);
  double edges = static_cast<double>(seed.edge_count());
  for (std::uint64_t i = params.t0; i < params.horizon_t; ++i) {
    const double tau = static_cast<double>(i);
    const double avg = 2.0 * edges / tau;
    edges += params.p * avg + params.r - params.r * avg / tau;
  }
  return edges;
}

inline void check_budget(const DDParams& params, const GenerateOptions& options,
                         std::uint64_t concurrent_graphs = 1) {
  const double projected = projected_edge_count(params);
  if (projected * static_cast<double>(concurrent_graphs) >
      static_cast<double>(options.max_edges)) {
    throw ResourceError(
        "projected edge count " + std::to_string(projected) + " x " +
        std::to_string(concurrent_graphs) + " concurrent graph(s) exceeds budget of " +
        std::to_string(options.max_edges) + " edges");
  }
}

/// Grows g by one vertex and describes the step in `record` (buffers reused).
template <Random64 G>
void grow_step(Graph& g, const DDParams& params, G& rng, GrowthStepRecord& record) {
  const std::uint32_t i = g.order();
  detail::require(i >= 1, "cannot grow an empty vertex set");
  const double r_prob = params.r / static_cast<double>(i);
  if (r_prob > 1.0) {
    throw ValidationError("r/i = " + std::to_string(r_prob) +
                          " exceeds 1 at i = " + std::to_string(i));
  }

  const Vertex parent = static_cast<Vertex>(1 + uniform_below(rng, i));
  const auto nbrs = g.neighbors(parent);
  record.new_vertex = i + 1;
  record.parent = parent;
  record.p_edges.clear();
  record.r_edges.clear();
  record.neighbors.clear();

  if (params.p >= 1.0) {
    record.p_edges.assign(nbrs.begin(), nbrs.end());
  } else if (params.p > 0.0) {
    for (Vertex v : nbrs)
      if (bernoulli(rng, params.p)) record.p_edges.push_back(v);
  }

  const std::uint64_t candidates = i - nbrs.size();
  const std::uint64_t k = binomial(rng, candidates, r_prob);
  if (k > 0) {
    auto& chosen = record.r_edges;
    if (2 * nbrs.size() <= i && 2 * k <= candidates) {
      // Each draw is accepted with probability >= 1/4.
      while (chosen.size() < k) {
        const auto v = static_cast<Vertex>(1 + uniform_below(rng, i));
        if (std::binary_search(nbrs.begin(), nbrs.end(), v)) continue;
        const auto at = std::lower_bound(chosen.begin(), chosen.end(), v);
        if (at != chosen.end() && *at == v) continue;
        chosen.insert(at, v);
      }
    } else {
      std::vector<Vertex> complement;
      complement.reserve(candidates);
      auto it = nbrs.begin();
      for (Vertex v = 1; v <= i; ++v) {
        if (it != nbrs.end() && *it == v) {
          ++it;
        } else {
          complement.push_back(v);
        }
      }
      for (std::uint64_t j = 0; j < k; ++j) {
        const auto pick = j + uniform_below(rng, candidates - j);
        std::swap(complement[j], complement[pick]);
      }
      chosen.assign(complement.begin(), complement.begin() + static_cast<std::ptrdiff_t>(k));
      std::sort(chosen.begin(), chosen.end());
    }
  }

  record.neighbors.resize(record.p_edges.size() + record.r_edges.size());
  std::merge(record.p_edges.begin(), record.p_edges.end(), record.r_edges.begin(),
             record.r_edges.end(), record.neighbors.begin());
  g.add_vertex(record.neighbors);
}

template <Random64 G>
GrowthStepRecord grow_step(Graph& g, const DDParams& params, G& rng) {
  GrowthStepRecord record;
  grow_step(g, params, rng, record);
  return record;
}

/// Runs the process from the seed graph up to params.horizon_t, calling
/// observer(graph, record) after every step.
template <Random64 G, class Observer>
void generate_into(Graph& g, const DDParams& params, G& rng, Observer&& observer,
                   const GenerateOptions& options = {}) {
  validate(params);
  check_budget(params, options);
  build_seed_into(g, params.seed_graph, params.t0);
  GrowthStepRecord record;
  while (g.order() < params.horizon_t) {
    grow_step(g, params, rng, record);
    observer(static_cast<const Graph&>(g), static_cast<const GrowthStepRecord&>(record));
  }
}

template <Random64 G>
Graph generate(const DDParams& params, G& rng, const GenerateOptions& options = {}) {
  Graph g;
  generate_into(g, params, rng, [](const Graph&, const GrowthStepRecord&) {}, options);
  return g;
}

/// deg_tau(s) for tau = max(s, t0) .. horizon_t, read off a full simulation.
template <Random64 G>
std::vector<std::uint32_t> track_degree(const DDParams& params, Vertex s, G& rng,
                                        const GenerateOptions& options = {}) {
  validate(params);
  detail::require(s >= 1 && s <= params.horizon_t,
                  "tracked vertex must lie in [1, horizon t]");
  check_budget(params, options);
  std::vector<std::uint32_t> trajectory;
  trajectory.reserve(params.horizon_t - std::max<std::uint32_t>(s, params.t0) + 1);
  Graph g = make_seed_graph(params.seed_graph, params.t0);
  if (s <= params.t0) trajectory.push_back(g.degree(s));
  GrowthStepRecord record;
  while (g.order() < params.horizon_t) {
    grow_step(g, params, rng, record);
    if (g.order() >= s) trajectory.push_back(g.degree(s));
  }
  return trajectory;
}

}  // namespace ddgraph
