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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ddgraph/error.hpp"
#include "ddgraph/params.hpp"

namespace ddgraph {

// Simple undirected graph on vertices 1..n that only ever grows by appending
// a vertex together with all of its edges.
//
// Neighbor lists are kept sorted without any explicit sorting pass: a new
// vertex arrives with a sorted list, and it is appended to its neighbors'
// lists as their largest label. Storage for the lists survives reset() so a
// worker can reuse one Graph across replications.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::uint32_t n) { reset(n); }

  /// Drops all edges and resizes to n isolated vertices.
  void reset(std::uint32_t n) {
    for (std::uint32_t v = 1; v <= n_ && v < lists_.size(); ++v) lists_[v].clear();
    if (lists_.size() < static_cast<std::size_t>(n) + 1) lists_.resize(n + 1);
    for (std::uint32_t v = n_ + 1; v <= n; ++v) lists_[v].clear();
    degrees_.assign(static_cast<std::size_t>(n) + 1, 0);
    n_ = n;
    edges_ = 0;
    max_degree_ = 0;
  }

  std::uint32_t order() const noexcept { return n_; }
  std::uint64_t edge_count() const noexcept { return edges_; }
  std::uint32_t max_degree() const noexcept { return max_degree_; }

  std::uint32_t degree(Vertex v) const { return degrees_[v]; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {lists_[v].data(), lists_[v].size()};
  }

  /// Degrees of 1..n; element v-1 belongs to vertex v.
  std::span<const std::uint32_t> degree_array() const {
    return std::span<const std::uint32_t>(degrees_).subspan(1, n_);
  }

  bool has_edge(Vertex u, Vertex v) const {
    if (u == v || u == 0 || v == 0 || u > n_ || v > n_) return false;
    const auto& a = lists_[u].size() <= lists_[v].size() ? lists_[u] : lists_[v];
    const Vertex needle = &a == &lists_[u] ? v : u;
    return std::binary_search(a.begin(), a.end(), needle);
  }

  /// Inserts an edge between existing vertices. O(deg) per call; intended for
  /// building seed graphs, not for the growth loop.
  void add_edge(Vertex u, Vertex v) {
    detail::require(u >= 1 && v >= 1 && u <= n_ && v <= n_,
                    "edge endpoint outside [1, n]");
    detail::require(u != v, "self-loops are not allowed");
    detail::require(!has_edge(u, v), "duplicate edge");
    insert_sorted(lists_[u], v);
    insert_sorted(lists_[v], u);
    bump(u);
    bump(v);
    ++edges_;
  }

  /// Appends vertex n+1 adjacent to `sorted_neighbors` (strictly increasing
  /// labels in [1, n]) and returns its label.
  Vertex add_vertex(std::span<const Vertex> sorted_neighbors) {
    const Vertex fresh = n_ + 1;
    if (lists_.size() <= fresh) lists_.resize(static_cast<std::size_t>(fresh) + 1);
    auto& own = lists_[fresh];
    own.assign(sorted_neighbors.begin(), sorted_neighbors.end());
    degrees_.push_back(static_cast<std::uint32_t>(own.size()));
    for (Vertex v : sorted_neighbors) {
      lists_[v].push_back(fresh);
      bump(v);
    }
    n_ = fresh;
    edges_ += own.size();
    max_degree_ = std::max(max_degree_, degrees_[fresh]);
    return fresh;
  }

  /// All edges as (u, v) with u < v, sorted lexicographically.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges_);
    for (Vertex u = 1; u <= n_; ++u) {
      const auto& list = lists_[u];
      for (auto it = std::upper_bound(list.begin(), list.end(), u);
           it != list.end(); ++it) {
        out.emplace_back(u, *it);
      }
    }
    return out;
  }

  /// Describes the first broken structural invariant (sortedness, simplicity,
  /// symmetry, degree bookkeeping, handshake), or nullopt if all hold.
  std::optional<std::string> check_invariants() const {
    std::uint64_t degree_sum = 0;
    std::uint32_t max_seen = 0;
    // Scanning v upward, the entries equal to v in each list are met in
    // order, so one cursor per vertex checks symmetry in linear time.
    std::vector<std::uint32_t> cursor(static_cast<std::size_t>(n_) + 1, 0);
    for (Vertex v = 1; v <= n_; ++v) {
      const auto& list = lists_[v];
      if (degrees_[v] != list.size())
        return "degree array disagrees with adjacency at vertex " + std::to_string(v);
      for (std::size_t i = 0; i < list.size(); ++i) {
        const Vertex w = list[i];
        if (w == v) return "self-loop at vertex " + std::to_string(v);
        if (w < 1 || w > n_) return "neighbor label out of range at vertex " + std::to_string(v);
        if (i > 0 && list[i - 1] >= w)
          return "neighbor list of " + std::to_string(v) + " is unsorted or has a multi-edge";
        const auto& back = lists_[w];
        if (cursor[w] >= back.size() || back[cursor[w]] != v)
          return "asymmetric edge {" + std::to_string(v) + "," + std::to_string(w) + "}";
        ++cursor[w];
      }
      degree_sum += list.size();
      max_seen = std::max<std::uint32_t>(max_seen, degrees_[v]);
    }
    for (Vertex w = 1; w <= n_; ++w) {
      if (cursor[w] != lists_[w].size())
        return "vertex " + std::to_string(w) + " lists a neighbor that does not list it back";
    }
    if (degree_sum != 2 * edges_) return std::string("handshake violated");
    if (max_seen != max_degree_) return std::string("cached max degree is stale");
    return std::nullopt;
  }

 private:
  static void insert_sorted(std::vector<Vertex>& list, Vertex v) {
    list.insert(std::lower_bound(list.begin(), list.end(), v), v);
  }

  void bump(Vertex v) {
    if (++degrees_[v] > max_degree_) max_degree_ = degrees_[v];
  }

  std::uint32_t n_ = 0;
  std::uint64_t edges_ = 0;
  std::uint32_t max_degree_ = 0;
  std::vector<std::vector<Vertex>> lists_;
  std::vector<std::uint32_t> degrees_{0};
};

struct GraphStats {
  std::uint32_t max_degree = 0;
  double avg_degree = 0.0;
  // histogram[k] = number of vertices of degree k
  std::vector<std::uint64_t> degree_histogram;
  std::uint64_t edge_count = 0;
};

inline double average_degree(const Graph& g) {
  return g.order() == 0 ? 0.0
                        : 2.0 * static_cast<double>(g.edge_count()) /
                              static_cast<double>(g.order());
}

inline GraphStats stats(const Graph& g) {
  GraphStats out;
  out.max_degree = g.max_degree();
  out.edge_count = g.edge_count();
  out.avg_degree = average_degree(g);
  out.degree_histogram.assign(static_cast<std::size_t>(g.max_degree()) + 1, 0);
  for (std::uint32_t d : g.degree_array()) ++out.degree_histogram[d];
  return out;
}

}  // namespace ddgraph
