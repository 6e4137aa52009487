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

// Edge-list text format:
//
//   # t=<horizon>
//   # p=<p>
//   # r=<r>
//   # t0=<t0>
//   # seed_graph=<kind:t0[:u-v,...]>
//   # master_seed=<u64>
//   # rng_algo=<id>
//   u v            (1-indexed, u < v, sorted by (u, v), one per line)
//
// Reals use the shortest decimal form that round-trips.

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "ddgraph/error.hpp"
#include "ddgraph/graph.hpp"
#include "ddgraph/params.hpp"
#include "ddgraph/random.hpp"

namespace ddgraph {

inline std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

inline void write_edge_list(std::ostream& out, const Graph& g, const DDParams& params,
                            std::uint64_t master_seed,
                            std::string_view rng_algo = kRngAlgorithm) {
  out << "# t=" << params.horizon_t << '\n'
      << "# p=" << format_real(params.p) << '\n'
      << "# r=" << format_real(params.r) << '\n'
      << "# t0=" << params.t0 << '\n'
      << "# seed_graph=" << format_seed_graph(params.seed_graph, params.t0) << '\n'
      << "# master_seed=" << master_seed << '\n'
      << "# rng_algo=" << rng_algo << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

struct EdgeListFile {
  std::map<std::string, std::string> header;
  Graph graph;
};

/// Parses the format above. The vertex count comes from the `t` header key
/// when present, otherwise from the largest label seen.
inline EdgeListFile read_edge_list(std::istream& in) {
  EdgeListFile out;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::string line;
  std::size_t line_no = 0;
  Vertex largest = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto key_begin = line.find_first_not_of(" #");
      out.header[line.substr(key_begin, eq - key_begin)] = line.substr(eq + 1);
      continue;
    }
    std::istringstream fields(line);
    Vertex u = 0, v = 0;
    if (!(fields >> u >> v) || u == 0 || v == 0) {
      throw ValidationError("edge list line " + std::to_string(line_no) +
                            ": expected two positive labels");
    }
    edges.emplace_back(u, v);
    largest = std::max({largest, u, v});
  }
  Vertex n = largest;
  if (auto it = out.header.find("t"); it != out.header.end()) {
    n = detail::parse_label(it->second, "t");
    detail::require(n >= largest, "edge label exceeds header t");
  }
  out.graph.reset(n);
  for (auto [u, v] : edges) out.graph.add_edge(u, v);
  return out;
}

}  // namespace ddgraph
