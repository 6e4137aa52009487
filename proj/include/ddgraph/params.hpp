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
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddgraph/error.hpp"

namespace ddgraph {

/// Vertex labels are arrival ranks starting at 1.
using Vertex = std::uint32_t;

enum class SeedGraphKind { complete, path, cycle, empty, explicit_edges };

struct SeedGraphSpec {
  SeedGraphKind kind = SeedGraphKind::complete;
  // Only read when kind == explicit_edges. Labels in [1, t0].
  std::vector<std::pair<Vertex, Vertex>> explicit_edges;
};

/// Parameters of the duplication-divergence process DD(t, p, r).
struct DDParams {
  double p = 0.5;
  double r = 0.0;
  std::uint32_t t0 = 2;
  SeedGraphSpec seed_graph{};
  std::uint32_t horizon_t = 2;
};

inline std::string_view to_string(SeedGraphKind kind) {
  switch (kind) {
    case SeedGraphKind::complete: return "complete";
    case SeedGraphKind::path: return "path";
    case SeedGraphKind::cycle: return "cycle";
    case SeedGraphKind::empty: return "empty";
    case SeedGraphKind::explicit_edges: return "explicit";
  }
  return "unknown";
}

inline void validate_seed(const SeedGraphSpec& seed, std::uint32_t t0) {
  detail::require(t0 >= 1, "t0 must be >= 1");
  if (seed.kind != SeedGraphKind::explicit_edges) return;
  std::vector<std::pair<Vertex, Vertex>> seen;
  seen.reserve(seed.explicit_edges.size());
  for (auto [u, v] : seed.explicit_edges) {
    detail::require(u >= 1 && u <= t0 && v >= 1 && v <= t0,
                    "explicit seed edge {" + std::to_string(u) + "," +
                        std::to_string(v) + "} has an endpoint outside [1, " +
                        std::to_string(t0) + "]");
    detail::require(u != v, "explicit seed edge is a self-loop at " +
                                std::to_string(u));
    seen.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(seen.begin(), seen.end());
  const auto dup = std::adjacent_find(seen.begin(), seen.end());
  detail::require(dup == seen.end(),
                  dup == seen.end()
                      ? std::string{}
                      : "explicit seed edge {" + std::to_string(dup->first) +
                            "," + std::to_string(dup->second) +
                            "} appears twice");
}

inline void validate(const DDParams& params) {
  detail::require(std::isfinite(params.p) && params.p >= 0.0 && params.p <= 1.0,
                  "p must lie in [0, 1]");
  detail::require(std::isfinite(params.r) && params.r >= 0.0,
                  "r must be non-negative");
  detail::require(params.r <= static_cast<double>(params.t0),
                  "r must not exceed t0 (r/i is a probability for i >= t0)");
  detail::require(params.horizon_t >= params.t0, "horizon t must be >= t0");
  validate_seed(params.seed_graph, params.t0);
}

/// Renders the seed as "kind:t0", or "explicit:t0:u-v,u-v" for edge lists.
inline std::string format_seed_graph(const SeedGraphSpec& seed,
                                     std::uint32_t t0) {
  std::string out(to_string(seed.kind));
  out += ':';
  out += std::to_string(t0);
  if (seed.kind == SeedGraphKind::explicit_edges) {
    out += ':';
    for (std::size_t i = 0; i < seed.explicit_edges.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(seed.explicit_edges[i].first);
      out += '-';
      out += std::to_string(seed.explicit_edges[i].second);
    }
  }
  return out;
}

namespace detail {

inline std::uint32_t parse_label(std::string_view text, std::string_view what) {
  std::uint32_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  require(ec == std::errc{} && ptr == end && !text.empty(),
          "cannot parse " + std::string(what) + " from '" + std::string(text) +
              "'");
  return value;
}

}  // namespace detail

struct ParsedSeed {
  SeedGraphSpec spec;
  std::uint32_t t0 = 2;
};

/// Inverse of format_seed_graph. Throws ValidationError on malformed text.
inline ParsedSeed parse_seed_graph(std::string_view text) {
  const auto colon = text.find(':');
  detail::require(colon != std::string_view::npos,
                  "seed graph must look like kind:t0, got '" +
                      std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon);
  std::string_view rest = text.substr(colon + 1);
  ParsedSeed out;
  if (kind == "complete") {
    out.spec.kind = SeedGraphKind::complete;
  } else if (kind == "path") {
    out.spec.kind = SeedGraphKind::path;
  } else if (kind == "cycle") {
    out.spec.kind = SeedGraphKind::cycle;
  } else if (kind == "empty") {
    out.spec.kind = SeedGraphKind::empty;
  } else if (kind == "explicit") {
    out.spec.kind = SeedGraphKind::explicit_edges;
  } else {
    throw ValidationError("unknown seed graph kind '" + std::string(kind) +
                          "'");
  }
  std::string_view edges;
  if (out.spec.kind == SeedGraphKind::explicit_edges) {
    const auto second = rest.find(':');
    if (second != std::string_view::npos) {
      edges = rest.substr(second + 1);
      rest = rest.substr(0, second);
    }
  }
  out.t0 = detail::parse_label(rest, "t0");
  while (!edges.empty()) {
    const auto comma = edges.find(',');
    const std::string_view item = edges.substr(0, comma);
    const auto dash = item.find('-');
    detail::require(dash != std::string_view::npos,
                    "explicit edge must look like u-v, got '" +
                        std::string(item) + "'");
    out.spec.explicit_edges.emplace_back(
        detail::parse_label(item.substr(0, dash), "edge endpoint"),
        detail::parse_label(item.substr(dash + 1), "edge endpoint"));
    edges = comma == std::string_view::npos ? std::string_view{}
                                            : edges.substr(comma + 1);
  }
  validate_seed(out.spec, out.t0);
  return out;
}

}  // namespace ddgraph
