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

// Exact distribution of a statistic of G_t by exhaustive enumeration.
//
// A weighted depth-first walk over every parent choice and every edge coin,
// run on a bitmask copy of the graph. It shares no code with grow_step, so
// it can serve as an oracle for both the sampler and the recurrences.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ddgraph/error.hpp"
#include "ddgraph/experiments.hpp"
#include "ddgraph/generator.hpp"
#include "ddgraph/params.hpp"
#include "ddgraph/theory.hpp"

namespace ddgraph {

struct ExactDistribution {
  std::vector<double> support;        // increasing
  std::vector<double> probabilities;  // aligned with support

  double total() const {
    detail::CompensatedSum s;
    for (double q : probabilities) s.add(q);
    return s.value();
  }
  double mean() const {
    detail::CompensatedSum m;
    for (std::size_t i = 0; i < support.size(); ++i) m.add(support[i] * probabilities[i]);
    return m.value();
  }
  double probability_of(double value) const {
    for (std::size_t i = 0; i < support.size(); ++i)
      if (support[i] == value) return probabilities[i];
    return 0.0;
  }
};

inline constexpr double kDefaultEnumerationLimit = 1e8;

/// Upper bound on the number of leaves in the outcome tree: each step i
/// contributes i parents times 2^i coin patterns when any coin is fair.
inline double enumeration_size(const DDParams& params) {
  double leaves = 1.0;
  const bool p_random = params.p > 0.0 && params.p < 1.0;
  for (std::uint64_t i = params.t0; i < params.horizon_t; ++i) {
    const double r_prob = params.r / static_cast<double>(i);
    const bool random_coins = p_random || (r_prob > 0.0 && r_prob < 1.0);
    leaves *= static_cast<double>(i) * (random_coins ? std::ldexp(1.0, static_cast<int>(i)) : 1.0);
  }
  return leaves;
}

namespace detail {

class Enumerator {
 public:
  Enumerator(const DDParams& params, const StatisticSpec& stat)
      : params_(params), stat_(stat) {}

  void run(std::map<double, CompensatedSum>& out) {
    out_ = &out;
    const Graph seed = make_seed_graph(params_.seed_graph, params_.t0);
    n_ = seed.order();
    for (auto [u, v] : seed.edges()) {
      adj_[u - 1] |= std::uint64_t{1} << (v - 1);
      adj_[v - 1] |= std::uint64_t{1} << (u - 1);
    }
    grow(1.0, 0);
  }

 private:
  // Expands one step: the newcomer's arrival degree is only needed at t.
  void grow(double weight, int arrival) {
    if (n_ == params_.horizon_t) {
      (*out_)[statistic(arrival)].add(weight);
      return;
    }
    const unsigned i = n_;
    for (unsigned u = 0; u < i; ++u) coins(weight / i, u, 0, 0);
  }

  void coins(double weight, unsigned parent, unsigned v, std::uint64_t mask) {
    const unsigned i = n_;
    if (v == i) {
      attach(mask);
      grow(weight, std::popcount(mask));
      detach(mask);
      return;
    }
    const bool neighbor = (adj_[parent] >> v) & 1U;
    const double q = neighbor ? params_.p : params_.r / static_cast<double>(i);
    if (q < 1.0) coins(weight * (1.0 - q), parent, v + 1, mask);
    if (q > 0.0) coins(weight * q, parent, v + 1, mask | (std::uint64_t{1} << v));
  }

  void attach(std::uint64_t mask) {
    adj_[n_] = mask;
    for (unsigned v = 0; v < n_; ++v)
      if ((mask >> v) & 1U) adj_[v] |= std::uint64_t{1} << n_;
    ++n_;
  }

  void detach(std::uint64_t mask) {
    --n_;
    for (unsigned v = 0; v < n_; ++v)
      if ((mask >> v) & 1U) adj_[v] &= ~(std::uint64_t{1} << n_);
    adj_[n_] = 0;
  }

  double statistic(int arrival) const {
    int max_deg = 0;
    long twice_edges = 0;
    for (unsigned v = 0; v < n_; ++v) {
      const int d = std::popcount(adj_[v]);
      max_deg = std::max(max_deg, d);
      twice_edges += d;
    }
    switch (stat_.kind) {
      case Statistic::max_degree: return max_deg;
      case Statistic::avg_degree:
        return static_cast<double>(twice_edges) / static_cast<double>(n_);
      case Statistic::vertex_degree: return std::popcount(adj_[stat_.vertex - 1]);
      case Statistic::arrival_degree:
        return n_ > params_.t0 ? arrival : std::popcount(adj_[n_ - 1]);
      case Statistic::edge_count: return static_cast<double>(twice_edges / 2);
    }
    return 0.0;
  }

  DDParams params_;
  StatisticSpec stat_;
  std::map<double, CompensatedSum>* out_ = nullptr;
  std::array<std::uint64_t, 64> adj_{};
  unsigned n_ = 0;
};

}  // namespace detail

inline ExactDistribution enumerate_exact(const DDParams& params, const StatisticSpec& stat,
                                         double max_leaves = kDefaultEnumerationLimit) {
  validate(params);
  detail::require(params.horizon_t <= 64, "enumeration supports at most 64 vertices");
  if (stat.kind == Statistic::vertex_degree) {
    detail::require(stat.vertex >= 1 && stat.vertex <= params.horizon_t,
                    "tracked vertex must lie in [1, t]");
  }
  const double size = enumeration_size(params);
  if (size > max_leaves) {
    throw ResourceError("exhaustive enumeration would visit up to " + std::to_string(size) +
                        " outcomes, above the guard of " + std::to_string(max_leaves) +
                        " (product over steps of i parents x 2^i coin patterns)");
  }
  std::map<double, detail::CompensatedSum> mass;
  detail::Enumerator(params, stat).run(mass);
  ExactDistribution out;
  for (const auto& [value, prob] : mass) {
    out.support.push_back(value);
    out.probabilities.push_back(prob.value());
  }
  return out;
}

}  // namespace ddgraph
