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

// Generalized hypergeometric series pFq evaluated by partial sums.
//
// Terms are carried as (log magnitude, sign) so the rising factorials never
// overflow before the ratio to the running sum becomes small.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ddgraph/error.hpp"

namespace ddgraph {

struct SeriesOptions {
  double relative_tolerance = 1e-14;
  std::uint64_t max_terms = 1'000'000;
};

struct SeriesResult {
  double value = 0.0;
  std::uint64_t terms = 0;
};

namespace detail {

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

}  // namespace detail

/// Sums (a_1)_l ... (a_p)_l / ((b_1)_l ... (b_q)_l) z^l / l! for z in [0, 1].
/// `on_partial_sum(l, sum)` is called after each term is added.
template <class Visitor>
SeriesResult hypergeometric_pfq(std::span<const double> a, std::span<const double> b,
                                double z, Visitor&& on_partial_sum,
                                const SeriesOptions& options = {}) {
  detail::require(z >= 0.0 && z <= 1.0, "hypergeometric argument must lie in [0, 1]");
  for (double bj : b) {
    if (detail::is_nonpositive_integer(bj)) {
      throw PoleError("lower parameter " + std::to_string(bj) +
                      " is a non-positive integer");
    }
  }
  SeriesResult out{1.0, 1};
  on_partial_sum(std::uint64_t{0}, 1.0);
  if (z == 0.0) return out;

  if (z == 1.0 && a.size() == b.size() + 1) {
    double excess = 0.0;
    for (double bj : b) excess += bj;
    for (double ai : a) excess -= ai;
    bool terminates = false;
    for (double ai : a) terminates = terminates || detail::is_nonpositive_integer(ai);
    if (excess <= 0.0 && !terminates) {
      throw ConvergenceError("series diverges at z = 1 (sum(b) - sum(a) = " +
                             std::to_string(excess) + " <= 0)");
    }
  }

  const double log_z = std::log(z);
  double log_term = 0.0;
  double sign = 1.0;
  double sum = 1.0;
  for (std::uint64_t l = 0;; ++l) {
    if (out.terms >= options.max_terms) {
      throw ConvergenceError("hypergeometric series did not converge within " +
                             std::to_string(options.max_terms) + " terms");
    }
    const double dl = static_cast<double>(l);
    for (double ai : a) {
      const double f = ai + dl;
      if (f == 0.0) {
        out.value = sum;
        return out;  // terminating series
      }
      log_term += std::log(std::fabs(f));
      if (f < 0.0) sign = -sign;
    }
    for (double bj : b) {
      const double f = bj + dl;
      log_term -= std::log(std::fabs(f));
      if (f < 0.0) sign = -sign;
    }
    log_term += log_z - std::log(dl + 1.0);
    const double term = sign * std::exp(log_term);
    sum += term;
    ++out.terms;
    on_partial_sum(l + 1, sum);
    if (std::fabs(term) < options.relative_tolerance * std::fabs(sum)) break;
  }
  out.value = sum;
  return out;
}

inline double hypergeometric_3f2(double a1, double a2, double a3, double b1, double b2,
                                 double z, const SeriesOptions& options = {}) {
  const double a[] = {a1, a2, a3};
  const double b[] = {b1, b2};
  return hypergeometric_pfq(a, b, z, [](std::uint64_t, double) {}, options).value;
}

}  // namespace ddgraph
