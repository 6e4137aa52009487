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

// Deterministic expectation curves for DD(t, p, r).
//
// Conditioned on G_tau, vertex s gains an edge at step tau -> tau+1 with
// probability (p deg + r)/tau - r deg/tau^2, and the newcomer's expected
// degree is p D + r - r D/tau where D is the current average degree. Both are
// affine in the conditioning quantity, so iterating them on expectations is
// exact, not an approximation.

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ddgraph/error.hpp"
#include "ddgraph/generator.hpp"
#include "ddgraph/params.hpp"

namespace ddgraph {

enum class CurveStat { vertex_degree, avg_degree, arrival_degree };

inline std::string_view to_string(CurveStat stat) {
  switch (stat) {
    case CurveStat::vertex_degree: return "vertex_degree";
    case CurveStat::avg_degree: return "avg_degree";
    case CurveStat::arrival_degree: return "arrival_degree";
  }
  return "unknown";
}

struct ExpectationCurve {
  CurveStat stat = CurveStat::avg_degree;
  Vertex vertex = 0;  // only for vertex_degree
  DDParams params;
  std::vector<std::uint64_t> grid;  // strictly increasing
  std::vector<double> values;

  /// Value at grid time tau, or NaN if tau is not on the grid.
  double at(std::uint64_t tau) const {
    const auto it = std::lower_bound(grid.begin(), grid.end(), tau);
    if (it == grid.end() || *it != tau) return std::numeric_limits<double>::quiet_NaN();
    return values[static_cast<std::size_t>(it - grid.begin())];
  }
  double back() const { return values.back(); }
};

enum class GridMode { geometric, dense };

struct GridOptions {
  GridMode mode = GridMode::geometric;
  double ratio = 1.01;  // geometric spacing factor
  static constexpr std::uint64_t kDenseLimit = 1'000'000;
};

namespace detail {

// Neumaier summation; keeps long recurrences within a few ulps.
class CompensatedSum {
 public:
  explicit CompensatedSum(double start = 0.0) : sum_(start) {}
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Decides which tau to keep: every tau in dense mode, otherwise the first
// tau past each power of `ratio`, plus both endpoints.
class GridSampler {
 public:
  GridSampler(const GridOptions& options, std::uint64_t start, std::uint64_t end)
      : options_(options), end_(end), mark_(static_cast<double>(start)) {
    detail::require(options.ratio > 1.0, "geometric grid ratio must exceed 1");
    if (options.mode == GridMode::dense && end - start + 1 > GridOptions::kDenseLimit) {
      throw ResourceError("dense curve grid limited to " +
                          std::to_string(GridOptions::kDenseLimit) + " points");
    }
  }

  bool keep(std::uint64_t tau) {
    if (options_.mode == GridMode::dense || tau == end_) return true;
    if (static_cast<double>(tau) < mark_) return false;
    while (mark_ <= static_cast<double>(tau)) mark_ *= options_.ratio;
    return true;
  }

 private:
  GridOptions options_;
  std::uint64_t end_;
  double mark_;
};

}  // namespace detail

/// Degree of s in the seed graph (s <= t0).
inline double seed_degree(const DDParams& params, Vertex s) {
  const Graph seed = make_seed_graph(params.seed_graph, params.t0);
  detail::require(s >= 1 && s <= params.t0, "vertex is not part of the seed graph");
  return seed.degree(s);
}

inline double seed_average_degree(const DDParams& params) {
  return average_degree(make_seed_graph(params.seed_graph, params.t0));
}

/// E[deg_tau(s)] for tau = max(s, t0) .. t, starting from `initial_degree`
/// at the first time.
inline ExpectationCurve expected_vertex_degree(const DDParams& params, Vertex s,
                                               double initial_degree, std::uint64_t t,
                                               const GridOptions& grid = {}) {
  detail::require(s >= 1, "vertex labels start at 1");
  detail::require(initial_degree >= 0.0, "initial degree must be non-negative");
  const std::uint64_t start = std::max<std::uint64_t>(s, params.t0);
  detail::require(t >= start, "horizon precedes the curve start max(s, t0)");

  ExpectationCurve curve;
  curve.stat = CurveStat::vertex_degree;
  curve.vertex = s;
  curve.params = params;
  detail::GridSampler sampler(grid, start, t);
  detail::CompensatedSum degree(initial_degree);
  if (sampler.keep(start)) {
    curve.grid.push_back(start);
    curve.values.push_back(initial_degree);
  }
  for (std::uint64_t tau = start; tau < t; ++tau) {
    const double x = degree.value();
    const double ft = static_cast<double>(tau);
    degree.add(x * (params.p / ft - params.r / (ft * ft)) + params.r / ft);
    if (sampler.keep(tau + 1)) {
      curve.grid.push_back(tau + 1);
      curve.values.push_back(degree.value());
    }
  }
  return curve;
}

struct AvgDegreeCurves {
  ExpectationCurve avg_degree;      // E[D(G_tau)], tau = t0 .. t
  ExpectationCurve arrival_degree;  // E[deg_tau(tau)], tau = t0+1 .. t
};

/// Joint recurrence for E[D(G_tau)] and the newcomer's expected degree,
/// seeded with average degree d0 at tau = t0.
inline AvgDegreeCurves expected_avg_degree(const DDParams& params, double d0, std::uint64_t t,
                                           const GridOptions& grid = {}) {
  detail::require(d0 >= 0.0, "seed average degree must be non-negative");
  detail::require(t >= params.t0, "horizon precedes t0");
  AvgDegreeCurves out;
  out.avg_degree.stat = CurveStat::avg_degree;
  out.arrival_degree.stat = CurveStat::arrival_degree;
  out.avg_degree.params = out.arrival_degree.params = params;

  const std::uint64_t start = params.t0;
  detail::GridSampler sampler(grid, start, t);
  // Track the expected edge count; the average degree is 2 m / tau.
  detail::CompensatedSum edges(d0 * static_cast<double>(start) / 2.0);
  if (sampler.keep(start)) {
    out.avg_degree.grid.push_back(start);
    out.avg_degree.values.push_back(d0);
  }
  for (std::uint64_t tau = start; tau < t; ++tau) {
    const double ft = static_cast<double>(tau);
    const double avg = 2.0 * edges.value() / ft;
    const double arrival = params.p * avg + params.r - params.r * avg / ft;
    edges.add(arrival);
    if (sampler.keep(tau + 1)) {
      out.avg_degree.grid.push_back(tau + 1);
      out.avg_degree.values.push_back(2.0 * edges.value() / (ft + 1.0));
      out.arrival_degree.grid.push_back(tau + 1);
      out.arrival_degree.values.push_back(arrival);
    }
  }
  return out;
}

enum class OrderClass { constant, log_t, power, power_times_log, log_ratio };

/// Growth order in t. For vertex degrees `s_exponent` records the power of s
/// in the fixed-s law; it is zero for the average degree.
struct AsymptoticOrder {
  OrderClass cls = OrderClass::constant;
  double exponent = 0.0;
  double s_exponent = 0.0;

  std::string describe() const {
    std::ostringstream out;
    switch (cls) {
      case OrderClass::constant: out << "Theta(1)"; break;
      case OrderClass::log_t: out << "Theta(ln t)"; break;
      case OrderClass::log_ratio: out << "Theta(ln(t/s))"; break;
      case OrderClass::power_times_log: out << "Theta(sqrt(t/s) ln s)"; break;
      case OrderClass::power:
        out << "Theta(t^" << exponent;
        if (s_exponent != 0.0) out << " s^" << s_exponent;
        out << ")";
        break;
    }
    return out.str();
  }
};

inline void validate_rates(double p, double r) {
  detail::require(p >= 0.0 && p <= 1.0, "p must lie in [0, 1]");
  detail::require(r >= 0.0 && std::isfinite(r), "r must be non-negative");
}

/// Order of E[D(G_t)]: Theta(1) for p < 1/2 with r > 0, Theta(ln t) at
/// p = 1/2 with r > 0, Theta(t^{2p-1}) otherwise.
inline AsymptoticOrder classify_avg_degree(double p, double r) {
  validate_rates(p, r);
  if (r > 0.0 && p < 0.5) return {OrderClass::constant, 0.0, 0.0};
  if (r > 0.0 && p == 0.5) return {OrderClass::log_t, 0.0, 0.0};
  return {OrderClass::power, 2.0 * p - 1.0, 0.0};
}

/// Order of E[deg_t(s)] for fixed s.
inline AsymptoticOrder classify_vertex_degree(double p, double r) {
  validate_rates(p, r);
  if (r > 0.0 && p == 0.0) return {OrderClass::log_ratio, 0.0, 0.0};
  if (r > 0.0 && p < 0.5) return {OrderClass::power, p, -p};
  if (r > 0.0 && p == 0.5) return {OrderClass::power_times_log, 0.5, -0.5};
  // (t/s)^p s^{2p-1} = t^p s^{p-1}
  return {OrderClass::power, p, p - 1.0};
}

/// Least-squares slope of ln(value) against ln(tau) over grid points in
/// [tau_lo, tau_hi].
inline double fit_exponent(const ExpectationCurve& curve, std::uint64_t tau_lo,
                           std::uint64_t tau_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const auto tau = curve.grid[i];
    if (tau < tau_lo || tau > tau_hi) continue;
    const double v = curve.values[i];
    detail::require(v > 0.0, "curve value at tau = " + std::to_string(tau) +
                                 " is not strictly positive");
    const double x = std::log(static_cast<double>(tau));
    const double y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  detail::require(n >= 10, "need at least 10 grid points in the fit window, found " +
                               std::to_string(n));
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

/// CSV with header "tau,value" and 17 significant digits.
inline void write_curve_csv(std::ostream& out, const ExpectationCurve& curve) {
  out << "tau,value\n";
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << curve.grid[i] << ',' << curve.values[i] << '\n';
  }
  out.precision(old_precision);
}

inline ExpectationCurve read_curve_csv(std::istream& in) {
  ExpectationCurve curve;
  std::string line;
  detail::require(static_cast<bool>(std::getline(in, line)) && line == "tau,value",
                  "curve CSV must start with the header 'tau,value'");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    detail::require(comma != std::string::npos, "malformed curve CSV row '" + line + "'");
    curve.grid.push_back(std::stoull(line.substr(0, comma)));
    curve.values.push_back(std::stod(line.substr(comma + 1)));
  }
  return curve;
}

}  // namespace ddgraph
