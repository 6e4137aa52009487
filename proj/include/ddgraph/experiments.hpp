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

// Seeded Monte Carlo over independent replications of DD(t, p, r).
//
// Replication j always draws from make_stream(master_seed, j) and writes its
// samples into slot j, and every reduction runs in index order, so results do
// not depend on the number of worker threads.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "ddgraph/bounds.hpp"
#include "ddgraph/edgelist.hpp"
#include "ddgraph/error.hpp"
#include "ddgraph/generator.hpp"
#include "ddgraph/params.hpp"
#include "ddgraph/random.hpp"
#include "ddgraph/theory.hpp"

namespace ddgraph {

inline constexpr std::string_view kVersion = "ddgraph 0.1.0";
inline constexpr std::string_view kStreamDerivation =
    "stream j seeded with splitmix64 mix of (master_seed, j)";
inline constexpr const char* kThreadsEnvVar = "DDGRAPH_THREADS";

enum class Statistic { max_degree, avg_degree, vertex_degree, arrival_degree, edge_count };

struct StatisticSpec {
  Statistic kind = Statistic::max_degree;
  Vertex vertex = 0;  // vertex_degree only

  friend bool operator==(const StatisticSpec&, const StatisticSpec&) = default;

  std::string name() const {
    switch (kind) {
      case Statistic::max_degree: return "max_degree";
      case Statistic::avg_degree: return "avg_degree";
      case Statistic::vertex_degree: return "vertex_degree(" + std::to_string(vertex) + ")";
      case Statistic::arrival_degree: return "arrival_degree";
      case Statistic::edge_count: return "edge_count";
    }
    return "unknown";
  }
};

/// Accepts "max", "avg", "arrival", "edges", "vertex:<s>" and the long
/// names produced by StatisticSpec::name().
inline StatisticSpec parse_statistic(std::string_view text) {
  if (text == "max" || text == "max_degree") return {Statistic::max_degree};
  if (text == "avg" || text == "avg_degree") return {Statistic::avg_degree};
  if (text == "arrival" || text == "arrival_degree") return {Statistic::arrival_degree};
  if (text == "edges" || text == "edge_count") return {Statistic::edge_count};
  for (std::string_view prefix : {"vertex:", "vertex_degree("}) {
    if (text.substr(0, prefix.size()) == prefix) {
      auto rest = text.substr(prefix.size());
      if (!rest.empty() && rest.back() == ')') rest.remove_suffix(1);
      return {Statistic::vertex_degree, detail::parse_label(rest, "vertex label")};
    }
  }
  throw ValidationError("unknown statistic '" + std::string(text) + "'");
}

/// Value of `stat` on g, where `last` describes the step that produced g.
inline double evaluate(const StatisticSpec& stat, const Graph& g, const GrowthStepRecord* last) {
  switch (stat.kind) {
    case Statistic::max_degree: return g.max_degree();
    case Statistic::avg_degree: return average_degree(g);
    case Statistic::vertex_degree: return stat.vertex <= g.order() ? g.degree(stat.vertex) : 0.0;
    case Statistic::arrival_degree:
      return last ? static_cast<double>(last->neighbors.size()) : g.degree(g.order());
    case Statistic::edge_count: return static_cast<double>(g.edge_count());
  }
  return 0.0;
}

/// Acceptance interval for one statistic at one checkpoint. `p`/`r`, when
/// set, name the parameters the window was derived for.
struct Window {
  std::string label;
  StatisticSpec stat;
  std::uint64_t tau = 0;
  Interval range;
  std::optional<double> p;
  std::optional<double> r;
};

struct ExperimentSpec {
  DDParams params;
  std::uint64_t replications = 1;
  std::uint64_t master_seed = 0;
  std::vector<StatisticSpec> statistics{{Statistic::max_degree}};
  std::vector<std::uint64_t> checkpoints;  // empty means {horizon_t}
  std::vector<Window> windows;
  GenerateOptions limits;
  bool check_invariants = false;  // verify every final graph, InvariantError on failure
};

struct RunOptions {
  unsigned threads = 0;  // 0: hardware concurrency
};

struct Summary {
  std::uint64_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double ci_low = 0.0;    // mean -/+ 1.96 s / sqrt(n), normal approximation
  double ci_high = 0.0;
  double min = 0.0;
  double max = 0.0;

  double standard_error() const {
    return n == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(n));
  }
};

inline Summary summarize(std::span<const double> samples) {
  Summary s;
  s.n = samples.size();
  if (samples.empty()) return s;
  detail::CompensatedSum total;
  s.min = s.max = samples.front();
  for (double x : samples) {
    total.add(x);
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.mean = total.value() / static_cast<double>(s.n);
  if (s.n > 1) {
    detail::CompensatedSum squares;
    for (double x : samples) squares.add((x - s.mean) * (x - s.mean));
    s.variance = squares.value() / static_cast<double>(s.n - 1);
  }
  const double half = 1.96 * s.standard_error();
  s.ci_low = s.mean - half;
  s.ci_high = s.mean + half;
  return s;
}

inline double violation_frequency(std::span<const double> samples, const Interval& range) {
  if (samples.empty()) return 0.0;
  std::uint64_t outside = 0;
  for (double x : samples) outside += (x < range.lo || x > range.hi) ? 1 : 0;
  return static_cast<double>(outside) / static_cast<double>(samples.size());
}

struct WindowExceedance {
  std::string label;
  double frequency = 0.0;
};

struct SeriesResult {
  StatisticSpec stat;
  std::uint64_t tau = 0;
  Summary summary;
  std::vector<double> samples;  // indexed by replication
  std::vector<WindowExceedance> exceedances;
};

struct RunMetadata {
  std::string rng_algorithm{kRngAlgorithm};
  std::string stream_derivation{kStreamDerivation};
  std::string version{kVersion};
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
  double wall_seconds = 0.0;
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<SeriesResult> series;  // checkpoint-major, statistics in spec order
  RunMetadata metadata;

  const SeriesResult* find(const StatisticSpec& stat, std::uint64_t tau) const {
    for (const auto& s : series)
      if (s.stat == stat && s.tau == tau) return &s;
    return nullptr;
  }
};

inline unsigned threads_from_env() {
  if (const char* text = std::getenv(kThreadsEnvVar); text && *text) {
    const unsigned long value = std::strtoul(text, nullptr, 10);
    detail::require(value >= 1 && value <= 4096,
                    std::string(kThreadsEnvVar) + " must be an integer in [1, 4096]");
    return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline std::vector<std::uint64_t> effective_checkpoints(const ExperimentSpec& spec) {
  if (spec.checkpoints.empty()) return {spec.params.horizon_t};
  return spec.checkpoints;
}

inline void validate(const ExperimentSpec& spec) {
  validate(spec.params);
  detail::require(spec.replications >= 1, "need at least one replication");
  detail::require(!spec.statistics.empty(), "no statistics requested");
  const auto checkpoints = effective_checkpoints(spec);
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    detail::require(checkpoints[i] > spec.params.t0 && checkpoints[i] <= spec.params.horizon_t,
                    "checkpoint " + std::to_string(checkpoints[i]) + " outside (t0, t]");
    detail::require(i == 0 || checkpoints[i - 1] < checkpoints[i],
                    "checkpoints must be strictly increasing");
  }
  for (const auto& stat : spec.statistics) {
    if (stat.kind == Statistic::vertex_degree) {
      detail::require(stat.vertex >= 1 && stat.vertex <= checkpoints.front(),
                      "tracked vertex must exist at every checkpoint");
    }
  }
}

inline ExperimentResult run_mc(const ExperimentSpec& spec, const RunOptions& options = {}) {
  validate(spec);
  const auto started = std::chrono::steady_clock::now();
  const auto checkpoints = effective_checkpoints(spec);
  const std::uint64_t reps = spec.replications;
  const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(
      options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency()),
      reps));
  check_budget(spec.params, spec.limits, threads);

  const std::size_t per_checkpoint = spec.statistics.size();
  std::vector<std::vector<double>> samples(checkpoints.size() * per_checkpoint,
                                           std::vector<double>(reps));
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    Graph g;
    GrowthStepRecord record;
    try {
      for (std::uint64_t rep = next++; rep < reps && !failed; rep = next++) {
        Engine rng = make_stream(spec.master_seed, rep);
        build_seed_into(g, spec.params.seed_graph, spec.params.t0);
        std::size_t c = 0;
        while (g.order() < spec.params.horizon_t) {
          grow_step(g, spec.params, rng, record);
          if (g.order() == checkpoints[c]) {
            for (std::size_t j = 0; j < per_checkpoint; ++j) {
              samples[c * per_checkpoint + j][rep] = evaluate(spec.statistics[j], g, &record);
            }
            if (++c == checkpoints.size()) break;
          }
        }
        if (spec.check_invariants) {
          if (const auto broken = g.check_invariants()) {
            throw InvariantError("replication " + std::to_string(rep) + ": " + *broken);
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      failed = true;
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);

  ExperimentResult result;
  result.spec = spec;
  result.metadata.master_seed = spec.master_seed;
  result.metadata.threads = threads;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    for (std::size_t j = 0; j < per_checkpoint; ++j) {
      SeriesResult s;
      s.stat = spec.statistics[j];
      s.tau = checkpoints[c];
      s.samples = std::move(samples[c * per_checkpoint + j]);
      s.summary = summarize(s.samples);
      for (const auto& w : spec.windows) {
        if (w.stat == s.stat && w.tau == s.tau) {
          s.exceedances.push_back({w.label, violation_frequency(s.samples, w.range)});
        }
      }
      result.series.push_back(std::move(s));
    }
  }
  result.metadata.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

struct WindowCheck {
  Window window;
  double frequency = 0.0;
  bool flagged = false;  // frequency > threshold
};

struct WindowReport {
  std::vector<WindowCheck> checks;
  double threshold = 0.01;
  bool all_ok() const {
    return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.flagged; });
  }
};

inline WindowReport verify_windows(const ExperimentResult& result, std::span<const Window> windows,
                                   double threshold = 0.01) {
  detail::require(threshold >= 0.0 && threshold <= 1.0, "threshold must lie in [0, 1]");
  WindowReport report;
  report.threshold = threshold;
  const auto& params = result.spec.params;
  for (const auto& w : windows) {
    detail::require(!w.p || *w.p == params.p,
                    "window '" + w.label + "' was built for a different p");
    detail::require(!w.r || *w.r == params.r,
                    "window '" + w.label + "' was built for a different r");
    const SeriesResult* series = result.find(w.stat, w.tau);
    detail::require(series != nullptr, "window '" + w.label + "' refers to " + w.stat.name() +
                                           " at tau = " + std::to_string(w.tau) +
                                           ", which the experiment did not record");
    const double freq = violation_frequency(series->samples, w.range);
    report.checks.push_back({w, freq, freq > threshold});
  }
  return report;
}

struct TheoryPoint {
  std::uint64_t tau = 0;
  double sample_mean = 0.0;
  double expected = 0.0;
  double standard_error = 0.0;
  double z = 0.0;
  bool pass = false;  // |z| <= 3
};

struct TheoryComparison {
  std::vector<TheoryPoint> points;
  bool all_pass() const {
    return std::all_of(points.begin(), points.end(), [](const auto& pt) { return pt.pass; });
  }
};

inline StatisticSpec statistic_for(const ExpectationCurve& curve) {
  switch (curve.stat) {
    case CurveStat::vertex_degree: return {Statistic::vertex_degree, curve.vertex};
    case CurveStat::avg_degree: return {Statistic::avg_degree};
    case CurveStat::arrival_degree: return {Statistic::arrival_degree};
  }
  return {};
}

/// z-score of each recorded sample mean against the curve at shared times.
inline TheoryComparison compare_mc_theory(const ExperimentResult& result,
                                          const ExpectationCurve& curve) {
  const StatisticSpec stat = statistic_for(curve);
  TheoryComparison out;
  for (const auto& s : result.series) {
    if (!(s.stat == stat)) continue;
    const double expected = curve.at(s.tau);
    if (std::isnan(expected)) continue;
    TheoryPoint pt;
    pt.tau = s.tau;
    pt.sample_mean = s.summary.mean;
    pt.expected = expected;
    pt.standard_error = s.summary.standard_error();
    const double diff = pt.sample_mean - expected;
    if (pt.standard_error > 0.0) {
      pt.z = diff / pt.standard_error;
    } else if (std::fabs(diff) <= 1e-12 * std::max(1.0, std::fabs(expected))) {
      pt.z = 0.0;
    } else {
      pt.z = std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    pt.pass = std::fabs(pt.z) <= 3.0;
    out.points.push_back(pt);
  }
  detail::require(!out.points.empty(),
                  "experiment and curve share no checkpoint for " + stat.name());
  return out;
}

struct JsonOptions {
  bool runtime = true;     // thread count
  bool wall_time = false;  // wall-clock seconds; differs run to run
  bool samples = false;    // per-replication values
};

/// JSON view of a result with keys in a fixed order. With runtime and
/// wall_time off the document depends only on the spec.
inline nlohmann::ordered_json to_json(const ExperimentResult& result,
                                      const JsonOptions& options = {}) {
  using nlohmann::ordered_json;
  const auto& params = result.spec.params;
  ordered_json doc;
  doc["provenance"] = {
      {"version", result.metadata.version},
      {"rng_algorithm", result.metadata.rng_algorithm},
      {"stream_derivation", result.metadata.stream_derivation},
      {"master_seed", result.metadata.master_seed},
  };
  doc["params"] = {
      {"t", params.horizon_t},
      {"p", params.p},
      {"r", params.r},
      {"t0", params.t0},
      {"seed_graph", format_seed_graph(params.seed_graph, params.t0)},
      {"replications", result.spec.replications},
  };
  ordered_json series = ordered_json::array();
  for (const auto& s : result.series) {
    ordered_json entry = {
        {"statistic", s.stat.name()},
        {"tau", s.tau},
        {"n", s.summary.n},
        {"mean", s.summary.mean},
        {"variance", s.summary.variance},
        {"ci95", {s.summary.ci_low, s.summary.ci_high}},
        {"min", s.summary.min},
        {"max", s.summary.max},
    };
    ordered_json exceed = ordered_json::array();
    for (const auto& e : s.exceedances) exceed.push_back({{"window", e.label}, {"frequency", e.frequency}});
    entry["exceedances"] = std::move(exceed);
    if (options.samples) entry["samples"] = s.samples;
    series.push_back(std::move(entry));
  }
  doc["series"] = std::move(series);
  if (options.runtime || options.wall_time) {
    ordered_json runtime = ordered_json::object();
    if (options.runtime) runtime["threads"] = result.metadata.threads;
    if (options.wall_time) runtime["wall_seconds"] = result.metadata.wall_seconds;
    doc["runtime"] = std::move(runtime);
  }
  return doc;
}

/// One row per checkpoint x statistic. Exceedances are packed into a single
/// column as "label=frequency" pairs separated by ';'.
inline void write_result_csv(std::ostream& out, const ExperimentResult& result) {
  out << "statistic,tau,n,mean,variance,ci_low,ci_high,min,max,exceedances\n";
  const auto old_precision = out.precision(17);
  for (const auto& s : result.series) {
    out << s.stat.name() << ',' << s.tau << ',' << s.summary.n << ',' << s.summary.mean << ','
        << s.summary.variance << ',' << s.summary.ci_low << ',' << s.summary.ci_high << ','
        << s.summary.min << ',' << s.summary.max << ',';
    for (std::size_t i = 0; i < s.exceedances.size(); ++i) {
      if (i) out << ';';
      out << s.exceedances[i].label << '=' << s.exceedances[i].frequency;
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace ddgraph
