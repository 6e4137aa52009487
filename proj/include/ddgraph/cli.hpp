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

// Command-line front end: generate, expect, bounds, mc, oracle.
//
// Exit codes: 0 success, 1 other failure, 2 validation, 3 resource guard,
// 4 I/O. A flat "key=value" config file (--config) supplies defaults; keys
// are flag names without the leading dashes, and explicit flags win.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ddgraph/bounds.hpp"
#include "ddgraph/edgelist.hpp"
#include "ddgraph/enumerate.hpp"
#include "ddgraph/error.hpp"
#include "ddgraph/experiments.hpp"
#include "ddgraph/generator.hpp"
#include "ddgraph/theory.hpp"

namespace ddgraph::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kValidation = 2, kResource = 3, kIo = 4 };

struct ModelFlags {
  std::uint32_t t = 1000;
  double p = 0.5;
  double r = 0.0;
  std::string seed_graph = "complete:2";
  bool empty_seed = false;
  std::uint64_t seed = 1;
  std::string out = "-";
};

inline DDParams to_params(const ModelFlags& flags) {
  const ParsedSeed seed = parse_seed_graph(flags.seed_graph);
  DDParams params;
  params.p = flags.p;
  params.r = flags.r;
  params.t0 = seed.t0;
  params.seed_graph = seed.spec;
  if (flags.empty_seed) params.seed_graph = SeedGraphSpec{SeedGraphKind::empty, {}};
  params.horizon_t = flags.t;
  validate(params);
  return params;
}

namespace detail {

inline void add_model_flags(CLI::App* cmd, ModelFlags& f, bool with_seed) {
  cmd->add_option("--t", f.t, "horizon: number of vertices in the final graph")
      ->capture_default_str();
  cmd->add_option("--p", f.p, "probability of copying each parent edge, in [0, 1]")
      ->capture_default_str();
  cmd->add_option("--r", f.r, "expected number of random edges per step, in [0, t0]")
      ->capture_default_str();
  cmd->add_option("--seed-graph", f.seed_graph,
                  "initial graph as kind:t0 with kind in {complete, path, cycle, empty}, "
                  "or explicit:t0:u-v,u-v,...")
      ->capture_default_str();
  cmd->add_flag("--empty-seed", f.empty_seed,
                "replace the seed graph by t0 isolated vertices (t0 from --seed-graph)");
  if (with_seed) {
    cmd->add_option("--seed", f.seed, "master random seed (unsigned 64-bit)")
        ->capture_default_str();
  }
  cmd->add_option("--out", f.out, "output path, '-' for standard output")->capture_default_str();
}

// Output sink that is either a file or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), stream_(&fallback) {
    if (path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw IoError("cannot open '" + path + "' for writing");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  bool is_file() const { return path_ != "-"; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("write to '" + path_ + "' failed");
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_;
};

inline std::vector<std::string> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    ::ddgraph::detail::require(eq != std::string::npos,
                               path + ":" + std::to_string(line_no) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    args.push_back("--" + trim(line.substr(first, eq - first)) + "=" + trim(line.substr(eq + 1)));
  }
  return args;
}

// Pulls --config out of args and splices the file's flags in right after
// the subcommand name, ahead of the explicit flags.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!path) return args;
  auto injected = load_config(*path);
  const auto at = args.empty() ? args.begin() : args.begin() + 1;
  args.insert(at, injected.begin(), injected.end());
  return args;
}

inline std::vector<std::uint64_t> parse_checkpoints(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    ::ddgraph::detail::require(ec == std::errc{} && ptr == item.data() + item.size(),
                               "bad checkpoint '" + item + "'");
    out.push_back(v);
  }
  return out;
}

inline std::vector<StatisticSpec> parse_statistics(const std::string& text) {
  std::vector<StatisticSpec> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(parse_statistic(item));
  }
  return out;
}

}  // namespace detail

inline int cmd_generate(const ModelFlags& flags, std::ostream& out) {
  const DDParams params = to_params(flags);
  Engine rng = make_stream(flags.seed, 0);
  const Graph g = generate(params, rng);
  detail::Sink sink(flags.out, out);
  write_edge_list(sink.stream(), g, params, flags.seed);
  sink.finish();
  return kOk;
}

struct ExpectFlags {
  std::string stat = "avg";
  std::uint32_t s = 1;
  std::optional<double> initial_degree;
  std::string grid = "geometric";
  double ratio = 1.01;
};

inline int cmd_expect(const ModelFlags& flags, const ExpectFlags& opts, std::ostream& out) {
  const DDParams params = to_params(flags);
  GridOptions grid;
  grid.mode = opts.grid == "dense" ? GridMode::dense : GridMode::geometric;
  grid.ratio = opts.ratio;
  ExpectationCurve curve;
  if (opts.stat == "vertex") {
    double initial = 0.0;
    if (opts.initial_degree) {
      initial = *opts.initial_degree;
    } else {
      ::ddgraph::detail::require(opts.s <= params.t0,
                                 "--initial-degree is required for vertices born after t0");
      initial = seed_degree(params, opts.s);
    }
    curve = expected_vertex_degree(params, opts.s, initial, params.horizon_t, grid);
  } else {
    auto curves = expected_avg_degree(params, seed_average_degree(params), params.horizon_t, grid);
    curve = opts.stat == "arrival" ? std::move(curves.arrival_degree)
                                   : std::move(curves.avg_degree);
  }
  detail::Sink sink(flags.out, out);
  write_curve_csv(sink.stream(), curve);
  sink.finish();
  return kOk;
}

struct BoundsFlags {
  std::string preset = "upper";
  double A = 1.0;
  std::string report = "";
};

inline void print_envelope_report(std::ostream& os, const BoundSequence& seq,
                                  const EnvelopeReport& rep) {
  os << std::setprecision(6);
  os << "preset=" << to_string(seq.preset) << " t=" << seq.horizon << " p=" << seq.p
     << " r=" << seq.r << " A=" << seq.A << " phi=" << seq.phi << " k=" << seq.steps() << '\n';
  os << "lower_envelope (X >= t^p): " << to_string(rep.lower)
     << " min_ratio=" << rep.min_lower_ratio << '\n';
  os << "upper_envelope (X <= phi^(1-p) t^p ln t): " << to_string(rep.upper)
     << " max_ratio=" << rep.max_upper_ratio << '\n';
  os << "jump_condition (w_i <= t_i/ln t_i): " << (rep.jump_condition_holds ? "holds" : "violated")
     << " max_ratio=" << rep.max_jump_ratio << '\n';
}

inline int cmd_bounds(const ModelFlags& flags, const BoundsFlags& opts, std::ostream& out,
                      std::ostream& err) {
  ::ddgraph::detail::require(opts.preset == "upper" || opts.preset == "lower",
                             "--preset must be upper or lower");
  const Preset preset = opts.preset == "upper" ? Preset::upper : Preset::lower;
  const BoundSequence seq = build_sequence(flags.t, preset, opts.A, flags.p, flags.r);
  const EnvelopeReport rep = check_envelopes(seq);
  detail::Sink sink(flags.out, out);
  write_sequence_csv(sink.stream(), seq);
  sink.finish();
  if (!opts.report.empty()) {
    detail::Sink report(opts.report, out);
    print_envelope_report(report.stream(), seq, rep);
    report.finish();
  } else {
    print_envelope_report(sink.is_file() ? out : err, seq, rep);
  }
  return kOk;
}

struct McFlags {
  std::uint64_t reps = 100;
  std::string stats = "max,avg";
  std::string checkpoints;
  std::string format = "json";
  double alpha = 0.1;
  double A = 1.0;
  std::optional<double> C;
  std::optional<double> C_lo;
  double threshold = 0.01;
  bool samples = false;
  bool timing = false;
  std::uint64_t max_edges = GenerateOptions{}.max_edges;
};

inline int cmd_mc(const ModelFlags& flags, const McFlags& opts, std::ostream& out,
                  std::ostream& err) {
  ::ddgraph::detail::require(opts.format == "json" || opts.format == "csv",
                             "--format must be json or csv for mc");
  ExperimentSpec spec;
  spec.params = to_params(flags);
  spec.replications = opts.reps;
  spec.master_seed = flags.seed;
  spec.statistics = detail::parse_statistics(opts.stats);
  spec.checkpoints = detail::parse_checkpoints(opts.checkpoints);
  spec.limits.max_edges = opts.max_edges;
  const auto p = spec.params.p;
  const auto r = spec.params.r;
  for (std::uint64_t tau : effective_checkpoints(spec)) {
    for (const auto& stat : spec.statistics) {
      if (stat.kind == Statistic::max_degree && p > 0.0 && p < 1.0) {
        spec.windows.push_back({"maxdeg@" + std::to_string(tau), stat, tau,
                                maxdeg_window(tau, p, opts.alpha), p, r});
      }
      if (stat.kind == Statistic::avg_degree && opts.C) {
        spec.windows.push_back({"avgdeg@" + std::to_string(tau), stat, tau,
                                avgdeg_window(tau, p, r, *opts.C, opts.A, opts.C_lo), p, r});
      }
    }
  }
  const ExperimentResult result = run_mc(spec, {threads_from_env()});
  detail::Sink sink(flags.out, out);
  if (opts.format == "json") {
    sink.stream() << to_json(result, {true, opts.timing, opts.samples}).dump(2) << '\n';
  } else {
    write_result_csv(sink.stream(), result);
  }
  sink.finish();
  if (!spec.windows.empty()) {
    const WindowReport report = verify_windows(result, spec.windows, opts.threshold);
    std::ostream& os = sink.is_file() ? out : err;
    for (const auto& c : report.checks) {
      os << c.window.label << " [" << c.window.range.lo << ", " << c.window.range.hi
         << "] violation_frequency=" << c.frequency << (c.flagged ? " FLAGGED" : " ok") << '\n';
    }
  }
  return kOk;
}

struct OracleFlags {
  std::string stat = "max";
  std::string format = "csv";
};

inline int cmd_oracle(const ModelFlags& flags, const OracleFlags& opts, std::ostream& out,
                      std::ostream& err) {
  ::ddgraph::detail::require(opts.format == "json" || opts.format == "csv",
                             "--format must be json or csv for oracle");
  const DDParams params = to_params(flags);
  const StatisticSpec stat = parse_statistic(opts.stat);
  const ExactDistribution dist = enumerate_exact(params, stat);

  detail::Sink sink(flags.out, out);
  if (opts.format == "json") {
    nlohmann::ordered_json doc = {{"statistic", stat.name()},
                                  {"t", params.horizon_t},
                                  {"p", params.p},
                                  {"r", params.r},
                                  {"seed_graph", format_seed_graph(params.seed_graph, params.t0)},
                                  {"support", dist.support},
                                  {"probabilities", dist.probabilities},
                                  {"mean", dist.mean()}};
    sink.stream() << doc.dump(2) << '\n';
  } else {
    sink.stream() << "value,probability\n" << std::setprecision(17);
    for (std::size_t i = 0; i < dist.support.size(); ++i)
      sink.stream() << dist.support[i] << ',' << dist.probabilities[i] << '\n';
  }
  sink.finish();

  std::ostream& os = sink.is_file() ? out : err;
  os << std::setprecision(17) << "total_probability=" << dist.total() << '\n'
     << "mean=" << dist.mean() << '\n';
  std::optional<double> recurrence;
  if (stat.kind == Statistic::avg_degree || stat.kind == Statistic::arrival_degree) {
    if (stat.kind == Statistic::avg_degree || params.horizon_t > params.t0) {
      auto curves = expected_avg_degree(params, seed_average_degree(params), params.horizon_t,
                                        {GridMode::dense});
      recurrence = stat.kind == Statistic::avg_degree ? curves.avg_degree.back()
                                                      : curves.arrival_degree.back();
    }
  } else if (stat.kind == Statistic::vertex_degree && stat.vertex <= params.t0) {
    recurrence = expected_vertex_degree(params, stat.vertex, seed_degree(params, stat.vertex),
                                        params.horizon_t, {GridMode::dense})
                     .back();
  }
  if (recurrence) {
    const double diff = std::fabs(*recurrence - dist.mean());
    os << "recurrence=" << *recurrence << '\n'
       << "abs_difference=" << diff << (diff <= 1e-12 ? " ok" : " MISMATCH") << '\n';
  }
  return kOk;
}

/// Runs the CLI on `args` (without the program name).
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Duplication-divergence graph simulation and verification toolkit", "ddgraph"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  app.footer("Config: --config FILE with key=value lines (keys are flag names). "
             "Threads for mc: $" + std::string(kThreadsEnvVar) + " (default: all cores).");

  ModelFlags model;
  auto* gen = app.add_subcommand("generate", "simulate one graph and write its edge list");
  detail::add_model_flags(gen, model, true);
  std::string gen_format = "edgelist";
  gen->add_option("--format", gen_format, "output format (edgelist)")
      ->check(CLI::IsMember({"edgelist"}))
      ->capture_default_str();

  ExpectFlags expect;
  auto* exp = app.add_subcommand("expect", "write an exact expectation curve as CSV");
  detail::add_model_flags(exp, model, false);
  exp->add_option("--stat", expect.stat, "avg | arrival | vertex")
      ->check(CLI::IsMember({"avg", "arrival", "vertex"}))
      ->capture_default_str();
  exp->add_option("--s", expect.s, "vertex label for --stat vertex")->capture_default_str();
  exp->add_option("--initial-degree", expect.initial_degree,
                  "degree of s at time max(s, t0); default: its seed-graph degree");
  exp->add_option("--grid", expect.grid, "geometric | dense (dense needs t <= 1e6)")
      ->check(CLI::IsMember({"geometric", "dense"}))
      ->capture_default_str();
  exp->add_option("--ratio", expect.ratio, "spacing factor of the geometric grid")
      ->capture_default_str();
  std::string exp_format = "csv";
  exp->add_option("--format", exp_format, "output format (csv)")
      ->check(CLI::IsMember({"csv"}))
      ->capture_default_str();

  BoundsFlags bounds;
  auto* bnd = app.add_subcommand("bounds", "build an envelope sequence and check both envelopes");
  detail::add_model_flags(bnd, model, false);
  bnd->add_option("--preset", bounds.preset, "upper | lower")
      ->check(CLI::IsMember({"upper", "lower"}))
      ->capture_default_str();
  bnd->add_option("--A", bounds.A, "tail exponent constant A > 0")->capture_default_str();
  bnd->add_option("--report", bounds.report, "path for the envelope report (default: terminal)");
  std::string bnd_format = "csv";
  bnd->add_option("--format", bnd_format, "output format (csv)")
      ->check(CLI::IsMember({"csv"}))
      ->capture_default_str();

  McFlags mc;
  auto* mcc = app.add_subcommand("mc", "Monte Carlo replications with window checks");
  detail::add_model_flags(mcc, model, true);
  mcc->add_option("--reps", mc.reps, "number of independent replications")->capture_default_str();
  mcc->add_option("--stats", mc.stats, "comma list of max, avg, arrival, edges, vertex:<s>")
      ->capture_default_str();
  mcc->add_option("--checkpoints", mc.checkpoints,
                  "comma list of times in (t0, t]; default: t only");
  mcc->add_option("--format", mc.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  mcc->add_option("--alpha", mc.alpha, "max-degree window slack alpha >= 0")
      ->capture_default_str();
  mcc->add_option("--A", mc.A, "average-degree window constant A > 0 (p <= 1/2)")
      ->capture_default_str();
  mcc->add_option("--C", mc.C, "average-degree cap constant C > 0; enables the avg window");
  mcc->add_option("--C-lo", mc.C_lo, "average-degree floor constant (p > 1/2)");
  mcc->add_option("--threshold", mc.threshold, "flag windows violated more often than this")
      ->capture_default_str();
  mcc->add_flag("--samples", mc.samples, "include per-replication samples in JSON");
  mcc->add_flag("--timing", mc.timing, "include wall-clock seconds in JSON");
  mcc->add_option("--max-edges", mc.max_edges,
                  "memory guard: max expected edges per graph x worker threads")
      ->capture_default_str();

  OracleFlags oracle;
  auto* orc = app.add_subcommand("oracle", "exact distribution by exhaustive enumeration (t <= ~6)");
  detail::add_model_flags(orc, model, false);
  orc->add_option("--stat", oracle.stat, "max | avg | arrival | edges | vertex:<s>")
      ->capture_default_str();
  orc->add_option("--format", oracle.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  try {
    args = detail::expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }

  try {
    if (gen->parsed()) return cmd_generate(model, out);
    if (exp->parsed()) return cmd_expect(model, expect, out);
    if (bnd->parsed()) return cmd_bounds(model, bounds, out, err);
    if (mcc->parsed()) return cmd_mc(model, mc, out, err);
    if (orc->parsed()) return cmd_oracle(model, oracle, out, err);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace ddgraph::cli
