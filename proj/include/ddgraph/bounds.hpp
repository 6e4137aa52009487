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

// Deterministic envelope sequences and closed-form tail bounds used to
// sandwich vertex degrees of DD(t, p, r).
//
// A sequence is fixed by a starting time phi and per-step coefficients
// (beta_i, w_i):
//
//   t_0 = phi,  t_{i+1} = t_i + w_i,
//   X_{t_0} = t_0,  X_{t_{i+1}} = X_{t_i} (1 + beta_i w_i / t_i),
//
// stopping at the first k with t_k >= t. Two presets are provided:
//
//   upper: beta_i = p + 1/(2 ln t_i),          eps = delta = 1/(5 ln t_i),
//          w_i = 3(A+1) t_i ln t / (delta^2 (1+eps) (p X_{t_i} + r))
//   lower: beta_i = p - p(1-p)/(4 ln t_i),     eps = delta = p(1-p)/(8 ln t_i),
//          w_i = 2(A+1) t_i ln t / (delta^2 (1-eps) (p X_{t_i} + r))
//
// with phi = ln^{1+p} t in both.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ddgraph/error.hpp"

namespace ddgraph {

enum class Preset { upper, lower };

inline std::string_view to_string(Preset preset) {
  return preset == Preset::upper ? "upper" : "lower";
}

struct StepCoefficients {
  double beta = 0.0;
  double w = 0.0;
  double eps = 0.0;
  double delta = 0.0;
};

struct BoundSequence {
  std::uint64_t horizon = 0;
  Preset preset = Preset::upper;
  double A = 1.0;
  double p = 0.5;
  double r = 0.0;
  double phi = 0.0;
  std::vector<double> grid;      // t_0 < ... < t_k, size k+1
  std::vector<double> envelope;  // X_{t_0..t_k}, size k+1
  std::vector<StepCoefficients> coefficients;  // steps 0..k-1

  std::size_t steps() const { return coefficients.size(); }
};

inline StepCoefficients preset_coefficients(Preset preset, double t_i, double x_i,
                                            double ln_t, double A, double p, double r) {
  const double ln_ti = std::log(t_i);
  StepCoefficients c;
  if (preset == Preset::upper) {
    c.beta = p + 1.0 / (2.0 * ln_ti);
    c.eps = c.delta = 1.0 / (5.0 * ln_ti);
    c.w = 3.0 * (A + 1.0) * t_i * ln_t /
          (c.delta * c.delta * (1.0 + c.eps) * (p * x_i + r));
  } else {
    c.beta = p - p * (1.0 - p) / (4.0 * ln_ti);
    c.eps = c.delta = p * (1.0 - p) / (8.0 * ln_ti);
    c.w = 2.0 * (A + 1.0) * t_i * ln_t /
          (c.delta * c.delta * (1.0 - c.eps) * (p * x_i + r));
  }
  return c;
}

inline BoundSequence build_sequence(std::uint64_t t, Preset preset, double A, double p,
                                    double r, std::size_t max_steps = 10'000'000) {
  detail::require(p > 0.0 && p < 1.0, "envelope sequences need 0 < p < 1");
  detail::require(r >= 0.0, "r must be non-negative");
  detail::require(A > 0.0, "A must be positive");
  const double ln_t = std::log(static_cast<double>(t));
  const double phi = t > 1 ? std::pow(ln_t, 1.0 + p) : 0.0;
  detail::require(phi >= 2.0, "horizon too small: ln^{1+p} t must be at least 2");

  BoundSequence seq;
  seq.horizon = t;
  seq.preset = preset;
  seq.A = A;
  seq.p = p;
  seq.r = r;
  seq.phi = phi;
  seq.grid.push_back(phi);
  seq.envelope.push_back(phi);
  const auto target = static_cast<double>(t);
  while (seq.grid.back() < target) {
    if (seq.coefficients.size() >= max_steps) {
      throw ResourceError("envelope sequence needs more than " + std::to_string(max_steps) +
                          " steps");
    }
    const double t_i = seq.grid.back();
    const double x_i = seq.envelope.back();
    const StepCoefficients c = preset_coefficients(preset, t_i, x_i, ln_t, A, p, r);
    seq.coefficients.push_back(c);
    seq.grid.push_back(t_i + c.w);
    seq.envelope.push_back(x_i * (1.0 + c.beta * c.w / t_i));
  }
  return seq;
}

/// Integer times for simulation: each t_i rounded to nearest, and forced to
/// exceed the previous entry by at least one.
inline std::vector<std::uint64_t> integer_grid(const BoundSequence& seq) {
  std::vector<std::uint64_t> out;
  out.reserve(seq.grid.size());
  for (double ti : seq.grid) {
    auto v = static_cast<std::uint64_t>(std::llround(ti));
    if (!out.empty()) v = std::max(v, out.back() + 1);
    out.push_back(v);
  }
  return out;
}

inline double lower_envelope(double t_i, double p) { return std::pow(t_i, p); }

inline double upper_envelope(double t_i, double p, double phi) {
  return std::pow(phi, 1.0 - p) * std::pow(t_i, p) * std::log(t_i);
}

enum class Verdict { holds, violated, not_applicable };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "unknown";
}

struct EnvelopeReport {
  // X_{t_i} >= t_i^p; applicable when beta_i >= p - p(1-p)/(4 ln t_i).
  Verdict lower = Verdict::not_applicable;
  // X_{t_i} <= phi^{1-p} t_i^p ln t_i; applicable when phi >= ln t and
  // beta_i <= p + 1/(2 ln t_i).
  Verdict upper = Verdict::not_applicable;
  double min_lower_ratio = std::numeric_limits<double>::infinity();  // min X / t^p
  double max_upper_ratio = 0.0;  // max X / (phi^{1-p} t^p ln t)
  std::optional<std::size_t> first_lower_violation;
  std::optional<std::size_t> first_upper_violation;
  // Both lemmas also assume w_i <= t_i / ln t_i; reported, not gated on.
  bool jump_condition_holds = true;
  double max_jump_ratio = 0.0;  // max w_i ln t_i / t_i

  bool lower_ok() const { return lower == Verdict::holds; }
  bool upper_ok() const { return upper == Verdict::holds; }
};

inline EnvelopeReport check_envelopes(const BoundSequence& seq) {
  EnvelopeReport rep;
  const double p = seq.p;
  const double ln_t = std::log(static_cast<double>(seq.horizon));
  bool lower_applies = true;
  bool upper_applies = seq.phi >= ln_t;
  for (std::size_t i = 0; i < seq.coefficients.size(); ++i) {
    const double ln_ti = std::log(seq.grid[i]);
    const auto& c = seq.coefficients[i];
    lower_applies = lower_applies && c.beta >= p - p * (1.0 - p) / (4.0 * ln_ti);
    upper_applies = upper_applies && c.beta <= p + 1.0 / (2.0 * ln_ti);
    const double jump = c.w * ln_ti / seq.grid[i];
    rep.max_jump_ratio = std::max(rep.max_jump_ratio, jump);
    rep.jump_condition_holds = rep.jump_condition_holds && jump <= 1.0;
  }
  for (std::size_t i = 0; i < seq.grid.size(); ++i) {
    const double lo = seq.envelope[i] / lower_envelope(seq.grid[i], p);
    const double hi = seq.envelope[i] / upper_envelope(seq.grid[i], p, seq.phi);
    rep.min_lower_ratio = std::min(rep.min_lower_ratio, lo);
    rep.max_upper_ratio = std::max(rep.max_upper_ratio, hi);
    if (lo < 1.0 && !rep.first_lower_violation) rep.first_lower_violation = i;
    if (hi > 1.0 && !rep.first_upper_violation) rep.first_upper_violation = i;
  }
  if (lower_applies) rep.lower = rep.first_lower_violation ? Verdict::violated : Verdict::holds;
  if (upper_applies) rep.upper = rep.first_upper_violation ? Verdict::violated : Verdict::holds;
  return rep;
}

/// Columns: i, t_i, X_i, beta_i, w_i, lower_envelope, upper_envelope. The
/// last row has no step coefficients and leaves beta_i, w_i empty.
inline void write_sequence_csv(std::ostream& out, const BoundSequence& seq) {
  out << "i,t_i,X_i,beta_i,w_i,lower_envelope,upper_envelope\n";
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < seq.grid.size(); ++i) {
    out << i << ',' << seq.grid[i] << ',' << seq.envelope[i] << ',';
    if (i < seq.coefficients.size()) {
      out << seq.coefficients[i].beta << ',' << seq.coefficients[i].w;
    } else {
      out << ',';
    }
    out << ',' << lower_envelope(seq.grid[i], seq.p) << ','
        << upper_envelope(seq.grid[i], seq.p, seq.phi) << '\n';
  }
  out.precision(old_precision);
}

/// A probability bound kept in log form. `probability()` clamps to [0, 1].
struct TailBound {
  double log_bound = 0.0;
  double probability() const { return std::clamp(std::exp(log_bound), 0.0, 1.0); }
};

/// Pr[deg_{tau+h}(s) - deg_tau(s) >= d | deg_tau(s)]
///   <= exp(d ln(e h (p deg + p d + r) / (d tau))).
inline TailBound growth_tail_bound(double deg_tau, double tau, double h, double d, double p,
                                   double r) {
  detail::require(deg_tau >= 0.0 && h >= 0.0 && d >= 0.0 && p >= 0.0 && r >= 0.0,
                  "growth tail bound inputs must be non-negative");
  detail::require(tau >= 1.0, "tau must be at least 1");
  detail::require(d <= h, "d must not exceed h");
  if (d == 0.0) return {0.0};
  const double inner = std::exp(1.0) * h * (p * deg_tau + p * d + r) / (d * tau);
  if (inner == 0.0) return {-std::numeric_limits<double>::infinity()};
  return {d * std::log(inner)};
}

struct ChernoffWindow {
  TailBound upper_tail;  // exp(-h delta^2 (1+eps)(pX + r) / (3 tau))
  TailBound lower_tail;  // exp(-h delta^2 (1-eps)(pX + r) / (2 tau))
};

inline ChernoffWindow chernoff_window_bounds(double h, double delta, double eps, double x,
                                             double tau, double p, double r) {
  detail::require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  detail::require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  detail::require(x > 0.0 && tau > 0.0 && h > 0.0, "X, tau and h must be positive");
  detail::require(p >= 0.0 && r >= 0.0, "p and r must be non-negative");
  const double rate = h * delta * delta * (p * x + r) / tau;
  return {{-rate * (1.0 + eps) / 3.0}, {-rate * (1.0 - eps) / 2.0}};
}

/// Horizon conditions on h under which the simple tail bound and the upper
/// coupling are stated. They differ by a ln tau factor and 1+2eps vs 1+eps;
/// inputs satisfying exactly one are in the gap between the two statements.
struct HorizonHypotheses {
  bool simple_tail = false;  // h <= eps tau / (p (1 + 2 eps) e^2)
  bool coupling = false;     // h <= eps tau / (p (1 + eps) e^2 ln tau)
  bool in_gap() const { return simple_tail != coupling; }
};

inline HorizonHypotheses check_horizon_hypotheses(double h, double tau, double eps, double p) {
  detail::require(h >= 0.0 && tau > 1.0 && eps > 0.0 && p > 0.0,
                  "need h >= 0, tau > 1, eps > 0, p > 0");
  const double e2 = std::exp(2.0);
  return {h <= eps * tau / (p * (1.0 + 2.0 * eps) * e2),
          h <= eps * tau / (p * (1.0 + eps) * e2 * std::log(tau))};
}

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

/// [(1 - alpha) t^p, (1 + alpha) t^p ln^{2 - p^2} t]
inline Interval maxdeg_window(std::uint64_t t, double p, double alpha) {
  detail::require(p > 0.0 && p < 1.0, "max-degree window needs 0 < p < 1");
  detail::require(alpha >= 0.0, "alpha must be non-negative");
  const double tt = static_cast<double>(t);
  const double tp = std::pow(tt, p);
  return {(1.0 - alpha) * tp, (1.0 + alpha) * tp * std::pow(std::log(tt), 2.0 - p * p)};
}

/// Concentration window for D(G_t). For p <= 1/2 only the cap A C ln t
/// exists (smaller values are within a polylog of the mean). For p > 1/2
/// the cap is C t^{2p-1} and, if c_lo is given, the floor c_lo t^{2p-1}.
inline Interval avgdeg_window(std::uint64_t t, double p, double r, double C, double A,
                              std::optional<double> c_lo = std::nullopt) {
  detail::require(C > 0.0 && A > 0.0, "C and A must be positive");
  detail::require(p >= 0.0 && p <= 1.0 && r >= 0.0, "invalid (p, r)");
  const double tt = static_cast<double>(t);
  Interval w;
  if (p <= 0.5) {
    w.hi = A * C * std::log(tt);
    return w;
  }
  const double scale = std::pow(tt, 2.0 * p - 1.0);
  w.hi = C * scale;
  if (c_lo) {
    detail::require(*c_lo > 0.0, "lower constant must be positive");
    w.lo = *c_lo * scale;
  }
  return w;
}

}  // namespace ddgraph
