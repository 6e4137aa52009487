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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "ddgraph/bounds.hpp"

namespace ddgraph {
namespace {

TEST(BuildSequence, StartsAtPhi) {
  const auto seq = build_sequence(1'000'000, Preset::upper, 1.0, 0.5, 1.0);
  EXPECT_NEAR(seq.phi, 51.35117774318662, 1e-10);
  EXPECT_DOUBLE_EQ(seq.grid.front(), seq.phi);
  EXPECT_DOUBLE_EQ(seq.envelope.front(), seq.phi);
}

TEST(BuildSequence, DefinitionRecurrences) {
  for (auto preset : {Preset::upper, Preset::lower}) {
    for (double p : {0.2, 0.5, 0.8}) {
      const auto seq = build_sequence(100'000'000, preset, 1.0, p, 1.0);
      ASSERT_EQ(seq.grid.size(), seq.steps() + 1);
      ASSERT_EQ(seq.envelope.size(), seq.grid.size());
      for (std::size_t i = 0; i < seq.steps(); ++i) {
        const auto& c = seq.coefficients[i];
        ASSERT_GT(c.w, 0.0);
        ASSERT_GT(c.beta, 0.0);
        ASSERT_DOUBLE_EQ(seq.grid[i + 1], seq.grid[i] + c.w);
        ASSERT_DOUBLE_EQ(seq.envelope[i + 1], seq.envelope[i] * (1.0 + c.beta * c.w / seq.grid[i]));
        ASSERT_GE(seq.envelope[i + 1], seq.envelope[i]);
        ASSERT_LT(seq.grid[i], 1e8);  // k is minimal
      }
      ASSERT_GE(seq.grid.back(), 1e8);
    }
  }
}

TEST(BuildSequence, PresetCoefficients) {
  const double ln_t = std::log(1e6);
  const auto up = preset_coefficients(Preset::upper, 100.0, 20.0, ln_t, 1.0, 0.5, 1.0);
  const double l = std::log(100.0);
  EXPECT_DOUBLE_EQ(up.beta, 0.5 + 1.0 / (2.0 * l));
  EXPECT_DOUBLE_EQ(up.eps, 1.0 / (5.0 * l));
  EXPECT_DOUBLE_EQ(up.delta, up.eps);
  EXPECT_NEAR(up.w, 3.0 * 2.0 * 100.0 * ln_t / (up.eps * up.eps * (1 + up.eps) * 11.0), 1e-9);
  const auto lo = preset_coefficients(Preset::lower, 100.0, 20.0, ln_t, 1.0, 0.5, 1.0);
  EXPECT_DOUBLE_EQ(lo.beta, 0.5 - 0.25 / (4.0 * l));
  EXPECT_DOUBLE_EQ(lo.eps, 0.25 / (8.0 * l));
  EXPECT_NEAR(lo.w, 2.0 * 2.0 * 100.0 * ln_t / (lo.eps * lo.eps * (1 - lo.eps) * 11.0), 1e-6);
}

TEST(BuildSequence, XBelowTWhenBetaAtMostOne) {
  for (double p : {0.3, 0.6}) {
    const auto seq = build_sequence(10'000'000, Preset::lower, 1.0, p, 0.5);
    for (std::size_t i = 0; i < seq.grid.size(); ++i) ASSERT_LE(seq.envelope[i], seq.grid[i] * (1 + 1e-12));
  }
}

TEST(BuildSequence, Errors) {
  EXPECT_THROW(build_sequence(1000, Preset::upper, 1.0, 0.0, 1.0), ValidationError);
  EXPECT_THROW(build_sequence(1000, Preset::upper, 1.0, 1.0, 1.0), ValidationError);
  EXPECT_THROW(build_sequence(1000, Preset::upper, 0.0, 0.5, 1.0), ValidationError);
  EXPECT_THROW(build_sequence(3, Preset::upper, 1.0, 0.5, 1.0), ValidationError);
  EXPECT_THROW(build_sequence(1'000'000, Preset::upper, 1.0, 0.5, 1.0, 1), ResourceError);
}

TEST(IntegerGrid, StrictlyIncreasing) {
  const auto seq = build_sequence(1'000'000, Preset::lower, 1.0, 0.5, 1.0);
  const auto grid = integer_grid(seq);
  ASSERT_EQ(grid.size(), seq.grid.size());
  for (std::size_t i = 1; i < grid.size(); ++i) ASSERT_GT(grid[i], grid[i - 1]);
  EXPECT_EQ(grid.front(), 51u);
}

TEST(Envelopes, LowerLemmaHoldsForUpperPreset) {
  const auto rep = check_envelopes(build_sequence(10'000, Preset::upper, 1.0, 0.5, 1.0));
  EXPECT_EQ(rep.lower, Verdict::holds);
  EXPECT_GE(rep.min_lower_ratio, 1.0);
}

TEST(Envelopes, LowerPresetGatesOnlyOnBeta) {
  for (std::uint64_t t : {10'000ull, 1'000'000ull, 100'000'000ull}) {
    const auto seq = build_sequence(t, Preset::lower, 1.0, 0.5, 1.0);
    const auto rep = check_envelopes(seq);
    EXPECT_GE(seq.phi, std::log(static_cast<double>(t)));
    EXPECT_EQ(rep.lower, Verdict::holds) << t;
    EXPECT_NE(rep.upper, Verdict::not_applicable) << t;  // beta below p + 1/(2 ln t_i)
  }
}

TEST(Envelopes, ViolationsAreLocated) {
  BoundSequence seq = build_sequence(10'000, Preset::lower, 1.0, 0.5, 1.0);
  seq.envelope[0] = 0.5 * lower_envelope(seq.grid[0], 0.5);
  const auto rep = check_envelopes(seq);
  EXPECT_EQ(rep.lower, Verdict::violated);
  EXPECT_EQ(rep.first_lower_violation, std::optional<std::size_t>{0});
  EXPECT_DOUBLE_EQ(rep.min_lower_ratio, 0.5);
}

TEST(Envelopes, BetaOutsideHypothesisIsNotApplicable) {
  BoundSequence seq = build_sequence(10'000, Preset::lower, 1.0, 0.5, 1.0);
  seq.coefficients[0].beta = 0.1;
  EXPECT_EQ(check_envelopes(seq).lower, Verdict::not_applicable);
  seq.coefficients[0].beta = 0.99;
  EXPECT_EQ(check_envelopes(seq).upper, Verdict::not_applicable);
}

TEST(Envelopes, Formulas) {
  EXPECT_DOUBLE_EQ(lower_envelope(100.0, 0.5), 10.0);
  EXPECT_DOUBLE_EQ(upper_envelope(100.0, 0.5, 4.0), 2.0 * 10.0 * std::log(100.0));
}

TEST(SequenceCsv, Columns) {
  const auto seq = build_sequence(10'000, Preset::upper, 1.0, 0.5, 1.0);
  std::ostringstream out;
  write_sequence_csv(out, seq);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "i,t_i,X_i,beta_i,w_i,lower_envelope,upper_envelope");
  std::size_t rows = 0;
  std::string last;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 6);
    last = line;
    ++rows;
  }
  EXPECT_EQ(rows, seq.grid.size());
  EXPECT_NE(last.find(",,,"), std::string::npos);
}

TEST(GrowthTail, HandEvaluation) {
  EXPECT_NEAR(growth_tail_bound(10, 100, 4, 2, 0.5, 1).probability(), 0.14482549953904075,
              1e-15);
  EXPECT_NEAR(growth_tail_bound(10, 100, 4, 2, 0.5, 1).log_bound,
              2.0 * std::log(std::exp(1.0) * 4 * 7 / 200), 1e-15);
}

TEST(GrowthTail, Edges) {
  EXPECT_EQ(growth_tail_bound(10, 100, 4, 0, 0.5, 1).probability(), 1.0);
  EXPECT_THROW(growth_tail_bound(10, 100, 4, 5, 0.5, 1), ValidationError);
  EXPECT_THROW(growth_tail_bound(-1, 100, 4, 2, 0.5, 1), ValidationError);
  EXPECT_THROW(growth_tail_bound(10, 0.5, 4, 2, 0.5, 1), ValidationError);
  // Large h makes the raw bound exceed 1; the probability is clamped.
  const auto vacuous = growth_tail_bound(10, 10, 100, 2, 0.9, 1);
  EXPECT_GT(vacuous.log_bound, 0.0);
  EXPECT_EQ(vacuous.probability(), 1.0);
}

TEST(GrowthTail, DecreasesInTau) {
  double last = 2.0;
  for (double tau : {50.0, 100.0, 200.0, 1000.0, 1e5}) {
    const double b = growth_tail_bound(10, tau, 4, 2, 0.5, 1).log_bound;
    EXPECT_LT(b, last);
    last = b;
  }
}

// With d = eps X and h at the corollary's limit the bound is at most
// exp(-eps X) whenever r <= p eps X.
TEST(GrowthTail, SimpleTailChain) {
  for (double p : {0.2, 0.5, 0.8}) {
    for (double tau : {1e3, 1e5, 1e7}) {
      const double eps = 1.0 / (5.0 * std::log(tau));
      const double h = std::floor(eps * tau / (p * (1.0 + 2.0 * eps) * std::exp(2.0)));
      for (double x : {std::pow(tau, p), 2.0 * std::pow(tau, p)}) {
        for (double r : {0.0, 0.5 * p * eps * x, p * eps * x}) {
          const double d = eps * x;
          if (d > h) continue;
          for (double deg : {0.0, 0.5 * x, x}) {
            EXPECT_LE(growth_tail_bound(deg, tau, h, d, p, r).log_bound, -d * (1 - 1e-12))
                << "p=" << p << " tau=" << tau << " x=" << x << " r=" << r;
          }
        }
      }
    }
  }
}

TEST(Chernoff, HandEvaluation) {
  const auto w = chernoff_window_bounds(300, 0.1, 0.1, 100, 1000, 0.5, 1);
  EXPECT_NEAR(w.upper_tail.probability(), 0.9454445867043453, 1e-15);
  EXPECT_NEAR(w.lower_tail.probability(), 0.9334666895806638, 1e-15);
  EXPECT_NEAR(w.upper_tail.log_bound, -300 * 0.01 * 1.1 * 51 / 3000.0, 1e-15);
}

TEST(Chernoff, ScalingAndLimits) {
  const auto a = chernoff_window_bounds(300, 0.1, 0.1, 100, 1000, 0.5, 1);
  const auto b = chernoff_window_bounds(600, 0.1, 0.1, 100, 1000, 0.5, 1);
  EXPECT_NEAR(b.upper_tail.probability(), std::pow(a.upper_tail.probability(), 2), 1e-15);
  EXPECT_NEAR(b.lower_tail.probability(), std::pow(a.lower_tail.probability(), 2), 1e-15);
  const auto tiny = chernoff_window_bounds(300, 1e-9, 0.1, 100, 1000, 0.5, 1);
  EXPECT_NEAR(tiny.upper_tail.probability(), 1.0, 1e-15);
  EXPECT_NEAR(tiny.lower_tail.probability(), 1.0, 1e-15);
  EXPECT_THROW(chernoff_window_bounds(300, 0.0, 0.1, 100, 1000, 0.5, 1), ValidationError);
  EXPECT_THROW(chernoff_window_bounds(300, 0.1, 1.0, 100, 1000, 0.5, 1), ValidationError);
  EXPECT_THROW(chernoff_window_bounds(300, 1.5, 0.1, 100, 1000, 0.5, 1), ValidationError);
}

TEST(Horizon, GapBetweenStatements) {
  const double tau = 1e6, eps = 0.05, p = 0.5;
  const double simple = eps * tau / (p * (1 + 2 * eps) * std::exp(2.0));
  const double coupling = eps * tau / (p * (1 + eps) * std::exp(2.0) * std::log(tau));
  ASSERT_LT(coupling, simple);
  auto both = check_horizon_hypotheses(coupling * 0.9, tau, eps, p);
  EXPECT_TRUE(both.simple_tail && both.coupling && !both.in_gap());
  auto gap = check_horizon_hypotheses((coupling + simple) / 2, tau, eps, p);
  EXPECT_TRUE(gap.simple_tail && !gap.coupling && gap.in_gap());
  auto none = check_horizon_hypotheses(simple * 2, tau, eps, p);
  EXPECT_FALSE(none.simple_tail || none.coupling);
}

TEST(MaxDegreeWindow, HandEvaluation) {
  const auto w = maxdeg_window(10'000, 0.5, 0.1);
  EXPECT_NEAR(w.lo, 90.0, 1e-12);
  EXPECT_NEAR(w.hi, 5356.426194545905, 1e-9);
  const auto bare = maxdeg_window(10'000, 0.5, 0.0);
  EXPECT_NEAR(bare.lo, 100.0, 1e-12);
  EXPECT_NEAR(bare.hi, 100.0 * std::pow(std::log(1e4), 1.75), 1e-9);
}

TEST(MaxDegreeWindow, RatioGrowsWithT) {
  double last = 0.0;
  for (std::uint64_t t : {100ull, 10'000ull, 1'000'000ull}) {
    const auto w = maxdeg_window(t, 0.6, 0.2);
    const double ratio = w.hi / w.lo;
    EXPECT_NEAR(ratio, 1.2 / 0.8 * std::pow(std::log(static_cast<double>(t)), 2 - 0.36), 1e-9 * ratio);
    EXPECT_GT(ratio, last);
    last = ratio;
  }
  EXPECT_THROW(maxdeg_window(100, 1.0, 0.1), ValidationError);
  EXPECT_THROW(maxdeg_window(100, 0.5, -0.1), ValidationError);
}

TEST(AvgDegreeWindow, Regimes) {
  const auto cap = avgdeg_window(10'000, 0.5, 1.0, 2.0, 1.0);
  EXPECT_NEAR(cap.hi, 18.420680743952367, 1e-12);
  EXPECT_TRUE(std::isinf(cap.lo) && cap.lo < 0);
  EXPECT_TRUE(std::isinf(avgdeg_window(10'000, 0.3, 1.0, 2.0, 1.0, 0.5).lo));

  const auto a = avgdeg_window(1000, 0.8, 0.0, 2.0, 1.0, 0.5);
  const auto b = avgdeg_window(100'000, 0.8, 0.0, 2.0, 1.0, 0.5);
  EXPECT_NEAR(b.hi / a.hi, std::pow(100.0, 0.6), 1e-9);
  EXPECT_NEAR(b.lo / a.lo, std::pow(100.0, 0.6), 1e-9);
  EXPECT_NEAR(a.hi, 2.0 * std::pow(1000.0, 0.6), 1e-9);
  EXPECT_TRUE(std::isinf(avgdeg_window(1000, 0.8, 0.0, 2.0, 1.0).lo));
  EXPECT_THROW(avgdeg_window(1000, 0.8, 0.0, 0.0, 1.0), ValidationError);
}

TEST(Bounds, PureAndDeterministic) {
  const auto a = build_sequence(1'000'000, Preset::upper, 2.0, 0.4, 0.7);
  const auto b = build_sequence(1'000'000, Preset::upper, 2.0, 0.4, 0.7);
  EXPECT_EQ(a.grid, b.grid);
  EXPECT_EQ(a.envelope, b.envelope);
}

}  // namespace
}  // namespace ddgraph
