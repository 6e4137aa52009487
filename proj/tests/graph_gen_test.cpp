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
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "ddgraph/edgelist.hpp"
#include "ddgraph/generator.hpp"
#include "test_util.hpp"

namespace ddgraph {
namespace {

DDParams k2(double p, double r, std::uint32_t t) {
  DDParams params;
  params.p = p;
  params.r = r;
  params.t0 = 2;
  params.seed_graph = {SeedGraphKind::complete, {}};
  params.horizon_t = t;
  return params;
}

TEST(SeedGraph, CompleteOnTwoVerticesIsASingleEdge) {
  const Graph g = make_seed_graph({SeedGraphKind::complete, {}}, 2);
  EXPECT_EQ(g.order(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(g.has_edge(1, 2));
  EXPECT_EQ(g.degree(1), 1u);
  EXPECT_EQ(g.degree(2), 1u);
}

TEST(SeedGraph, Shapes) {
  EXPECT_EQ(make_seed_graph({SeedGraphKind::empty, {}}, 5).edge_count(), 0u);
  EXPECT_EQ(make_seed_graph({SeedGraphKind::empty, {}}, 5).order(), 5u);
  const Graph cycle = make_seed_graph({SeedGraphKind::cycle, {}}, 4);
  EXPECT_EQ(cycle.edge_count(), 4u);
  for (std::uint32_t d : cycle.degree_array()) EXPECT_EQ(d, 2u);
  EXPECT_EQ(make_seed_graph({SeedGraphKind::complete, {}}, 7).edge_count(), 21u);
  EXPECT_EQ(make_seed_graph({SeedGraphKind::path, {}}, 6).edge_count(), 5u);
  const Graph expl =
      make_seed_graph({SeedGraphKind::explicit_edges, {{1, 3}, {3, 2}}}, 4);
  EXPECT_EQ(expl.edges(), (std::vector<std::pair<Vertex, Vertex>>{{1, 3}, {2, 3}}));
  EXPECT_EQ(expl.degree(4), 0u);
}

TEST(SeedGraph, ExplicitEdgesMustBeSimpleAndInRange) {
  EXPECT_THROW(make_seed_graph({SeedGraphKind::explicit_edges, {{1, 1}}}, 3), ValidationError);
  EXPECT_THROW(make_seed_graph({SeedGraphKind::explicit_edges, {{1, 2}, {2, 1}}}, 3),
               ValidationError);
  EXPECT_THROW(make_seed_graph({SeedGraphKind::explicit_edges, {{1, 4}}}, 3), ValidationError);
  EXPECT_THROW(make_seed_graph({SeedGraphKind::explicit_edges, {{0, 2}}}, 3), ValidationError);
}

TEST(SeedGraph, ParseAndFormatRoundTrip) {
  for (std::string text : {"complete:2", "path:5", "cycle:4", "empty:3", "explicit:4:1-2,2-4"}) {
    const ParsedSeed parsed = parse_seed_graph(text);
    EXPECT_EQ(format_seed_graph(parsed.spec, parsed.t0), text);
  }
  EXPECT_THROW(parse_seed_graph("star:3"), ValidationError);
  EXPECT_THROW(parse_seed_graph("complete"), ValidationError);
  EXPECT_THROW(parse_seed_graph("explicit:3:1-1"), ValidationError);
}

TEST(Params, Validation) {
  EXPECT_NO_THROW(validate(k2(0.5, 1.0, 10)));
  EXPECT_THROW(validate(k2(1.5, 0.0, 10)), ValidationError);
  EXPECT_THROW(validate(k2(-0.1, 0.0, 10)), ValidationError);
  EXPECT_THROW(validate(k2(0.5, 2.5, 10)), ValidationError);  // r > t0
  EXPECT_THROW(validate(k2(0.5, -1.0, 10)), ValidationError);
  EXPECT_THROW(validate(k2(0.5, 0.0, 1)), ValidationError);  // t < t0
}

// Two parent choices: parent 1 copies edge {1,2} into {3,2}; parent 2 copies
// {2,1} into {3,1}. Either way vertex 3 has degree 1 and the graph is a path.
TEST(GrowStep, CopyAllOnK2GivesAPath) {
  const DDParams params = k2(1.0, 0.0, 3);
  std::map<Vertex, int> parents;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Graph g = make_seed_graph(params.seed_graph, params.t0);
    Engine rng = make_stream(seed, 0);
    const GrowthStepRecord rec = grow_step(g, params, rng);
    ++parents[rec.parent];
    EXPECT_EQ(rec.new_vertex, 3u);
    EXPECT_TRUE(rec.r_edges.empty());
    ASSERT_EQ(rec.p_edges.size(), 1u);
    EXPECT_EQ(rec.p_edges[0], rec.parent == 1 ? 2u : 1u);
    EXPECT_EQ(g.degree(3), 1u);
    EXPECT_EQ(g.max_degree(), 2u);
    EXPECT_FALSE(g.check_invariants());
  }
  EXPECT_GT(parents[1], 0);
  EXPECT_GT(parents[2], 0);
}

TEST(GrowStep, ZeroRatesLeaveNewcomerIsolated) {
  DDParams params = k2(0.0, 0.0, 50);
  params.seed_graph = {SeedGraphKind::complete, {}};
  params.t0 = 6;
  Graph g = make_seed_graph(params.seed_graph, params.t0);
  Engine rng = make_stream(3, 0);
  for (int i = 0; i < 40; ++i) {
    const auto rec = grow_step(g, params, rng);
    EXPECT_TRUE(rec.neighbors.empty());
    EXPECT_EQ(g.degree(rec.new_vertex), 0u);
  }
  EXPECT_EQ(g.edge_count(), 15u);
}

// Enumerating parent x coin: each parent has one neighbor kept w.p. 1/2, so
// deg_3(3) is 0 or 1 with probability 1/2 each.
TEST(GrowStep, HalfCopyOnK2ArrivalDegreeIsFair) {
  const DDParams params = k2(0.5, 0.0, 3);
  const int n = 40000;
  int ones = 0;
  for (int s = 0; s < n; ++s) {
    Graph g = make_seed_graph(params.seed_graph, params.t0);
    Engine rng = make_stream(11, static_cast<std::uint64_t>(s));
    ones += static_cast<int>(grow_step(g, params, rng).neighbors.size());
  }
  const double freq = static_cast<double>(ones) / n;
  EXPECT_NEAR(freq, 0.5, 4.0 * 0.5 / std::sqrt(n));
}

TEST(GrowStep, RecordIsConsistentWithGraph) {
  DDParams params = k2(0.4, 1.5, 300);
  Graph g = make_seed_graph(params.seed_graph, params.t0);
  Engine rng = make_stream(5, 0);
  GrowthStepRecord rec;
  while (g.order() < params.horizon_t) {
    const Graph before = g;
    grow_step(g, params, rng, rec);
    ASSERT_EQ(g.order(), before.order() + 1);
    ASSERT_EQ(g.edge_count(), before.edge_count() + g.degree(rec.new_vertex));
    ASSERT_GE(rec.parent, 1u);
    ASSERT_LE(rec.parent, before.order());
    for (Vertex v : rec.p_edges) ASSERT_TRUE(before.has_edge(rec.parent, v));
    for (Vertex v : rec.r_edges) ASSERT_FALSE(before.has_edge(rec.parent, v));
    std::vector<Vertex> actual(g.neighbors(rec.new_vertex).begin(),
                               g.neighbors(rec.new_vertex).end());
    ASSERT_EQ(actual, rec.neighbors);
    ASSERT_EQ(rec.neighbors.size(), rec.p_edges.size() + rec.r_edges.size());
    ASSERT_FALSE(g.check_invariants()) << *g.check_invariants();
  }
}

// On a frozen cycle every parent has degree 2 and i - 2 non-neighbors, so the
// p-edge count is Binomial(2, p) and the r-edge count Binomial(i - 2, r / i).
TEST(GrowStep, EdgeCountsFollowTheirBinomialLaws) {
  DDParams params;
  params.p = 0.4;
  params.r = 3.0;
  params.t0 = 10;
  params.seed_graph = {SeedGraphKind::cycle, {}};
  params.horizon_t = 11;
  const Graph frozen = make_seed_graph(params.seed_graph, params.t0);
  const int n = 100000;
  std::vector<double> p_counts(3, 0.0), r_counts(9, 0.0);
  std::vector<double> hits(11, 0.0);  // r-edge endpoint relative to parent
  Engine rng = make_stream(77, 0);
  GrowthStepRecord rec;
  for (int s = 0; s < n; ++s) {
    Graph g = frozen;
    grow_step(g, params, rng, rec);
    p_counts[rec.p_edges.size()] += 1;
    r_counts[rec.r_edges.size()] += 1;
    for (Vertex v : rec.r_edges) hits[(v + 10 - rec.parent) % 10] += 1;
  }
  const auto p_law = test::binomial_pmf(2, 0.4);
  const auto r_law = test::binomial_pmf(8, 0.3);
  EXPECT_TRUE(test::chi_square_ok(p_counts, p_law, n));
  EXPECT_TRUE(test::chi_square_ok(r_counts, r_law, n));
  // Offsets 1 and 9 are the parent's neighbors; the other 8 (the parent itself
  // included) are hit with probability r / i = 0.3 each.
  EXPECT_EQ(hits[1], 0.0);
  EXPECT_EQ(hits[9], 0.0);
  for (int off : {0, 2, 3, 4, 5, 6, 7, 8}) {
    EXPECT_NEAR(hits[off] / n, 0.3, 4.0 * std::sqrt(0.3 * 0.7 / n)) << "offset " << off;
  }
}

// Parent of degree 9 in K_10: the dense branch enumerates the complement,
// which is just the parent itself.
TEST(GrowStep, DenseParentUsesComplementEnumeration) {
  DDParams params;
  params.p = 0.3;
  params.r = 4.0;
  params.t0 = 10;
  params.seed_graph = {SeedGraphKind::complete, {}};
  params.horizon_t = 11;
  const Graph frozen = make_seed_graph(params.seed_graph, params.t0);
  const int n = 50000;
  int self_links = 0;
  std::vector<double> p_counts(10, 0.0);
  Engine rng = make_stream(8, 0);
  for (int s = 0; s < n; ++s) {
    Graph g = frozen;
    const auto rec = grow_step(g, params, rng);
    ASSERT_LE(rec.r_edges.size(), 1u);
    if (!rec.r_edges.empty()) {
      EXPECT_EQ(rec.r_edges[0], rec.parent);
      ++self_links;
    }
    p_counts[rec.p_edges.size()] += 1;
  }
  EXPECT_NEAR(static_cast<double>(self_links) / n, 0.4, 4.0 * std::sqrt(0.24 / n));
  EXPECT_TRUE(test::chi_square_ok(p_counts, test::binomial_pmf(9, 0.3), n));
}

TEST(Generate, EmptySeedWithoutRandomEdgesStaysEmpty) {
  DDParams params = k2(0.7, 0.0, 500);
  params.seed_graph = {SeedGraphKind::empty, {}};
  Engine rng = make_stream(1, 0);
  const Graph g = generate(params, rng);
  EXPECT_EQ(g.order(), 500u);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.max_degree(), 0u);
}

TEST(Generate, CopyAllFromK2ToThreeVerticesIsAPath) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Engine rng = make_stream(seed, 0);
    const Graph g = generate(k2(1.0, 0.0, 3), rng);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(g.max_degree(), 2u);
  }
}

TEST(Generate, SameSeedSameEdges) {
  const DDParams params = k2(0.6, 1.0, 2000);
  Engine a = make_stream(42, 0), b = make_stream(42, 0), c = make_stream(43, 0);
  const Graph ga = generate(params, a);
  const Graph gb = generate(params, b);
  const Graph gc = generate(params, c);
  EXPECT_EQ(ga.edges(), gb.edges());
  EXPECT_NE(ga.edges(), gc.edges());
}

TEST(Generate, InvariantsHoldAcrossParameterGrid) {
  for (double p : {0.0, 0.3, 0.5, 0.8, 1.0}) {
    for (double r : {0.0, 0.5, 2.0}) {
      for (auto kind : {SeedGraphKind::complete, SeedGraphKind::path, SeedGraphKind::empty}) {
        DDParams params;
        params.p = p;
        params.r = r;
        params.t0 = 3;
        params.seed_graph = {kind, {}};
        params.horizon_t = 400;
        Engine rng = make_stream(9, 0);
        const Graph g = generate(params, rng);
        ASSERT_EQ(g.order(), 400u);
        const auto broken = g.check_invariants();
        EXPECT_FALSE(broken) << "p=" << p << " r=" << r << ": " << *broken;
      }
    }
  }
}

TEST(Generate, MemoryGuardRefusesHugeRuns) {
  GenerateOptions tight;
  tight.max_edges = 1000;
  Engine rng = make_stream(1, 0);
  EXPECT_THROW(generate(k2(1.0, 0.0, 5000), rng, tight), ResourceError);
  EXPECT_NO_THROW(generate(k2(0.1, 0.0, 5000), rng, tight));
}

TEST(TrackDegree, EmptySeedNoRandomEdgesIsAllZero) {
  DDParams params = k2(0.5, 0.0, 100);
  params.seed_graph = {SeedGraphKind::empty, {}};
  Engine rng = make_stream(2, 0);
  const auto traj = track_degree(params, 1, rng);
  ASSERT_EQ(traj.size(), 99u);  // tau = 2..100
  for (auto d : traj) EXPECT_EQ(d, 0u);
}

TEST(TrackDegree, IncrementsAreZeroOrOne) {
  for (Vertex s : {1u, 2u, 10u, 150u}) {
    Engine rng = make_stream(s, 0);
    const DDParams params = k2(0.7, 1.0, 1000);
    const auto traj = track_degree(params, s, rng);
    ASSERT_EQ(traj.size(), 1000u - std::max<Vertex>(s, 2u) + 1);
    for (std::size_t i = 1; i < traj.size(); ++i) {
      const auto step = traj[i] - traj[i - 1];
      ASSERT_TRUE(step == 0 || step == 1);
    }
  }
}

TEST(TrackDegree, MatchesTheFullGraph) {
  const DDParams params = k2(0.6, 1.0, 700);
  Engine a = make_stream(4, 0), b = make_stream(4, 0);
  const auto traj = track_degree(params, 5, a);
  const Graph g = generate(params, b);
  EXPECT_EQ(traj.back(), g.degree(5));
}

// deg_3(1) = 2 needs parent 2 (prob 1/2) and a kept copy of {2,1} (prob 1/2).
TEST(TrackDegree, FirstVertexGainsWithProbabilityOneQuarter) {
  const DDParams params = k2(0.5, 0.0, 3);
  const int n = 40000;
  int gains = 0;
  for (int s = 0; s < n; ++s) {
    Engine rng = make_stream(99, static_cast<std::uint64_t>(s));
    gains += track_degree(params, 1, rng).back() == 2 ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(gains) / n, 0.25, 4.0 * std::sqrt(0.25 * 0.75 / n));
}

TEST(TrackDegree, RejectsVertexBeyondHorizon) {
  Engine rng = make_stream(1, 0);
  EXPECT_THROW(track_degree(k2(0.5, 0.0, 10), 11, rng), ValidationError);
}

TEST(Stats, SmallGraphs) {
  Graph path = make_seed_graph({SeedGraphKind::path, {}}, 3);
  auto s = stats(path);
  EXPECT_EQ(s.max_degree, 2u);
  EXPECT_DOUBLE_EQ(s.avg_degree, 4.0 / 3.0);
  EXPECT_EQ(s.edge_count, 2u);
  EXPECT_EQ(s.degree_histogram, (std::vector<std::uint64_t>{0, 2, 1}));

  s = stats(make_seed_graph({SeedGraphKind::complete, {}}, 2));
  EXPECT_EQ(s.max_degree, 1u);
  EXPECT_DOUBLE_EQ(s.avg_degree, 1.0);

  s = stats(make_seed_graph({SeedGraphKind::empty, {}}, 5));
  EXPECT_EQ(s.max_degree, 0u);
  EXPECT_DOUBLE_EQ(s.avg_degree, 0.0);
  EXPECT_EQ(s.degree_histogram, (std::vector<std::uint64_t>{5}));
}

TEST(Stats, HistogramSumsToOrder) {
  Engine rng = make_stream(12, 0);
  const Graph g = generate(k2(0.55, 1.0, 3000), rng);
  const auto s = stats(g);
  std::uint64_t total = 0, degree_sum = 0;
  for (std::size_t k = 0; k < s.degree_histogram.size(); ++k) {
    total += s.degree_histogram[k];
    degree_sum += k * s.degree_histogram[k];
  }
  EXPECT_EQ(total, g.order());
  EXPECT_EQ(degree_sum, 2 * g.edge_count());
  EXPECT_DOUBLE_EQ(s.avg_degree, 2.0 * static_cast<double>(g.edge_count()) / 3000.0);
}

TEST(EdgeList, ExactFormatForThePathCase) {
  const DDParams params = k2(1.0, 0.0, 3);
  Engine rng = make_stream(7, 0);
  const Graph g = generate(params, rng);
  std::ostringstream out;
  write_edge_list(out, g, params, 7);
  const std::string header =
      "# t=3\n# p=1\n# r=0\n# t0=2\n# seed_graph=complete:2\n# master_seed=7\n"
      "# rng_algo=mt19937_64+splitmix64\n1 2\n";
  const std::string text = out.str();
  ASSERT_EQ(text.substr(0, header.size()), header);
  const std::string tail = text.substr(header.size());
  EXPECT_TRUE(tail == "1 3\n" || tail == "2 3\n") << tail;
}

TEST(EdgeList, ReadBackReproducesGraph) {
  const DDParams params = k2(0.65, 1.25, 800);
  Engine rng = make_stream(21, 0);
  const Graph g = generate(params, rng);
  std::stringstream buf;
  write_edge_list(buf, g, params, 21);
  const EdgeListFile file = read_edge_list(buf);
  EXPECT_EQ(file.graph.order(), 800u);
  EXPECT_EQ(file.graph.edges(), g.edges());
  EXPECT_EQ(file.header.at("p"), "0.65");
  EXPECT_EQ(file.header.at("r"), "1.25");
  EXPECT_EQ(file.header.at("seed_graph"), "complete:2");
  EXPECT_FALSE(file.graph.check_invariants());
}

TEST(Random, BinomialSamplerMatchesLaw) {
  Engine rng = make_stream(5, 5);
  for (auto [n, q] : {std::pair{20ull, 0.1}, std::pair{30ull, 0.8}, std::pair{5ull, 0.5}}) {
    const int draws = 60000;
    std::vector<double> counts(n + 1, 0.0);
    for (int i = 0; i < draws; ++i) counts[binomial(rng, n, q)] += 1;
    EXPECT_TRUE(test::chi_square_ok(counts, test::binomial_pmf(static_cast<int>(n), q), draws))
        << "n=" << n << " q=" << q;
  }
}

TEST(Random, UniformBelowCoversRange) {
  Engine rng = make_stream(6, 6);
  std::vector<double> counts(7, 0.0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) counts[uniform_below(rng, 7)] += 1;
  EXPECT_TRUE(test::chi_square_ok(counts, std::vector<double>(7, 1.0 / 7.0), draws));
}

TEST(Random, StreamsAreDistinct) {
  EXPECT_NE(derive_stream_seed(1, 0), derive_stream_seed(1, 1));
  EXPECT_NE(derive_stream_seed(1, 0), derive_stream_seed(2, 0));
  EXPECT_EQ(derive_stream_seed(1, 5), derive_stream_seed(1, 5));
}

}  // namespace
}  // namespace ddgraph
