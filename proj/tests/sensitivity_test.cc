//
// Copyright 2026 The Blowfish Privacy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "blowfish/sensitivity.h"

#include <algorithm>
#include <functional>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

namespace blowfish {
namespace {

using ::blowfish::testing::Distance;
using ::blowfish::testing::MakeDomain;
using ::blowfish::testing::MakePolicy;
using ::blowfish::testing::Query;
using ::blowfish::testing::RangeQuery;
using ::blowfish::testing::ThreeAttributeDomain;

double Closed(const QueryKind& q, const Policy& p) {
  auto r = ClosedFormSensitivity(q, p);
  EXPECT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->exactness, Exactness::kExact);
  return r.ok() ? r->value : -1;
}

double Brute(const QueryKind& q, const Policy& p, int n) {
  auto r = BruteForceSensitivity(q, p, n);
  EXPECT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->exactness, Exactness::kExact);
  EXPECT_EQ(r->method, Method::kBruteForce);
  return r.ok() ? r->value : -1;
}

// The marginal over (A1, A2) of the three-attribute domain, in the order
// (a1,b1), (a1,b2), (a2,b1), (a2,b2).
std::vector<CountQuery> MarginalA1A2(std::optional<int64_t> answer) {
  return {Query({{0, {0}}, {1, {0}}}, answer),
          Query({{0, {0}}, {1, {1}}}, answer),
          Query({{0, {1}}, {1, {0}}}, answer),
          Query({{0, {1}}, {1, {1}}}, answer)};
}

TEST(ClosedFormTest, Histograms) {
  DomainSpec line = MakeDomain({8});
  EXPECT_EQ(Closed(QueryKind::CompleteHistogram(),
                   MakePolicy(line, SecretGraph::Full())),
            2);
  EXPECT_EQ(Closed(QueryKind::CompleteHistogram(), MakePolicy(line, Distance(0))),
            0);
  SecretGraph halves = *SecretGraph::Partition(line, {0, 0, 0, 0, 1, 1, 1, 1});
  EXPECT_EQ(Closed(QueryKind::PartitionHistogram({0, 0, 0, 0, 1, 1, 1, 1}),
                   MakePolicy(line, halves)),
            0);
  EXPECT_EQ(Closed(QueryKind::PartitionHistogram({0, 0, 1, 1, 1, 1, 1, 1}),
                   MakePolicy(line, halves)),
            2);
}

TEST(ClosedFormTest, Cumulative) {
  DomainSpec line = MakeDomain({50});
  EXPECT_EQ(Closed(QueryKind::CumulativeHistogram(),
                   MakePolicy(line, SecretGraph::Full())),
            49);
  EXPECT_EQ(Closed(QueryKind::CumulativeHistogram(),
                   MakePolicy(line, Distance(1))),
            1);
  EXPECT_EQ(Closed(QueryKind::CumulativeHistogram(),
                   MakePolicy(line, Distance(7))),
            7);
}

TEST(ClosedFormTest, LinearSum) {
  DomainSpec line = MakeDomain({11});
  QueryKind q = QueryKind::LinearSum({1, -3, 2}, 0, 10);
  EXPECT_EQ(Closed(q, MakePolicy(line, Distance(4))), 4 * 3);
  EXPECT_EQ(Closed(q, MakePolicy(line, SecretGraph::Full())), 10 * 3);
  QueryKind scaled = QueryKind::LinearSum({2}, 5, 25);
  EXPECT_EQ(Closed(scaled, MakePolicy(line, Distance(3))), 3 * 2 * 2);
}

TEST(ClosedFormTest, MultiAttributeDistanceMatchesPairScan) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> cards(1 + rng() % 3);
    for (int& c : cards) c = 1 + static_cast<int>(rng() % 5);
    DomainSpec domain = MakeDomain(cards);
    const int64_t theta = static_cast<int64_t>(rng() % 6);
    int64_t rank_diff = 0;
    int64_t l1 = 0;
    for (int64_t x = 0; x < domain.size(); ++x) {
      for (int64_t y = 0; y < domain.size(); ++y) {
        const int64_t d = domain.RankDistance(x, y);
        if (x == y || d > theta) continue;
        rank_diff = std::max(rank_diff, std::abs(x - y));
        l1 = std::max(l1, d);
      }
    }
    Policy p = MakePolicy(domain, Distance(theta));
    EXPECT_EQ(Closed(QueryKind::CumulativeHistogram(), p), rank_diff);
    EXPECT_EQ(Closed(QueryKind::KmeansSum(3), p), 2 * l1);
  }
}

TEST(ClosedFormTest, Kmeans) {
  DomainSpec grid = MakeDomain({10, 10});
  EXPECT_EQ(Closed(QueryKind::KmeansSize(4),
                   MakePolicy(grid, SecretGraph::Full())),
            2);
  EXPECT_EQ(Closed(QueryKind::KmeansSum(4),
                   MakePolicy(grid, SecretGraph::Full())),
            2 * 18);
  EXPECT_EQ(Closed(QueryKind::KmeansSum(4), MakePolicy(grid, Distance(3))), 6);
  DomainSpec uneven = MakeDomain({3, 7});
  EXPECT_EQ(Closed(QueryKind::KmeansSum(2),
                   MakePolicy(uneven, SecretGraph::Attribute())),
            2 * 6);
  // Cells are 5x5 blocks; d(P) = 8.
  std::vector<int> cells(100);
  for (int r = 0; r < 100; ++r) cells[r] = (r / 10) / 5 * 2 + (r % 10) / 5;
  EXPECT_EQ(Closed(QueryKind::KmeansSum(2),
                   MakePolicy(grid, *SecretGraph::Partition(grid, cells))),
            2 * 8);
}

TEST(ClosedFormTest, RejectsConstraintsAndBadQueries) {
  DomainSpec line = MakeDomain({4});
  Policy constrained =
      MakePolicy(line, SecretGraph::Full(), {Query({{0, {1}}}, 1)});
  EXPECT_EQ(ClosedFormSensitivity(QueryKind::CompleteHistogram(), constrained)
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
  Policy cardinality = MakePolicy(line, SecretGraph::Full(), {Query({}, 3)});
  EXPECT_TRUE(
      ClosedFormSensitivity(QueryKind::CompleteHistogram(), cardinality).ok());
  Policy free = MakePolicy(line, SecretGraph::Full());
  EXPECT_FALSE(ClosedFormSensitivity(QueryKind::PartitionHistogram({0}), free)
                   .ok());
  EXPECT_FALSE(ClosedFormSensitivity(QueryKind::KmeansSum(0), free).ok());
}

TEST(BruteForceTest, Examples) {
  EXPECT_EQ(Brute(QueryKind::CompleteHistogram(),
                  MakePolicy(MakeDomain({3}), SecretGraph::Full()), 2),
            2);
  DomainSpec line = MakeDomain({4});
  SecretGraph halves = *SecretGraph::Partition(line, {0, 0, 1, 1});
  EXPECT_EQ(Brute(QueryKind::PartitionHistogram({0, 0, 1, 1}),
                  MakePolicy(line, halves), 2),
            0);
}

TEST(BruteForceTest, SwapUnderCountConstraintLeavesHistogramUnchanged) {
  // Neighbors swap the two tuples, so the histogram does not move.
  Policy p = MakePolicy(MakeDomain({2}), SecretGraph::Full(),
                        {Query({{0, {1}}}, 1)});
  EXPECT_EQ(Brute(QueryKind::CompleteHistogram(), p, 2), 0);
  EXPECT_EQ(SparseConstraintSensitivity(p)->value, 4);
}

TEST(BruteForceTest, KmeansHasNoOracle) {
  Policy p = MakePolicy(MakeDomain({3}), SecretGraph::Full());
  EXPECT_EQ(BruteForceSensitivity(QueryKind::KmeansSum(2), p, 2).status().code(),
            absl::StatusCode::kUnimplemented);
}

TEST(BruteForceTest, LinearSumNeedsOneWeightPerTuple) {
  Policy p = MakePolicy(MakeDomain({3}), SecretGraph::Full());
  EXPECT_FALSE(
      BruteForceSensitivity(QueryKind::LinearSum({1, 1}, 0, 2), p, 3).ok());
}

TEST(OracleAgreementTest, ClosedFormEqualsBruteForce) {
  std::mt19937_64 rng(101);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int dims = 1 + static_cast<int>(rng() % 2);
    std::vector<int> cards;
    for (int d = 0; d < dims; ++d) {
      cards.push_back(1 + static_cast<int>(rng() % (dims == 1 ? 6 : 3)));
    }
    DomainSpec domain = MakeDomain(cards);
    const int n = 1 + static_cast<int>(rng() % 3);
    SecretGraph graph = SecretGraph::Full();
    switch (trial % 5) {
      case 1:
        graph = SecretGraph::Attribute();
        break;
      case 2: {
        std::vector<int> cells(domain.size());
        for (int& c : cells) c = static_cast<int>(rng() % 2);
        graph = *SecretGraph::Partition(domain, cells);
        break;
      }
      case 3:
        graph = Distance(static_cast<int64_t>(rng() % 3));
        break;
      case 4: {
        std::vector<std::pair<int64_t, int64_t>> edges;
        for (int64_t x = 0; x < domain.size(); ++x) {
          for (int64_t y = x + 1; y < domain.size(); ++y) {
            if (rng() % 2) edges.emplace_back(x, y);
          }
        }
        graph = *SecretGraph::Explicit(domain, edges);
        break;
      }
    }
    Policy p = MakePolicy(domain, graph);
    std::vector<int> cells(domain.size());
    for (int& c : cells) c = static_cast<int>(rng() % 3);
    std::vector<double> weights(n);
    for (double& w : weights) w = static_cast<double>(rng() % 7) - 3;
    for (const QueryKind& q :
         {QueryKind::CompleteHistogram(), QueryKind::PartitionHistogram(cells),
          QueryKind::CumulativeHistogram(),
          QueryKind::LinearSum(weights, 0,
                               static_cast<double>(domain.size() - 1))}) {
      EXPECT_EQ(Closed(q, p), Brute(q, p, n))
          << graph.Describe() << " " << QueryKindName(q.type) << " n=" << n;
    }
    ++checked;
  }
  EXPECT_GE(checked, 50);
}

TEST(LiftLowerTest, ThreeAttributeExample) {
  DomainSpec domain = ThreeAttributeDomain();
  const auto q = MarginalA1A2(1);
  const int64_t x = domain.Rank(Point{{0, 0, 0}});
  const int64_t y = domain.Rank(Point{{1, 1, 1}});
  EXPECT_EQ(LiftsLowers(domain, x, y, q[3]), LiftLower::kLifts);
  EXPECT_EQ(LiftsLowers(domain, x, y, q[0]), LiftLower::kLowers);
  const int64_t u = domain.Rank(Point{{0, 1, 0}});
  const int64_t v = domain.Rank(Point{{0, 1, 1}});
  for (const CountQuery& query : q) {
    EXPECT_EQ(LiftsLowers(domain, u, v, query), LiftLower::kNeither);
  }
  EXPECT_EQ(LiftsLowers(domain, x, y, Query({})), LiftLower::kNeither);
}

TEST(SparseTest, Examples) {
  Policy marginal =
      MakePolicy(ThreeAttributeDomain(), SecretGraph::Full(), MarginalA1A2(1));
  EXPECT_TRUE(*IsSparse(marginal));
  Policy nested = MakePolicy(MakeDomain({3}), SecretGraph::Full(),
                             {RangeQuery({{0, {1, 2}}}), RangeQuery({{0, {2, 2}}})});
  EXPECT_FALSE(*IsSparse(nested));
  EXPECT_EQ(BuildPolicyGraph(nested).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_TRUE(*IsSparse(MakePolicy(MakeDomain({3}), SecretGraph::Full())));
  EXPECT_FALSE(IsSparse(MakePolicy(MakeDomain({5000}), SecretGraph::Full())).ok());
}

TEST(PolicyGraphTest, MarginalGivesCompleteDigraph) {
  Policy p =
      MakePolicy(ThreeAttributeDomain(), SecretGraph::Full(), MarginalA1A2(1));
  auto graph = BuildPolicyGraph(p);
  ASSERT_TRUE(graph.ok());
  EXPECT_EQ(graph->num_queries, 4);
  EXPECT_EQ(graph->edges.size(), 13u);
  for (int u = 0; u < 4; ++u) {
    EXPECT_FALSE(graph->HasEdge(graph->plus(), u));
    EXPECT_FALSE(graph->HasEdge(u, graph->minus()));
    for (int v = 0; v < 4; ++v) EXPECT_EQ(graph->HasEdge(u, v), u != v);
  }
  EXPECT_TRUE(graph->HasEdge(graph->plus(), graph->minus()));
  // The witness of (q1, q4) lowers q1 and lifts q4.
  const auto [x, y] = graph->edges.at({0, 3});
  EXPECT_EQ(LiftsLowers(p.domain, x, y, p.constraints.queries[0]),
            LiftLower::kLowers);
  EXPECT_EQ(LiftsLowers(p.domain, x, y, p.constraints.queries[3]),
            LiftLower::kLifts);
  auto ax = ComputeAlphaXi(*graph);
  ASSERT_TRUE(ax.ok());
  EXPECT_EQ(ax->alpha, 4);
  EXPECT_EQ(ax->xi, 1);
}

TEST(PolicyGraphTest, EmptyAndTrivialQueries) {
  Policy empty = MakePolicy(MakeDomain({3}), SecretGraph::Full());
  auto g = BuildPolicyGraph(empty);
  ASSERT_TRUE(g.ok());
  EXPECT_EQ(g->num_vertices(), 2);
  EXPECT_EQ(g->edges.size(), 1u);
  Policy trivial =
      MakePolicy(MakeDomain({3}), SecretGraph::Full(), {Query({}, 2)});
  g = BuildPolicyGraph(trivial);
  ASSERT_TRUE(g.ok());
  EXPECT_EQ(g->num_vertices(), 3);
  EXPECT_EQ(g->edges.size(), 1u);
}

// Plain backtracking over simple paths.
AlphaXi BacktrackAlphaXi(const PolicyGraph& g) {
  const int n = g.num_vertices();
  AlphaXi out;
  std::vector<bool> used(n, false);
  std::function<void(int, int, int)> cycles = [&](int start, int v, int len) {
    for (int w = 0; w < n; ++w) {
      if (!g.HasEdge(v, w)) continue;
      if (w == start && len >= 1) out.alpha = std::max(out.alpha, len + 1);
      if (used[w]) continue;
      used[w] = true;
      cycles(start, w, len + 1);
      used[w] = false;
    }
  };
  for (int s = 0; s < n; ++s) {
    used.assign(n, false);
    used[s] = true;
    cycles(s, s, 0);
  }
  std::function<void(int, int)> paths = [&](int v, int len) {
    if (v == g.minus()) {
      out.xi = std::max(out.xi, len);
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (!g.HasEdge(v, w) || used[w]) continue;
      used[w] = true;
      paths(w, len + 1);
      used[w] = false;
    }
  };
  used.assign(n, false);
  used[g.plus()] = true;
  paths(g.plus(), 0);
  return out;
}

TEST(AlphaXiTest, Examples) {
  PolicyGraph chain;
  chain.num_queries = 2;
  chain.edges = {{{2, 0}, {0, 0}}, {{0, 1}, {0, 0}}, {{1, 3}, {0, 0}},
                 {{2, 3}, {-1, -1}}};
  auto ax = ComputeAlphaXi(chain);
  ASSERT_TRUE(ax.ok());
  EXPECT_EQ(ax->alpha, 0);
  EXPECT_EQ(ax->xi, 3);
  PolicyGraph big;
  big.num_queries = 15;
  EXPECT_FALSE(ComputeAlphaXi(big).ok());
}

TEST(AlphaXiTest, AgreesWithBacktracking) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    PolicyGraph g;
    g.num_queries = static_cast<int>(rng() % 9);
    const int n = g.num_vertices();
    const int density = 1 + static_cast<int>(rng() % 4);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (u != v && static_cast<int>(rng() % 5) < density) {
          g.edges[{u, v}] = {0, 0};
        }
      }
    }
    g.edges[{g.plus(), g.minus()}] = {-1, -1};
    auto fast = ComputeAlphaXi(g);
    ASSERT_TRUE(fast.ok());
    AlphaXi slow = BacktrackAlphaXi(g);
    EXPECT_EQ(fast->alpha, slow.alpha) << "trial " << trial;
    EXPECT_EQ(fast->xi, slow.xi) << "trial " << trial;
  }
}

TEST(SparseEngineTest, Examples) {
  Policy marginal =
      MakePolicy(ThreeAttributeDomain(), SecretGraph::Full(), MarginalA1A2(1));
  auto r = SparseConstraintSensitivity(marginal);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->value, 8);
  EXPECT_EQ(r->exactness, Exactness::kUpperBound);
  EXPECT_EQ(r->method, Method::kSparseEngine);
  EXPECT_EQ(SparseConstraintSensitivity(
                MakePolicy(MakeDomain({4}), SecretGraph::Full()))
                ->value,
            2);
}

TEST(SparseEngineTest, SoundOnCompleteGraphs) {
  std::mt19937_64 rng(211);
  int checked = 0;
  for (int trial = 0; trial < 120 && checked < 40; ++trial) {
    DomainSpec domain = MakeDomain({static_cast<int>(2 + rng() % 3)});
    const int n = 2 + static_cast<int>(rng() % 2);
    std::vector<CountQuery> queries;
    const int m = 1 + static_cast<int>(rng() % 2);
    std::vector<int> owner(domain.size());
    for (int& o : owner) o = static_cast<int>(rng() % (m + 1)) - 1;
    for (int q = 0; q < m; ++q) {
      std::vector<int> values;
      for (int v = 0; v < domain.size(); ++v) {
        if (owner[v] == q) values.push_back(v);
      }
      if (values.empty()) continue;
      queries.push_back(Query({{0, values}}, static_cast<int64_t>(rng() % n)));
    }
    Policy p = MakePolicy(domain, SecretGraph::Full(), queries);
    if (!*IsSparse(p)) continue;
    auto brute = BruteForceSensitivity(QueryKind::CompleteHistogram(), p, n);
    if (!brute.ok()) continue;
    EXPECT_LE(brute->value, SparseConstraintSensitivity(p)->value);
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

TEST(SparseEngineTest, CardinalityOfQueriesIsNotACap) {
  // Two tuples leaving and entering the constrained range both move the
  // histogram; the engine reports 4 and so does the oracle.
  Policy p = MakePolicy(MakeDomain({4}), SecretGraph::Full(),
                        {RangeQuery({{0, {1, 2}}}, 1)});
  EXPECT_EQ(Brute(QueryKind::CompleteHistogram(), p, 2), 4);
  EXPECT_EQ(SparseConstraintSensitivity(p)->value, 4);
}

TEST(SparseEngineTest, FreeNonEdgeChangesBreakTheBoundOnPaths) {
  Policy p = MakePolicy(MakeDomain({6}), Distance(1),
                        {Query({{0, {1, 2}}}, 1), Query({{0, {0, 1, 4, 5}}}, 2)});
  ASSERT_TRUE(*IsSparse(p));
  EXPECT_EQ(SparseConstraintSensitivity(p)->value, 4);
  EXPECT_EQ(Brute(QueryKind::CompleteHistogram(), p, 3), 6);
}

TEST(SpecializedTest, SingleMarginalFullGraph) {
  Policy p =
      MakePolicy(ThreeAttributeDomain(), SecretGraph::Full(), MarginalA1A2(1));
  auto r = SpecializedConstraintSensitivity(p);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->value, 8);
  EXPECT_EQ(r->exactness, Exactness::kExact);
  EXPECT_EQ(r->value, SparseConstraintSensitivity(p)->value);
}

TEST(SpecializedTest, DisjointMarginalsAttributeGraph) {
  DomainSpec domain = MakeDomain({2, 2, 3, 2});
  std::vector<CountQuery> queries;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) queries.push_back(Query({{0, {a}}, {1, {b}}}));
  }
  for (int c = 0; c < 3; ++c) queries.push_back(Query({{2, {c}}}));
  Policy p = MakePolicy(domain, SecretGraph::Attribute(), queries);
  auto r = SpecializedConstraintSensitivity(p);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->value, 8);
  EXPECT_EQ(r->value, SparseConstraintSensitivity(p)->value);
}

TEST(SpecializedTest, MarginalsAgreeWithEngineOnRandomShapes) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> cards;
    const int dims = 2 + static_cast<int>(rng() % 3);
    for (int d = 0; d < dims; ++d) {
      cards.push_back(1 + static_cast<int>(rng() % 3));
    }
    DomainSpec domain = MakeDomain(cards);
    // Split attributes into two disjoint marginals, leaving one free.
    std::vector<CountQuery> queries;
    std::vector<std::vector<int>> groups(2);
    for (int a = 0; a + 1 < dims; ++a) groups[rng() % 2].push_back(a);
    for (const auto& attrs : groups) {
      if (attrs.empty()) continue;
      int64_t cells = 1;
      for (int a : attrs) cells *= cards[a];
      for (int64_t c = 0; c < cells; ++c) {
        std::map<int, std::vector<int>> allowed;
        int64_t rest = c;
        for (int a : attrs) {
          allowed[a] = {static_cast<int>(rest % cards[a])};
          rest /= cards[a];
        }
        queries.push_back(Query(allowed));
      }
    }
    Policy p = MakePolicy(domain, SecretGraph::Attribute(), queries);
    auto special = SpecializedConstraintSensitivity(p);
    ASSERT_TRUE(special.ok()) << special.status();
    auto engine = SparseConstraintSensitivity(p);
    ASSERT_TRUE(engine.ok());
    if (queries.size() + 2 <= kMaxPolicyGraphVertices) {
      EXPECT_EQ(special->value, engine->value) << "trial " << trial;
    }
  }
}

TEST(SpecializedTest, DisjointRectangles) {
  DomainSpec grid = MakeDomain({10, 10});
  Policy p = MakePolicy(grid, Distance(2),
                        {RangeQuery({{0, {0, 2}}, {1, {0, 2}}}),
                         RangeQuery({{0, {0, 2}}, {1, {4, 6}}}),
                         RangeQuery({{0, {7, 9}}, {1, {7, 9}}})});
  auto r = SpecializedConstraintSensitivity(p);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->value, 6);
  EXPECT_EQ(r->exactness, Exactness::kExact);

  Policy points = MakePolicy(grid, Distance(2),
                             {RangeQuery({{0, {0, 0}}, {1, {0, 0}}})});
  EXPECT_EQ(SpecializedConstraintSensitivity(points)->exactness,
            Exactness::kUpperBound);
}

TEST(SpecializedTest, UnrecognizedShapes) {
  DomainSpec grid = MakeDomain({4, 4});
  EXPECT_EQ(SpecializedConstraintSensitivity(
                MakePolicy(grid, Distance(1),
                           {RangeQuery({{0, {0, 2}}}), RangeQuery({{0, {1, 3}}})}))
                .status()
                .code(),
            absl::StatusCode::kNotFound);
  EXPECT_FALSE(SpecializedConstraintSensitivity(
                   MakePolicy(grid, SecretGraph::Full(),
                              {Query({{0, {0}}}), Query({{0, {1}}})}))
                   .ok());
  EXPECT_FALSE(
      SpecializedConstraintSensitivity(MakePolicy(grid, SecretGraph::Full()))
          .ok());
}

TEST(ComputeSensitivityTest, AutoDispatch) {
  Policy free = MakePolicy(MakeDomain({5}), Distance(2));
  auto r = ComputeSensitivity(QueryKind::CumulativeHistogram(), free);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->method, Method::kClosedForm);
  EXPECT_EQ(r->value, 2);
  Policy marginal =
      MakePolicy(ThreeAttributeDomain(), SecretGraph::Full(), MarginalA1A2(1));
  r = ComputeSensitivity(QueryKind::CompleteHistogram(), marginal);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->method, Method::kSparseEngine);
  EXPECT_FALSE(ComputeSensitivity(QueryKind::CumulativeHistogram(), marginal)
                   .ok());
  SensitivityRequest brute;
  brute.method = SensitivityMethod::kBruteForce;
  brute.n = 4;
  r = ComputeSensitivity(QueryKind::CumulativeHistogram(), marginal, brute);
  EXPECT_TRUE(r.ok()) << r.status();
}

}  // namespace
}  // namespace blowfish
