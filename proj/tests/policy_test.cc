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

#include "blowfish/policy.h"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "gtest/gtest.h"
#include "test_util.h"

namespace blowfish {
namespace {

using ::blowfish::testing::Distance;
using ::blowfish::testing::MakeDomain;
using ::blowfish::testing::MakePolicy;
using ::blowfish::testing::Query;
using ::blowfish::testing::RangeQuery;

SecretGraph RandomGraph(const DomainSpec& domain, std::mt19937_64& rng) {
  switch (rng() % 5) {
    case 0:
      return SecretGraph::Full();
    case 1:
      return SecretGraph::Attribute();
    case 2: {
      std::vector<int> cells(domain.size());
      for (int& c : cells) c = static_cast<int>(rng() % 3);
      return *SecretGraph::Partition(domain, cells);
    }
    case 3:
      return Distance(static_cast<int64_t>(rng() % 4));
    default: {
      std::vector<std::pair<int64_t, int64_t>> edges;
      for (int64_t x = 0; x < domain.size(); ++x) {
        for (int64_t y = x + 1; y < domain.size(); ++y) {
          if (rng() % 3 == 0) edges.emplace_back(x, y);
        }
      }
      return *SecretGraph::Explicit(domain, edges);
    }
  }
}

TEST(IsEdgeTest, Examples) {
  DomainSpec domain = MakeDomain({3, 3});
  const int64_t a = domain.Rank(Point{{0, 0}});
  const int64_t b = domain.Rank(Point{{1, 1}});
  const int64_t c = domain.Rank(Point{{0, 2}});
  EXPECT_TRUE(SecretGraph::Full().IsEdge(domain, a, b));
  EXPECT_FALSE(SecretGraph::Full().IsEdge(domain, a, a));
  EXPECT_FALSE(SecretGraph::Attribute().IsEdge(domain, a, b));
  EXPECT_TRUE(SecretGraph::Attribute().IsEdge(domain, a, c));
  DomainSpec line = MakeDomain({6});
  EXPECT_FALSE(Distance(1).IsEdge(line, 1, 3));
  EXPECT_TRUE(Distance(1).IsEdge(line, 2, 3));
}

TEST(IsEdgeTest, SymmetricForAllKinds) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    DomainSpec domain = MakeDomain({static_cast<int>(1 + rng() % 4),
                                    static_cast<int>(1 + rng() % 4)});
    SecretGraph graph = RandomGraph(domain, rng);
    for (int64_t x = 0; x < domain.size(); ++x) {
      EXPECT_FALSE(graph.IsEdge(domain, x, x));
      for (int64_t y = 0; y < domain.size(); ++y) {
        EXPECT_EQ(graph.IsEdge(domain, x, y), graph.IsEdge(domain, y, x));
      }
    }
  }
}

TEST(SecretGraphTest, ConstructionErrors) {
  DomainSpec domain = MakeDomain({3});
  EXPECT_FALSE(SecretGraph::Partition(domain, {0, 1}).ok());
  EXPECT_FALSE(SecretGraph::Explicit(domain, {{0, 3}}).ok());
  EXPECT_FALSE(SecretGraph::Explicit(domain, {{1, 1}}).ok());
  EXPECT_FALSE(SecretGraph::DistanceThreshold(-1).ok());
}

TEST(GraphDistanceTest, Examples) {
  DomainSpec line = MakeDomain({6});
  EXPECT_EQ(Distance(1).Distance(line, 0, 4), 4);
  EXPECT_EQ(SecretGraph::Full().Distance(line, 0, 4), 1);
  EXPECT_EQ(SecretGraph::Full().Distance(line, 2, 2), 0);
  SecretGraph split = *SecretGraph::Partition(line, {0, 0, 0, 1, 1, 1});
  EXPECT_EQ(split.Distance(line, 0, 4), kInfiniteDistance);
  EXPECT_EQ(split.Distance(line, 0, 2), 1);
}

TEST(GraphDistanceTest, ClosedFormsAgreeWithBfs) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<int> cards;
    const int dims = 1 + static_cast<int>(rng() % 3);
    for (int d = 0; d < dims; ++d) {
      cards.push_back(1 + static_cast<int>(rng() % 6));
    }
    DomainSpec domain = MakeDomain(cards);
    if (domain.size() > 200) continue;
    SecretGraph graph = RandomGraph(domain, rng);
    for (int k = 0; k < 20; ++k) {
      const int64_t x = static_cast<int64_t>(rng() % domain.size());
      const int64_t y = static_cast<int64_t>(rng() % domain.size());
      EXPECT_EQ(graph.Distance(domain, x, y),
                graph.DistanceByBfs(domain, x, y))
          << graph.Describe() << " " << x << " " << y;
    }
  }
}

// ---- Independent neighbor oracle ------------------------------------------

using Change = std::tuple<int64_t, int64_t, int64_t>;

std::set<Change> TSet(const Policy& p, const Database& a, const Database& b) {
  std::set<Change> t;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i] && p.graph.IsEdge(p.domain, a[i], b[i])) {
      t.emplace(i, a[i], b[i]);
    }
  }
  return t;
}

// Symmetric difference of the (id, value) tuple sets.
std::set<std::pair<int64_t, int64_t>> DeltaSet(const Database& a,
                                               const Database& b) {
  std::set<std::pair<int64_t, int64_t>> d;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) {
      d.emplace(i, a[i]);
      d.emplace(i, b[i]);
    }
  }
  return d;
}

template <typename Set>
bool ProperSubset(const Set& a, const Set& b) {
  return a.size() < b.size() &&
         std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool InIQ(const Policy& p, const Database& db) {
  for (const CountQuery& q : p.constraints.queries) {
    if (!q.answer) continue;
    int64_t c = 0;
    for (int64_t r : db) c += q.Matches(p.domain, r);
    if (c != *q.answer) return false;
  }
  return true;
}

std::vector<Database> AllDatabases(const Policy& p, int n) {
  std::vector<Database> out = {{}};
  for (int i = 0; i < n; ++i) {
    std::vector<Database> next;
    for (const Database& db : out) {
      for (int64_t v = 0; v < p.domain.size(); ++v) {
        Database e = db;
        e.push_back(v);
        next.push_back(e);
      }
    }
    out = next;
  }
  std::vector<Database> valid;
  for (const Database& db : out) {
    if (InIQ(p, db)) valid.push_back(db);
  }
  return valid;
}

bool IsNeighbor(const Policy& p, const std::vector<Database>& iq,
                const Database& d1, const Database& d2) {
  if (!InIQ(p, d1) || !InIQ(p, d2)) return false;
  const auto t12 = TSet(p, d1, d2);
  if (t12.empty()) return false;
  const auto delta12 = DeltaSet(d2, d1);
  for (const Database& d3 : iq) {
    const auto t13 = TSet(p, d1, d3);
    if (!t13.empty() && ProperSubset(t13, t12)) return false;
    if (t13 == t12 && ProperSubset(DeltaSet(d3, d1), delta12)) return false;
  }
  return true;
}

std::set<std::pair<Database, Database>> OracleNeighbors(const Policy& p,
                                                        int n) {
  const auto iq = AllDatabases(p, n);
  std::set<std::pair<Database, Database>> out;
  for (const Database& a : iq) {
    for (const Database& b : iq) {
      if (IsNeighbor(p, iq, a, b)) out.emplace(a, b);
    }
  }
  return out;
}

std::set<std::pair<Database, Database>> EngineNeighbors(const Policy& p,
                                                        int n) {
  std::set<std::pair<Database, Database>> out;
  auto status = ForEachNeighbor(p, n, {}, [&](const Database& a,
                                              const Database& b) {
    out.emplace(a, b);
  });
  EXPECT_TRUE(status.ok()) << status;
  return out;
}

TEST(NeighborsTest, SingleTupleFullGraph) {
  Policy p = MakePolicy(MakeDomain({2}), SecretGraph::Full());
  auto pairs = EnumerateNeighbors(p, 1);
  ASSERT_TRUE(pairs.ok());
  ASSERT_EQ(pairs->size(), 2u);
  EXPECT_EQ((*pairs)[0].d1.rows[0].point, (Point{{0}}));
  EXPECT_EQ((*pairs)[0].d2.rows[0].point, (Point{{1}}));
  EXPECT_EQ((*pairs)[0].t_set.size(), 1u);
  EXPECT_EQ((*pairs)[0].delta, 2);
}

TEST(NeighborsTest, CountConstraintForcesSwap) {
  Policy p = MakePolicy(MakeDomain({2}), SecretGraph::Full(),
                        {Query({{0, {1}}}, 1)});
  auto pairs = EnumerateNeighbors(p, 2);
  ASSERT_TRUE(pairs.ok());
  ASSERT_EQ(pairs->size(), 2u);
  for (const NeighborPair& pair : *pairs) {
    EXPECT_EQ(pair.t_set.size(), 2u);
    EXPECT_EQ(pair.delta, 4);
    EXPECT_NE(pair.d1.rows[0].point, pair.d2.rows[0].point);
    EXPECT_NE(pair.d1.rows[1].point, pair.d2.rows[1].point);
  }
}

TEST(NeighborsTest, CrossPartitionChangeIsNotANeighbor) {
  DomainSpec domain = MakeDomain({2});
  Policy p = MakePolicy(domain, *SecretGraph::Partition(domain, {0, 1}));
  auto pairs = EnumerateNeighbors(p, 1);
  ASSERT_TRUE(pairs.ok());
  EXPECT_TRUE(pairs->empty());
}

TEST(NeighborsTest, Errors) {
  Policy p = MakePolicy(MakeDomain({10}), SecretGraph::Full());
  EXPECT_EQ(EnumerateNeighbors(p, 6).status().code(),
            absl::StatusCode::kResourceExhausted);
  EXPECT_TRUE(EnumerateNeighbors(p, 3, {.max_databases = 1000}).ok());
  EXPECT_FALSE(EnumerateNeighbors(p, 4, {.max_databases = 1000}).ok());
  Policy bad = MakePolicy(MakeDomain({2}), SecretGraph::Full(),
                          {Query({{0, {1}}}, 5)});
  EXPECT_EQ(EnumerateNeighbors(bad, 2).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(NeighborsTest, UnconstrainedEqualsSingleEdgeChanges) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    DomainSpec domain = MakeDomain({static_cast<int>(1 + rng() % 3),
                                    static_cast<int>(1 + rng() % 2)});
    Policy p = MakePolicy(domain, RandomGraph(domain, rng));
    const int n = 1 + static_cast<int>(rng() % 3);
    std::set<std::pair<Database, Database>> direct;
    for (const Database& d1 : AllDatabases(p, n)) {
      for (int i = 0; i < n; ++i) {
        for (int64_t y = 0; y < domain.size(); ++y) {
          if (!p.graph.IsEdge(domain, d1[i], y)) continue;
          Database d2 = d1;
          d2[i] = y;
          direct.emplace(d1, d2);
        }
      }
    }
    EXPECT_EQ(EngineNeighbors(p, n), direct) << p.graph.Describe();
  }
}

TEST(NeighborsTest, ConstrainedMatchesIndependentValidator) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    DomainSpec domain = MakeDomain({static_cast<int>(2 + rng() % 2),
                                    static_cast<int>(1 + rng() % 2)});
    std::vector<CountQuery> queries;
    const int m = 1 + static_cast<int>(rng() % 2);
    const int n = 2 + static_cast<int>(rng() % 2);
    for (int q = 0; q < m; ++q) {
      const int a = static_cast<int>(rng() % 2);
      const int card = domain.cardinality(a);
      const int lo = static_cast<int>(rng() % card);
      const int hi = lo + static_cast<int>(rng() % (card - lo));
      queries.push_back(
          RangeQuery({{a, {lo, hi}}}, static_cast<int64_t>(rng() % n)));
    }
    Policy p = MakePolicy(domain, RandomGraph(domain, rng), queries);
    if (AllDatabases(p, n).empty()) continue;
    EXPECT_EQ(EngineNeighbors(p, n), OracleNeighbors(p, n))
        << p.graph.Describe() << " trial " << trial;
  }
}

TEST(ParallelDecompositionTest, DisconnectedComponents) {
  DomainSpec domain = MakeDomain({4});
  Policy p = MakePolicy(domain, *SecretGraph::Partition(domain, {0, 0, 1, 1}),
                        {Query({{0, {0, 1}}}, 2), Query({{0, {2, 3}}}, 2)});
  auto ok = CheckParallelDecomposition(p, {{0, 1}, {2, 3}});
  ASSERT_TRUE(ok.ok());
  EXPECT_TRUE(*ok);
}

TEST(ParallelDecompositionTest, KnownMarginalWithFullGraphFails) {
  DomainSpec domain = MakeDomain({2, 2});
  Policy p = MakePolicy(domain, SecretGraph::Full(),
                        {Query({{0, {0}}}, 2), Query({{0, {1}}}, 2)});
  auto ok = CheckParallelDecomposition(p, {{0, 1}, {2, 3}});
  ASSERT_TRUE(ok.ok());
  EXPECT_FALSE(*ok);
  // One subset holding everyone is always fine.
  EXPECT_TRUE(*CheckParallelDecomposition(p, {{0, 1, 2, 3}}));
}

TEST(ParallelDecompositionTest, CardinalityOnly) {
  DomainSpec domain = MakeDomain({3, 2});
  Policy p = MakePolicy(domain, SecretGraph::Full(), {Query({}, 4)});
  EXPECT_EQ(p.constraint_kind(), ConstraintKind::kCardinalityOnly);
  EXPECT_TRUE(*CheckParallelDecomposition(p, {{0}, {1, 2}, {3}}));
  EXPECT_FALSE(CheckParallelDecomposition(p, {{0, 1}, {1}}).ok());
}

TEST(PolicyJsonTest, LoadsAllGraphKindsAndConstraints) {
  const char* domain_text = R"({"attributes": [
      {"name": "A1", "values": ["a1", "a2"]},
      {"name": "A2", "values": ["0", "1", "2", "3"]}]})";
  DomainSpec domain = *LoadDomain(domain_text);
  auto p = LoadPolicy(R"({"graph": {"kind": "distance", "theta": 2},
      "constraints": [{"A1": ["a2"], "A2": [1, 3], "answer": 3}, {}]})",
                      &domain);
  ASSERT_TRUE(p.ok()) << p.status();
  EXPECT_EQ(p->graph.kind(), GraphKind::kDistanceThreshold);
  EXPECT_EQ(p->graph.theta(), 2);
  ASSERT_EQ(p->constraints.queries.size(), 2u);
  EXPECT_EQ(p->constraints.queries[0].allowed.at(1),
            (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(*p->constraints.queries[0].answer, 3);
  EXPECT_EQ(p->constraint_kind(), ConstraintKind::kGeneral);

  auto q = LoadPolicy(R"({"graph": {"kind": "partition",
      "attributes": ["A1"]}})", &domain);
  ASSERT_TRUE(q.ok()) << q.status();
  EXPECT_TRUE(q->graph.IsEdge(domain, 0, 3));
  EXPECT_FALSE(q->graph.IsEdge(domain, 0, 4));

  auto r = LoadPolicy(R"({"graph": {"kind": "explicit", "edges": [[0, 7]]}})",
                      &domain);
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->graph.IsEdge(domain, 7, 0));

  auto again = PolicyFromJson(PolicyToJson(*p));
  ASSERT_TRUE(again.ok()) << again.status();
  EXPECT_EQ(again->constraints.queries[0].allowed,
            p->constraints.queries[0].allowed);
}

TEST(PolicyJsonTest, Errors) {
  DomainSpec domain = MakeDomain({3});
  EXPECT_FALSE(LoadPolicy("[", &domain).ok());
  EXPECT_FALSE(LoadPolicy(R"({"graph": {"kind": "ring"}})", &domain).ok());
  EXPECT_FALSE(LoadPolicy(R"({"graph": {"kind": "full"}})").ok());
  EXPECT_FALSE(LoadPolicy(R"({"graph": {"kind": "full"},
      "constraints": [{"B": ["0"]}]})", &domain).ok());
  EXPECT_FALSE(LoadPolicy(R"({"graph": {"kind": "full"},
      "constraints": [{"A1": ["7"]}]})", &domain).ok());
  EXPECT_FALSE(LoadPolicy(R"({"graph": {"kind": "distance"}})", &domain).ok());
}

}  // namespace
}  // namespace blowfish
