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

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "blowfish/sensitivity.h"
#include "blowfish/status_macros.h"

namespace blowfish {

namespace {

constexpr int64_t kMaxPolicyGraphDomain = 4096;

absl::Status CheckPairBudget(const DomainSpec& domain) {
  if (domain.size() > kMaxPolicyGraphDomain) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "policy-graph construction scans |T|^2 pairs; |T| = ", domain.size(),
        " exceeds ", kMaxPolicyGraphDomain));
  }
  return absl::OkStatus();
}

// matches[q][r] caches the predicate of query q on rank r.
std::vector<std::vector<uint8_t>> MatchTable(const Policy& policy) {
  const auto& queries = policy.constraints.queries;
  std::vector<std::vector<uint8_t>> table(queries.size());
  for (size_t q = 0; q < queries.size(); ++q) {
    table[q].resize(policy.domain.size());
    for (int64_t r = 0; r < policy.domain.size(); ++r) {
      table[q][r] = queries[q].Matches(policy.domain, r);
    }
  }
  return table;
}

// Walks the edges; fn(x, y, lifted, lowered) sees the unique lifted and
// lowered query (or -1). Returns false if some edge is not sparse.
template <typename Fn>
bool WalkSparseEdges(const Policy& policy, Fn fn) {
  const auto table = MatchTable(policy);
  bool sparse = true;
  policy.graph.ForEachEdge(policy.domain, [&](int64_t x, int64_t y) {
    if (!sparse) return;
    int lifted = -1;
    int lowered = -1;
    int lifts = 0;
    int lowers = 0;
    for (size_t q = 0; q < table.size(); ++q) {
      const bool fx = table[q][x];
      const bool fy = table[q][y];
      if (!fx && fy) {
        lifted = static_cast<int>(q);
        ++lifts;
      } else if (fx && !fy) {
        lowered = static_cast<int>(q);
        ++lowers;
      }
    }
    if (lifts > 1 || lowers > 1) {
      sparse = false;
      return;
    }
    fn(x, y, lifted, lowered);
  });
  return sparse;
}

// Union-find over rectangle indices.
int FindRoot(std::vector<int>& parent, int i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

struct Box {
  std::vector<int> lo;
  std::vector<int> hi;
};

Box BoxOf(const CountQuery& query, const DomainSpec& domain) {
  Box box;
  for (int a = 0; a < domain.num_attributes(); ++a) {
    auto it = query.allowed.find(a);
    if (it == query.allowed.end()) {
      box.lo.push_back(0);
      box.hi.push_back(domain.cardinality(a) - 1);
    } else {
      box.lo.push_back(it->second.front());
      box.hi.push_back(it->second.back());
    }
  }
  return box;
}

int64_t BoxDistance(const Box& a, const Box& b) {
  int64_t distance = 0;
  for (size_t i = 0; i < a.lo.size(); ++i) {
    distance += std::max({0, b.lo[i] - a.hi[i], a.lo[i] - b.hi[i]});
  }
  return distance;
}

bool BoxesOverlap(const Box& a, const Box& b) {
  for (size_t i = 0; i < a.lo.size(); ++i) {
    if (a.hi[i] < b.lo[i] || b.hi[i] < a.lo[i]) return false;
  }
  return true;
}

// Marginals: returns attribute set -> number of cells, or nullopt if the
// queries are not a union of complete marginals over disjoint proper
// attribute sets.
std::optional<std::vector<std::pair<std::vector<int>, int64_t>>> AsMarginals(
    const Policy& policy) {
  const DomainSpec& domain = policy.domain;
  std::map<std::vector<int>, std::set<std::vector<int>>> groups;
  for (const CountQuery& query : policy.constraints.queries) {
    if (query.allowed.empty()) return std::nullopt;
    std::vector<int> attrs;
    std::vector<int> cell;
    for (const auto& [attribute, values] : query.allowed) {
      if (values.size() != 1) return std::nullopt;
      attrs.push_back(attribute);
      cell.push_back(values.front());
    }
    if (!groups[attrs].insert(cell).second) return std::nullopt;
  }
  std::vector<std::pair<std::vector<int>, int64_t>> out;
  std::set<int> used;
  for (const auto& [attrs, cells] : groups) {
    if (static_cast<int>(attrs.size()) >= domain.num_attributes()) {
      return std::nullopt;
    }
    int64_t size = 1;
    for (int a : attrs) {
      if (!used.insert(a).second) return std::nullopt;
      size *= domain.cardinality(a);
    }
    if (static_cast<int64_t>(cells.size()) != size) return std::nullopt;
    out.emplace_back(attrs, size);
  }
  return out;
}

}  // namespace

LiftLower LiftsLowers(const DomainSpec& domain, int64_t x, int64_t y,
                      const CountQuery& query) {
  const bool fx = query.Matches(domain, x);
  const bool fy = query.Matches(domain, y);
  if (!fx && fy) return LiftLower::kLifts;
  if (fx && !fy) return LiftLower::kLowers;
  return LiftLower::kNeither;
}

absl::StatusOr<bool> IsSparse(const Policy& policy) {
  RETURN_IF_ERROR(CheckPairBudget(policy.domain));
  return WalkSparseEdges(policy, [](int64_t, int64_t, int, int) {});
}

absl::StatusOr<PolicyGraph> BuildPolicyGraph(const Policy& policy) {
  RETURN_IF_ERROR(CheckPairBudget(policy.domain));
  PolicyGraph graph;
  graph.num_queries = static_cast<int>(policy.constraints.queries.size());
  const int plus = graph.plus();
  const int minus = graph.minus();
  const bool sparse = WalkSparseEdges(
      policy, [&](int64_t x, int64_t y, int lifted, int lowered) {
        if (lifted < 0 && lowered < 0) return;
        const int from = lowered >= 0 ? lowered : plus;
        const int to = lifted >= 0 ? lifted : minus;
        graph.edges.emplace(std::make_pair(from, to), std::make_pair(x, y));
      });
  if (!sparse) {
    return absl::FailedPreconditionError(
        "constraints are not sparse with respect to the secret graph");
  }
  graph.edges[{plus, minus}] = {-1, -1};
  return graph;
}

absl::StatusOr<AlphaXi> ComputeAlphaXi(const PolicyGraph& graph) {
  const int n = graph.num_vertices();
  if (n > kMaxPolicyGraphVertices) {
    return absl::ResourceExhaustedError(
        absl::StrCat("policy graph has ", n, " vertices; the limit is ",
                     kMaxPolicyGraphVertices));
  }
  std::vector<uint32_t> out(n, 0);
  for (const auto& [edge, witness] : graph.edges) {
    out[edge.first] |= 1u << edge.second;
  }

  // reach[mask]: endpoints v such that a simple path from the start visits
  // exactly `mask` and ends at v.
  const uint32_t limit = 1u << n;
  std::vector<uint32_t> reach(limit);
  AlphaXi result;

  for (int start = 0; start < n; ++start) {
    // Cycles are counted from their lowest vertex.
    std::fill(reach.begin(), reach.end(), 0);
    reach[1u << start] = 1u << start;
    const uint32_t low_mask = (1u << start) - 1;
    for (uint32_t mask = 1u << start; mask < limit; ++mask) {
      if (!reach[mask] || (mask & low_mask)) continue;
      for (int v = 0; v < n; ++v) {
        if (!(reach[mask] >> v & 1)) continue;
        if (out[v] >> start & 1) {
          const int length = std::popcount(mask);
          if (length >= 2) result.alpha = std::max(result.alpha, length);
        }
        uint32_t next = out[v] & ~mask & ~low_mask;
        while (next) {
          const int w = std::countr_zero(next);
          next &= next - 1;
          reach[mask | (1u << w)] |= 1u << w;
        }
      }
    }
  }

  std::fill(reach.begin(), reach.end(), 0);
  const int plus = graph.plus();
  const int minus = graph.minus();
  reach[1u << plus] = 1u << plus;
  for (uint32_t mask = 1; mask < limit; ++mask) {
    if (!reach[mask]) continue;
    if (reach[mask] >> minus & 1) {
      result.xi = std::max(result.xi, std::popcount(mask) - 1);
    }
    for (int v = 0; v < n; ++v) {
      if (!(reach[mask] >> v & 1) || v == minus) continue;
      uint32_t next = out[v] & ~mask;
      while (next) {
        const int w = std::countr_zero(next);
        next &= next - 1;
        reach[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  return result;
}

absl::StatusOr<SensitivityResult> SparseConstraintSensitivity(
    const Policy& policy) {
  ASSIGN_OR_RETURN(PolicyGraph graph, BuildPolicyGraph(policy));
  ASSIGN_OR_RETURN(AlphaXi ax, ComputeAlphaXi(graph));
  return SensitivityResult{2.0 * std::max(ax.alpha, ax.xi),
                           Exactness::kUpperBound, Method::kSparseEngine};
}

absl::StatusOr<SensitivityResult> SpecializedConstraintSensitivity(
    const Policy& policy) {
  const DomainSpec& domain = policy.domain;
  const auto& queries = policy.constraints.queries;
  if (queries.empty()) {
    return absl::NotFoundError("no constraints to specialize on");
  }
  const GraphKind kind = policy.graph.kind();

  if (kind == GraphKind::kFull || kind == GraphKind::kAttribute) {
    auto marginals = AsMarginals(policy);
    if (!marginals.has_value() ||
        (kind == GraphKind::kFull && marginals->size() != 1)) {
      return absl::NotFoundError("constraints are not a recognized marginal");
    }
    int64_t largest = 0;
    for (const auto& [attrs, size] : *marginals) {
      largest = std::max(largest, size);
    }
    return SensitivityResult{2.0 * static_cast<double>(largest),
                             Exactness::kExact, Method::kSpecialized};
  }

  if (kind == GraphKind::kDistanceThreshold) {
    std::vector<Box> boxes;
    bool point_query = false;
    for (const CountQuery& query : queries) {
      if (!query.IsRectangle()) {
        return absl::NotFoundError("constraints are not all rectangles");
      }
      boxes.push_back(BoxOf(query, domain));
      bool single = true;
      for (size_t a = 0; a < boxes.back().lo.size(); ++a) {
        single &= boxes.back().lo[a] == boxes.back().hi[a];
      }
      point_query |= single;
    }
    const int m = static_cast<int>(boxes.size());
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        if (BoxesOverlap(boxes[i], boxes[j])) {
          return absl::NotFoundError("rectangles overlap");
        }
        if (BoxDistance(boxes[i], boxes[j]) <= policy.graph.theta()) {
          parent[FindRoot(parent, i)] = FindRoot(parent, j);
        }
      }
    }
    std::vector<int> component_size(m, 0);
    int maxcomp = 0;
    for (int i = 0; i < m; ++i) {
      maxcomp = std::max(maxcomp, ++component_size[FindRoot(parent, i)]);
    }
    return SensitivityResult{
        2.0 * (maxcomp + 1),
        point_query ? Exactness::kUpperBound : Exactness::kExact,
        Method::kSpecialized};
  }
  return absl::NotFoundError("no specialization for this graph kind");
}

}  // namespace blowfish
