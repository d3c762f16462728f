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

#ifndef BLOWFISH_POLICY_H_
#define BLOWFISH_POLICY_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "blowfish/domain.h"
#include "json.hpp"

namespace blowfish {

inline constexpr int64_t kInfiniteDistance =
    std::numeric_limits<int64_t>::max();

enum class GraphKind {
  kFull,
  kAttribute,
  kPartition,
  kDistanceThreshold,
  kExplicit,
};

std::string_view GraphKindName(GraphKind kind);

// The discriminative secret graph. Vertices are domain points addressed by
// flat rank; edges are given by a predicate, not materialized (except for
// explicit graphs).
class SecretGraph {
 public:
  static SecretGraph Full();
  static SecretGraph Attribute();
  // cell_of_rank[r] is the partition id of the point with rank r.
  static absl::StatusOr<SecretGraph> Partition(const DomainSpec& domain,
                                               std::vector<int> cell_of_rank);
  // Edge iff the L1 distance in index units is at most theta.
  static absl::StatusOr<SecretGraph> DistanceThreshold(int64_t theta);
  static absl::StatusOr<SecretGraph> Explicit(
      const DomainSpec& domain,
      const std::vector<std::pair<int64_t, int64_t>>& edges);

  GraphKind kind() const { return kind_; }
  int64_t theta() const { return theta_; }
  const std::vector<int>& partition() const { return cell_of_rank_; }

  bool IsEdge(const DomainSpec& domain, int64_t x, int64_t y) const;
  bool IsEdge(const DomainSpec& domain, const Point& x, const Point& y) const {
    return IsEdge(domain, domain.Rank(x), domain.Rank(y));
  }

  // Shortest path length; closed forms where they exist, BFS otherwise.
  int64_t Distance(const DomainSpec& domain, int64_t x, int64_t y) const;
  // Plain BFS over IsEdge. O(|T|^2).
  int64_t DistanceByBfs(const DomainSpec& domain, int64_t x, int64_t y) const;

  // Calls fn(x, y) for every ordered edge (x, y), x != y.
  void ForEachEdge(const DomainSpec& domain,
                   const std::function<void(int64_t, int64_t)>& fn) const;

  std::string Describe() const;
  nlohmann::json ToJson() const;

 private:
  GraphKind kind_ = GraphKind::kFull;
  int64_t theta_ = 0;
  std::vector<int> cell_of_rank_;
  std::vector<std::vector<int64_t>> adjacency_;
};

// A count query over a predicate that is a conjunction of per-attribute
// membership tests.
struct CountQuery {
  // attribute -> sorted allowed value indices. Missing attributes are free.
  std::map<int, std::vector<int>> allowed;
  std::optional<int64_t> answer;

  bool Matches(const Point& point) const;
  bool Matches(const DomainSpec& domain, int64_t rank) const;
  // True for rectangles: every allowed set is a contiguous index range.
  bool IsRectangle() const;
  // True when every point of the domain satisfies the predicate.
  bool IsTrivial(const DomainSpec& domain) const;
};

enum class ConstraintKind { kNone, kCardinalityOnly, kGeneral };

struct ConstraintSet {
  std::vector<CountQuery> queries;

  ConstraintKind kind(const DomainSpec& domain) const;
};

struct Policy {
  DomainSpec domain;
  SecretGraph graph;
  ConstraintSet constraints;

  ConstraintKind constraint_kind() const {
    return constraints.kind(domain);
  }
  bool unconstrained() const {
    return constraint_kind() != ConstraintKind::kGeneral;
  }
};

// Policy text: {"domain": {...}?, "graph": {"kind": ..., ...},
// "constraints": [{"<attr>": ["label", ...] | [lo, hi], "answer": n}]}.
// `domain` is used when the text carries no domain of its own.
absl::StatusOr<Policy> PolicyFromJson(const nlohmann::json& json,
                                      const DomainSpec* domain = nullptr);
absl::StatusOr<Policy> LoadPolicy(std::string_view text,
                                  const DomainSpec* domain = nullptr);
nlohmann::json PolicyToJson(const Policy& policy);

// ---- Neighbors ------------------------------------------------------------

// A database over ids 0..n-1, stored as the rank of each tuple's value.
using Database = std::vector<int64_t>;

struct SecretPair {
  int64_t id = 0;
  int64_t x = 0;
  int64_t y = 0;

  friend bool operator==(const SecretPair&, const SecretPair&) = default;
};

struct NeighborPair {
  Dataset d1;
  Dataset d2;
  std::vector<SecretPair> t_set;
  // |D1 \ D2| + |D2 \ D1| counted over (id, value) tuples.
  int64_t delta = 0;
};

struct EnumerationOptions {
  int64_t max_databases = 100000;
};

bool Satisfies(const Policy& policy, const Database& db);

// T(d1, d2): secret pairs realized by tuples that change along a graph edge.
std::vector<SecretPair> RealizedSecretPairs(const Policy& policy,
                                            const Database& d1,
                                            const Database& d2);

// All databases of size n that satisfy every answered constraint, in
// lexicographic order.
absl::StatusOr<std::vector<Database>> EnumerateConstrainedDatabases(
    const Policy& policy, int n, const EnumerationOptions& options = {});

// Calls fn(d1, d2) for every ordered neighbor pair. Pairs arrive grouped by
// d1 in lexicographic order, then by d2.
absl::Status ForEachNeighbor(
    const Policy& policy, int n, const EnumerationOptions& options,
    const std::function<void(const Database&, const Database&)>& fn);

absl::StatusOr<std::vector<NeighborPair>> EnumerateNeighbors(
    const Policy& policy, int n, const EnumerationOptions& options = {});

// Ids in `subsets` form the population; returns whether the constraints can
// be split so that each part only has critical pairs inside one subset.
absl::StatusOr<bool> CheckParallelDecomposition(
    const Policy& policy, const std::vector<std::vector<int64_t>>& subsets);

}  // namespace blowfish

#endif  // BLOWFISH_POLICY_H_
