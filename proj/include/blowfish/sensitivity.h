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

#ifndef BLOWFISH_SENSITIVITY_H_
#define BLOWFISH_SENSITIVITY_H_

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "blowfish/domain.h"
#include "blowfish/policy.h"

namespace blowfish {

inline constexpr double kInfiniteSensitivity =
    std::numeric_limits<double>::infinity();

struct QueryKind {
  enum class Type {
    kCompleteHistogram,
    kPartitionHistogram,
    kCumulativeHistogram,
    kLinearSum,
    kKmeansSize,
    kKmeansSum,
  };

  explicit QueryKind(Type t = Type::kCompleteHistogram) : type(t) {}

  static QueryKind CompleteHistogram() {
    return QueryKind{Type::kCompleteHistogram};
  }
  static QueryKind PartitionHistogram(std::vector<int> cell_of_rank) {
    QueryKind q{Type::kPartitionHistogram};
    q.partition = std::move(cell_of_rank);
    return q;
  }
  static QueryKind CumulativeHistogram() {
    return QueryKind{Type::kCumulativeHistogram};
  }
  // Tuple values are the domain ranks mapped evenly onto [lo, hi].
  static QueryKind LinearSum(std::vector<double> weights, double lo,
                             double hi) {
    QueryKind q{Type::kLinearSum};
    q.weights = std::move(weights);
    q.lo = lo;
    q.hi = hi;
    return q;
  }
  static QueryKind KmeansSize(int k) {
    QueryKind q{Type::kKmeansSize};
    q.k = k;
    return q;
  }
  static QueryKind KmeansSum(int k) {
    QueryKind q{Type::kKmeansSum};
    q.k = k;
    return q;
  }

  Type type;
  std::vector<int> partition;
  std::vector<double> weights;
  double lo = 0;
  double hi = 0;
  int k = 1;
};

std::string_view QueryKindName(QueryKind::Type type);
// Parses the parameter-free kinds; `k` applies to the k-means kinds.
absl::StatusOr<QueryKind> QueryKindFromName(std::string_view name, int k = 4);

enum class Exactness { kExact, kUpperBound };
enum class Method { kClosedForm, kSparseEngine, kSpecialized, kBruteForce };

std::string_view ExactnessName(Exactness exactness);
std::string_view MethodName(Method method);

struct SensitivityResult {
  double value = 0;
  Exactness exactness = Exactness::kExact;
  Method method = Method::kClosedForm;

  bool is_infinite() const { return value == kInfiniteSensitivity; }
};

// Sensitivity of `query` under an unconstrained (or cardinality-only) policy.
absl::StatusOr<SensitivityResult> ClosedFormSensitivity(const QueryKind& query,
                                                        const Policy& policy);

// Evaluates `query` on a database; used by the brute-force oracle.
absl::StatusOr<std::vector<double>> EvaluateQuery(const QueryKind& query,
                                                  const Policy& policy,
                                                  const Database& db);

// Exact maximum L1 change over all neighbor pairs with n tuples.
absl::StatusOr<SensitivityResult> BruteForceSensitivity(
    const QueryKind& query, const Policy& policy, int n,
    const EnumerationOptions& options = {});

// ---- Sparse count constraints -------------------------------------------

enum class LiftLower { kLifts, kLowers, kNeither };

LiftLower LiftsLowers(const DomainSpec& domain, int64_t x, int64_t y,
                      const CountQuery& query);

absl::StatusOr<bool> IsSparse(const Policy& policy);

// Vertices 0..num_queries-1 are the queries; then v+ and v-.
struct PolicyGraph {
  int num_queries = 0;
  // (u, v) -> one secret pair (x, y) that justifies the edge. The edge
  // (v+, v-) carries (-1, -1).
  std::map<std::pair<int, int>, std::pair<int64_t, int64_t>> edges;

  int plus() const { return num_queries; }
  int minus() const { return num_queries + 1; }
  int num_vertices() const { return num_queries + 2; }
  bool HasEdge(int u, int v) const { return edges.count({u, v}) > 0; }
};

absl::StatusOr<PolicyGraph> BuildPolicyGraph(const Policy& policy);

struct AlphaXi {
  int alpha = 0;
  int xi = 0;
};

inline constexpr int kMaxPolicyGraphVertices = 16;

absl::StatusOr<AlphaXi> ComputeAlphaXi(const PolicyGraph& graph);

// 2 * max(alpha, xi) for the complete histogram, tagged UpperBound.
absl::StatusOr<SensitivityResult> SparseConstraintSensitivity(
    const Policy& policy);

// Recognized shapes: a single marginal with the full graph, disjoint
// marginals with the attribute graph, disjoint rectangles with a distance
// graph. Returns NotFound for anything else.
absl::StatusOr<SensitivityResult> SpecializedConstraintSensitivity(
    const Policy& policy);

enum class SensitivityMethod {
  kAuto,
  kClosedForm,
  kSparseEngine,
  kSpecialized,
  kBruteForce,
};

struct SensitivityRequest {
  SensitivityMethod method = SensitivityMethod::kAuto;
  // Tuple count for the brute-force oracle.
  int n = 2;
  EnumerationOptions enumeration;
};

// Closed form for unconstrained policies, the sparse engine for
// constrained histograms, or the requested method.
absl::StatusOr<SensitivityResult> ComputeSensitivity(
    const QueryKind& query, const Policy& policy,
    const SensitivityRequest& request = {});

}  // namespace blowfish

#endif  // BLOWFISH_SENSITIVITY_H_
