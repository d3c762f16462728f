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
#include <cmath>
#include <cstdlib>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "blowfish/status_macros.h"

namespace blowfish {

namespace {

constexpr int64_t kMaxPairScan = int64_t{1} << 24;

// Extremes over the edges of the secret graph.
struct EdgeStats {
  bool any_edge = false;
  int64_t max_rank_diff = 0;
  int64_t max_l1 = 0;
};

absl::StatusOr<EdgeStats> ScanEdges(const Policy& policy) {
  const DomainSpec& domain = policy.domain;
  if (domain.size() * domain.size() > kMaxPairScan) {
    return absl::ResourceExhaustedError(
        "domain too large for an edge scan of this graph kind");
  }
  EdgeStats stats;
  policy.graph.ForEachEdge(domain, [&](int64_t x, int64_t y) {
    stats.any_edge = true;
    stats.max_rank_diff = std::max(stats.max_rank_diff, std::abs(x - y));
    stats.max_l1 = std::max(stats.max_l1, domain.RankDistance(x, y));
  });
  return stats;
}

absl::StatusOr<EdgeStats> ComputeEdgeStats(const Policy& policy) {
  const DomainSpec& domain = policy.domain;
  const SecretGraph& graph = policy.graph;
  EdgeStats stats;
  switch (graph.kind()) {
    case GraphKind::kFull:
      stats.any_edge = domain.size() >= 2;
      stats.max_rank_diff = domain.size() - 1;
      stats.max_l1 = domain.Diameter();
      return stats;
    case GraphKind::kAttribute: {
      int64_t stride = 1;
      for (int a = domain.num_attributes() - 1; a >= 0; --a) {
        const int64_t span = domain.cardinality(a) - 1;
        stats.any_edge |= span > 0;
        stats.max_rank_diff = std::max(stats.max_rank_diff, stride * span);
        stats.max_l1 = std::max(stats.max_l1, span);
        stride *= domain.cardinality(a);
      }
      return stats;
    }
    case GraphKind::kDistanceThreshold: {
      const int64_t reach = std::min(graph.theta(), domain.Diameter());
      stats.any_edge = reach > 0;
      stats.max_l1 = reach;
      // A unit step on a coarser attribute outweighs any finer move.
      int64_t budget = reach;
      for (int a = 0; a < domain.num_attributes(); ++a) {
        const int64_t step = std::min<int64_t>(budget, domain.cardinality(a) - 1);
        stats.max_rank_diff += step * domain.stride(a);
        budget -= step;
      }
      return stats;
    }
    case GraphKind::kPartition:
    case GraphKind::kExplicit:
      return ScanEdges(policy);
  }
  return stats;
}

absl::StatusOr<bool> EdgeCrossesCells(const Policy& policy,
                                      const std::vector<int>& cells) {
  const DomainSpec& domain = policy.domain;
  if (policy.graph.kind() == GraphKind::kFull) {
    return std::any_of(cells.begin(), cells.end(),
                       [&](int c) { return c != cells.front(); });
  }
  if (domain.size() * domain.size() > kMaxPairScan) {
    return absl::ResourceExhaustedError("domain too large for an edge scan");
  }
  bool crosses = false;
  policy.graph.ForEachEdge(domain, [&](int64_t x, int64_t y) {
    crosses |= cells[x] != cells[y];
  });
  return crosses;
}

absl::Status ValidateQuery(const QueryKind& query, const Policy& policy) {
  switch (query.type) {
    case QueryKind::Type::kPartitionHistogram:
      if (static_cast<int64_t>(query.partition.size()) !=
          policy.domain.size()) {
        return absl::InvalidArgumentError(
            "partition histogram needs one cell id per domain point");
      }
      for (int c : query.partition) {
        if (c < 0) return absl::InvalidArgumentError("negative cell id");
      }
      break;
    case QueryKind::Type::kLinearSum:
      if (query.weights.empty()) {
        return absl::InvalidArgumentError("linear sum needs weights");
      }
      if (!(query.hi >= query.lo)) {
        return absl::InvalidArgumentError("linear sum needs lo <= hi");
      }
      break;
    case QueryKind::Type::kKmeansSize:
    case QueryKind::Type::kKmeansSum:
      if (query.k < 1) return absl::InvalidArgumentError("k must be >= 1");
      break;
    default:
      break;
  }
  return absl::OkStatus();
}

double ValueStep(const QueryKind& query, const DomainSpec& domain) {
  if (domain.size() < 2) return 0;
  return (query.hi - query.lo) / static_cast<double>(domain.size() - 1);
}

}  // namespace

std::string_view QueryKindName(QueryKind::Type type) {
  switch (type) {
    case QueryKind::Type::kCompleteHistogram:
      return "histogram";
    case QueryKind::Type::kPartitionHistogram:
      return "partition-histogram";
    case QueryKind::Type::kCumulativeHistogram:
      return "cumulative";
    case QueryKind::Type::kLinearSum:
      return "linear-sum";
    case QueryKind::Type::kKmeansSize:
      return "kmeans-size";
    case QueryKind::Type::kKmeansSum:
      return "kmeans-sum";
  }
  return "unknown";
}

absl::StatusOr<QueryKind> QueryKindFromName(std::string_view name, int k) {
  if (name == "histogram") return QueryKind::CompleteHistogram();
  if (name == "cumulative") return QueryKind::CumulativeHistogram();
  if (name == "kmeans-size") return QueryKind::KmeansSize(k);
  if (name == "kmeans-sum") return QueryKind::KmeansSum(k);
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown query '", std::string(name),
      "' (expected histogram, cumulative, kmeans-size or kmeans-sum)"));
}

std::string_view ExactnessName(Exactness exactness) {
  return exactness == Exactness::kExact ? "Exact" : "UpperBound";
}

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kClosedForm:
      return "ClosedForm";
    case Method::kSparseEngine:
      return "SparseEngine";
    case Method::kSpecialized:
      return "Specialized";
    case Method::kBruteForce:
      return "BruteForce";
  }
  return "Unknown";
}

absl::StatusOr<SensitivityResult> ClosedFormSensitivity(const QueryKind& query,
                                                        const Policy& policy) {
  if (!policy.unconstrained()) {
    return absl::FailedPreconditionError(
        "closed forms need a policy without count constraints");
  }
  RETURN_IF_ERROR(ValidateQuery(query, policy));
  SensitivityResult result{0, Exactness::kExact, Method::kClosedForm};
  if (query.type == QueryKind::Type::kPartitionHistogram) {
    ASSIGN_OR_RETURN(bool crosses, EdgeCrossesCells(policy, query.partition));
    result.value = crosses ? 2 : 0;
    return result;
  }
  ASSIGN_OR_RETURN(EdgeStats stats, ComputeEdgeStats(policy));
  switch (query.type) {
    case QueryKind::Type::kCompleteHistogram:
    case QueryKind::Type::kKmeansSize:
      result.value = stats.any_edge ? 2 : 0;
      break;
    case QueryKind::Type::kCumulativeHistogram:
      result.value = static_cast<double>(stats.max_rank_diff);
      break;
    case QueryKind::Type::kLinearSum: {
      double max_weight = 0;
      for (double w : query.weights) {
        max_weight = std::max(max_weight, std::abs(w));
      }
      result.value = static_cast<double>(stats.max_rank_diff) *
                     ValueStep(query, policy.domain) * max_weight;
      break;
    }
    case QueryKind::Type::kKmeansSum:
      result.value = 2.0 * static_cast<double>(stats.max_l1);
      break;
    default:
      break;
  }
  return result;
}

absl::StatusOr<std::vector<double>> EvaluateQuery(const QueryKind& query,
                                                  const Policy& policy,
                                                  const Database& db) {
  const DomainSpec& domain = policy.domain;
  std::vector<double> out;
  switch (query.type) {
    case QueryKind::Type::kCompleteHistogram:
      out.assign(domain.size(), 0);
      for (int64_t r : db) out[r] += 1;
      return out;
    case QueryKind::Type::kPartitionHistogram: {
      const int cells =
          1 + *std::max_element(query.partition.begin(), query.partition.end());
      out.assign(cells, 0);
      for (int64_t r : db) out[query.partition[r]] += 1;
      return out;
    }
    case QueryKind::Type::kCumulativeHistogram: {
      out.assign(domain.size(), 0);
      for (int64_t r : db) out[r] += 1;
      for (size_t i = 1; i < out.size(); ++i) out[i] += out[i - 1];
      return out;
    }
    case QueryKind::Type::kLinearSum: {
      if (query.weights.size() != db.size()) {
        return absl::InvalidArgumentError(
            absl::StrCat("linear sum has ", query.weights.size(),
                         " weights for ", db.size(), " tuples"));
      }
      const double step = ValueStep(query, domain);
      double total = 0;
      for (size_t i = 0; i < db.size(); ++i) {
        total += query.weights[i] * (query.lo + step * db[i]);
      }
      return std::vector<double>{total};
    }
    case QueryKind::Type::kKmeansSize:
    case QueryKind::Type::kKmeansSum:
      break;
  }
  return absl::UnimplementedError(
      "k-means queries depend on centroids and have no database-only oracle");
}

absl::StatusOr<SensitivityResult> BruteForceSensitivity(
    const QueryKind& query, const Policy& policy, int n,
    const EnumerationOptions& options) {
  RETURN_IF_ERROR(ValidateQuery(query, policy));
  if (query.type == QueryKind::Type::kKmeansSize ||
      query.type == QueryKind::Type::kKmeansSum) {
    return absl::UnimplementedError(
        "k-means queries depend on centroids and have no database-only "
        "oracle");
  }
  double best = 0;
  absl::Status inner = absl::OkStatus();
  const Database* cached_db = nullptr;
  std::vector<double> cached_value;
  RETURN_IF_ERROR(ForEachNeighbor(
      policy, n, options, [&](const Database& d1, const Database& d2) {
        if (!inner.ok()) return;
        if (cached_db == nullptr || *cached_db != d1) {
          absl::StatusOr<std::vector<double>> v =
              EvaluateQuery(query, policy, d1);
          if (!v.ok()) {
            inner = v.status();
            return;
          }
          cached_value = *std::move(v);
          cached_db = &d1;
        }
        absl::StatusOr<std::vector<double>> other =
            EvaluateQuery(query, policy, d2);
        if (!other.ok()) {
          inner = other.status();
          return;
        }
        double diff = 0;
        for (size_t i = 0; i < other->size(); ++i) {
          diff += std::abs(cached_value[i] - (*other)[i]);
        }
        best = std::max(best, diff);
      }));
  RETURN_IF_ERROR(inner);
  return SensitivityResult{best, Exactness::kExact, Method::kBruteForce};
}

absl::StatusOr<SensitivityResult> ComputeSensitivity(
    const QueryKind& query, const Policy& policy,
    const SensitivityRequest& request) {
  const bool histogram = query.type == QueryKind::Type::kCompleteHistogram;
  switch (request.method) {
    case SensitivityMethod::kAuto:
      if (policy.unconstrained()) return ClosedFormSensitivity(query, policy);
      if (histogram) return SparseConstraintSensitivity(policy);
      return absl::UnimplementedError(
          "constrained policies support the complete histogram, or the "
          "brute-force oracle at tiny scale");
    case SensitivityMethod::kClosedForm:
      return ClosedFormSensitivity(query, policy);
    case SensitivityMethod::kSparseEngine:
    case SensitivityMethod::kSpecialized:
      if (!histogram) {
        return absl::InvalidArgumentError(
            "constraint engines apply to the complete histogram only");
      }
      return request.method == SensitivityMethod::kSparseEngine
                 ? SparseConstraintSensitivity(policy)
                 : SpecializedConstraintSensitivity(policy);
    case SensitivityMethod::kBruteForce:
      return BruteForceSensitivity(query, policy, request.n,
                                   request.enumeration);
  }
  return absl::InvalidArgumentError("unknown method");
}

}  // namespace blowfish
