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

#include "blowfish/kmeans.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "blowfish/sensitivity.h"
#include "blowfish/status_macros.h"

namespace blowfish {

namespace {

double SquaredDistance(const Vector& a, const Vector& b) {
  double total = 0;
  for (size_t d = 0; d < a.size(); ++d) {
    total += (a[d] - b[d]) * (a[d] - b[d]);
  }
  return total;
}

absl::Status CheckDimensions(const std::vector<Vector>& data, size_t dims) {
  if (data.empty()) return absl::InvalidArgumentError("no data points");
  for (const Vector& point : data) {
    if (point.size() != dims) {
      return absl::InvalidArgumentError(absl::StrCat(
          "point has ", point.size(), " coordinates, expected ", dims));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<Vector>> InitialCentroids(
    const std::vector<Vector>& data, const KmeansConfig& config,
    uint64_t seed, const Vector& lower, const Vector& upper) {
  const size_t dims = data.front().size();
  std::vector<Vector> centroids;
  switch (config.init) {
    case KmeansInit::kFixed:
      for (const Vector& c : config.fixed_centroids) {
        if (c.size() != dims) {
          return absl::InvalidArgumentError(
              "fixed centroid dimension does not match the data");
        }
      }
      return config.fixed_centroids;
    case KmeansInit::kRandomPoints: {
      if (static_cast<int64_t>(data.size()) < config.k) {
        return absl::InvalidArgumentError(
            absl::StrCat("need at least k = ", config.k, " points, have ",
                         data.size()));
      }
      // Partial Fisher-Yates over indices.
      std::vector<size_t> order(data.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = i;
      NoiseStream stream(seed, TaggedKey(StreamTag::kKmeansInit, 0));
      for (int c = 0; c < config.k; ++c) {
        const size_t pick =
            c + stream.NextBits() % static_cast<uint64_t>(order.size() - c);
        std::swap(order[c], order[pick]);
        centroids.push_back(data[order[c]]);
      }
      return centroids;
    }
    case KmeansInit::kUniformBox:
      for (int c = 0; c < config.k; ++c) {
        NoiseStream stream(seed, TaggedKey(StreamTag::kKmeansInit, 1, c));
        Vector centroid(dims);
        for (size_t d = 0; d < dims; ++d) {
          centroid[d] = lower[d] + (upper[d] - lower[d]) * stream.NextUniform();
        }
        centroids.push_back(std::move(centroid));
      }
      return centroids;
  }
  return absl::InternalError("unknown init");
}

// Per-cluster counts and coordinate sums under the current assignment.
void Aggregate(const std::vector<Vector>& data,
               const std::vector<Vector>& centroids,
               std::vector<double>& sizes, std::vector<Vector>& sums) {
  const size_t dims = data.front().size();
  sizes.assign(centroids.size(), 0);
  sums.assign(centroids.size(), Vector(dims, 0));
  for (const Vector& point : data) {
    const int c = NearestCentroid(point, centroids);
    sizes[c] += 1;
    for (size_t d = 0; d < dims; ++d) sums[c][d] += point[d];
  }
}

void Finish(const std::vector<Vector>& data, ClusteringResult& result) {
  result.objective = *KmeansObjective(data, result.centroids);
}

}  // namespace

absl::Status KmeansConfig::Validate() const {
  if (k < 1) return absl::InvalidArgumentError("k must be at least 1");
  if (iterations < 1) {
    return absl::InvalidArgumentError("iterations must be at least 1");
  }
  if (!(split > 0 && split < 1)) {
    return absl::InvalidArgumentError("split must lie in (0, 1)");
  }
  if (init == KmeansInit::kFixed &&
      static_cast<int>(fixed_centroids.size()) != k) {
    return absl::InvalidArgumentError("fixed init needs exactly k centroids");
  }
  if (lower.size() != upper.size()) {
    return absl::InvalidArgumentError("box bounds differ in dimension");
  }
  for (size_t d = 0; d < lower.size(); ++d) {
    if (!(lower[d] <= upper[d])) {
      return absl::InvalidArgumentError("box lower bound exceeds upper bound");
    }
  }
  return absl::OkStatus();
}

int NearestCentroid(const Vector& point, const std::vector<Vector>& centroids) {
  int best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (int c = 0; c < static_cast<int>(centroids.size()); ++c) {
    const double distance = SquaredDistance(point, centroids[c]);
    if (distance < best_distance) {
      best_distance = distance;
      best = c;
    }
  }
  return best;
}

absl::StatusOr<double> KmeansObjective(const std::vector<Vector>& data,
                                       const std::vector<Vector>& centroids) {
  if (centroids.empty()) return absl::InvalidArgumentError("no centroids");
  RETURN_IF_ERROR(CheckDimensions(data, centroids.front().size()));
  RETURN_IF_ERROR(CheckDimensions(centroids, centroids.front().size()));
  double total = 0;
  for (const Vector& point : data) {
    total += SquaredDistance(point, centroids[NearestCentroid(point, centroids)]);
  }
  return total;
}

std::vector<Vector> DatasetPoints(const Dataset& data) {
  std::vector<Vector> points;
  points.reserve(data.rows.size());
  for (const Row& row : data.rows) {
    points.emplace_back(row.point.indices.begin(), row.point.indices.end());
  }
  return points;
}

void DomainBox(const DomainSpec& domain, Vector& lower, Vector& upper) {
  lower.assign(domain.num_attributes(), 0);
  upper.resize(domain.num_attributes());
  for (int a = 0; a < domain.num_attributes(); ++a) {
    upper[a] = domain.cardinality(a) - 1;
  }
}

absl::StatusOr<ClusteringResult> KmeansNonprivate(
    const std::vector<Vector>& data, const KmeansConfig& config,
    uint64_t seed) {
  RETURN_IF_ERROR(config.Validate());
  if (data.empty()) return absl::InvalidArgumentError("no data points");
  const size_t dims = data.front().size();
  RETURN_IF_ERROR(CheckDimensions(data, dims));

  Vector lower = config.lower;
  Vector upper = config.upper;
  if (lower.empty()) {
    lower = upper = data.front();
    for (const Vector& point : data) {
      for (size_t d = 0; d < dims; ++d) {
        lower[d] = std::min(lower[d], point[d]);
        upper[d] = std::max(upper[d], point[d]);
      }
    }
  } else if (lower.size() != dims) {
    return absl::InvalidArgumentError("box dimension does not match the data");
  }

  ClusteringResult result;
  ASSIGN_OR_RETURN(result.centroids,
                   InitialCentroids(data, config, seed, lower, upper));
  std::vector<double> sizes;
  std::vector<Vector> sums;
  for (int it = 0; it < config.iterations; ++it) {
    Aggregate(data, result.centroids, sizes, sums);
    for (int c = 0; c < config.k; ++c) {
      if (sizes[c] == 0) continue;
      for (size_t d = 0; d < dims; ++d) {
        result.centroids[c][d] = sums[c][d] / sizes[c];
      }
    }
    result.trace.push_back(*KmeansObjective(data, result.centroids));
  }
  Finish(data, result);
  return result;
}

absl::StatusOr<ClusteringResult> KmeansPrivate(const std::vector<Vector>& data,
                                               const KmeansConfig& config,
                                               const Policy& policy,
                                               const PrivacyParams& params) {
  return KmeansPrivate(data, config, policy, params, SeededNoise(params.seed));
}

absl::StatusOr<ClusteringResult> KmeansPrivate(const std::vector<Vector>& data,
                                               const KmeansConfig& config,
                                               const Policy& policy,
                                               const PrivacyParams& params,
                                               const NoiseSource& noise) {
  RETURN_IF_ERROR(config.Validate());
  RETURN_IF_ERROR(params.Validate());
  const DomainSpec& domain = policy.domain;
  const size_t dims = domain.num_attributes();
  RETURN_IF_ERROR(CheckDimensions(data, dims));
  Vector lower;
  Vector upper;
  DomainBox(domain, lower, upper);
  for (const Vector& point : data) {
    for (size_t d = 0; d < dims; ++d) {
      if (!(point[d] >= lower[d] && point[d] <= upper[d])) {
        return absl::InvalidArgumentError("data point lies outside the domain");
      }
    }
  }

  ASSIGN_OR_RETURN(SensitivityResult size_sensitivity,
                   ClosedFormSensitivity(QueryKind::KmeansSize(config.k), policy));
  ASSIGN_OR_RETURN(SensitivityResult sum_sensitivity,
                   ClosedFormSensitivity(QueryKind::KmeansSum(config.k), policy));
  if (size_sensitivity.is_infinite() || sum_sensitivity.is_infinite()) {
    return absl::FailedPreconditionError(
        "k-means sums have infinite sensitivity under this policy");
  }

  ClusteringResult result;
  ASSIGN_OR_RETURN(result.centroids,
                   InitialCentroids(data, config, params.seed, lower, upper));
  const double per_iteration = params.epsilon / config.iterations;
  IterationNoise budget;
  budget.epsilon_size = per_iteration * config.split;
  budget.epsilon_sum = per_iteration - budget.epsilon_size;
  budget.size_scale = size_sensitivity.value / budget.epsilon_size;
  budget.sum_scale = sum_sensitivity.value / budget.epsilon_sum;

  std::vector<double> sizes;
  std::vector<Vector> sums;
  for (int it = 0; it < config.iterations; ++it) {
    Aggregate(data, result.centroids, sizes, sums);
    for (int c = 0; c < config.k; ++c) {
      const double noisy_size =
          sizes[c] + noise.Laplace(budget.size_scale,
                                   TaggedKey(StreamTag::kKmeansSize, it, c));
      Vector noisy_sum(dims);
      for (size_t d = 0; d < dims; ++d) {
        noisy_sum[d] =
            sums[c][d] + noise.Laplace(budget.sum_scale,
                                       TaggedKey(StreamTag::kKmeansSum, it, c, d));
      }
      if (noisy_size < 0.5) continue;
      for (size_t d = 0; d < dims; ++d) {
        result.centroids[c][d] = std::clamp(
            noisy_sum[d] / std::max(noisy_size, 1.0), lower[d], upper[d]);
      }
    }
    RETURN_IF_ERROR(result.ledger.ChargeSequential(
        absl::StrCat("iteration ", it + 1, " size"), budget.epsilon_size));
    RETURN_IF_ERROR(result.ledger.ChargeSequential(
        absl::StrCat("iteration ", it + 1, " sum"), budget.epsilon_sum));
    result.noise.push_back(budget);
    result.trace.push_back(*KmeansObjective(data, result.centroids));
  }
  Finish(data, result);
  return result;
}

}  // namespace blowfish
