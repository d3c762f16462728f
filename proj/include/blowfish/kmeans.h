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

#ifndef BLOWFISH_KMEANS_H_
#define BLOWFISH_KMEANS_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "blowfish/budget.h"
#include "blowfish/domain.h"
#include "blowfish/mechanisms.h"
#include "blowfish/noise.h"
#include "blowfish/policy.h"

namespace blowfish {

using Vector = std::vector<double>;

enum class KmeansInit {
  // k distinct data points chosen with the seed.
  kRandomPoints,
  // k points drawn uniformly from the bounding box; ignores the data.
  kUniformBox,
  kFixed,
};

struct KmeansConfig {
  int k = 4;
  int iterations = 10;
  KmeansInit init = KmeansInit::kUniformBox;
  std::vector<Vector> fixed_centroids;
  // Share of each iteration's budget spent on the cluster sizes.
  double split = 0.5;
  // Box for uniform init in the non-private run. Empty means the data's
  // bounding box. The private run always uses the domain box.
  Vector lower;
  Vector upper;

  absl::Status Validate() const;
};

// Noise bookkeeping for one private iteration.
struct IterationNoise {
  double epsilon_size = 0;
  double epsilon_sum = 0;
  double size_scale = 0;
  double sum_scale = 0;
};

struct ClusteringResult {
  std::vector<Vector> centroids;
  double objective = 0;
  // Objective of the centroids after each iteration.
  std::vector<double> trace;
  // Private runs only.
  std::vector<IterationNoise> noise;
  BudgetLedger ledger;
};

// Sum of squared L2 distances to the nearest centroid (ties to the lowest
// index).
absl::StatusOr<double> KmeansObjective(const std::vector<Vector>& data,
                                       const std::vector<Vector>& centroids);

// Index of the nearest centroid; ties to the lowest index.
int NearestCentroid(const Vector& point, const std::vector<Vector>& centroids);

// Value indices of each row as a real vector.
std::vector<Vector> DatasetPoints(const Dataset& data);

// [0, card - 1] for every attribute of `domain`.
void DomainBox(const DomainSpec& domain, Vector& lower, Vector& upper);

absl::StatusOr<ClusteringResult> KmeansNonprivate(
    const std::vector<Vector>& data, const KmeansConfig& config,
    uint64_t seed);

// Points are in index units of the policy domain. Each iteration spends
// epsilon / iterations, split between noisy cluster sizes and noisy
// coordinate sums. A noisy size under 0.5 keeps the previous centroid;
// otherwise the centroid is noisy_sum / max(noisy_size, 1), clamped to the
// domain box.
absl::StatusOr<ClusteringResult> KmeansPrivate(const std::vector<Vector>& data,
                                               const KmeansConfig& config,
                                               const Policy& policy,
                                               const PrivacyParams& params);
absl::StatusOr<ClusteringResult> KmeansPrivate(const std::vector<Vector>& data,
                                               const KmeansConfig& config,
                                               const Policy& policy,
                                               const PrivacyParams& params,
                                               const NoiseSource& noise);

}  // namespace blowfish

#endif  // BLOWFISH_KMEANS_H_
