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

#ifndef BLOWFISH_EVAL_H_
#define BLOWFISH_EVAL_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "blowfish/domain.h"
#include "blowfish/kmeans.h"
#include "json.hpp"

namespace blowfish {

// Mean over estimates of the summed squared error per component.
absl::StatusOr<double> Mse(const std::vector<double>& truth,
                           const std::vector<std::vector<double>>& estimates);

struct RangeQuery {
  int64_t i = 1;
  int64_t j = 1;

  friend bool operator==(const RangeQuery&, const RangeQuery&) = default;
};

struct Workload {
  std::vector<RangeQuery> queries;
  uint64_t seed = 0;
};

// Draws uniformly from {(i, j) : 1 <= i <= j <= domain_size}.
Workload RandomRangeWorkload(int64_t domain_size, int64_t count,
                             uint64_t seed);

// Squared error of each workload query, averaged, for a prefix vector.
double WorkloadMse(const Workload& workload, const std::vector<double>& truth,
                   const std::vector<double>& estimate);

// k centers uniform in (0,1)^dims; each point is a center plus Gaussian
// noise per coordinate, clipped to [0, 1].
std::vector<Vector> SynthClusters(int n, int dims, int k, double sigma,
                                  uint64_t seed);

// Maps [0, 1] coordinates onto the grid {0, ..., bins - 1}.
std::vector<Vector> Discretize(const std::vector<Vector>& points, int bins);

// A 1-D histogram of `count` tuples: "uniform", "zipf" or "sparse".
absl::StatusOr<Histogram> SynthHistogram(std::string_view shape,
                                         int64_t domain_size, int64_t count,
                                         uint64_t seed);

// FNV-1a, used to key per-row seeds by row content.
uint64_t Fnv1a(std::string_view text);

struct Quartiles {
  double mean = 0;
  double q1 = 0;
  double median = 0;
  double q3 = 0;
};
// Linear interpolation between order statistics.
Quartiles Summarize(std::vector<double> values);

struct ReportRow {
  std::string experiment;
  std::string mechanism;
  std::string policy;
  double epsilon = 0;
  int64_t theta = 0;
  int fanout = 0;
  std::string metric;
  Quartiles stats;
  // Per-trial values behind `stats`.
  std::vector<double> samples;
};

struct ExperimentReport {
  uint64_t seed = 0;
  std::vector<ReportRow> rows;

  // experiment,mechanism,policy,epsilon,theta,fanout,metric,mean,q1,q3
  std::string ToCsv() const;
};

// Config text is JSON with "experiment" in {range-mse, cdf-release,
// kmeans-ratio, sensitivity-table} and a "seed".
absl::StatusOr<ExperimentReport> RunExperiment(const nlohmann::json& config);
absl::StatusOr<ExperimentReport> RunExperimentText(std::string_view config_text);

}  // namespace blowfish

#endif  // BLOWFISH_EVAL_H_
