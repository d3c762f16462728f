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

#ifndef BLOWFISH_MECHANISMS_H_
#define BLOWFISH_MECHANISMS_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "blowfish/domain.h"
#include "blowfish/noise.h"
#include "json.hpp"

namespace blowfish {

struct PrivacyParams {
  double epsilon = 1.0;
  uint64_t seed = 0;

  absl::Status Validate() const;
};

// Adds Laplace(sensitivity / epsilon) to each component. Component i draws
// from the stream TaggedKey(kLaplace, i).
absl::StatusOr<std::vector<double>> LaplaceMechanism(
    const std::vector<double>& truth, double sensitivity, double epsilon,
    const NoiseSource& noise);

// L2 projection onto non-decreasing vectors (pool adjacent violators).
// With clamp_nonnegative, the result is additionally projected onto the
// non-negative orthant.
std::vector<double> IsotonicRegression(const std::vector<double>& values,
                                       bool clamp_nonnegative = false);

struct ReleasedCumulative {
  std::vector<double> noisy;
  std::vector<double> inferred;
  int64_t theta = 1;
  double epsilon = 0;
};

// Noisy prefix counts with Laplace(theta / epsilon), then isotonic
// inference. Prefix i (1-based) draws from TaggedKey(kSNode, i).
absl::StatusOr<ReleasedCumulative> OrderedMechanism(
    const Histogram& histogram, int64_t theta, double epsilon,
    const NoiseSource& noise, bool clamp_nonnegative = true);

// Answer of q[x_i, x_j] (1-based, inclusive) from a prefix vector.
double RangeFromPrefix(const std::vector<double>& prefix, int64_t i,
                       int64_t j);

struct BudgetSplit {
  double epsilon_s = 0;
  double epsilon_h = 0;
  double c1 = 0;
  double c2 = 0;
  double predicted_mse = 0;
};

absl::StatusOr<BudgetSplit> OptimalBudgetSplit(int64_t domain_size,
                                               int64_t theta, int fanout,
                                               double epsilon);

// c1 / eps_s^2 + c2 / eps_h^2, with 0 / 0 read as 0.
double PredictedRangeMse(double c1, double c2, double epsilon_s,
                         double epsilon_h);

// ceil(log_fanout(n)) computed exactly.
int CeilLog(int64_t n, int fanout);

struct TreeNode {
  // 1-based block; level 0 is a block root.
  int block = 1;
  int level = 0;
  int64_t index = 0;
  // Covered positions [begin, end), 0-based.
  int64_t begin = 0;
  int64_t end = 0;
  double value = 0;
  double scale = 0;
  uint64_t key = 0;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class OHTree {
 public:
  int64_t domain_size() const { return domain_size_; }
  int64_t theta() const { return theta_; }
  int fanout() const { return fanout_; }
  int height() const { return height_; }
  int64_t num_blocks() const { return static_cast<int64_t>(s_nodes_.size()); }

  // S-node i (1-based) is the released prefix q[x_1, x_min(i*theta,|T|)].
  // S-node 1 is also the root of the first subtree.
  const TreeNode& SNode(int64_t i) const { return nodes_[s_nodes_[i - 1]]; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }

  // Estimate of q[x_1, x_j], 1 <= j <= |T|; j = 0 gives 0.
  absl::StatusOr<double> Cumulative(int64_t j) const;
  absl::StatusOr<double> Range(int64_t i, int64_t j) const;
  // Cumulative(1..|T|).
  std::vector<double> AllCumulative() const;

  // Indices into nodes() whose true count changes when one tuple moves from
  // position x to position y (0-based).
  std::vector<int> AffectedNodes(int64_t x, int64_t y) const;

  nlohmann::json ToJson() const;

 private:
  friend absl::StatusOr<OHTree> BuildOhRelease(const Histogram&, int64_t,
                                               int, double, double,
                                               const NoiseSource&);
  friend absl::StatusOr<OHTree> BuildHierarchicalRelease(const Histogram&,
                                                         int, double,
                                                         const NoiseSource&);

  int Lookup(int block, int level, int64_t index) const;

  int64_t domain_size_ = 0;
  int64_t theta_ = 1;
  int fanout_ = 2;
  int height_ = 0;
  std::vector<TreeNode> nodes_;
  std::vector<int> s_nodes_;
  // h_nodes_[block - 1][level - 1][index] -> node id.
  std::vector<std::vector<std::vector<int>>> h_nodes_;
};

// Ordered-hierarchical release: k = ceil(|T|/theta) S-nodes and an f-ary
// subtree of height ceil(log_f theta) per block, released at levels 1..h.
absl::StatusOr<OHTree> BuildOhRelease(const Histogram& histogram,
                                      int64_t theta, int fanout,
                                      double epsilon_s, double epsilon_h,
                                      const NoiseSource& noise);

// Classical f-ary hierarchical release over the whole domain, every node
// with scale 2h/epsilon.
absl::StatusOr<OHTree> BuildHierarchicalRelease(const Histogram& histogram,
                                                int fanout, double epsilon,
                                                const NoiseSource& noise);

}  // namespace blowfish

#endif  // BLOWFISH_MECHANISMS_H_
