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
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "blowfish/mechanisms.h"

namespace blowfish {

absl::Status PrivacyParams::Validate() const {
  if (!(epsilon > 0) || std::isinf(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be positive and finite");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> LaplaceMechanism(
    const std::vector<double>& truth, double sensitivity, double epsilon,
    const NoiseSource& noise) {
  if (std::isinf(sensitivity)) {
    return absl::FailedPreconditionError(
        "infinite sensitivity: the policy cannot release this query with "
        "finite noise");
  }
  if (!(sensitivity >= 0)) {
    return absl::InvalidArgumentError("sensitivity must be >= 0");
  }
  if (absl::Status s = PrivacyParams{epsilon, 0}.Validate(); !s.ok()) return s;
  const double scale = sensitivity / epsilon;
  std::vector<double> out = truth;
  if (scale == 0) return out;
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] += noise.Laplace(scale, TaggedKey(StreamTag::kLaplace, i));
  }
  return out;
}

std::vector<double> IsotonicRegression(const std::vector<double>& values,
                                       bool clamp_nonnegative) {
  struct Block {
    double sum;
    int64_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  blocks.reserve(values.size());
  for (double v : values) {
    blocks.push_back({v, 1});
    while (blocks.size() >= 2 &&
           blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
      Block last = blocks.back();
      blocks.pop_back();
      blocks.back().sum += last.sum;
      blocks.back().count += last.count;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (const Block& block : blocks) {
    double mean = block.mean();
    if (clamp_nonnegative) mean = std::max(mean, 0.0);
    out.insert(out.end(), block.count, mean);
  }
  return out;
}

absl::StatusOr<ReleasedCumulative> OrderedMechanism(
    const Histogram& histogram, int64_t theta, double epsilon,
    const NoiseSource& noise, bool clamp_nonnegative) {
  if (theta < 1) return absl::InvalidArgumentError("theta must be >= 1");
  if (absl::Status s = PrivacyParams{epsilon, 0}.Validate(); !s.ok()) return s;
  if (histogram.counts.empty()) {
    return absl::InvalidArgumentError("histogram is empty");
  }
  ReleasedCumulative out;
  out.theta = theta;
  out.epsilon = epsilon;
  const double scale = static_cast<double>(theta) / epsilon;
  double running = 0;
  out.noisy.reserve(histogram.counts.size());
  for (size_t i = 0; i < histogram.counts.size(); ++i) {
    running += static_cast<double>(histogram.counts[i]);
    out.noisy.push_back(running +
                        noise.Laplace(scale, TaggedKey(StreamTag::kSNode, i + 1)));
  }
  out.inferred = IsotonicRegression(out.noisy, clamp_nonnegative);
  return out;
}

double RangeFromPrefix(const std::vector<double>& prefix, int64_t i,
                       int64_t j) {
  return prefix[j - 1] - (i > 1 ? prefix[i - 2] : 0.0);
}

int CeilLog(int64_t n, int fanout) {
  int h = 0;
  for (int64_t p = 1; p < n; p *= fanout) ++h;
  return h;
}

double PredictedRangeMse(double c1, double c2, double epsilon_s,
                         double epsilon_h) {
  double total = 0;
  if (c1 > 0) total += c1 / (epsilon_s * epsilon_s);
  if (c2 > 0) total += c2 / (epsilon_h * epsilon_h);
  return total;
}

absl::StatusOr<BudgetSplit> OptimalBudgetSplit(int64_t domain_size,
                                               int64_t theta, int fanout,
                                               double epsilon) {
  if (domain_size < 1 || theta < 1 || theta > domain_size) {
    return absl::InvalidArgumentError(
        absl::StrCat("theta must lie in [1, ", domain_size, "]"));
  }
  if (fanout < 2) return absl::InvalidArgumentError("fanout must be >= 2");
  if (absl::Status s = PrivacyParams{epsilon, 0}.Validate(); !s.ok()) return s;
  const double t = static_cast<double>(domain_size);
  const double log_f_theta =
      std::log(static_cast<double>(theta)) / std::log(static_cast<double>(fanout));
  BudgetSplit split;
  split.c1 = 4.0 * (t - static_cast<double>(theta)) / (t + 1.0);
  split.c2 = 8.0 * (fanout - 1) * std::pow(log_f_theta, 3) * t / (t + 1.0);
  const double r1 = std::cbrt(split.c1);
  const double r2 = std::cbrt(split.c2);
  if (r1 + r2 == 0) {
    split.epsilon_s = epsilon;
  } else {
    split.epsilon_s = r1 / (r1 + r2) * epsilon;
  }
  split.epsilon_h = epsilon - split.epsilon_s;
  split.predicted_mse = std::pow(r1 + r2, 3) / (epsilon * epsilon);
  return split;
}

}  // namespace blowfish
