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

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "blowfish/mechanisms.h"

namespace blowfish {

namespace {

bool ValidBudget(double e) { return e >= 0 && !std::isinf(e); }

std::vector<double> Prefix(const Histogram& histogram) {
  std::vector<double> prefix(histogram.counts.size() + 1, 0);
  for (size_t i = 0; i < histogram.counts.size(); ++i) {
    prefix[i + 1] = prefix[i] + static_cast<double>(histogram.counts[i]);
  }
  return prefix;
}

int64_t Power(int base, int exponent) {
  int64_t p = 1;
  for (int i = 0; i < exponent; ++i) p *= base;
  return p;
}

}  // namespace

int OHTree::Lookup(int block, int level, int64_t index) const {
  return h_nodes_[block - 1][level - 1][index];
}

absl::StatusOr<double> OHTree::Cumulative(int64_t j) const {
  if (j < 0 || j > domain_size_) {
    return absl::OutOfRangeError(
        absl::StrCat("prefix end ", j, " outside [0, ", domain_size_, "]"));
  }
  if (j == 0) return 0.0;
  if (j == domain_size_) return SNode(num_blocks()).value;
  const int64_t l = j / theta_;
  double total = l >= 1 ? SNode(l).value : 0.0;
  int64_t residual = j - l * theta_;
  int64_t offset = 0;
  for (int level = 1; level <= height_ && residual > 0; ++level) {
    const int64_t size = Power(fanout_, height_ - level);
    const int64_t digits = residual / size;
    for (int64_t d = 0; d < digits; ++d) {
      total += nodes_[Lookup(static_cast<int>(l + 1), level, offset / size + d)]
                   .value;
    }
    offset += digits * size;
    residual -= digits * size;
  }
  return total;
}

absl::StatusOr<double> OHTree::Range(int64_t i, int64_t j) const {
  if (i < 1 || i > j || j > domain_size_) {
    return absl::OutOfRangeError(absl::StrCat("invalid range [", i, ", ", j,
                                              "] for domain size ",
                                              domain_size_));
  }
  absl::StatusOr<double> hi = Cumulative(j);
  absl::StatusOr<double> lo = Cumulative(i - 1);
  if (!hi.ok()) return hi.status();
  if (!lo.ok()) return lo.status();
  return *hi - *lo;
}

std::vector<double> OHTree::AllCumulative() const {
  std::vector<double> out;
  out.reserve(domain_size_);
  for (int64_t j = 1; j <= domain_size_; ++j) out.push_back(*Cumulative(j));
  return out;
}

std::vector<int> OHTree::AffectedNodes(int64_t x, int64_t y) const {
  std::vector<int> out;
  for (int id = 0; id < static_cast<int>(nodes_.size()); ++id) {
    const TreeNode& node = nodes_[id];
    const bool has_x = node.begin <= x && x < node.end;
    const bool has_y = node.begin <= y && y < node.end;
    if (has_x != has_y) out.push_back(id);
  }
  return out;
}

nlohmann::json OHTree::ToJson() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const TreeNode& node : nodes_) {
    nodes.push_back({{"block", node.block},
                     {"level", node.level},
                     {"index", node.index},
                     {"interval", {node.begin + 1, node.end}},
                     {"value", node.value},
                     {"scale", node.scale}});
  }
  return nlohmann::json{{"domain_size", domain_size_},
                        {"theta", theta_},
                        {"fanout", fanout_},
                        {"height", height_},
                        {"nodes", std::move(nodes)}};
}

absl::StatusOr<OHTree> BuildOhRelease(const Histogram& histogram,
                                      int64_t theta, int fanout,
                                      double epsilon_s, double epsilon_h,
                                      const NoiseSource& noise) {
  const int64_t size = static_cast<int64_t>(histogram.counts.size());
  if (size == 0) return absl::InvalidArgumentError("histogram is empty");
  if (theta < 1 || theta > size) {
    return absl::InvalidArgumentError(
        absl::StrCat("theta must lie in [1, ", size, "]"));
  }
  if (fanout < 2) return absl::InvalidArgumentError("fanout must be >= 2");
  if (!ValidBudget(epsilon_s) || !ValidBudget(epsilon_h) ||
      epsilon_s + epsilon_h <= 0) {
    return absl::InvalidArgumentError(
        "budgets must be finite, non-negative, and not both zero");
  }
  OHTree tree;
  tree.domain_size_ = size;
  tree.theta_ = theta;
  tree.fanout_ = fanout;
  tree.height_ = CeilLog(theta, fanout);
  const int h = tree.height_;
  const int64_t k = (size + theta - 1) / theta;
  if (k >= 2 && epsilon_s <= 0) {
    return absl::InvalidArgumentError("S-nodes need epsilon_s > 0");
  }
  if (k >= 2 && h >= 1 && epsilon_h <= 0) {
    return absl::InvalidArgumentError("H-nodes need epsilon_h > 0");
  }

  const double first_budget = epsilon_s + epsilon_h;
  const double first_scale = h >= 1 ? 2.0 * h / first_budget : 1.0 / first_budget;
  const std::vector<double> prefix = Prefix(histogram);
  auto add = [&](TreeNode node) {
    node.value = prefix[node.end] - prefix[node.begin] +
                 noise.Laplace(node.scale, node.key);
    tree.nodes_.push_back(node);
    return static_cast<int>(tree.nodes_.size()) - 1;
  };

  tree.h_nodes_.resize(k);
  for (int64_t b = 1; b <= k; ++b) {
    const int64_t begin = (b - 1) * theta;
    const int64_t end = std::min(b * theta, size);
    TreeNode s;
    s.block = static_cast<int>(b);
    s.level = 0;
    s.begin = 0;
    s.end = end;
    s.scale = b == 1 ? first_scale : 1.0 / epsilon_s;
    s.key = TaggedKey(StreamTag::kSNode, b);
    tree.s_nodes_.push_back(add(s));

    const double h_scale = b == 1 ? first_scale : 2.0 * h / epsilon_h;
    tree.h_nodes_[b - 1].resize(h);
    for (int level = 1; level <= h; ++level) {
      const int64_t width = Power(fanout, h - level);
      for (int64_t m = 0; begin + m * width < end; ++m) {
        TreeNode node;
        node.block = static_cast<int>(b);
        node.level = level;
        node.index = m;
        node.begin = begin + m * width;
        node.end = std::min(begin + (m + 1) * width, end);
        node.scale = h_scale;
        node.key = TaggedKey(StreamTag::kHNode, b, level, m);
        tree.h_nodes_[b - 1][level - 1].push_back(add(node));
      }
    }
  }
  return tree;
}

absl::StatusOr<OHTree> BuildHierarchicalRelease(const Histogram& histogram,
                                                int fanout, double epsilon,
                                                const NoiseSource& noise) {
  const int64_t size = static_cast<int64_t>(histogram.counts.size());
  if (size == 0) return absl::InvalidArgumentError("histogram is empty");
  if (fanout < 2) return absl::InvalidArgumentError("fanout must be >= 2");
  if (!(epsilon > 0) || std::isinf(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be positive and finite");
  }
  OHTree tree;
  tree.domain_size_ = size;
  tree.theta_ = size;
  tree.fanout_ = fanout;
  tree.height_ = CeilLog(size, fanout);
  const int h = tree.height_;
  const double scale = h >= 1 ? 2.0 * h / epsilon : 1.0 / epsilon;
  const std::vector<double> prefix = Prefix(histogram);

  TreeNode root;
  root.end = size;
  root.scale = scale;
  root.key = TaggedKey(StreamTag::kSNode, 1);
  root.value = prefix[size] + noise.Laplace(scale, root.key);
  tree.nodes_.push_back(root);
  tree.s_nodes_.push_back(0);

  tree.h_nodes_.assign(1, std::vector<std::vector<int>>(h));
  int64_t width = 1;
  for (int i = 0; i < h; ++i) width *= fanout;
  for (int level = 1; level <= h; ++level) {
    width /= fanout;
    for (int64_t m = 0; m * width < size; ++m) {
      TreeNode node;
      node.level = level;
      node.index = m;
      node.begin = m * width;
      node.end = std::min((m + 1) * width, size);
      node.scale = scale;
      node.key = TaggedKey(StreamTag::kHNode, 1, level, m);
      node.value = prefix[node.end] - prefix[node.begin] +
                   noise.Laplace(scale, node.key);
      tree.h_nodes_[0][level - 1].push_back(
          static_cast<int>(tree.nodes_.size()));
      tree.nodes_.push_back(node);
    }
  }
  return tree;
}

}  // namespace blowfish
