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

// Domain description, dataset ingestion and histogram construction.
//
// A domain is the cross product of finite categorical attributes. Every point
// of the domain has a flat rank in [0, size()) given by mixed-radix encoding
// with the last attribute varying fastest; that rank order is also the total
// order used by cumulative histograms.

#ifndef BLOWFISH_DOMAIN_H_
#define BLOWFISH_DOMAIN_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace blowfish {

struct Attribute {
  std::string name;
  std::vector<std::string> values;
  bool ordinal = false;
};

// A domain value as one value index per attribute.
struct Point {
  std::vector<int> indices;

  friend bool operator==(const Point&, const Point&) = default;
};

class DomainSpec {
 public:
  // Validates the attribute list: at least one attribute, every attribute
  // non-empty, labels unique within an attribute, names unique.
  static absl::StatusOr<DomainSpec> Create(std::vector<Attribute> attributes);

  const std::vector<Attribute>& attributes() const { return attributes_; }
  int num_attributes() const { return static_cast<int>(attributes_.size()); }
  int cardinality(int attribute) const {
    return static_cast<int>(attributes_[attribute].values.size());
  }
  // |T|, the number of points in the domain.
  int64_t size() const { return size_; }

  absl::StatusOr<int> AttributeIndex(std::string_view name) const;
  absl::StatusOr<int> ValueIndex(int attribute, std::string_view label) const;

  bool Contains(const Point& point) const;
  // Rank/Unrank assume valid input; use Contains() to check untrusted points.
  int64_t Rank(const Point& point) const;
  Point Unrank(int64_t rank) const;
  // Rank increment for a unit step of `attribute`.
  int64_t stride(int attribute) const { return strides_[attribute]; }
  // The value index of `attribute` for the point with flat rank `rank`.
  int Coordinate(int64_t rank, int attribute) const {
    return static_cast<int>((rank / strides_[attribute]) %
                            cardinality(attribute));
  }

  // L1 distance between two ranks, in index units.
  int64_t RankDistance(int64_t a, int64_t b) const;
  // d(T): the largest L1 distance between two points of the domain.
  int64_t Diameter() const;

  nlohmann::json ToJson() const;

  friend bool operator==(const DomainSpec& a, const DomainSpec& b) {
    return a.size_ == b.size_ && a.num_attributes() == b.num_attributes() &&
           a.SameShapeAndLabels(b);
  }

 private:
  bool SameShapeAndLabels(const DomainSpec& other) const;

  std::vector<Attribute> attributes_;
  std::vector<int64_t> strides_;
  std::vector<std::unordered_map<std::string, int>> label_index_;
  int64_t size_ = 0;
};

// Parses {"attributes": [{"name", "values", "ordinal"?}, ...]} or a bare list
// of attribute objects.
absl::StatusOr<DomainSpec> DomainFromJson(const nlohmann::json& json);
absl::StatusOr<DomainSpec> LoadDomain(std::string_view text);

struct Row {
  int64_t id = 0;
  Point point;
};

struct Dataset {
  std::vector<Row> rows;

  int64_t size() const { return static_cast<int64_t>(rows.size()); }
};

// Reads comma separated text with a header row naming every domain attribute
// (any order) and an optional "id" column. Missing ids are assigned 0..n-1 in
// file order.
absl::StatusOr<Dataset> IngestDataset(std::string_view csv_text,
                                      const DomainSpec& domain);

struct Histogram {
  std::vector<int64_t> counts;

  int64_t Total() const;
};

struct CumulativeHistogram {
  std::vector<int64_t> prefix;
  // Number of distinct prefix values.
  int64_t distinct_count = 0;
};

Histogram BuildHistogram(const Dataset& data, const DomainSpec& domain);
CumulativeHistogram Cumulative(const Histogram& histogram);

// Sum of per-attribute index differences. Fails if the points have a
// different number of attributes.
absl::StatusOr<int64_t> L1Distance(const Point& x, const Point& y);

}  // namespace blowfish

#endif  // BLOWFISH_DOMAIN_H_
