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

#ifndef BLOWFISH_TESTS_TEST_UTIL_H_
#define BLOWFISH_TESTS_TEST_UTIL_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "blowfish/domain.h"
#include "blowfish/policy.h"
#include "gtest/gtest.h"

namespace blowfish::testing {

inline DomainSpec MakeDomain(const std::vector<int>& cards) {
  std::vector<Attribute> attributes;
  for (size_t a = 0; a < cards.size(); ++a) {
    Attribute attribute;
    attribute.name = absl::StrCat("A", a + 1);
    for (int v = 0; v < cards[a]; ++v) {
      attribute.values.push_back(absl::StrCat(v));
    }
    attributes.push_back(std::move(attribute));
  }
  auto domain = DomainSpec::Create(std::move(attributes));
  EXPECT_TRUE(domain.ok()) << domain.status();
  return *std::move(domain);
}

// A1 = {a1, a2}, A2 = {b1, b2}, A3 = {c1, c2, c3}.
inline DomainSpec ThreeAttributeDomain() {
  auto domain = DomainSpec::Create({{"A1", {"a1", "a2"}},
                                    {"A2", {"b1", "b2"}},
                                    {"A3", {"c1", "c2", "c3"}}});
  EXPECT_TRUE(domain.ok()) << domain.status();
  return *std::move(domain);
}

// Count query over singleton or explicit value sets.
inline CountQuery Query(std::map<int, std::vector<int>> allowed,
                        std::optional<int64_t> answer = std::nullopt) {
  CountQuery q;
  q.allowed = std::move(allowed);
  q.answer = answer;
  return q;
}

// Inclusive index range on one attribute per entry.
inline CountQuery RangeQuery(const std::map<int, std::pair<int, int>>& ranges,
                             std::optional<int64_t> answer = std::nullopt) {
  CountQuery q;
  for (const auto& [attribute, range] : ranges) {
    for (int v = range.first; v <= range.second; ++v) {
      q.allowed[attribute].push_back(v);
    }
  }
  q.answer = answer;
  return q;
}

inline Policy MakePolicy(DomainSpec domain, SecretGraph graph,
                         std::vector<CountQuery> queries = {}) {
  return Policy{std::move(domain), std::move(graph),
                ConstraintSet{std::move(queries)}};
}

inline SecretGraph Distance(int64_t theta) {
  return *SecretGraph::DistanceThreshold(theta);
}

}  // namespace blowfish::testing

#endif  // BLOWFISH_TESTS_TEST_UTIL_H_
