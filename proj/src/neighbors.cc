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
#include <cstdint>
#include <limits>
#include <set>
#include <unordered_set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "blowfish/policy.h"
#include "blowfish/status_macros.h"

namespace blowfish {

namespace {

constexpr int64_t kMaxEdgeMatrix = int64_t{1} << 24;

// Dense edge lookup for the small domains that enumeration can handle.
class EdgeMatrix {
 public:
  explicit EdgeMatrix(const Policy& policy)
      : size_(policy.domain.size()), bits_(size_ * size_, 0) {
    for (int64_t x = 0; x < size_; ++x) {
      for (int64_t y = 0; y < size_; ++y) {
        bits_[x * size_ + y] = policy.graph.IsEdge(policy.domain, x, y);
      }
    }
  }
  bool operator()(int64_t x, int64_t y) const { return bits_[x * size_ + y]; }

 private:
  int64_t size_;
  std::vector<uint8_t> bits_;
};

absl::Status CheckEnumerable(const Policy& policy, int n,
                             const EnumerationOptions& options) {
  if (n < 0) return absl::InvalidArgumentError("n must be non-negative");
  if (policy.domain.size() * policy.domain.size() > kMaxEdgeMatrix) {
    return absl::ResourceExhaustedError("domain too large to enumerate");
  }
  int64_t count = 1;
  for (int i = 0; i < n; ++i) {
    if (count > options.max_databases / policy.domain.size()) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "|T|^n exceeds the enumeration budget of ", options.max_databases));
    }
    count *= policy.domain.size();
  }
  return absl::OkStatus();
}

Dataset ToDataset(const DomainSpec& domain, const Database& db) {
  Dataset data;
  for (int64_t id = 0; id < static_cast<int64_t>(db.size()); ++id) {
    data.rows.push_back(Row{id, domain.Unrank(db[id])});
  }
  return data;
}

}  // namespace

bool Satisfies(const Policy& policy, const Database& db) {
  for (const CountQuery& query : policy.constraints.queries) {
    if (!query.answer.has_value()) continue;
    int64_t count = 0;
    for (int64_t rank : db) count += query.Matches(policy.domain, rank);
    if (count != *query.answer) return false;
  }
  return true;
}

std::vector<SecretPair> RealizedSecretPairs(const Policy& policy,
                                            const Database& d1,
                                            const Database& d2) {
  std::vector<SecretPair> pairs;
  for (int64_t id = 0; id < static_cast<int64_t>(d1.size()); ++id) {
    if (policy.graph.IsEdge(policy.domain, d1[id], d2[id])) {
      pairs.push_back(SecretPair{id, d1[id], d2[id]});
    }
  }
  return pairs;
}

absl::StatusOr<std::vector<Database>> EnumerateConstrainedDatabases(
    const Policy& policy, int n, const EnumerationOptions& options) {
  RETURN_IF_ERROR(CheckEnumerable(policy, n, options));
  std::vector<Database> out;
  Database db(n, 0);
  while (true) {
    if (Satisfies(policy, db)) out.push_back(db);
    int pos = n - 1;
    while (pos >= 0 && db[pos] == policy.domain.size() - 1) db[pos--] = 0;
    if (pos < 0) break;
    ++db[pos];
  }
  return out;
}

absl::Status ForEachNeighbor(
    const Policy& policy, int n, const EnumerationOptions& options,
    const std::function<void(const Database&, const Database&)>& fn) {
  ASSIGN_OR_RETURN(std::vector<Database> databases,
                   EnumerateConstrainedDatabases(policy, n, options));
  if (databases.empty()) {
    return absl::FailedPreconditionError(
        "constraint answers are inconsistent: no database satisfies them");
  }
  const EdgeMatrix edge(policy);
  const int64_t size = policy.domain.size();

  std::unordered_set<int64_t> members;
  auto encode = [size](const Database& db) {
    int64_t code = 0;
    for (int64_t v : db) code = code * size + v;
    return code;
  };
  for (const Database& db : databases) members.insert(encode(db));

  // A T-key records, per id, 1 + the new value of an edge change, or 0.
  auto tkey_digit = [&](const Database& d1, const Database& d, int id) {
    return (d[id] != d1[id] && edge(d1[id], d[id])) ? d[id] + 1 : 0;
  };
  auto encode_key = [size](const std::vector<int64_t>& digits) {
    int64_t code = 0;
    for (int64_t digit : digits) code = code * (size + 1) + digit;
    return code;
  };

  std::vector<int64_t> digits(n);
  for (const Database& d1 : databases) {
    std::unordered_set<int64_t> keys;
    for (const Database& d : databases) {
      bool any = false;
      for (int id = 0; id < n; ++id) {
        digits[id] = tkey_digit(d1, d, id);
        any |= digits[id] != 0;
      }
      if (any) keys.insert(encode_key(digits));
    }

    for (const Database& d2 : databases) {
      std::vector<int> edge_changes;
      std::vector<int> other_changes;
      for (int id = 0; id < n; ++id) {
        if (d2[id] == d1[id]) continue;
        if (edge(d1[id], d2[id])) {
          edge_changes.push_back(id);
        } else {
          other_changes.push_back(id);
        }
      }
      if (edge_changes.empty()) continue;

      // Some D3 realizes a strictly smaller non-empty T.
      bool minimal = true;
      const uint32_t full_e = (1u << edge_changes.size()) - 1;
      for (uint32_t mask = 1; mask < full_e && minimal; ++mask) {
        std::fill(digits.begin(), digits.end(), 0);
        for (size_t b = 0; b < edge_changes.size(); ++b) {
          if (mask >> b & 1) {
            digits[edge_changes[b]] = d2[edge_changes[b]] + 1;
          }
        }
        if (keys.count(encode_key(digits))) minimal = false;
      }
      // Same T, strictly fewer tuple changes.
      const uint32_t full_o = (1u << other_changes.size()) - 1;
      for (uint32_t mask = 0; mask < full_o && minimal; ++mask) {
        Database d3 = d1;
        for (int id : edge_changes) d3[id] = d2[id];
        for (size_t b = 0; b < other_changes.size(); ++b) {
          if (mask >> b & 1) d3[other_changes[b]] = d2[other_changes[b]];
        }
        if (members.count(encode(d3))) minimal = false;
      }
      if (minimal) fn(d1, d2);
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<NeighborPair>> EnumerateNeighbors(
    const Policy& policy, int n, const EnumerationOptions& options) {
  std::vector<NeighborPair> out;
  RETURN_IF_ERROR(ForEachNeighbor(
      policy, n, options, [&](const Database& d1, const Database& d2) {
        NeighborPair pair;
        pair.d1 = ToDataset(policy.domain, d1);
        pair.d2 = ToDataset(policy.domain, d2);
        pair.t_set = RealizedSecretPairs(policy, d1, d2);
        for (int id = 0; id < n; ++id) pair.delta += 2 * (d1[id] != d2[id]);
        out.push_back(std::move(pair));
      }));
  return out;
}

absl::StatusOr<bool> CheckParallelDecomposition(
    const Policy& policy, const std::vector<std::vector<int64_t>>& subsets) {
  const DomainSpec& domain = policy.domain;
  if (domain.size() * domain.size() > kMaxEdgeMatrix) {
    return absl::ResourceExhaustedError("domain too large for pair search");
  }
  std::set<int64_t> population;
  for (const auto& subset : subsets) {
    for (int64_t id : subset) {
      if (id < 0) return absl::InvalidArgumentError("ids must be >= 0");
      if (!population.insert(id).second) {
        return absl::InvalidArgumentError(
            absl::StrCat("id ", id, " appears in two subsets"));
      }
    }
  }
  const int64_t n = static_cast<int64_t>(population.size());

  for (const CountQuery& query : policy.constraints.queries) {
    if (!query.answer.has_value()) continue;
    bool has_true = false;
    bool has_false = false;
    for (int64_t r = 0; r < domain.size(); ++r) {
      (query.Matches(domain, r) ? has_true : has_false) = true;
    }
    // Range of counts the other n-1 tuples can contribute.
    const int64_t lo = has_false ? 0 : n - 1;
    const int64_t hi = has_true ? n - 1 : 0;

    // Ids are interchangeable, so a pair (x, y) is critical for one id iff
    // it is critical for every id.
    bool critical = false;
    policy.graph.ForEachEdge(domain, [&](int64_t x, int64_t y) {
      if (critical) return;
      const bool fx = query.Matches(domain, x);
      if (fx == query.Matches(domain, y)) return;
      // Witness D_s: the changed tuple holds x and the rest complete the
      // answer; moving it to y then breaks the answer.
      const int64_t rest = *query.answer - (fx ? 1 : 0);
      if (rest >= lo && rest <= hi) critical = true;
    });
    if (!critical) continue;
    int touched = 0;
    for (const auto& subset : subsets) touched += !subset.empty();
    if (touched > 1) return false;
  }
  return true;
}

}  // namespace blowfish
