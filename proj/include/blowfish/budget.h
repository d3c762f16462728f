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

#ifndef BLOWFISH_BUDGET_H_
#define BLOWFISH_BUDGET_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "blowfish/policy.h"
#include "json.hpp"

namespace blowfish {

enum class ParallelCertificate { kCardinalityOnly, kDecomposition };

struct BudgetCharge {
  std::string label;
  double epsilon = 0;
  // Empty for sequential charges.
  std::string group;
};

class BudgetLedger {
 public:
  absl::Status ChargeSequential(std::string label, double epsilon);
  absl::Status ChargeParallel(std::string group, std::string label,
                              double epsilon);

  // Accepts the group when the policy's constraints are cardinality-only or
  // the id subsets pass the decomposition check.
  absl::Status CertifyGroup(const std::string& group, const Policy& policy,
                            const std::vector<std::vector<int64_t>>& subsets);
  // Records an externally established certificate.
  void AssumeCertified(const std::string& group, ParallelCertificate cert);

  // Sum of sequential charges plus the max of each parallel group.
  absl::StatusOr<double> Total() const;

  const std::vector<BudgetCharge>& charges() const { return charges_; }

 private:
  std::vector<BudgetCharge> charges_;
  std::map<std::string, ParallelCertificate> certificates_;
};

// {"charges": [{"label", "epsilon", "group"?}],
//  "groups": {"g": {"certificate": "cardinality"} | {"subsets": [[ids]]}}}
// Subset certificates need `policy`.
absl::StatusOr<BudgetLedger> LedgerFromJson(const nlohmann::json& json,
                                            const Policy* policy);

}  // namespace blowfish

#endif  // BLOWFISH_BUDGET_H_
