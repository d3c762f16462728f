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

#include "blowfish/budget.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "blowfish/status_macros.h"

namespace blowfish {

namespace {

absl::Status CheckCharge(double epsilon) {
  if (!(epsilon > 0) || std::isinf(epsilon)) {
    return absl::InvalidArgumentError("charges must be positive and finite");
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status BudgetLedger::ChargeSequential(std::string label,
                                            double epsilon) {
  RETURN_IF_ERROR(CheckCharge(epsilon));
  charges_.push_back({std::move(label), epsilon, ""});
  return absl::OkStatus();
}

absl::Status BudgetLedger::ChargeParallel(std::string group, std::string label,
                                          double epsilon) {
  RETURN_IF_ERROR(CheckCharge(epsilon));
  if (group.empty()) {
    return absl::InvalidArgumentError("parallel charges need a group name");
  }
  charges_.push_back({std::move(label), epsilon, std::move(group)});
  return absl::OkStatus();
}

absl::Status BudgetLedger::CertifyGroup(
    const std::string& group, const Policy& policy,
    const std::vector<std::vector<int64_t>>& subsets) {
  if (policy.constraint_kind() != ConstraintKind::kGeneral) {
    certificates_[group] = ParallelCertificate::kCardinalityOnly;
    return absl::OkStatus();
  }
  ASSIGN_OR_RETURN(bool ok, CheckParallelDecomposition(policy, subsets));
  if (!ok) {
    return absl::FailedPreconditionError(absl::StrCat(
        "group '", group, "': constraints do not decompose over the subsets"));
  }
  certificates_[group] = ParallelCertificate::kDecomposition;
  return absl::OkStatus();
}

void BudgetLedger::AssumeCertified(const std::string& group,
                                   ParallelCertificate cert) {
  certificates_[group] = cert;
}

absl::StatusOr<double> BudgetLedger::Total() const {
  double total = 0;
  std::map<std::string, double> group_max;
  for (const BudgetCharge& charge : charges_) {
    if (charge.group.empty()) {
      total += charge.epsilon;
    } else {
      double& m = group_max[charge.group];
      m = std::max(m, charge.epsilon);
    }
  }
  for (const auto& [group, m] : group_max) {
    if (!certificates_.count(group)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "parallel group '", group, "' has no decomposition certificate"));
    }
    total += m;
  }
  return total;
}

absl::StatusOr<BudgetLedger> LedgerFromJson(const nlohmann::json& json,
                                            const Policy* policy) {
  if (!json.is_object()) {
    return absl::InvalidArgumentError("ledger must be a JSON object");
  }
  BudgetLedger ledger;
  if (json.contains("charges")) {
    if (!json.at("charges").is_array()) {
      return absl::InvalidArgumentError("'charges' must be a list");
    }
    for (const nlohmann::json& c : json.at("charges")) {
      if (!c.is_object() || !c.contains("epsilon") ||
          !c.at("epsilon").is_number()) {
        return absl::InvalidArgumentError("each charge needs a numeric epsilon");
      }
      const std::string label =
          c.contains("label") && c.at("label").is_string()
              ? c.at("label").get<std::string>()
              : std::string();
      const double epsilon = c.at("epsilon").get<double>();
      if (c.contains("group")) {
        if (!c.at("group").is_string()) {
          return absl::InvalidArgumentError("charge group must be a string");
        }
        RETURN_IF_ERROR(ledger.ChargeParallel(
            c.at("group").get<std::string>(), label, epsilon));
      } else {
        RETURN_IF_ERROR(ledger.ChargeSequential(label, epsilon));
      }
    }
  }
  if (json.contains("groups")) {
    if (!json.at("groups").is_object()) {
      return absl::InvalidArgumentError("'groups' must be an object");
    }
    for (const auto& [group, spec] : json.at("groups").items()) {
      if (!spec.is_object()) {
        return absl::InvalidArgumentError("group entries must be objects");
      }
      if (spec.contains("subsets")) {
        if (policy == nullptr) {
          return absl::InvalidArgumentError(absl::StrCat(
              "group '", group, "' uses subsets; a policy is required"));
        }
        std::vector<std::vector<int64_t>> subsets;
        for (const nlohmann::json& s : spec.at("subsets")) {
          if (!s.is_array()) {
            return absl::InvalidArgumentError("subsets must be id lists");
          }
          std::vector<int64_t> ids;
          for (const nlohmann::json& id : s) {
            if (!id.is_number_integer()) {
              return absl::InvalidArgumentError("ids must be integers");
            }
            ids.push_back(id.get<int64_t>());
          }
          subsets.push_back(std::move(ids));
        }
        RETURN_IF_ERROR(ledger.CertifyGroup(group, *policy, subsets));
      } else if (spec.contains("certificate") &&
                 spec.at("certificate") == "cardinality") {
        if (policy != nullptr &&
            policy->constraint_kind() == ConstraintKind::kGeneral) {
          return absl::FailedPreconditionError(absl::StrCat(
              "group '", group,
              "' claims cardinality-only constraints but the policy has "
              "general constraints"));
        }
        ledger.AssumeCertified(group, ParallelCertificate::kCardinalityOnly);
      } else {
        return absl::InvalidArgumentError(
            absl::StrCat("group '", group, "' has no usable certificate"));
      }
    }
  }
  return ledger;
}

}  // namespace blowfish
