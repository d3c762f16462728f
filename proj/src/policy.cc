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

#include "blowfish/policy.h"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "blowfish/status_macros.h"

namespace blowfish {

std::string_view GraphKindName(GraphKind kind) {
  switch (kind) {
    case GraphKind::kFull:
      return "full";
    case GraphKind::kAttribute:
      return "attribute";
    case GraphKind::kPartition:
      return "partition";
    case GraphKind::kDistanceThreshold:
      return "distance";
    case GraphKind::kExplicit:
      return "explicit";
  }
  return "unknown";
}

SecretGraph SecretGraph::Full() { return SecretGraph(); }

SecretGraph SecretGraph::Attribute() {
  SecretGraph graph;
  graph.kind_ = GraphKind::kAttribute;
  return graph;
}

absl::StatusOr<SecretGraph> SecretGraph::Partition(
    const DomainSpec& domain, std::vector<int> cell_of_rank) {
  if (static_cast<int64_t>(cell_of_rank.size()) != domain.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("partition map has ", cell_of_rank.size(),
                     " entries, domain has ", domain.size(), " points"));
  }
  SecretGraph graph;
  graph.kind_ = GraphKind::kPartition;
  graph.cell_of_rank_ = std::move(cell_of_rank);
  return graph;
}

absl::StatusOr<SecretGraph> SecretGraph::DistanceThreshold(int64_t theta) {
  if (theta < 0) {
    return absl::InvalidArgumentError("distance threshold must be >= 0");
  }
  SecretGraph graph;
  graph.kind_ = GraphKind::kDistanceThreshold;
  graph.theta_ = theta;
  return graph;
}

absl::StatusOr<SecretGraph> SecretGraph::Explicit(
    const DomainSpec& domain,
    const std::vector<std::pair<int64_t, int64_t>>& edges) {
  SecretGraph graph;
  graph.kind_ = GraphKind::kExplicit;
  graph.adjacency_.resize(domain.size());
  for (const auto& [x, y] : edges) {
    if (x < 0 || y < 0 || x >= domain.size() || y >= domain.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("edge (", x, ",", y, ") references an invalid rank"));
    }
    if (x == y) {
      return absl::InvalidArgumentError(
          absl::StrCat("self-loop at rank ", x));
    }
    graph.adjacency_[x].push_back(y);
    graph.adjacency_[y].push_back(x);
  }
  for (auto& list : graph.adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return graph;
}

bool SecretGraph::IsEdge(const DomainSpec& domain, int64_t x,
                         int64_t y) const {
  if (x == y) return false;
  switch (kind_) {
    case GraphKind::kFull:
      return true;
    case GraphKind::kAttribute: {
      int differing = 0;
      for (int a = 0; a < domain.num_attributes(); ++a) {
        if (domain.Coordinate(x, a) != domain.Coordinate(y, a)) ++differing;
      }
      return differing == 1;
    }
    case GraphKind::kPartition:
      return cell_of_rank_[x] == cell_of_rank_[y];
    case GraphKind::kDistanceThreshold:
      return domain.RankDistance(x, y) <= theta_;
    case GraphKind::kExplicit:
      return std::binary_search(adjacency_[x].begin(), adjacency_[x].end(),
                                y);
  }
  return false;
}

int64_t SecretGraph::Distance(const DomainSpec& domain, int64_t x,
                              int64_t y) const {
  if (x == y) return 0;
  switch (kind_) {
    case GraphKind::kFull:
      return 1;
    case GraphKind::kAttribute: {
      int64_t differing = 0;
      for (int a = 0; a < domain.num_attributes(); ++a) {
        if (domain.Coordinate(x, a) != domain.Coordinate(y, a)) ++differing;
      }
      return differing;
    }
    case GraphKind::kPartition:
      return cell_of_rank_[x] == cell_of_rank_[y] ? 1 : kInfiniteDistance;
    case GraphKind::kDistanceThreshold: {
      if (theta_ == 0) return kInfiniteDistance;
      const int64_t l1 = domain.RankDistance(x, y);
      return (l1 + theta_ - 1) / theta_;
    }
    case GraphKind::kExplicit:
      return DistanceByBfs(domain, x, y);
  }
  return kInfiniteDistance;
}

int64_t SecretGraph::DistanceByBfs(const DomainSpec& domain, int64_t x,
                                   int64_t y) const {
  if (x == y) return 0;
  std::vector<int64_t> dist(domain.size(), -1);
  std::deque<int64_t> frontier = {x};
  dist[x] = 0;
  while (!frontier.empty()) {
    const int64_t u = frontier.front();
    frontier.pop_front();
    for (int64_t v = 0; v < domain.size(); ++v) {
      if (dist[v] >= 0 || !IsEdge(domain, u, v)) continue;
      dist[v] = dist[u] + 1;
      if (v == y) return dist[v];
      frontier.push_back(v);
    }
  }
  return kInfiniteDistance;
}

void SecretGraph::ForEachEdge(
    const DomainSpec& domain,
    const std::function<void(int64_t, int64_t)>& fn) const {
  if (kind_ == GraphKind::kExplicit) {
    for (int64_t x = 0; x < domain.size(); ++x) {
      for (int64_t y : adjacency_[x]) fn(x, y);
    }
    return;
  }
  for (int64_t x = 0; x < domain.size(); ++x) {
    for (int64_t y = 0; y < domain.size(); ++y) {
      if (IsEdge(domain, x, y)) fn(x, y);
    }
  }
}

std::string SecretGraph::Describe() const {
  switch (kind_) {
    case GraphKind::kDistanceThreshold:
      return absl::StrCat("distance:", theta_);
    case GraphKind::kPartition: {
      int cells = 0;
      for (int c : cell_of_rank_) cells = std::max(cells, c + 1);
      return absl::StrCat("partition:", cells);
    }
    default:
      return std::string(GraphKindName(kind_));
  }
}

nlohmann::json SecretGraph::ToJson() const {
  nlohmann::json json = {{"kind", GraphKindName(kind_)}};
  if (kind_ == GraphKind::kDistanceThreshold) json["theta"] = theta_;
  if (kind_ == GraphKind::kPartition) json["partition"] = cell_of_rank_;
  if (kind_ == GraphKind::kExplicit) {
    nlohmann::json edges = nlohmann::json::array();
    for (int64_t x = 0; x < static_cast<int64_t>(adjacency_.size()); ++x) {
      for (int64_t y : adjacency_[x]) {
        if (x < y) edges.push_back({x, y});
      }
    }
    json["edges"] = std::move(edges);
  }
  return json;
}

bool CountQuery::Matches(const Point& point) const {
  for (const auto& [attribute, values] : allowed) {
    if (!std::binary_search(values.begin(), values.end(),
                            point.indices[attribute])) {
      return false;
    }
  }
  return true;
}

bool CountQuery::Matches(const DomainSpec& domain, int64_t rank) const {
  for (const auto& [attribute, values] : allowed) {
    if (!std::binary_search(values.begin(), values.end(),
                            domain.Coordinate(rank, attribute))) {
      return false;
    }
  }
  return true;
}

bool CountQuery::IsRectangle() const {
  for (const auto& [attribute, values] : allowed) {
    if (values.back() - values.front() + 1 !=
        static_cast<int>(values.size())) {
      return false;
    }
  }
  return true;
}

bool CountQuery::IsTrivial(const DomainSpec& domain) const {
  for (const auto& [attribute, values] : allowed) {
    if (static_cast<int>(values.size()) != domain.cardinality(attribute)) {
      return false;
    }
  }
  return true;
}

ConstraintKind ConstraintSet::kind(const DomainSpec& domain) const {
  if (queries.empty()) return ConstraintKind::kNone;
  for (const CountQuery& query : queries) {
    if (!query.IsTrivial(domain)) return ConstraintKind::kGeneral;
  }
  return ConstraintKind::kCardinalityOnly;
}

namespace {

absl::StatusOr<SecretGraph> GraphFromJson(const nlohmann::json& json,
                                          const DomainSpec& domain) {
  if (!json.is_object() || !json.contains("kind") ||
      !json.at("kind").is_string()) {
    return absl::InvalidArgumentError("graph needs a string 'kind'");
  }
  const std::string kind = json.at("kind").get<std::string>();
  if (kind == "full") return SecretGraph::Full();
  if (kind == "attribute") return SecretGraph::Attribute();
  if (kind == "distance" || kind == "distance_threshold") {
    if (!json.contains("theta") || !json.at("theta").is_number_integer()) {
      return absl::InvalidArgumentError("distance graph needs integer theta");
    }
    return SecretGraph::DistanceThreshold(json.at("theta").get<int64_t>());
  }
  if (kind == "partition") {
    std::vector<int> cells;
    if (json.contains("partition")) {
      const nlohmann::json& list = json.at("partition");
      if (!list.is_array()) {
        return absl::InvalidArgumentError("'partition' must be a list");
      }
      for (const nlohmann::json& cell : list) {
        if (!cell.is_number_integer() || cell.get<int64_t>() < 0) {
          return absl::InvalidArgumentError(
              "partition ids must be non-negative integers");
        }
        cells.push_back(cell.get<int>());
      }
    } else if (json.contains("attributes") &&
               json.at("attributes").is_array()) {
      // Cells are the combinations of the listed attributes' values.
      std::vector<int> attrs;
      for (const nlohmann::json& name : json.at("attributes")) {
        if (!name.is_string()) {
          return absl::InvalidArgumentError("attribute names must be strings");
        }
        ASSIGN_OR_RETURN(int a, domain.AttributeIndex(name.get<std::string>()));
        attrs.push_back(a);
      }
      cells.resize(domain.size());
      for (int64_t r = 0; r < domain.size(); ++r) {
        int cell = 0;
        for (int a : attrs) {
          cell = cell * domain.cardinality(a) + domain.Coordinate(r, a);
        }
        cells[r] = cell;
      }
    } else {
      return absl::InvalidArgumentError(
          "partition graph needs 'partition' or 'attributes'");
    }
    return SecretGraph::Partition(domain, std::move(cells));
  }
  if (kind == "explicit") {
    if (!json.contains("edges") || !json.at("edges").is_array()) {
      return absl::InvalidArgumentError("explicit graph needs 'edges'");
    }
    std::vector<std::pair<int64_t, int64_t>> edges;
    for (const nlohmann::json& edge : json.at("edges")) {
      if (!edge.is_array() || edge.size() != 2 ||
          !edge[0].is_number_integer() || !edge[1].is_number_integer()) {
        return absl::InvalidArgumentError("edges must be [rank, rank] pairs");
      }
      edges.emplace_back(edge[0].get<int64_t>(), edge[1].get<int64_t>());
    }
    return SecretGraph::Explicit(domain, edges);
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown graph kind '", kind, "'"));
}

absl::StatusOr<CountQuery> QueryFromJson(const nlohmann::json& json,
                                         const DomainSpec& domain) {
  if (!json.is_object()) {
    return absl::InvalidArgumentError("constraints must be objects");
  }
  CountQuery query;
  for (const auto& [key, value] : json.items()) {
    if (key == "answer") {
      if (!value.is_number_integer() || value.get<int64_t>() < 0) {
        return absl::InvalidArgumentError(
            "constraint answer must be a non-negative integer");
      }
      query.answer = value.get<int64_t>();
      continue;
    }
    ASSIGN_OR_RETURN(int attribute, domain.AttributeIndex(key));
    if (!value.is_array() || value.empty()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "constraint on '", key, "' needs a non-empty list"));
    }
    std::vector<int> indices;
    if (value.size() == 2 && value[0].is_number_integer() &&
        value[1].is_number_integer()) {
      const int lo = value[0].get<int>();
      const int hi = value[1].get<int>();
      if (lo < 0 || hi < lo || hi >= domain.cardinality(attribute)) {
        return absl::InvalidArgumentError(
            absl::StrCat("bad range [", lo, ",", hi, "] on '", key, "'"));
      }
      for (int v = lo; v <= hi; ++v) indices.push_back(v);
    } else {
      for (const nlohmann::json& label : value) {
        std::string text =
            label.is_string() ? label.get<std::string>() : label.dump();
        ASSIGN_OR_RETURN(int v, domain.ValueIndex(attribute, text));
        indices.push_back(v);
      }
      std::sort(indices.begin(), indices.end());
      indices.erase(std::unique(indices.begin(), indices.end()),
                    indices.end());
    }
    query.allowed[attribute] = std::move(indices);
  }
  return query;
}

}  // namespace

absl::StatusOr<Policy> PolicyFromJson(const nlohmann::json& json,
                                      const DomainSpec* domain) {
  if (!json.is_object()) {
    return absl::InvalidArgumentError("policy must be a JSON object");
  }
  std::optional<DomainSpec> own_domain;
  if (json.contains("domain")) {
    ASSIGN_OR_RETURN(own_domain, DomainFromJson(json.at("domain")));
    if (domain != nullptr && !(*domain == *own_domain)) {
      return absl::InvalidArgumentError(
          "policy domain differs from the supplied domain");
    }
  } else if (domain != nullptr) {
    own_domain = *domain;
  } else {
    return absl::InvalidArgumentError("policy has no domain");
  }
  if (!json.contains("graph")) {
    return absl::InvalidArgumentError("policy needs a 'graph'");
  }
  ASSIGN_OR_RETURN(SecretGraph graph,
                   GraphFromJson(json.at("graph"), *own_domain));
  ConstraintSet constraints;
  if (json.contains("constraints")) {
    if (!json.at("constraints").is_array()) {
      return absl::InvalidArgumentError("'constraints' must be a list");
    }
    for (const nlohmann::json& entry : json.at("constraints")) {
      ASSIGN_OR_RETURN(CountQuery query, QueryFromJson(entry, *own_domain));
      constraints.queries.push_back(std::move(query));
    }
  }
  return Policy{*std::move(own_domain), std::move(graph),
                std::move(constraints)};
}

absl::StatusOr<Policy> LoadPolicy(std::string_view text,
                                  const DomainSpec* domain) {
  nlohmann::json json = nlohmann::json::parse(text, nullptr,
                                              /*allow_exceptions=*/false);
  if (json.is_discarded()) {
    return absl::InvalidArgumentError("policy file is not valid JSON");
  }
  return PolicyFromJson(json, domain);
}

nlohmann::json PolicyToJson(const Policy& policy) {
  nlohmann::json constraints = nlohmann::json::array();
  for (const CountQuery& query : policy.constraints.queries) {
    nlohmann::json entry = nlohmann::json::object();
    for (const auto& [attribute, values] : query.allowed) {
      nlohmann::json labels = nlohmann::json::array();
      for (int v : values) {
        labels.push_back(policy.domain.attributes()[attribute].values[v]);
      }
      entry[policy.domain.attributes()[attribute].name] = std::move(labels);
    }
    if (query.answer.has_value()) entry["answer"] = *query.answer;
    constraints.push_back(std::move(entry));
  }
  return nlohmann::json{{"domain", policy.domain.ToJson()},
                        {"graph", policy.graph.ToJson()},
                        {"constraints", std::move(constraints)}};
}

}  // namespace blowfish
