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

#include "blowfish/domain.h"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "absl/strings/numbers.h"
#include "absl/strings/ascii.h"
#include "blowfish/status_macros.h"

namespace blowfish {

namespace {

constexpr int64_t kMaxDomainSize = int64_t{1} << 62;

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields;
  for (absl::string_view field : absl::StrSplit(
           absl::string_view(line.data(), line.size()), ',')) {
    fields.emplace_back(absl::StripAsciiWhitespace(field));
  }
  return fields;
}

}  // namespace

absl::StatusOr<DomainSpec> DomainSpec::Create(
    std::vector<Attribute> attributes) {
  if (attributes.empty()) {
    return absl::InvalidArgumentError("domain needs at least one attribute");
  }
  DomainSpec domain;
  std::set<std::string> names;
  int64_t size = 1;
  for (const Attribute& attribute : attributes) {
    if (!names.insert(attribute.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate attribute name '", attribute.name, "'"));
    }
    if (attribute.values.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute '", attribute.name, "' has no values"));
    }
    std::unordered_map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(attribute.values.size()); ++i) {
      if (!index.emplace(attribute.values[i], i).second) {
        return absl::InvalidArgumentError(
            absl::StrCat("attribute '", attribute.name,
                         "' repeats value label '", attribute.values[i], "'"));
      }
    }
    const int64_t card = static_cast<int64_t>(attribute.values.size());
    if (size > kMaxDomainSize / card) {
      return absl::InvalidArgumentError("domain size overflows 2^62");
    }
    size *= card;
    domain.label_index_.push_back(std::move(index));
  }
  domain.size_ = size;
  domain.strides_.assign(attributes.size(), 1);
  for (int a = static_cast<int>(attributes.size()) - 2; a >= 0; --a) {
    domain.strides_[a] =
        domain.strides_[a + 1] *
        static_cast<int64_t>(attributes[a + 1].values.size());
  }
  domain.attributes_ = std::move(attributes);
  return domain;
}

absl::StatusOr<int> DomainSpec::AttributeIndex(std::string_view name) const {
  for (int a = 0; a < num_attributes(); ++a) {
    if (attributes_[a].name == name) return a;
  }
  return absl::NotFoundError(absl::StrCat("unknown attribute '", std::string(name), "'"));
}

absl::StatusOr<int> DomainSpec::ValueIndex(int attribute,
                                           std::string_view label) const {
  const auto& index = label_index_[attribute];
  auto it = index.find(std::string(label));
  if (it == index.end()) {
    return absl::NotFoundError(absl::StrCat("value '", std::string(label),
                                            "' not in attribute '",
                                            attributes_[attribute].name, "'"));
  }
  return it->second;
}

bool DomainSpec::Contains(const Point& point) const {
  if (static_cast<int>(point.indices.size()) != num_attributes()) return false;
  for (int a = 0; a < num_attributes(); ++a) {
    if (point.indices[a] < 0 || point.indices[a] >= cardinality(a)) {
      return false;
    }
  }
  return true;
}

int64_t DomainSpec::Rank(const Point& point) const {
  int64_t rank = 0;
  for (int a = 0; a < num_attributes(); ++a) {
    rank += strides_[a] * point.indices[a];
  }
  return rank;
}

Point DomainSpec::Unrank(int64_t rank) const {
  Point point;
  point.indices.resize(attributes_.size());
  for (int a = 0; a < num_attributes(); ++a) {
    point.indices[a] = Coordinate(rank, a);
  }
  return point;
}

int64_t DomainSpec::RankDistance(int64_t a, int64_t b) const {
  int64_t distance = 0;
  for (int attr = 0; attr < num_attributes(); ++attr) {
    distance += std::abs(Coordinate(a, attr) - Coordinate(b, attr));
  }
  return distance;
}

int64_t DomainSpec::Diameter() const {
  int64_t diameter = 0;
  for (int a = 0; a < num_attributes(); ++a) diameter += cardinality(a) - 1;
  return diameter;
}

bool DomainSpec::SameShapeAndLabels(const DomainSpec& other) const {
  for (int a = 0; a < num_attributes(); ++a) {
    if (attributes_[a].name != other.attributes_[a].name ||
        attributes_[a].values != other.attributes_[a].values) {
      return false;
    }
  }
  return true;
}

nlohmann::json DomainSpec::ToJson() const {
  nlohmann::json list = nlohmann::json::array();
  for (const Attribute& attribute : attributes_) {
    nlohmann::json entry = {{"name", attribute.name},
                            {"values", attribute.values}};
    if (attribute.ordinal) entry["ordinal"] = true;
    list.push_back(std::move(entry));
  }
  return nlohmann::json{{"attributes", std::move(list)}};
}

absl::StatusOr<DomainSpec> DomainFromJson(const nlohmann::json& json) {
  const nlohmann::json* list = &json;
  if (json.is_object()) {
    if (!json.contains("attributes")) {
      return absl::InvalidArgumentError("domain object needs 'attributes'");
    }
    list = &json.at("attributes");
  }
  if (!list->is_array()) {
    return absl::InvalidArgumentError("domain attributes must be a list");
  }
  std::vector<Attribute> attributes;
  for (const nlohmann::json& entry : *list) {
    if (!entry.is_object() || !entry.contains("name") ||
        !entry.contains("values") || !entry.at("name").is_string() ||
        !entry.at("values").is_array()) {
      return absl::InvalidArgumentError(
          "attribute entries need a string 'name' and a 'values' list");
    }
    Attribute attribute;
    attribute.name = entry.at("name").get<std::string>();
    for (const nlohmann::json& value : entry.at("values")) {
      if (value.is_string()) {
        attribute.values.push_back(value.get<std::string>());
      } else if (value.is_number()) {
        attribute.values.push_back(value.dump());
      } else {
        return absl::InvalidArgumentError(absl::StrCat(
            "attribute '", attribute.name, "' has a non-scalar value label"));
      }
    }
    if (entry.contains("ordinal")) {
      if (!entry.at("ordinal").is_boolean()) {
        return absl::InvalidArgumentError("'ordinal' must be a boolean");
      }
      attribute.ordinal = entry.at("ordinal").get<bool>();
    }
    attributes.push_back(std::move(attribute));
  }
  return DomainSpec::Create(std::move(attributes));
}

absl::StatusOr<DomainSpec> LoadDomain(std::string_view text) {
  nlohmann::json json = nlohmann::json::parse(text, nullptr,
                                              /*allow_exceptions=*/false);
  if (json.is_discarded()) {
    return absl::InvalidArgumentError("domain spec is not valid JSON");
  }
  return DomainFromJson(json);
}

absl::StatusOr<Dataset> IngestDataset(std::string_view csv_text,
                                      const DomainSpec& domain) {
  std::vector<std::string_view> lines;
  for (absl::string_view line :
       absl::StrSplit(absl::string_view(csv_text.data(), csv_text.size()),
                      '\n')) {
    absl::string_view trimmed = absl::StripTrailingAsciiWhitespace(line);
    if (!trimmed.empty()) lines.emplace_back(trimmed.data(), trimmed.size());
  }
  if (lines.empty()) {
    return absl::InvalidArgumentError("dataset has no header row");
  }

  const std::vector<std::string> header = SplitCsvLine(lines[0]);
  int id_column = -1;
  // column_attribute[c] is the attribute read from column c, -1 for id.
  std::vector<int> column_attribute(header.size(), -1);
  std::vector<bool> seen(domain.num_attributes(), false);
  for (int c = 0; c < static_cast<int>(header.size()); ++c) {
    if (header[c] == "id") {
      if (id_column >= 0) {
        return absl::InvalidArgumentError("duplicate 'id' column");
      }
      id_column = c;
      continue;
    }
    ASSIGN_OR_RETURN(int attribute, domain.AttributeIndex(header[c]));
    if (seen[attribute]) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate column '", header[c], "'"));
    }
    seen[attribute] = true;
    column_attribute[c] = attribute;
  }
  for (int a = 0; a < domain.num_attributes(); ++a) {
    if (!seen[a]) {
      return absl::InvalidArgumentError(absl::StrCat(
          "missing column for attribute '", domain.attributes()[a].name, "'"));
    }
  }

  Dataset data;
  std::set<int64_t> ids;
  for (size_t line = 1; line < lines.size(); ++line) {
    const std::vector<std::string> fields = SplitCsvLine(lines[line]);
    if (fields.size() != header.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line + 1, ": expected ", header.size(),
                       " columns, found ", fields.size()));
    }
    Row row;
    row.id = static_cast<int64_t>(line - 1);
    row.point.indices.assign(domain.num_attributes(), 0);
    for (int c = 0; c < static_cast<int>(fields.size()); ++c) {
      if (c == id_column) {
        if (!absl::SimpleAtoi(fields[c], &row.id)) {
          return absl::InvalidArgumentError(
              absl::StrCat("line ", line + 1, ": bad id '", fields[c], "'"));
        }
        continue;
      }
      const int attribute = column_attribute[c];
      absl::StatusOr<int> value = domain.ValueIndex(attribute, fields[c]);
      if (!value.ok()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "line ", line + 1, ": ", value.status().message()));
      }
      row.point.indices[attribute] = *value;
    }
    if (!ids.insert(row.id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line + 1, ": duplicate id ", row.id));
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

int64_t Histogram::Total() const {
  int64_t total = 0;
  for (int64_t c : counts) total += c;
  return total;
}

Histogram BuildHistogram(const Dataset& data, const DomainSpec& domain) {
  Histogram histogram;
  histogram.counts.assign(domain.size(), 0);
  for (const Row& row : data.rows) ++histogram.counts[domain.Rank(row.point)];
  return histogram;
}

CumulativeHistogram Cumulative(const Histogram& histogram) {
  CumulativeHistogram cumulative;
  cumulative.prefix.reserve(histogram.counts.size());
  int64_t running = 0;
  for (size_t i = 0; i < histogram.counts.size(); ++i) {
    running += histogram.counts[i];
    if (i == 0 || running != cumulative.prefix.back()) {
      ++cumulative.distinct_count;
    }
    cumulative.prefix.push_back(running);
  }
  return cumulative;
}

absl::StatusOr<int64_t> L1Distance(const Point& x, const Point& y) {
  if (x.indices.size() != y.indices.size()) {
    return absl::InvalidArgumentError(
        "points come from domains with different attribute counts");
  }
  int64_t distance = 0;
  for (size_t a = 0; a < x.indices.size(); ++a) {
    distance += std::abs(x.indices[a] - y.indices[a]);
  }
  return distance;
}

}  // namespace blowfish
