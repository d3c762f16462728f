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

#include "blowfish/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <utility>

#include "absl/strings/str_cat.h"
#include "blowfish/mechanisms.h"
#include "blowfish/noise.h"
#include "blowfish/policy.h"
#include "blowfish/sensitivity.h"
#include "blowfish/status_macros.h"

namespace blowfish {

namespace {

using nlohmann::json;

absl::StatusOr<int64_t> GetInt(const json& config, const char* key,
                               int64_t fallback) {
  if (!config.contains(key)) return fallback;
  const json& value = config.at(key);
  if (!value.is_number_integer()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", key, "' must be an integer"));
  }
  return value.get<int64_t>();
}

absl::StatusOr<double> GetDouble(const json& config, const char* key,
                                 double fallback) {
  if (!config.contains(key)) return fallback;
  const json& value = config.at(key);
  if (!value.is_number()) {
    return absl::InvalidArgumentError(absl::StrCat("'", key, "' must be a number"));
  }
  return value.get<double>();
}

absl::StatusOr<std::string> GetString(const json& config, const char* key,
                                      std::string fallback) {
  if (!config.contains(key)) return fallback;
  const json& value = config.at(key);
  if (!value.is_string()) {
    return absl::InvalidArgumentError(absl::StrCat("'", key, "' must be a string"));
  }
  return value.get<std::string>();
}

absl::StatusOr<bool> GetBool(const json& config, const char* key,
                             bool fallback) {
  if (!config.contains(key)) return fallback;
  const json& value = config.at(key);
  if (!value.is_boolean()) {
    return absl::InvalidArgumentError(absl::StrCat("'", key, "' must be a boolean"));
  }
  return value.get<bool>();
}

absl::StatusOr<std::vector<double>> GetDoubles(const json& config,
                                               const char* key,
                                               std::vector<double> fallback) {
  if (!config.contains(key)) return fallback;
  const json& value = config.at(key);
  std::vector<double> out;
  if (!value.is_array() || value.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", key, "' must be a non-empty list of numbers"));
  }
  for (const json& v : value) {
    if (!v.is_number()) {
      return absl::InvalidArgumentError(
          absl::StrCat("'", key, "' must hold numbers"));
    }
    out.push_back(v.get<double>());
  }
  return out;
}

absl::StatusOr<std::vector<std::string>> GetStrings(
    const json& config, const char* key, std::vector<std::string> fallback) {
  if (!config.contains(key)) return fallback;
  const json& value = config.at(key);
  std::vector<std::string> out;
  if (!value.is_array() || value.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", key, "' must be a non-empty list of strings"));
  }
  for (const json& v : value) {
    if (!v.is_string()) {
      return absl::InvalidArgumentError(
          absl::StrCat("'", key, "' must hold strings"));
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

absl::Status CheckEpsilons(const std::vector<double>& epsilons) {
  for (double e : epsilons) {
    if (!(e > 0) || !std::isfinite(e)) {
      return absl::InvalidArgumentError("epsilons must be positive and finite");
    }
  }
  return absl::OkStatus();
}

std::string FormatNumber(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.10g", value);
  return buffer;
}

// Seed for trial `trial` of the row identified by `key`.
uint64_t TrialSeed(uint64_t seed, const std::string& key, int64_t trial) {
  return StreamKey({seed, Fnv1a(key), static_cast<uint64_t>(trial)});
}

std::string RowKey(const ReportRow& row) {
  return absl::StrCat(row.experiment, "|", row.mechanism, "|", row.policy, "|",
                      FormatNumber(row.epsilon), "|", row.theta, "|",
                      row.fanout, "|", row.metric);
}

void Finalize(ReportRow& row) { row.stats = Summarize(row.samples); }

// Shared setup of the 1-D range experiments.
struct RangeSetup {
  int64_t domain_size = 0;
  int trials = 0;
  int fanout = 0;
  bool inference = true;
  bool oh_inference = false;
  std::vector<double> epsilons;
  std::vector<int64_t> thetas;
  std::vector<std::string> mechanisms;
  Histogram histogram;
  std::vector<double> truth;
};

absl::StatusOr<RangeSetup> ReadRangeSetup(const json& config, uint64_t seed) {
  RangeSetup setup;
  ASSIGN_OR_RETURN(setup.domain_size, GetInt(config, "domain_size", 1024));
  if (setup.domain_size < 1) {
    return absl::InvalidArgumentError("domain_size must be positive");
  }
  ASSIGN_OR_RETURN(int64_t trials, GetInt(config, "trials", 20));
  ASSIGN_OR_RETURN(int64_t fanout, GetInt(config, "fanout", 16));
  if (trials < 1 || fanout < 2) {
    return absl::InvalidArgumentError("need trials >= 1 and fanout >= 2");
  }
  setup.trials = static_cast<int>(trials);
  setup.fanout = static_cast<int>(fanout);
  ASSIGN_OR_RETURN(setup.inference, GetBool(config, "inference", true));
  ASSIGN_OR_RETURN(setup.oh_inference, GetBool(config, "oh_inference", false));
  ASSIGN_OR_RETURN(setup.epsilons, GetDoubles(config, "epsilons", {1.0}));
  RETURN_IF_ERROR(CheckEpsilons(setup.epsilons));
  if (config.contains("thetas")) {
    const json& list = config.at("thetas");
    if (!list.is_array() || list.empty()) {
      return absl::InvalidArgumentError("'thetas' must be a non-empty list");
    }
    for (const json& t : list) {
      if (t == "full") {
        setup.thetas.push_back(setup.domain_size);
      } else if (t.is_number_integer() && t.get<int64_t>() >= 1 &&
                 t.get<int64_t>() <= setup.domain_size) {
        setup.thetas.push_back(t.get<int64_t>());
      } else {
        return absl::InvalidArgumentError(
            "thetas must be integers in [1, domain_size] or \"full\"");
      }
    }
  } else {
    setup.thetas = {1};
  }
  ASSIGN_OR_RETURN(setup.mechanisms,
                   GetStrings(config, "mechanisms", {"ordered", "oh"}));
  ASSIGN_OR_RETURN(std::string shape, GetString(config, "data", "uniform"));
  ASSIGN_OR_RETURN(int64_t count, GetInt(config, "count", 10000));
  ASSIGN_OR_RETURN(setup.histogram,
                   SynthHistogram(shape, setup.domain_size, count,
                                  StreamKey({seed, Fnv1a("data")})));
  double running = 0;
  for (int64_t c : setup.histogram.counts) {
    setup.truth.push_back(running += static_cast<double>(c));
  }
  return setup;
}

// Released prefix vector of one mechanism run.
absl::StatusOr<std::vector<double>> ReleasePrefix(const std::string& mechanism,
                                                  const RangeSetup& setup,
                                                  int64_t theta,
                                                  double epsilon,
                                                  uint64_t noise_seed) {
  SeededNoise noise(noise_seed);
  if (mechanism == "ordered") {
    ASSIGN_OR_RETURN(ReleasedCumulative out,
                     OrderedMechanism(setup.histogram, theta, epsilon, noise));
    return setup.inference ? out.inferred : out.noisy;
  }
  if (mechanism == "oh" || mechanism == "hierarchical") {
    OHTree tree;
    if (mechanism == "oh") {
      ASSIGN_OR_RETURN(BudgetSplit split,
                       OptimalBudgetSplit(setup.domain_size, theta,
                                          setup.fanout, epsilon));
      ASSIGN_OR_RETURN(tree, BuildOhRelease(setup.histogram, theta,
                                            setup.fanout, split.epsilon_s,
                                            split.epsilon_h, noise));
    } else {
      ASSIGN_OR_RETURN(tree, BuildHierarchicalRelease(
                                 setup.histogram, setup.fanout, epsilon, noise));
    }
    std::vector<double> prefix = tree.AllCumulative();
    if (setup.oh_inference) prefix = IsotonicRegression(prefix, true);
    return prefix;
  }
  if (mechanism == "laplace") {
    std::vector<double> counts(setup.histogram.counts.begin(),
                               setup.histogram.counts.end());
    ASSIGN_OR_RETURN(std::vector<double> noisy,
                     LaplaceMechanism(counts, 2.0, epsilon, noise));
    double running = 0;
    for (double& v : noisy) v = (running += v);
    return noisy;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown mechanism '", mechanism,
      "' (expected ordered, oh, hierarchical or laplace)"));
}

absl::StatusOr<ExperimentReport> RunRangeExperiment(const json& config,
                                                    const std::string& name,
                                                    uint64_t seed) {
  ASSIGN_OR_RETURN(RangeSetup setup, ReadRangeSetup(config, seed));
  const bool range = name == "range-mse";
  Workload workload;
  if (range) {
    ASSIGN_OR_RETURN(int64_t queries, GetInt(config, "queries", 10000));
    if (queries < 1) return absl::InvalidArgumentError("queries must be >= 1");
    workload = RandomRangeWorkload(setup.domain_size, queries,
                                   StreamKey({seed, Fnv1a("workload")}));
  }
  ExperimentReport report;
  report.seed = seed;
  for (const std::string& mechanism : setup.mechanisms) {
    // The baseline and Laplace release ignore theta.
    const bool fixed_theta = mechanism == "hierarchical" || mechanism == "laplace";
    std::vector<int64_t> thetas = setup.thetas;
    if (fixed_theta) thetas = {setup.domain_size};
    for (double epsilon : setup.epsilons) {
      for (int64_t theta : thetas) {
        ReportRow row;
        row.experiment = name;
        row.mechanism = mechanism;
        row.policy = mechanism == "laplace" ? "full"
                                            : absl::StrCat("distance:", theta);
        row.epsilon = epsilon;
        row.theta = theta;
        row.fanout = mechanism == "ordered" || mechanism == "laplace"
                         ? 0
                         : setup.fanout;
        row.metric = range ? "range_mse" : "cdf_mse";
        const std::string key = RowKey(row);
        for (int t = 0; t < setup.trials; ++t) {
          ASSIGN_OR_RETURN(std::vector<double> prefix,
                           ReleasePrefix(mechanism, setup, theta, epsilon,
                                         TrialSeed(seed, key, t)));
          if (range) {
            row.samples.push_back(WorkloadMse(workload, setup.truth, prefix));
          } else {
            row.samples.push_back(*Mse(setup.truth, {prefix}));
          }
        }
        Finalize(row);
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

struct KmeansGraph {
  std::string label;
  SecretGraph graph;
  int64_t theta = 0;
};

absl::StatusOr<KmeansGraph> ParseKmeansGraph(const std::string& text,
                                             int bins) {
  if (text == "full") return KmeansGraph{"full", SecretGraph::Full(), 0};
  if (text == "attribute") {
    return KmeansGraph{"attribute", SecretGraph::Attribute(), 0};
  }
  const std::string prefix = "distance:";
  if (text.rfind(prefix, 0) == 0) {
    char* end = nullptr;
    const std::string number = text.substr(prefix.size());
    const double unit_theta = std::strtod(number.c_str(), &end);
    if (number.empty() || *end != '\0' || !(unit_theta >= 0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad distance threshold in '", text, "'"));
    }
    const int64_t theta = std::llround(unit_theta * (bins - 1));
    ASSIGN_OR_RETURN(SecretGraph graph, SecretGraph::DistanceThreshold(theta));
    return KmeansGraph{absl::StrCat("distance:", theta), std::move(graph),
                       theta};
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown graph '", text, "' (expected full, attribute or distance:<t>)"));
}

absl::StatusOr<DomainSpec> GridDomain(int dims, int bins) {
  std::vector<Attribute> attributes;
  for (int d = 0; d < dims; ++d) {
    Attribute attribute;
    attribute.name = absl::StrCat("x", d + 1);
    attribute.ordinal = true;
    for (int b = 0; b < bins; ++b) attribute.values.push_back(absl::StrCat(b));
    attributes.push_back(std::move(attribute));
  }
  return DomainSpec::Create(std::move(attributes));
}

absl::StatusOr<ExperimentReport> RunKmeansExperiment(const json& config,
                                                     uint64_t seed) {
  ASSIGN_OR_RETURN(int64_t trials, GetInt(config, "trials", 50));
  ASSIGN_OR_RETURN(int64_t points, GetInt(config, "points", 1000));
  ASSIGN_OR_RETURN(int64_t dims, GetInt(config, "dims", 4));
  ASSIGN_OR_RETURN(int64_t bins, GetInt(config, "bins", 101));
  ASSIGN_OR_RETURN(double sigma, GetDouble(config, "sigma", 0.2));
  KmeansConfig kmeans;
  ASSIGN_OR_RETURN(int64_t k, GetInt(config, "k", 4));
  ASSIGN_OR_RETURN(int64_t iterations, GetInt(config, "iterations", 10));
  ASSIGN_OR_RETURN(kmeans.split, GetDouble(config, "split", 0.5));
  if (trials < 1 || points < 1 || dims < 1 || bins < 2 || k < 1 ||
      iterations < 1 || !(sigma >= 0)) {
    return absl::InvalidArgumentError(
        "need trials, points, dims, k, iterations >= 1, bins >= 2, sigma >= 0");
  }
  kmeans.k = static_cast<int>(k);
  kmeans.iterations = static_cast<int>(iterations);
  kmeans.init = KmeansInit::kUniformBox;
  ASSIGN_OR_RETURN(std::vector<double> epsilons,
                   GetDoubles(config, "epsilons", {0.2}));
  RETURN_IF_ERROR(CheckEpsilons(epsilons));
  ASSIGN_OR_RETURN(std::vector<std::string> graph_names,
                   GetStrings(config, "graphs", {"full", "distance:0.25"}));
  ASSIGN_OR_RETURN(DomainSpec domain,
                   GridDomain(static_cast<int>(dims), static_cast<int>(bins)));
  DomainBox(domain, kmeans.lower, kmeans.upper);

  std::vector<KmeansGraph> graphs;
  for (const std::string& name : graph_names) {
    ASSIGN_OR_RETURN(KmeansGraph graph,
                     ParseKmeansGraph(name, static_cast<int>(bins)));
    graphs.push_back(std::move(graph));
  }

  // Data, init and the non-private baseline are shared by all rows.
  std::vector<std::vector<Vector>> data(trials);
  std::vector<uint64_t> init_seed(trials);
  std::vector<double> baseline(trials);
  for (int64_t t = 0; t < trials; ++t) {
    data[t] = Discretize(
        SynthClusters(static_cast<int>(points), static_cast<int>(dims),
                      kmeans.k, sigma, TrialSeed(seed, "kmeans-data", t)),
        static_cast<int>(bins));
    init_seed[t] = TrialSeed(seed, "kmeans-init", t);
    ASSIGN_OR_RETURN(ClusteringResult plain,
                     KmeansNonprivate(data[t], kmeans, init_seed[t]));
    baseline[t] = plain.objective;
  }

  ExperimentReport report;
  report.seed = seed;
  for (const KmeansGraph& graph : graphs) {
    Policy policy{domain, graph.graph, {}};
    for (double epsilon : epsilons) {
      ReportRow row;
      row.experiment = "kmeans-ratio";
      row.mechanism = "sulq";
      row.policy = graph.label;
      row.epsilon = epsilon;
      row.theta = graph.theta;
      row.metric = "objective_ratio";
      const std::string key = RowKey(row);
      for (int64_t t = 0; t < trials; ++t) {
        ASSIGN_OR_RETURN(
            ClusteringResult priv,
            KmeansPrivate(data[t], kmeans, policy, {epsilon, init_seed[t]},
                          SeededNoise(TrialSeed(seed, key, t))));
        row.samples.push_back(baseline[t] > 0 ? priv.objective / baseline[t]
                                              : 1.0);
      }
      Finalize(row);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

absl::StatusOr<ExperimentReport> RunSensitivityTable(const json& config,
                                                     uint64_t seed) {
  if (!config.contains("policies") || !config.at("policies").is_array() ||
      config.at("policies").empty()) {
    return absl::InvalidArgumentError(
        "sensitivity-table needs a non-empty 'policies' list");
  }
  ASSIGN_OR_RETURN(std::vector<std::string> queries,
                   GetStrings(config, "queries",
                              {"histogram", "cumulative", "kmeans-sum"}));
  ASSIGN_OR_RETURN(int64_t k, GetInt(config, "k", 4));
  if (k < 1) return absl::InvalidArgumentError("k must be >= 1");
  ExperimentReport report;
  report.seed = seed;
  for (const json& policy_json : config.at("policies")) {
    ASSIGN_OR_RETURN(Policy policy, PolicyFromJson(policy_json, nullptr));
    for (const std::string& name : queries) {
      ASSIGN_OR_RETURN(QueryKind query,
                       QueryKindFromName(name, static_cast<int>(k)));
      ASSIGN_OR_RETURN(SensitivityResult result,
                       ComputeSensitivity(query, policy));
      ReportRow row;
      row.experiment = "sensitivity-table";
      row.mechanism = absl::StrCat(std::string(MethodName(result.method)), "/",
                          std::string(ExactnessName(result.exactness)));
      row.policy = policy.graph.Describe();
      if (policy.graph.kind() == GraphKind::kDistanceThreshold) {
        row.theta = policy.graph.theta();
      }
      row.metric = name;
      row.samples = {result.value};
      Finalize(row);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace

absl::StatusOr<double> Mse(const std::vector<double>& truth,
                           const std::vector<std::vector<double>>& estimates) {
  if (estimates.empty()) {
    return absl::InvalidArgumentError("need at least one estimate");
  }
  double total = 0;
  for (const std::vector<double>& estimate : estimates) {
    if (estimate.size() != truth.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "estimate has ", estimate.size(), " components, truth has ",
          truth.size()));
    }
    for (size_t i = 0; i < truth.size(); ++i) {
      total += (estimate[i] - truth[i]) * (estimate[i] - truth[i]);
    }
  }
  return total / static_cast<double>(estimates.size());
}

Workload RandomRangeWorkload(int64_t domain_size, int64_t count,
                             uint64_t seed) {
  Workload workload;
  workload.seed = seed;
  if (domain_size < 1) return workload;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int64_t> first(1, domain_size);
  std::uniform_int_distribution<int64_t> second(1, domain_size + 1);
  // Each pair i <= j has exactly two preimages (a, b): (i, j + 1) with b > a
  // and (j, i) with b <= a.
  for (int64_t q = 0; q < count; ++q) {
    const int64_t a = first(rng);
    const int64_t b = second(rng);
    workload.queries.push_back(b > a ? RangeQuery{a, b - 1} : RangeQuery{b, a});
  }
  return workload;
}

double WorkloadMse(const Workload& workload, const std::vector<double>& truth,
                   const std::vector<double>& estimate) {
  if (workload.queries.empty()) return 0;
  double total = 0;
  for (const RangeQuery& q : workload.queries) {
    const double e = RangeFromPrefix(estimate, q.i, q.j) -
                     RangeFromPrefix(truth, q.i, q.j);
    total += e * e;
  }
  return total / static_cast<double>(workload.queries.size());
}

std::vector<Vector> SynthClusters(int n, int dims, int k, double sigma,
                                  uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vector> centers(k, Vector(dims));
  for (Vector& c : centers) {
    for (double& x : c) x = unit(rng);
  }
  std::vector<Vector> points;
  points.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Vector& c = centers[rng() % static_cast<uint64_t>(k)];
    Vector p(dims);
    for (int d = 0; d < dims; ++d) {
      p[d] = std::clamp(c[d] + sigma * gauss(rng), 0.0, 1.0);
    }
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<Vector> Discretize(const std::vector<Vector>& points, int bins) {
  std::vector<Vector> out;
  out.reserve(points.size());
  for (const Vector& p : points) {
    Vector q(p.size());
    for (size_t d = 0; d < p.size(); ++d) {
      q[d] = std::clamp<double>(std::round(p[d] * (bins - 1)), 0, bins - 1);
    }
    out.push_back(std::move(q));
  }
  return out;
}

absl::StatusOr<Histogram> SynthHistogram(std::string_view shape,
                                         int64_t domain_size, int64_t count,
                                         uint64_t seed) {
  if (domain_size < 1 || count < 0) {
    return absl::InvalidArgumentError("need domain_size >= 1 and count >= 0");
  }
  std::mt19937_64 rng(seed);
  Histogram histogram;
  histogram.counts.assign(domain_size, 0);
  if (shape == "uniform") {
    std::uniform_int_distribution<int64_t> pick(0, domain_size - 1);
    for (int64_t i = 0; i < count; ++i) ++histogram.counts[pick(rng)];
  } else if (shape == "zipf") {
    std::vector<double> weights(domain_size);
    for (int64_t r = 0; r < domain_size; ++r) weights[r] = 1.0 / (r + 1);
    std::discrete_distribution<int64_t> pick(weights.begin(), weights.end());
    for (int64_t i = 0; i < count; ++i) ++histogram.counts[pick(rng)];
  } else if (shape == "sparse") {
    // Roughly nine in ten positions stay empty; the first one is heavy.
    std::vector<double> weights(domain_size, 0);
    std::uniform_real_distribution<double> unit(0, 1);
    weights[0] = 1;
    for (int64_t r = 1; r < domain_size; ++r) {
      if (unit(rng) < 0.1) weights[r] = unit(rng) * 0.02;
    }
    std::discrete_distribution<int64_t> pick(weights.begin(), weights.end());
    for (int64_t i = 0; i < count; ++i) ++histogram.counts[pick(rng)];
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown data shape '", std::string(shape),
        "' (expected uniform, zipf or sparse)"));
  }
  return histogram;
}

uint64_t Fnv1a(std::string_view text) {
  uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

Quartiles Summarize(std::vector<double> values) {
  Quartiles q;
  if (values.empty()) return q;
  double sum = 0;
  for (double v : values) sum += v;
  q.mean = sum / static_cast<double>(values.size());
  std::sort(values.begin(), values.end());
  auto at = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const size_t lo = static_cast<size_t>(std::floor(pos));
    const size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0) return values[lo];
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  q.q1 = at(0.25);
  q.median = at(0.5);
  q.q3 = at(0.75);
  return q;
}

std::string ExperimentReport::ToCsv() const {
  std::string csv =
      "experiment,mechanism,policy,epsilon,theta,fanout,metric,mean,q1,q3\n";
  for (const ReportRow& row : rows) {
    absl::StrAppend(&csv, row.experiment, ",", row.mechanism, ",", row.policy,
                    ",", FormatNumber(row.epsilon), ",", row.theta, ",",
                    row.fanout, ",", row.metric, ",",
                    FormatNumber(row.stats.mean), ",",
                    FormatNumber(row.stats.q1), ",",
                    FormatNumber(row.stats.q3), "\n");
  }
  return csv;
}

absl::StatusOr<ExperimentReport> RunExperiment(const json& config) {
  if (!config.is_object()) {
    return absl::InvalidArgumentError("experiment config must be an object");
  }
  ASSIGN_OR_RETURN(std::string name, GetString(config, "experiment", ""));
  if (!config.contains("seed") || !config.at("seed").is_number_integer() ||
      (!config.at("seed").is_number_unsigned() &&
       config.at("seed").get<int64_t>() < 0)) {
    return absl::InvalidArgumentError(
        "experiment config needs a non-negative integer 'seed'");
  }
  const uint64_t seed = config.at("seed").get<uint64_t>();
  if (name == "range-mse" || name == "cdf-release") {
    return RunRangeExperiment(config, name, seed);
  }
  if (name == "kmeans-ratio") return RunKmeansExperiment(config, seed);
  if (name == "sensitivity-table") return RunSensitivityTable(config, seed);
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown experiment '", name,
      "' (expected range-mse, cdf-release, kmeans-ratio or sensitivity-table)"));
}

absl::StatusOr<ExperimentReport> RunExperimentText(std::string_view config_text) {
  json config = json::parse(config_text, nullptr, /*allow_exceptions=*/false);
  if (config.is_discarded()) {
    return absl::InvalidArgumentError("experiment config is not valid JSON");
  }
  return RunExperiment(config);
}

}  // namespace blowfish
