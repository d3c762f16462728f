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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "blowfish/budget.h"
#include "blowfish/domain.h"
#include "blowfish/eval.h"
#include "blowfish/kmeans.h"
#include "blowfish/mechanisms.h"
#include "blowfish/noise.h"
#include "blowfish/policy.h"
#include "blowfish/sensitivity.h"
#include "blowfish/status_macros.h"
#include "json.hpp"

namespace blowfish {

namespace {

using nlohmann::json;

struct Flags {
  std::string command;
  std::string policy;
  std::string domain;
  std::string data;
  std::string config;
  std::string ledger;
  std::string out;
  std::string format = "csv";
  std::string query = "histogram";
  std::string method = "auto";
  double epsilon = 0;
  uint64_t seed = 0;
  int64_t theta = 0;
  int fanout = 16;
  int k = 4;
  int iterations = 10;
  int n = 2;
  bool require_exact = false;

  // Options the user actually passed.
  std::vector<std::pair<std::string, std::string>> given;

  bool Has(const std::string& name) const {
    for (const auto& [key, value] : given) {
      if (key == name) return true;
    }
    return false;
  }
};

struct Output {
  // Rendered body without metadata.
  json document;
  std::string csv;
};

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read '", path, "'"));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::StatusOr<json> ReadJson(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  json parsed = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat("'", path, "' is not valid JSON"));
  }
  return parsed;
}

// Writes next to the target and renames, so readers never see a partial file.
absl::Status WriteAtomically(const std::string& path,
                             const std::string& contents) {
  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      return absl::PermissionDeniedError(
          absl::StrCat("cannot write '", temp, "'"));
    }
    out << contents;
    out.flush();
    if (!out) {
      std::remove(temp.c_str());
      return absl::DataLossError(absl::StrCat("short write to '", temp, "'"));
    }
  }
  std::error_code error;
  std::filesystem::rename(temp, path, error);
  if (error) {
    std::remove(temp.c_str());
    return absl::PermissionDeniedError(
        absl::StrCat("cannot rename onto '", path, "': ", error.message()));
  }
  return absl::OkStatus();
}

std::string Number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == std::floor(value) && std::abs(value) < 1e15) {
    return absl::StrCat(static_cast<int64_t>(value));
  }
  return json(value).dump();
}

json Metadata(const Flags& flags) {
  json meta = {{"command", flags.command}};
  for (const auto& [key, value] : flags.given) meta[key] = value;
  return meta;
}

std::string Render(const Flags& flags, const Output& output) {
  if (flags.format == "json") {
    json document = output.document;
    document["metadata"] = Metadata(flags);
    return document.dump(2) + "\n";
  }
  std::string text = absl::StrCat("# command=", flags.command, "\n");
  for (const auto& [key, value] : flags.given) {
    absl::StrAppend(&text, "# ", key, "=", value, "\n");
  }
  return text + output.csv;
}

absl::StatusOr<std::optional<DomainSpec>> LoadDomainFlag(const Flags& flags) {
  if (flags.domain.empty()) return std::optional<DomainSpec>();
  ASSIGN_OR_RETURN(std::string text, ReadFile(flags.domain));
  ASSIGN_OR_RETURN(DomainSpec domain, LoadDomain(text));
  return std::optional<DomainSpec>(std::move(domain));
}

absl::StatusOr<Policy> LoadPolicyFlag(const Flags& flags) {
  ASSIGN_OR_RETURN(std::optional<DomainSpec> domain, LoadDomainFlag(flags));
  if (flags.policy.empty()) {
    return absl::InvalidArgumentError("--policy is required");
  }
  ASSIGN_OR_RETURN(std::string text, ReadFile(flags.policy));
  return LoadPolicy(text, domain ? &*domain : nullptr);
}

absl::StatusOr<Histogram> LoadHistogram(const Flags& flags,
                                        const DomainSpec& domain) {
  if (flags.data.empty()) return absl::InvalidArgumentError("--data is required");
  ASSIGN_OR_RETURN(std::string text, ReadFile(flags.data));
  ASSIGN_OR_RETURN(Dataset data, IngestDataset(text, domain));
  return BuildHistogram(data, domain);
}

absl::Status CheckCalibration(const SensitivityResult& result,
                              const Flags& flags) {
  if (result.is_infinite()) {
    return absl::FailedPreconditionError(
        "sensitivity is infinite; the policy cannot release this query");
  }
  if (flags.require_exact && result.exactness != Exactness::kExact) {
    return absl::FailedPreconditionError(absl::StrCat(
        "sensitivity ", Number(result.value),
        " is only an upper bound and --require-exact was given"));
  }
  return absl::OkStatus();
}

json SensitivityJson(const SensitivityResult& result) {
  return {{"value", result.is_infinite() ? json("inf") : json(result.value)},
          {"exactness", ExactnessName(result.exactness)},
          {"method", MethodName(result.method)}};
}

std::string ValuesCsv(const std::vector<double>& values) {
  std::string csv = "rank,value\n";
  for (size_t i = 0; i < values.size(); ++i) {
    absl::StrAppend(&csv, i, ",", Number(values[i]), "\n");
  }
  return csv;
}

absl::StatusOr<Output> PolicyValidate(const Flags& flags) {
  ASSIGN_OR_RETURN(Policy policy, LoadPolicyFlag(flags));
  std::string kind;
  switch (policy.constraint_kind()) {
    case ConstraintKind::kNone:
      kind = "none";
      break;
    case ConstraintKind::kCardinalityOnly:
      kind = "cardinality";
      break;
    case ConstraintKind::kGeneral:
      kind = "general";
      break;
  }
  std::string sparse = "n/a";
  if (kind == "general") {
    ASSIGN_OR_RETURN(bool is_sparse, IsSparse(policy));
    sparse = is_sparse ? "true" : "false";
  }
  Output output;
  output.document = {{"valid", true},
                     {"domain_size", policy.domain.size()},
                     {"graph", policy.graph.Describe()},
                     {"constraints", policy.constraints.queries.size()},
                     {"constraint_kind", kind},
                     {"sparse", sparse}};
  output.csv = absl::StrCat(
      "valid,domain_size,graph,constraints,constraint_kind,sparse\ntrue,",
      policy.domain.size(), ",", policy.graph.Describe(), ",",
      policy.constraints.queries.size(), ",", kind, ",", sparse, "\n");
  return output;
}

absl::StatusOr<SensitivityMethod> ParseMethod(const std::string& name) {
  if (name == "auto") return SensitivityMethod::kAuto;
  if (name == "closed-form") return SensitivityMethod::kClosedForm;
  if (name == "sparse") return SensitivityMethod::kSparseEngine;
  if (name == "specialized") return SensitivityMethod::kSpecialized;
  if (name == "brute-force") return SensitivityMethod::kBruteForce;
  return absl::InvalidArgumentError(absl::StrCat("unknown method '", name, "'"));
}

absl::StatusOr<Output> Sensitivity(const Flags& flags) {
  ASSIGN_OR_RETURN(Policy policy, LoadPolicyFlag(flags));
  ASSIGN_OR_RETURN(QueryKind query, QueryKindFromName(flags.query, flags.k));
  SensitivityRequest request;
  ASSIGN_OR_RETURN(request.method, ParseMethod(flags.method));
  request.n = flags.n;
  ASSIGN_OR_RETURN(SensitivityResult result,
                   ComputeSensitivity(query, policy, request));
  if (flags.require_exact && result.exactness != Exactness::kExact) {
    return absl::FailedPreconditionError(
        "sensitivity is only an upper bound and --require-exact was given");
  }
  Output output;
  output.document = SensitivityJson(result);
  output.document["query"] = flags.query;
  output.document["policy"] = policy.graph.Describe();
  output.csv = absl::StrCat("value,exactness,method\n", Number(result.value),
                            ",", std::string(ExactnessName(result.exactness)),
                            ",", std::string(MethodName(result.method)), "\n");
  return output;
}

absl::StatusOr<Output> ReleaseHistogram(const Flags& flags) {
  ASSIGN_OR_RETURN(Policy policy, LoadPolicyFlag(flags));
  ASSIGN_OR_RETURN(Histogram histogram, LoadHistogram(flags, policy.domain));
  ASSIGN_OR_RETURN(SensitivityResult sensitivity,
                   ComputeSensitivity(QueryKind::CompleteHistogram(), policy));
  RETURN_IF_ERROR(CheckCalibration(sensitivity, flags));
  std::vector<double> truth(histogram.counts.begin(), histogram.counts.end());
  ASSIGN_OR_RETURN(std::vector<double> values,
                   LaplaceMechanism(truth, sensitivity.value, flags.epsilon,
                                    SeededNoise(flags.seed)));
  Output output;
  output.document = {{"mechanism", "laplace"},
                     {"policy", policy.graph.Describe()},
                     {"epsilon", flags.epsilon},
                     {"seed", flags.seed},
                     {"sensitivity", SensitivityJson(sensitivity)},
                     {"values", values}};
  output.csv = ValuesCsv(values);
  return output;
}

// The policy for prefix releases and the largest rank gap one secret pair can
// span, which is the sensitivity of the cumulative histogram.
struct PrefixSetup {
  Policy policy;
  int64_t theta = 0;
};

absl::StatusOr<PrefixSetup> LoadPrefixSetup(const Flags& flags) {
  PrefixSetup setup;
  if (flags.policy.empty()) {
    if (!flags.Has("theta")) {
      return absl::InvalidArgumentError("give --policy or --theta with --domain");
    }
    ASSIGN_OR_RETURN(std::optional<DomainSpec> domain, LoadDomainFlag(flags));
    if (!domain) return absl::InvalidArgumentError("--domain is required");
    ASSIGN_OR_RETURN(SecretGraph graph,
                     SecretGraph::DistanceThreshold(flags.theta));
    setup.policy = Policy{*std::move(domain), std::move(graph), {}};
  } else {
    ASSIGN_OR_RETURN(setup.policy, LoadPolicyFlag(flags));
    if (flags.Has("theta") &&
        (setup.policy.graph.kind() != GraphKind::kDistanceThreshold ||
         setup.policy.graph.theta() != flags.theta)) {
      return absl::InvalidArgumentError(
          "--theta conflicts with the policy's secret graph");
    }
  }
  ASSIGN_OR_RETURN(
      SensitivityResult sensitivity,
      ClosedFormSensitivity(QueryKind::CumulativeHistogram(), setup.policy));
  RETURN_IF_ERROR(CheckCalibration(sensitivity, flags));
  setup.theta = static_cast<int64_t>(sensitivity.value);
  return setup;
}

absl::StatusOr<Output> ReleaseCdf(const Flags& flags) {
  ASSIGN_OR_RETURN(PrefixSetup setup, LoadPrefixSetup(flags));
  ASSIGN_OR_RETURN(Histogram histogram,
                   LoadHistogram(flags, setup.policy.domain));
  ReleasedCumulative released;
  if (setup.theta == 0) {
    // No secret pairs: the exact prefix counts are already private.
    double running = 0;
    for (int64_t c : histogram.counts) {
      released.noisy.push_back(running += static_cast<double>(c));
    }
    released.inferred = released.noisy;
  } else {
    ASSIGN_OR_RETURN(released,
                     OrderedMechanism(histogram, setup.theta, flags.epsilon,
                                      SeededNoise(flags.seed)));
  }
  Output output;
  output.document = {{"mechanism", "ordered"},
                     {"policy", setup.policy.graph.Describe()},
                     {"theta", setup.theta},
                     {"epsilon", flags.epsilon},
                     {"seed", flags.seed},
                     {"noisy", released.noisy},
                     {"values", released.inferred}};
  output.csv = ValuesCsv(released.inferred);
  return output;
}

absl::StatusOr<Output> ReleaseRange(const Flags& flags) {
  ASSIGN_OR_RETURN(PrefixSetup setup, LoadPrefixSetup(flags));
  ASSIGN_OR_RETURN(Histogram histogram,
                   LoadHistogram(flags, setup.policy.domain));
  const int64_t size = static_cast<int64_t>(histogram.counts.size());
  const int64_t theta = std::clamp<int64_t>(setup.theta, 1, size);
  ASSIGN_OR_RETURN(BudgetSplit split,
                   OptimalBudgetSplit(size, theta, flags.fanout, flags.epsilon));
  ASSIGN_OR_RETURN(OHTree tree,
                   BuildOhRelease(histogram, theta, flags.fanout,
                                  split.epsilon_s, split.epsilon_h,
                                  SeededNoise(flags.seed)));
  const std::vector<double> values = tree.AllCumulative();
  Output output;
  output.document = {{"mechanism", "ordered-hierarchical"},
                     {"policy", setup.policy.graph.Describe()},
                     {"theta", theta},
                     {"fanout", flags.fanout},
                     {"epsilon", flags.epsilon},
                     {"epsilon_s", split.epsilon_s},
                     {"epsilon_h", split.epsilon_h},
                     {"predicted_range_mse", split.predicted_mse},
                     {"seed", flags.seed},
                     {"tree", tree.ToJson()},
                     {"values", values}};
  output.csv = ValuesCsv(values);
  return output;
}

absl::StatusOr<Output> Kmeans(const Flags& flags) {
  ASSIGN_OR_RETURN(Policy policy, LoadPolicyFlag(flags));
  if (flags.data.empty()) return absl::InvalidArgumentError("--data is required");
  ASSIGN_OR_RETURN(std::string text, ReadFile(flags.data));
  ASSIGN_OR_RETURN(Dataset data, IngestDataset(text, policy.domain));
  KmeansConfig config;
  config.k = flags.k;
  config.iterations = flags.iterations;
  ASSIGN_OR_RETURN(ClusteringResult result,
                   KmeansPrivate(DatasetPoints(data), config, policy,
                                 {flags.epsilon, flags.seed}));
  ASSIGN_OR_RETURN(double spent, result.ledger.Total());
  Output output;
  json noise = json::array();
  for (const IterationNoise& it : result.noise) {
    noise.push_back({{"size_scale", it.size_scale}, {"sum_scale", it.sum_scale}});
  }
  output.document = {{"mechanism", "sulq"},
                     {"policy", policy.graph.Describe()},
                     {"epsilon", flags.epsilon},
                     {"epsilon_spent", spent},
                     {"seed", flags.seed},
                     {"centroids", result.centroids},
                     {"objective", result.objective},
                     {"trace", result.trace},
                     {"noise", noise}};
  output.csv = "cluster";
  for (const Attribute& a : policy.domain.attributes()) {
    absl::StrAppend(&output.csv, ",", a.name);
  }
  output.csv += "\n";
  for (size_t c = 0; c < result.centroids.size(); ++c) {
    absl::StrAppend(&output.csv, c);
    for (double x : result.centroids[c]) {
      absl::StrAppend(&output.csv, ",", Number(x));
    }
    output.csv += "\n";
  }
  return output;
}

absl::StatusOr<Output> ExperimentRun(const Flags& flags) {
  if (flags.config.empty()) {
    return absl::InvalidArgumentError("--config is required");
  }
  ASSIGN_OR_RETURN(json config, ReadJson(flags.config));
  if (flags.Has("seed") && config.is_object()) config["seed"] = flags.seed;
  ASSIGN_OR_RETURN(ExperimentReport report, RunExperiment(config));
  Output output;
  output.csv = report.ToCsv();
  json rows = json::array();
  for (const ReportRow& row : report.rows) {
    rows.push_back({{"experiment", row.experiment},
                    {"mechanism", row.mechanism},
                    {"policy", row.policy},
                    {"epsilon", row.epsilon},
                    {"theta", row.theta},
                    {"fanout", row.fanout},
                    {"metric", row.metric},
                    {"mean", row.stats.mean},
                    {"q1", row.stats.q1},
                    {"q3", row.stats.q3}});
  }
  output.document = {{"seed", report.seed}, {"rows", rows}};
  return output;
}

absl::StatusOr<Output> BudgetTotal(const Flags& flags) {
  if (flags.ledger.empty()) {
    return absl::InvalidArgumentError("--ledger is required");
  }
  ASSIGN_OR_RETURN(json ledger_json, ReadJson(flags.ledger));
  std::optional<Policy> policy;
  if (!flags.policy.empty()) {
    ASSIGN_OR_RETURN(policy, LoadPolicyFlag(flags));
  }
  ASSIGN_OR_RETURN(BudgetLedger ledger,
                   LedgerFromJson(ledger_json, policy ? &*policy : nullptr));
  ASSIGN_OR_RETURN(double total, ledger.Total());
  Output output;
  output.document = {{"total", total}, {"charges", ledger.charges().size()}};
  output.csv = absl::StrCat("total\n", Number(total), "\n");
  return output;
}

absl::Status CheckReleaseFlags(const Flags& flags) {
  if (!flags.Has("epsilon") || !flags.Has("seed")) {
    return absl::InvalidArgumentError("--epsilon and --seed are required");
  }
  return PrivacyParams{flags.epsilon, flags.seed}.Validate();
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Flags flags;
  CLI::App app{"Blowfish privacy: policies, sensitivities and releases",
               "blowfish"};
  app.require_subcommand(1);

  std::vector<std::pair<std::string, CLI::Option*>> tracked;
  auto track = [&](const std::string& name, CLI::Option* option) {
    tracked.emplace_back(name, option);
    return option;
  };
  auto add_policy = [&](CLI::App* cmd) {
    track("policy", cmd->add_option("--policy", flags.policy, "Policy JSON"));
    track("domain", cmd->add_option("--domain", flags.domain, "Domain JSON"));
  };
  auto add_output = [&](CLI::App* cmd) {
    track("out", cmd->add_option("--out", flags.out, "Output file"));
    track("format", cmd->add_option("--format", flags.format, "csv or json")
                        ->check(CLI::IsMember({"csv", "json"})));
  };
  auto add_release = [&](CLI::App* cmd) {
    add_policy(cmd);
    add_output(cmd);
    track("data", cmd->add_option("--data", flags.data, "Dataset CSV"));
    track("epsilon", cmd->add_option("--epsilon", flags.epsilon, "Privacy budget"));
    track("seed", cmd->add_option("--seed", flags.seed, "Noise seed"));
    track("require_exact",
          cmd->add_flag("--require-exact", flags.require_exact,
                        "Refuse upper-bound sensitivities"));
  };

  CLI::App* policy_cmd = app.add_subcommand("policy", "Policy files");
  policy_cmd->require_subcommand(1);
  CLI::App* validate = policy_cmd->add_subcommand("validate", "Check a policy");
  add_policy(validate);
  add_output(validate);

  CLI::App* sensitivity =
      app.add_subcommand("sensitivity", "Policy-specific sensitivity");
  add_policy(sensitivity);
  add_output(sensitivity);
  track("query", sensitivity->add_option("--query", flags.query,
                                         "histogram, cumulative, kmeans-size, kmeans-sum"));
  track("method",
        sensitivity
            ->add_option("--method", flags.method,
                         "auto, closed-form, sparse, specialized, brute-force")
            ->check(CLI::IsMember(
                {"auto", "closed-form", "sparse", "specialized", "brute-force"})));
  track("n", sensitivity->add_option("--n", flags.n, "Tuples for brute force"));
  track("k", sensitivity->add_option("--k", flags.k, "Clusters"));
  track("require_exact",
        sensitivity->add_flag("--require-exact", flags.require_exact,
                              "Fail on upper bounds"));

  CLI::App* release = app.add_subcommand("release", "Private releases");
  release->require_subcommand(1);
  CLI::App* histogram = release->add_subcommand("histogram", "Laplace histogram");
  add_release(histogram);
  CLI::App* cdf = release->add_subcommand("cdf", "Ordered cumulative histogram");
  add_release(cdf);
  track("theta", cdf->add_option("--theta", flags.theta, "Distance threshold"));
  CLI::App* range =
      release->add_subcommand("range", "Ordered hierarchical range release");
  add_release(range);
  track("theta", range->add_option("--theta", flags.theta, "Distance threshold"));
  track("fanout", range->add_option("--fanout", flags.fanout, "Tree fanout"));

  CLI::App* kmeans = app.add_subcommand("kmeans", "Private k-means");
  add_release(kmeans);
  track("k", kmeans->add_option("--k", flags.k, "Clusters"));
  track("iterations",
        kmeans->add_option("--iterations", flags.iterations, "Lloyd iterations"));

  CLI::App* experiment = app.add_subcommand("experiment", "Experiments");
  experiment->require_subcommand(1);
  CLI::App* run = experiment->add_subcommand("run", "Run an experiment config");
  add_output(run);
  track("config", run->add_option("--config", flags.config, "Experiment JSON"));
  track("seed", run->add_option("--seed", flags.seed, "Overrides the config seed"));

  CLI::App* budget = app.add_subcommand("budget", "Budget ledgers");
  budget->require_subcommand(1);
  CLI::App* total = budget->add_subcommand("total", "Total a ledger");
  add_policy(total);
  add_output(total);
  track("ledger", total->add_option("--ledger", flags.ledger, "Ledger JSON"));

  std::vector<std::string> argv_storage = {"blowfish"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  for (const auto& [name, option] : tracked) {
    if (option->count() == 0 || flags.Has(name)) continue;
    std::string value = option->as<std::string>();
    if (option->get_expected_min() == 0) value = "true";
    flags.given.emplace_back(name, value);
  }

  absl::StatusOr<Output> output;
  if (validate->parsed()) {
    flags.command = "policy validate";
    output = PolicyValidate(flags);
  } else if (sensitivity->parsed()) {
    flags.command = "sensitivity";
    output = Sensitivity(flags);
  } else if (histogram->parsed() || cdf->parsed() || range->parsed()) {
    CLI::App* which = histogram->parsed() ? histogram
                      : cdf->parsed()     ? cdf
                                          : range;
    flags.command = absl::StrCat("release ", which->get_name());
    absl::Status ok = CheckReleaseFlags(flags);
    if (!ok.ok()) {
      output = ok;
    } else if (which == histogram) {
      output = ReleaseHistogram(flags);
    } else if (which == cdf) {
      output = ReleaseCdf(flags);
    } else {
      output = ReleaseRange(flags);
    }
  } else if (kmeans->parsed()) {
    flags.command = "kmeans";
    absl::Status ok = CheckReleaseFlags(flags);
    output = ok.ok() ? Kmeans(flags) : absl::StatusOr<Output>(ok);
  } else if (run->parsed()) {
    flags.command = "experiment run";
    output = ExperimentRun(flags);
  } else if (total->parsed()) {
    flags.command = "budget total";
    output = BudgetTotal(flags);
  } else {
    err << "error: unknown command\n";
    return 2;
  }

  if (!output.ok()) {
    err << "error: " << output.status().ToString() << "\n";
    return 1;
  }
  const std::string rendered = Render(flags, *output);
  if (flags.out.empty()) {
    out << rendered;
    return 0;
  }
  absl::Status written = WriteAtomically(flags.out, rendered);
  if (!written.ok()) {
    err << "error: " << written.ToString() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace blowfish
