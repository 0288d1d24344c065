//
// Copyright 2026 The dprisk Authors
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

#include "dprisk/json_io.h"

#include <cmath>
#include <fstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace dprisk {
namespace {

using nlohmann::json;

absl::StatusOr<double> RequiredNumber(const json& object,
                                      std::string_view key) {
  const auto it = object.find(key);
  if (it == object.end()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("missing field \"%s\"", std::string(key)));
  }
  if (!it->is_number()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("field \"%s\" must be a number", std::string(key)));
  }
  return it->get<double>();
}

absl::StatusOr<std::vector<double>> NumberArray(const json& object,
                                                std::string_view key) {
  const auto it = object.find(key);
  if (it == object.end() || !it->is_array()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("field \"%s\" must be an array", std::string(key)));
  }
  std::vector<double> values;
  values.reserve(it->size());
  for (const json& v : *it) {
    if (!v.is_number()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "field \"%s\" must hold numbers only", std::string(key)));
    }
    values.push_back(v.get<double>());
  }
  return values;
}

}  // namespace

json NumberToJson(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

json GuaranteeToJson(const PrivacyGuarantee& guarantee) {
  json out;
  out["type"] = std::string(GuaranteeTypeName(TypeOf(guarantee)));
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PureDp>) {
          out["epsilon"] = g.epsilon;
        } else if constexpr (std::is_same_v<T, Zcdp>) {
          out["rho"] = g.rho;
        } else {
          out["epsilon"] = g.epsilon;
          out["delta"] = g.delta;
        }
      },
      guarantee);
  return out;
}

absl::StatusOr<PrivacyGuarantee> GuaranteeFromJson(const json& in) {
  if (!in.is_object() || !in.contains("type") || !in["type"].is_string()) {
    return absl::InvalidArgumentError(
        "a guarantee must be an object with a string \"type\"");
  }
  absl::StatusOr<GuaranteeType> type =
      ParseGuaranteeType(in["type"].get<std::string>());
  if (!type.ok()) return type.status();
  auto delta_or_zero = [&]() -> absl::StatusOr<double> {
    if (!in.contains("delta")) return 0.0;
    return RequiredNumber(in, "delta");
  };
  switch (*type) {
    case GuaranteeType::kZcdp: {
      absl::StatusOr<double> rho = RequiredNumber(in, "rho");
      if (!rho.ok()) return rho.status();
      absl::StatusOr<Zcdp> g = Zcdp::Create(*rho);
      if (!g.ok()) return g.status();
      return PrivacyGuarantee(*g);
    }
    case GuaranteeType::kPureDp: {
      absl::StatusOr<double> eps = RequiredNumber(in, "epsilon");
      if (!eps.ok()) return eps.status();
      absl::StatusOr<PureDp> g = PureDp::Create(*eps);
      if (!g.ok()) return g.status();
      return PrivacyGuarantee(*g);
    }
    case GuaranteeType::kApproxDp:
    case GuaranteeType::kPdp: {
      absl::StatusOr<double> eps = RequiredNumber(in, "epsilon");
      if (!eps.ok()) return eps.status();
      absl::StatusOr<double> delta = delta_or_zero();
      if (!delta.ok()) return delta.status();
      if (*type == GuaranteeType::kApproxDp) {
        absl::StatusOr<ApproxDp> g = ApproxDp::Create(*eps, *delta);
        if (!g.ok()) return g.status();
        return PrivacyGuarantee(*g);
      }
      absl::StatusOr<Pdp> g = Pdp::Create(*eps, *delta);
      if (!g.ok()) return g.status();
      return PrivacyGuarantee(*g);
    }
  }
  return absl::InvalidArgumentError("unknown guarantee type");
}

json PairToJson(const DiscreteMechanismPair& pair) {
  return json{{"outcomes", pair.outcomes()},
              {"prob_with", pair.prob_with()},
              {"prob_without", pair.prob_without()}};
}

absl::StatusOr<DiscreteMechanismPair> PairFromJson(const json& in) {
  if (!in.is_object()) {
    return absl::InvalidArgumentError("a mechanism pair must be an object");
  }
  const auto outcomes_it = in.find("outcomes");
  if (outcomes_it == in.end() || !outcomes_it->is_array()) {
    return absl::InvalidArgumentError("field \"outcomes\" must be an array");
  }
  std::vector<std::string> outcomes;
  for (const json& label : *outcomes_it) {
    if (label.is_string()) {
      outcomes.push_back(label.get<std::string>());
    } else if (label.is_number()) {
      outcomes.push_back(label.dump());
    } else {
      return absl::InvalidArgumentError(
          "outcome labels must be strings or numbers");
    }
  }
  absl::StatusOr<std::vector<double>> with = NumberArray(in, "prob_with");
  if (!with.ok()) return with.status();
  absl::StatusOr<std::vector<double>> without = NumberArray(in, "prob_without");
  if (!without.ok()) return without.status();
  return DiscreteMechanismPair::Create(std::move(outcomes), *std::move(with),
                                       *std::move(without));
}

absl::StatusOr<DiscreteMechanismPair> LoadPairFile(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    return absl::NotFoundError(
        absl::StrFormat("cannot open mechanism file %s", path));
  }
  json parsed = json::parse(file, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s is not valid JSON", path));
  }
  return PairFromJson(parsed);
}

json IntervalToJson(const ProbabilityInterval& interval) {
  return json{{"lower", NumberToJson(interval.lower)},
              {"upper", NumberToJson(interval.upper)},
              {"confidence", NumberToJson(interval.confidence)}};
}

json SymmetricBoundToJson(const SymmetricBound& bound) {
  return json{
      {"kind", bound.kind == BoundKind::kRatio ? "ratio" : "difference"},
      {"magnitude", NumberToJson(bound.magnitude)},
      {"lower", NumberToJson(bound.lower())},
      {"upper", NumberToJson(bound.upper())},
      {"confidence", NumberToJson(bound.confidence)}};
}

json CombinedToJson(const CombinedWorstCase& combined) {
  return json{
      {"membership_ratio", NumberToJson(combined.membership_ratio)},
      {"nonmembership_ratio", NumberToJson(combined.nonmembership_ratio)},
      {"ratio_max", NumberToJson(combined.ratio_max)},
      {"increase", NumberToJson(combined.increase)},
      {"decrease", NumberToJson(combined.decrease)},
      {"diff_max", NumberToJson(combined.diff_max)},
      {"confidence", NumberToJson(combined.confidence)}};
}

json CurvePointToJson(const RiskCurvePoint& point) {
  return json{{"k", point.k},
              {"epsilon_total", NumberToJson(point.epsilon_total)},
              {"delta_total", NumberToJson(point.delta_total)},
              {"epsilon_prime", NumberToJson(point.epsilon_prime)},
              {"criterion_value", NumberToJson(point.value)}};
}

json ReportToJson(const WorstCaseReport& report) {
  auto extremum = [](const GridExtremum& e) {
    return json{{"value", NumberToJson(e.value)}, {"prior", e.prior}};
  };
  json grid = json::array();
  for (const WorstCaseRow& row : report.grid) {
    json entry = CombinedToJson(row.combined);
    entry.erase("confidence");
    entry["prior"] = row.prior;
    entry["posterior_lower"] = NumberToJson(row.posterior.lower);
    entry["posterior_upper"] = NumberToJson(row.posterior.upper);
    grid.push_back(std::move(entry));
  }
  return json{
      {"parameters",
       {{"epsilon", report.epsilon},
        {"delta", report.delta},
        {"delta_prime", report.delta_prime},
        {"epsilon_prime", NumberToJson(report.epsilon_prime)},
        {"confidence", 1.0 - report.delta_prime}}},
      {"envelope",
       {{"ratio_upper", NumberToJson(report.ratio_envelope.magnitude)},
        {"diff_magnitude", NumberToJson(report.diff_envelope.magnitude)}}},
      {"worst_priors",
       {{"diff_increase_p", report.worst_priors.max_increase},
        {"diff_decrease_p", report.worst_priors.max_decrease}}},
      {"extrema",
       {{"membership_ratio", extremum(report.max_membership_ratio)},
        {"nonmembership_ratio", extremum(report.max_nonmembership_ratio)},
        {"increase", extremum(report.max_increase)},
        {"decrease", extremum(report.max_decrease)}}},
      {"grid", std::move(grid)}};
}

}  // namespace dprisk
