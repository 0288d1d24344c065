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

// dprisk: disclosure-risk bounds, conversions, composition and budget
// planning from the command line.
//
// Exit codes: 0 success, 1 usage error, 2 domain error, 3 infeasible request.
// JSON results are wrapped in an envelope
//   {format_version, command, parameters, result, provenance}.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "dprisk/composition.h"
#include "dprisk/guarantees.h"
#include "dprisk/json_io.h"
#include "dprisk/mechanisms.h"
#include "dprisk/planner.h"
#include "dprisk/risk_bounds.h"

namespace dprisk {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitInfeasible = 3;

// What a subcommand prints: either an envelope or raw text (CSV).
struct Output {
  json parameters = json::object();
  json result;
  std::string provenance;
  std::optional<std::string> text;
};

std::string Envelope(std::string_view command, const Output& out) {
  const json envelope = {{"format_version", std::string(kFormatVersion)},
                         {"command", std::string(command)},
                         {"parameters", out.parameters},
                         {"result", out.result},
                         {"provenance", out.provenance}};
  return envelope.dump(2) + "\n";
}

std::string Csv(double value) { return absl::StrFormat("%.17g", value); }

void Echo(json& parameters, const char* key, const std::optional<double>& v) {
  if (v) parameters[key] = *v;
}

// --type plus --epsilon/--delta/--rho. The type is inferred when omitted:
// rho selects zcdp, a delta selects approx_dp, otherwise pure_dp.
struct GuaranteeFlags {
  std::string type;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<double> rho;

  void Register(CLI::App* app, const std::string& type_flag = "--type") {
    app->add_option(type_flag, type,
                    "Guarantee family: pure_dp, approx_dp, pdp, zcdp");
    app->add_option("--epsilon", epsilon, "Guarantee epsilon");
    app->add_option("--delta", delta, "Guarantee delta (not delta')");
    app->add_option("--rho", rho, "zCDP rho");
  }

  absl::StatusOr<std::string> ResolvedType() const {
    if (!type.empty()) return type;
    if (rho) return std::string("zcdp");
    if (!epsilon) {
      return absl::InvalidArgumentError("give --epsilon or --rho");
    }
    return std::string(delta ? "approx_dp" : "pure_dp");
  }

  absl::StatusOr<PrivacyGuarantee> Build() const {
    absl::StatusOr<std::string> name = ResolvedType();
    if (!name.ok()) return name.status();
    json in = {{"type", *name}};
    if (epsilon) in["epsilon"] = *epsilon;
    if (delta) in["delta"] = *delta;
    if (rho) in["rho"] = *rho;
    return GuaranteeFromJson(in);
  }

  void EchoInto(json& parameters) const {
    absl::StatusOr<std::string> name = ResolvedType();
    if (name.ok()) parameters["type"] = *name;
    Echo(parameters, "epsilon", epsilon);
    Echo(parameters, "delta", delta);
    Echo(parameters, "rho", rho);
  }
};

json PdpGuaranteeJson(const Pdp& pdp) { return GuaranteeToJson(pdp); }

json WorstPriorsJson(const WorstCasePriors& priors) {
  return {{"diff_increase_p", priors.max_increase},
          {"diff_decrease_p", priors.max_decrease}};
}

// ---------------------------------------------------------------- bounds

struct BoundsFlags {
  GuaranteeFlags guarantee;
  std::optional<double> delta_prime;
  std::optional<double> prior;
};

absl::StatusOr<Output> RunBounds(const BoundsFlags& f) {
  Output out;
  f.guarantee.EchoInto(out.parameters);
  Echo(out.parameters, "delta_prime", f.delta_prime);
  Echo(out.parameters, "prior", f.prior);

  absl::StatusOr<PrivacyGuarantee> g = f.guarantee.Build();
  if (!g.ok()) return g.status();
  const GuaranteeType type = TypeOf(*g);
  const bool needs_delta_prime =
      type == GuaranteeType::kZcdp ||
      (type == GuaranteeType::kApproxDp && std::get<ApproxDp>(*g).delta > 0);
  if (needs_delta_prime && !f.delta_prime) {
    return absl::InvalidArgumentError(
        "--delta-prime is required for approx_dp (delta > 0) and zcdp");
  }
  absl::StatusOr<ConvertedPdp> converted = ToPdp(*g, f.delta_prime.value_or(0));
  if (!converted.ok()) return converted.status();
  const double eps = converted->pdp.epsilon;
  const double conf_delta = converted->pdp.delta;

  absl::StatusOr<SymmetricBound> ratio = RatioInterval(eps, conf_delta);
  if (!ratio.ok()) return ratio.status();
  absl::StatusOr<SymmetricBound> diff = DiffInterval(eps, conf_delta);
  if (!diff.ok()) return diff.status();
  absl::StatusOr<WorstCasePriors> priors = WorstCasePriorsDiff(eps);
  if (!priors.ok()) return priors.status();

  out.result = {{"pdp", PdpGuaranteeJson(converted->pdp)},
                {"ratio", SymmetricBoundToJson(*ratio)},
                {"difference", SymmetricBoundToJson(*diff)},
                {"worst_priors", WorstPriorsJson(*priors)}};
  if (f.prior) {
    absl::StatusOr<ProbabilityInterval> posterior =
        PosteriorInterval(eps, conf_delta, *f.prior);
    if (!posterior.ok()) return posterior.status();
    absl::StatusOr<CombinedWorstCase> combined =
        CombinedWorstCaseBounds(eps, conf_delta, *f.prior);
    if (!combined.ok()) return combined.status();
    out.result["posterior"] = IntervalToJson(*posterior);
    out.result["combined"] = CombinedToJson(*combined);
  }
  out.provenance = std::string(PdpProvenanceName(converted->provenance));
  return out;
}

// --------------------------------------------------------------- convert

struct ConvertFlags {
  GuaranteeFlags from;
  std::string to;
  std::optional<double> delta_prime;
  std::optional<double> target_delta;
  std::optional<double> prior;
  int log_grid = 0;
  bool json_output = false;
};

absl::StatusOr<Output> ConvertCurve(const ConvertFlags& f, const ApproxDp& dp,
                                    Output out) {
  if (!(dp.delta > 0)) {
    return absl::InvalidArgumentError("--log-grid needs a delta > 0");
  }
  std::vector<double> grid;
  const double lo = std::log10(dp.delta);
  for (int i = 1; i <= f.log_grid; ++i) {
    grid.push_back(std::pow(10.0, lo * (1.0 - static_cast<double>(i) / f.log_grid)));
  }
  absl::StatusOr<std::vector<PdpCurvePoint>> curve =
      DpToPdpCurve(dp.epsilon, dp.delta, grid);
  if (!curve.ok()) return curve.status();
  out.provenance = "formula";
  if (!f.json_output) {
    std::string text = "delta_prime,epsilon_prime\n";
    for (const PdpCurvePoint& p : *curve) {
      text += Csv(p.delta_prime) + "," + Csv(p.epsilon_prime) + "\n";
    }
    out.text = std::move(text);
    return out;
  }
  json points = json::array();
  for (const PdpCurvePoint& p : *curve) {
    points.push_back({{"delta_prime", p.delta_prime},
                      {"epsilon_prime", NumberToJson(p.epsilon_prime)}});
  }
  out.result = {{"curve", std::move(points)}};
  return out;
}

absl::StatusOr<Output> RunConvert(const ConvertFlags& f) {
  Output out;
  f.from.EchoInto(out.parameters);
  out.parameters["to"] = f.to;
  Echo(out.parameters, "delta_prime", f.delta_prime);
  Echo(out.parameters, "target_delta", f.target_delta);
  Echo(out.parameters, "prior", f.prior);
  if (f.log_grid > 0) out.parameters["log_grid"] = f.log_grid;

  auto need_delta_prime = [&]() -> absl::Status {
    if (f.delta_prime) return absl::OkStatus();
    return absl::InvalidArgumentError("--delta-prime is required for --to pdp");
  };
  auto with_posterior = [&](const Pdp& pdp) -> absl::Status {
    if (!f.prior) return absl::OkStatus();
    absl::StatusOr<ProbabilityInterval> posterior =
        PosteriorInterval(pdp.epsilon, pdp.delta, *f.prior);
    if (!posterior.ok()) return posterior.status();
    out.result["posterior"] = IntervalToJson(*posterior);
    return absl::OkStatus();
  };

  if (f.from.type == "diff_bound") {
    if (f.to != "pdp" || !f.from.epsilon || !f.from.delta) {
      return absl::InvalidArgumentError(
          "diff_bound converts --to pdp and needs --epsilon and --delta");
    }
    absl::StatusOr<DiffBoundPdp> pdp =
        DiffBoundToPdp(*f.from.epsilon, *f.from.delta);
    if (!pdp.ok()) return pdp.status();
    out.result = {{"doubled_delta", PdpGuaranteeJson(pdp->doubled_delta)},
                  {"tilde", pdp->tilde ? PdpGuaranteeJson(*pdp->tilde)
                                       : json(nullptr)}};
    out.provenance = "formula";
    return out;
  }

  absl::StatusOr<PrivacyGuarantee> g = f.from.Build();
  if (!g.ok()) return g.status();
  absl::StatusOr<GuaranteeType> to = ParseGuaranteeType(f.to);
  if (!to.ok()) return to.status();
  const GuaranteeType from = TypeOf(*g);

  if (*to == from && f.log_grid == 0) {
    out.result = {{"guarantee", GuaranteeToJson(*g)}};
    out.provenance = "identity";
    return out;
  }
  if (*to == GuaranteeType::kPdp) {
    if (f.log_grid > 0) {
      std::optional<ApproxDp> dp = AsApproxDp(*g);
      if (!dp || from == GuaranteeType::kPdp) {
        return absl::InvalidArgumentError("--log-grid takes a pure or approximate DP guarantee");
      }
      return ConvertCurve(f, *dp, std::move(out));
    }
    if (absl::Status s = need_delta_prime(); !s.ok()) return s;
    if (from == GuaranteeType::kZcdp) {
      absl::StatusOr<OptimizedPdp> opt =
          ZcdpToPdpOptimized(std::get<Zcdp>(*g).rho, *f.delta_prime);
      if (!opt.ok()) return opt.status();
      out.result = {{"guarantee", PdpGuaranteeJson(opt->pdp)},
                    {"intermediate", GuaranteeToJson(ApproxDp{
                                         opt->intermediate_epsilon,
                                         opt->intermediate_delta})}};
      out.provenance = std::string(PdpProvenanceName(PdpProvenance::kOptimizedSplit));
      if (absl::Status s = with_posterior(opt->pdp); !s.ok()) return s;
      return out;
    }
    absl::StatusOr<ConvertedPdp> converted = ToPdp(*g, *f.delta_prime);
    if (!converted.ok()) return converted.status();
    out.result = {{"guarantee", PdpGuaranteeJson(converted->pdp)}};
    out.provenance = std::string(PdpProvenanceName(converted->provenance));
    if (absl::Status s = with_posterior(converted->pdp); !s.ok()) return s;
    return out;
  }
  if (*to == GuaranteeType::kApproxDp) {
    if (from == GuaranteeType::kZcdp) {
      if (!f.target_delta) {
        return absl::InvalidArgumentError(
            "--target-delta is required for zcdp to approx_dp");
      }
      absl::StatusOr<ApproxDp> dp =
          ZcdpToDp(std::get<Zcdp>(*g).rho, *f.target_delta);
      if (!dp.ok()) return dp.status();
      out.result = {{"guarantee", GuaranteeToJson(*dp)}};
      out.provenance = "formula";
      return out;
    }
    out.result = {{"guarantee", GuaranteeToJson(*AsApproxDp(*g))}};
    out.provenance = from == GuaranteeType::kPdp ? "formula" : "identity";
    return out;
  }
  return absl::InvalidArgumentError(absl::StrFormat(
      "no conversion from %s to %s", std::string(GuaranteeTypeName(from)), f.to));
}

// --------------------------------------------------------------- compose

struct ComposeFlags {
  GuaranteeFlags per_release;
  std::string method = "basic";
  int k = 1;
  std::optional<double> total_delta;
  bool frontier = false;
};

absl::StatusOr<Output> RunCompose(const ComposeFlags& f) {
  Output out;
  f.per_release.EchoInto(out.parameters);
  out.parameters["method"] = f.method;
  out.parameters["k"] = f.k;
  Echo(out.parameters, "total_delta", f.total_delta);

  absl::StatusOr<CompositionMethod> method = ParseCompositionMethod(f.method);
  if (!method.ok()) return method.status();
  if (f.k < 1) return absl::InvalidArgumentError("--k must be >= 1");
  absl::StatusOr<PrivacyGuarantee> g = f.per_release.Build();
  if (!g.ok()) return g.status();
  out.provenance = std::string(CompositionMethodName(*method));

  if (*method == CompositionMethod::kZcdp) {
    const auto* z = std::get_if<Zcdp>(&*g);
    if (z == nullptr) {
      return absl::InvalidArgumentError("zcdp composition takes --rho");
    }
    absl::StatusOr<Zcdp> composed =
        ComposeZcdp(std::vector<double>(f.k, z->rho));
    if (!composed.ok()) return composed.status();
    out.result = {{"guarantee", GuaranteeToJson(*composed)}};
    return out;
  }
  std::optional<ApproxDp> dp = AsApproxDp(*g);
  if (!dp || TypeOf(*g) == GuaranteeType::kPdp) {
    return absl::InvalidArgumentError(
        "basic, advanced and optimal composition take a pure or approximate "
        "DP guarantee");
  }
  switch (*method) {
    case CompositionMethod::kBasic: {
      absl::StatusOr<ApproxDp> composed =
          ComposeBasic(std::vector<ApproxDp>(f.k, *dp));
      if (!composed.ok()) return composed.status();
      out.result = {{"guarantee", GuaranteeToJson(*composed)}};
      return out;
    }
    case CompositionMethod::kAdvanced: {
      if (!f.total_delta) {
        return absl::InvalidArgumentError(
            "advanced composition needs --total-delta");
      }
      absl::StatusOr<ApproxDp> composed =
          ComposeAdvanced(dp->epsilon, dp->delta, f.k, *f.total_delta);
      if (!composed.ok()) return composed.status();
      out.result = {{"guarantee", GuaranteeToJson(*composed)}};
      return out;
    }
    case CompositionMethod::kOptimal: {
      auto point_json = [](const FrontierPoint& p) {
        return json{{"ell", p.ell},
                    {"epsilon", NumberToJson(p.epsilon)},
                    {"delta", NumberToJson(p.delta)}};
      };
      if (f.frontier || !f.total_delta) {
        absl::StatusOr<std::vector<FrontierPoint>> frontier =
            OptimalFrontier(dp->epsilon, dp->delta, f.k);
        if (!frontier.ok()) return frontier.status();
        json points = json::array();
        for (const FrontierPoint& p : *frontier) points.push_back(point_json(p));
        out.result["frontier"] = std::move(points);
      }
      if (f.total_delta) {
        absl::StatusOr<FrontierPoint> point =
            SelectFrontierPoint(dp->epsilon, dp->delta, f.k, *f.total_delta);
        if (!point.ok()) return point.status();
        out.result["guarantee"] =
            GuaranteeToJson(ApproxDp{point->epsilon, point->delta});
        out.result["selected"] = point_json(*point);
      }
      return out;
    }
    case CompositionMethod::kZcdp:
      break;
  }
  return absl::InvalidArgumentError("unsupported composition method");
}

// ----------------------------------------------------------------- curve

struct CurveFlags {
  std::string method = "basic";
  std::optional<double> eps_per;
  std::optional<double> delta_per;
  std::optional<double> rho_per;
  std::optional<double> prior;
  double delta_prime = 0.05;
  std::string criterion = "posterior-upper";
  int k_max = 100;
  std::optional<double> threshold;
  bool json_output = false;
};

absl::StatusOr<Output> RunCurve(const CurveFlags& f) {
  Output out;
  out.parameters["method"] = f.method;
  Echo(out.parameters, "eps_per", f.eps_per);
  Echo(out.parameters, "delta_per", f.delta_per);
  Echo(out.parameters, "rho_per", f.rho_per);
  Echo(out.parameters, "prior", f.prior);
  out.parameters["delta_prime"] = f.delta_prime;
  out.parameters["criterion"] = f.criterion;
  out.parameters["k_max"] = f.k_max;
  Echo(out.parameters, "threshold", f.threshold);

  RiskCurveOptions options;
  absl::StatusOr<CompositionMethod> method = ParseCompositionMethod(f.method);
  if (!method.ok()) return method.status();
  absl::StatusOr<RiskCriterion> criterion = ParseRiskCriterion(f.criterion);
  if (!criterion.ok()) return criterion.status();
  GuaranteeFlags per_release;
  per_release.epsilon = f.eps_per;
  per_release.delta = f.delta_per;
  per_release.rho = f.rho_per;
  absl::StatusOr<PrivacyGuarantee> g = per_release.Build();
  if (!g.ok()) return g.status();
  options.per_release = *g;
  options.method = *method;
  options.k_max = f.k_max;
  options.prior = f.prior;
  options.delta_prime = f.delta_prime;
  options.criterion = *criterion;

  absl::StatusOr<std::vector<RiskCurvePoint>> curve = RiskCurve(options);
  if (!curve.ok()) return curve.status();
  std::optional<int> crossing;
  if (f.threshold) crossing = FirstCrossing(*curve, *f.threshold);
  out.provenance = *method == CompositionMethod::kBasic
                       ? "formula"
                       : "optimized-split";

  if (!f.json_output) {
    std::string text;
    if (f.threshold) {
      text += absl::StrFormat("# first_crossing_k=%s\n",
                              crossing ? std::to_string(*crossing) : "none");
    }
    text += "k,epsilon_total,delta_total,epsilon_prime,criterion_value\n";
    for (const RiskCurvePoint& p : *curve) {
      text += absl::StrFormat("%d,%s,%s,%s,%s\n", p.k, Csv(p.epsilon_total),
                              Csv(p.delta_total), Csv(p.epsilon_prime),
                              Csv(p.value));
    }
    out.text = std::move(text);
    return out;
  }
  json points = json::array();
  for (const RiskCurvePoint& p : *curve) points.push_back(CurvePointToJson(p));
  out.result = {{"points", std::move(points)}};
  if (f.threshold) {
    out.result["first_crossing_k"] = crossing ? json(*crossing) : json(nullptr);
  }
  return out;
}

// ------------------------------------------------------------------ plan

struct PlanFlags {
  std::string criterion = "diff-magnitude";
  std::optional<double> threshold;
  double delta_prime = 0.05;
  std::optional<double> prior;
  double total_delta = 0.0;
  int k = 1;
  double per_release_delta = 0.0;
  std::string method = "optimal";
};

absl::StatusOr<Output> RunPlan(const PlanFlags& f) {
  Output out;
  out.parameters = {{"criterion", f.criterion},
                    {"delta_prime", f.delta_prime},
                    {"total_delta", f.total_delta},
                    {"k", f.k},
                    {"per_release_delta", f.per_release_delta},
                    {"method", f.method}};
  Echo(out.parameters, "threshold", f.threshold);
  Echo(out.parameters, "prior", f.prior);

  absl::StatusOr<RiskCriterion> criterion = ParseRiskCriterion(f.criterion);
  if (!criterion.ok()) return criterion.status();
  absl::StatusOr<CompositionMethod> method = ParseCompositionMethod(f.method);
  if (!method.ok()) return method.status();
  if (!f.threshold) return absl::InvalidArgumentError("--threshold is required");
  const RiskProfile profile{*criterion, *f.threshold, f.delta_prime, f.prior};

  absl::StatusOr<double> eps_prime =
      InvertCriterion(profile.criterion, profile.threshold, profile.prior);
  if (!eps_prime.ok()) return eps_prime.status();
  absl::StatusOr<double> eps_total = MaxTotalEpsilon(profile, f.total_delta);
  if (!eps_total.ok()) return eps_total.status();
  const ReleaseSchedule schedule{f.k, f.per_release_delta, f.total_delta,
                                 *method};
  absl::StatusOr<double> per_release = PerReleaseEpsilon(schedule, *eps_total);
  if (!per_release.ok()) return per_release.status();
  absl::StatusOr<ApproxDp> composed = ComposeSchedule(schedule, *per_release);
  if (!composed.ok()) return composed.status();

  absl::StatusOr<double> pure_total = MaxTotalEpsilon(profile, 0.0);
  if (!pure_total.ok()) return pure_total.status();
  absl::StatusOr<double> pure_per_release = PerReleaseEpsilon(
      {f.k, 0.0, 0.0, CompositionMethod::kBasic}, *pure_total);
  if (!pure_per_release.ok()) return pure_per_release.status();

  out.result = {
      {"epsilon_prime", *eps_prime},
      {"epsilon_total", *eps_total},
      {"per_release",
       {{"method", f.method},
        {"epsilon", *per_release},
        {"delta", f.per_release_delta},
        {"composed", GuaranteeToJson(*composed)}}},
      {"pure_basic",
       {{"epsilon_total", *pure_total}, {"epsilon", *pure_per_release}}}};
  out.provenance = "formula";
  return out;
}

// ------------------------------------------------------------------ mech

struct MechFlags {
  std::string pair_file;
  std::optional<double> rr;
  int k = 1;
  std::optional<double> counterexample;
  std::optional<double> counterexample_delta;
  std::optional<double> epsilon;
  std::optional<double> pdp_delta;
  std::optional<double> prior;
  double delta_prime = 0.0;
};

absl::StatusOr<DiscreteMechanismPair> LoadMechanism(const MechFlags& f) {
  const int sources = !f.pair_file.empty() + f.rr.has_value() +
                      f.counterexample.has_value();
  if (sources != 1) {
    return absl::InvalidArgumentError(
        "give exactly one of --pair-file, --rr, --counterexample");
  }
  if (!f.pair_file.empty()) return LoadPairFile(f.pair_file);
  if (f.rr) return ComposedRandomizedResponse(*f.rr, f.k);
  if (!f.counterexample_delta) {
    return absl::InvalidArgumentError("--counterexample needs --counterexample-delta");
  }
  return DiffGapCounterexample(*f.counterexample, *f.counterexample_delta);
}

absl::StatusOr<Output> RunMech(const MechFlags& f) {
  Output out;
  if (!f.pair_file.empty()) out.parameters["pair_file"] = f.pair_file;
  Echo(out.parameters, "rr", f.rr);
  if (f.rr) out.parameters["k"] = f.k;
  Echo(out.parameters, "counterexample", f.counterexample);
  Echo(out.parameters, "counterexample_delta", f.counterexample_delta);
  Echo(out.parameters, "epsilon", f.epsilon);
  Echo(out.parameters, "pdp_delta", f.pdp_delta);
  Echo(out.parameters, "prior", f.prior);
  out.parameters["delta_prime"] = f.delta_prime;

  absl::StatusOr<DiscreteMechanismPair> pair = LoadMechanism(f);
  if (!pair.ok()) return pair.status();
  out.result = {{"pair", PairToJson(*pair)}};
  out.provenance = "exact-enumeration";
  if ((f.pdp_delta || f.prior) && !f.epsilon) {
    return absl::InvalidArgumentError("--pdp-delta and --prior need --epsilon");
  }
  if (!f.epsilon) return out;
  const double eps = *f.epsilon;

  absl::StatusOr<double> tight = TightDelta(*pair, eps);
  if (!tight.ok()) return tight.status();
  absl::StatusOr<double> tail_form = TightDeltaTailForm(*pair, eps);
  if (!tail_form.ok()) return tail_form.status();
  json tails;
  for (World w : {World::kWith, World::kWithout}) {
    absl::StatusOr<double> tail = PlrvTailMass(*pair, eps, w);
    if (!tail.ok()) return tail.status();
    tails[std::string(WorldName(w))] = *tail;
  }
  out.result["tight_delta"] = {{"expectation_form", *tight},
                               {"tail_form", *tail_form}};
  out.result["plrv_tail_mass"] = std::move(tails);

  if (f.pdp_delta) {
    absl::StatusOr<bool> holds = PdpHolds(*pair, eps, *f.pdp_delta);
    if (!holds.ok()) return holds.status();
    out.result["pdp_holds"] = *holds;
  }
  if (f.prior) {
    absl::StatusOr<ProbabilityInterval> interval =
        PosteriorInterval(eps, f.delta_prime, *f.prior);
    if (!interval.ok()) return interval.status();
    absl::StatusOr<SymmetricBound> ratio = RatioInterval(eps, f.delta_prime);
    if (!ratio.ok()) return ratio.status();
    absl::StatusOr<SymmetricBound> diff = DiffInterval(eps, f.delta_prime);
    if (!diff.ok()) return diff.status();
    json violation;
    for (World w : {World::kWith, World::kWithout}) {
      const std::string world(WorldName(w));
      absl::StatusOr<double> v = ViolationProbability(*pair, *f.prior, *interval, w);
      if (!v.ok()) return v.status();
      violation["posterior"][world] = *v;
      v = ViolationProbability(*pair, *f.prior, *ratio, w);
      if (!v.ok()) return v.status();
      violation["ratio"][world] = *v;
      v = ViolationProbability(*pair, *f.prior, *diff, w);
      if (!v.ok()) return v.status();
      violation["difference"][world] = *v;
    }
    out.result["violation_probability"] = std::move(violation);
  }
  return out;
}

// ---------------------------------------------------------------- report

struct ReportFlags {
  std::optional<double> epsilon;
  double delta = 0.0;
  double delta_prime = 0.05;
  int grid_size = 999;
};

absl::StatusOr<Output> RunReport(const ReportFlags& f) {
  Output out;
  Echo(out.parameters, "epsilon", f.epsilon);
  out.parameters["delta"] = f.delta;
  out.parameters["delta_prime"] = f.delta_prime;
  out.parameters["grid_size"] = f.grid_size;
  if (!f.epsilon) return absl::InvalidArgumentError("--epsilon is required");
  if (f.grid_size < 1) return absl::InvalidArgumentError("--grid-size must be >= 1");
  std::vector<double> grid;
  for (int i = 1; i <= f.grid_size; ++i) {
    grid.push_back(static_cast<double>(i) / (f.grid_size + 1));
  }
  absl::StatusOr<WorstCaseReport> report =
      MakeWorstCaseReport(*f.epsilon, f.delta, f.delta_prime, grid);
  if (!report.ok()) return report.status();
  out.result = ReportToJson(*report);
  out.provenance = f.delta > 0 ? "formula" : "identity";
  return out;
}

int ExitCodeFor(const absl::Status& status) {
  return status.code() == absl::StatusCode::kFailedPrecondition
             ? kExitInfeasible
             : kExitDomain;
}

int Main(int argc, char** argv) {
  CLI::App app{"Disclosure-risk bounds for differential privacy guarantees",
               "dprisk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dprisk 0.1.0");

  BoundsFlags bounds;
  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "Risk intervals implied by a guarantee");
  bounds.guarantee.Register(bounds_cmd);
  bounds_cmd->add_option("--delta-prime", bounds.delta_prime,
                         "PDP delta': bounds hold with probability 1 - delta'");
  bounds_cmd->add_option("--prior", bounds.prior, "Adversary prior p");

  ConvertFlags convert;
  CLI::App* convert_cmd =
      app.add_subcommand("convert", "Convert between guarantee families");
  convert.from.Register(convert_cmd, "--from");
  convert_cmd->add_option("--to", convert.to, "Target family: approx_dp, pdp")
      ->required();
  convert_cmd->add_option("--delta-prime", convert.delta_prime, "PDP delta'");
  convert_cmd->add_option("--target-delta", convert.target_delta,
                          "DP delta for zcdp to approx_dp");
  convert_cmd->add_option("--prior", convert.prior,
                          "Also report the posterior interval at this prior");
  convert_cmd->add_option("--log-grid", convert.log_grid,
                          "Emit eps'(delta') on N log-spaced points in (delta, 1]");
  convert_cmd->add_flag("--json", convert.json_output, "JSON instead of CSV");

  ComposeFlags compose;
  CLI::App* compose_cmd =
      app.add_subcommand("compose", "Compose k identical releases");
  compose.per_release.Register(compose_cmd);
  compose_cmd->add_option("--method", compose.method,
                          "basic, advanced, optimal or zcdp");
  compose_cmd->add_option("--k", compose.k, "Number of releases");
  compose_cmd->add_option("--total-delta", compose.total_delta,
                          "Total delta (advanced) or delta target (optimal)");
  compose_cmd->add_flag("--frontier", compose.frontier,
                        "Optimal: list every (epsilon, delta) frontier point");

  CurveFlags curve;
  CLI::App* curve_cmd =
      app.add_subcommand("curve", "Disclosure risk against the release count");
  curve_cmd->add_option("--method", curve.method,
                        "basic, advanced, optimal or zcdp");
  curve_cmd->add_option("--eps-per", curve.eps_per, "Per-release epsilon");
  curve_cmd->add_option("--delta-per", curve.delta_per, "Per-release delta");
  curve_cmd->add_option("--rho-per", curve.rho_per, "Per-release zCDP rho");
  curve_cmd->add_option("--prior", curve.prior, "Adversary prior p");
  curve_cmd->add_option("--delta-prime", curve.delta_prime, "PDP delta'");
  curve_cmd->add_option("--criterion", curve.criterion,
                        "posterior-upper, ratio-upper or diff-magnitude");
  curve_cmd->add_option("--k-max", curve.k_max, "Largest release count");
  curve_cmd->add_option("--threshold", curve.threshold,
                        "Report the first k whose value exceeds this");
  curve_cmd->add_flag("--json", curve.json_output, "JSON instead of CSV");

  PlanFlags plan;
  CLI::App* plan_cmd =
      app.add_subcommand("plan", "Privacy budget meeting a risk profile");
  plan_cmd->add_option("--criterion", plan.criterion,
                       "posterior-upper, ratio-upper or diff-magnitude");
  plan_cmd->add_option("--threshold", plan.threshold, "Tolerated risk");
  plan_cmd->add_option("--delta-prime", plan.delta_prime, "PDP delta'");
  plan_cmd->add_option("--prior", plan.prior, "Prior for posterior-upper");
  plan_cmd->add_option("--total-delta", plan.total_delta, "Total DP delta");
  plan_cmd->add_option("--k", plan.k, "Number of releases");
  plan_cmd->add_option("--per-release-delta", plan.per_release_delta,
                       "DP delta of each release");
  plan_cmd->add_option("--method", plan.method,
                       "basic, advanced or optimal");

  MechFlags mech;
  CLI::App* mech_cmd = app.add_subcommand(
      "mech", "Exact analysis of a finite mechanism pair");
  mech_cmd->add_option("--pair-file", mech.pair_file, "Mechanism pair JSON");
  mech_cmd->add_option("--rr", mech.rr, "Randomized response at this epsilon");
  mech_cmd->add_option("--k", mech.k, "Compose --rr k times");
  mech_cmd->add_option("--counterexample", mech.counterexample,
                       "Difference-bound counterexample at this epsilon");
  mech_cmd->add_option("--counterexample-delta", mech.counterexample_delta,
                       "Its delta");
  mech_cmd->add_option("--epsilon", mech.epsilon,
                       "Tight delta and tail mass at this epsilon");
  mech_cmd->add_option("--pdp-delta", mech.pdp_delta,
                       "Check (epsilon, pdp-delta)-PDP");
  mech_cmd->add_option("--prior", mech.prior,
                       "Violation probability of the bands at eps' = epsilon");
  mech_cmd->add_option("--delta-prime", mech.delta_prime,
                       "Confidence parameter reported with the bands");

  ReportFlags report;
  CLI::App* report_cmd =
      app.add_subcommand("report", "Worst-case-prior report for (eps, delta)-DP");
  report_cmd->add_option("--epsilon", report.epsilon, "DP epsilon");
  report_cmd->add_option("--delta", report.delta, "DP delta");
  report_cmd->add_option("--delta-prime", report.delta_prime, "PDP delta'");
  report_cmd->add_option("--grid-size", report.grid_size,
                         "Priors i / (n + 1) for i = 1..n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  absl::StatusOr<Output> out;
  if (chosen == bounds_cmd) {
    out = RunBounds(bounds);
  } else if (chosen == convert_cmd) {
    out = RunConvert(convert);
  } else if (chosen == compose_cmd) {
    out = RunCompose(compose);
  } else if (chosen == curve_cmd) {
    out = RunCurve(curve);
  } else if (chosen == plan_cmd) {
    out = RunPlan(plan);
  } else if (chosen == mech_cmd) {
    out = RunMech(mech);
  } else {
    out = RunReport(report);
  }
  if (!out.ok()) {
    std::cerr << "dprisk " << command << ": " << out.status().message() << "\n";
    return ExitCodeFor(out.status());
  }
  std::cout << (out->text ? *out->text : Envelope(command, *out));
  return kExitOk;
}

}  // namespace
}  // namespace dprisk

int main(int argc, char** argv) { return dprisk::Main(argc, argv); }
