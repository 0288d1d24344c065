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

// Python bindings: dprisk._core.
//
// Invalid arguments raise ValueError; infeasible requests raise
// dprisk.InfeasibleError (a ValueError subclass).

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dprisk/composition.h"
#include "dprisk/guarantees.h"
#include "dprisk/json_io.h"
#include "dprisk/mechanisms.h"
#include "dprisk/planner.h"
#include "dprisk/risk_bounds.h"

namespace py = pybind11;

namespace dprisk {
namespace {

PyObject* infeasible_error = nullptr;

[[noreturn]] void Raise(const absl::Status& status) {
  const std::string message(status.message());
  if (status.code() == absl::StatusCode::kFailedPrecondition) {
    PyErr_SetString(infeasible_error, message.c_str());
    throw py::error_already_set();
  }
  throw py::value_error(message);
}

template <typename T>
T Unwrap(absl::StatusOr<T> result) {
  if (!result.ok()) Raise(result.status());
  return *std::move(result);
}

py::object FromJson(const nlohmann::json& value) {
  return py::module_::import("json").attr("loads")(value.dump());
}

std::pair<double, double> Pair(const ApproxDp& g) { return {g.epsilon, g.delta}; }

World ParseWorld(const std::string& name) {
  if (name == "with") return World::kWith;
  if (name == "without") return World::kWithout;
  throw py::value_error("world must be 'with' or 'without'");
}

PrivacyGuarantee PerRelease(std::optional<double> epsilon, double delta,
                            std::optional<double> rho) {
  if (rho) return Unwrap(Zcdp::Create(*rho));
  if (!epsilon) throw py::value_error("give epsilon or rho");
  if (delta > 0) return Unwrap(ApproxDp::Create(*epsilon, delta));
  return Unwrap(PureDp::Create(*epsilon));
}

}  // namespace
}  // namespace dprisk

PYBIND11_MODULE(_core, m) {
  using namespace dprisk;
  m.doc() = "Disclosure-risk bounds for differential privacy guarantees";

  static py::exception<std::runtime_error> infeasible(m, "InfeasibleError",
                                                      PyExc_ValueError);
  infeasible_error = infeasible.ptr();

  // Conversions.
  m.def("zcdp_to_dp", [](double rho, double delta) {
    return Pair(Unwrap(ZcdpToDp(rho, delta)));
  }, py::arg("rho"), py::arg("delta"));
  m.def("dp_to_pdp", [](double epsilon, double delta, double delta_prime) {
    return Unwrap(DpToPdp(epsilon, delta, delta_prime)).epsilon;
  }, py::arg("epsilon"), py::arg("delta"), py::arg("delta_prime"));
  m.def("pdp_to_dp", [](double epsilon, double delta) {
    return Pair(PdpToDp(Unwrap(Pdp::Create(epsilon, delta))));
  }, py::arg("epsilon"), py::arg("delta"));
  m.def("zcdp_to_pdp_optimized", [](double rho, double delta_prime) {
    const OptimizedPdp opt = Unwrap(ZcdpToPdpOptimized(rho, delta_prime));
    py::dict out;
    out["epsilon_prime"] = opt.pdp.epsilon;
    out["intermediate_epsilon"] = opt.intermediate_epsilon;
    out["intermediate_delta"] = opt.intermediate_delta;
    return out;
  }, py::arg("rho"), py::arg("delta_prime"));
  m.def("diff_tilde_epsilon", &DiffTildeEpsilon, py::arg("epsilon"));

  // Risk bounds.
  m.def("posterior_interval", [](double eps, double delta_prime, double prior) {
    const ProbabilityInterval i = Unwrap(PosteriorInterval(eps, delta_prime, prior));
    return std::make_tuple(i.lower, i.upper, i.confidence);
  }, py::arg("epsilon_prime"), py::arg("delta_prime"), py::arg("prior"));
  m.def("ratio_interval", [](double eps, double delta_prime) {
    const SymmetricBound b = Unwrap(RatioInterval(eps, delta_prime));
    return std::make_pair(b.lower(), b.upper());
  }, py::arg("epsilon_prime"), py::arg("delta_prime"));
  m.def("diff_interval", [](double eps, double delta_prime) {
    const SymmetricBound b = Unwrap(DiffInterval(eps, delta_prime));
    return std::make_pair(b.lower(), b.upper());
  }, py::arg("epsilon_prime"), py::arg("delta_prime"));
  m.def("worst_case_priors_diff", [](double eps) {
    const WorstCasePriors p = Unwrap(WorstCasePriorsDiff(eps));
    return std::make_pair(p.max_increase, p.max_decrease);
  }, py::arg("epsilon_prime"));
  m.def("combined_worst_case", [](double eps, double delta_prime, double prior) {
    return FromJson(CombinedToJson(
        Unwrap(CombinedWorstCaseBounds(eps, delta_prime, prior))));
  }, py::arg("epsilon_prime"), py::arg("delta_prime"), py::arg("prior"));
  m.def("epsilon_for_diff", [](double d) { return Unwrap(EpsilonForDiff(d)); },
        py::arg("difference"));
  m.def("epsilon_for_ratio", [](double r) { return Unwrap(EpsilonForRatio(r)); },
        py::arg("ratio"));
  m.def("epsilon_for_posterior", [](double threshold, double prior) {
    return Unwrap(EpsilonForPosterior(threshold, prior));
  }, py::arg("threshold"), py::arg("prior"));

  // Composition.
  m.def("compose_basic", [](const std::vector<std::pair<double, double>>& gs) {
    std::vector<ApproxDp> copies;
    for (const auto& [eps, delta] : gs) {
      copies.push_back(Unwrap(ApproxDp::Create(eps, delta)));
    }
    return Pair(Unwrap(ComposeBasic(copies)));
  }, py::arg("guarantees"));
  m.def("compose_advanced", [](double eps, double delta, int k, double total_delta) {
    return Pair(Unwrap(ComposeAdvanced(eps, delta, k, total_delta)));
  }, py::arg("epsilon"), py::arg("delta"), py::arg("k"), py::arg("total_delta"));
  m.def("optimal_frontier", [](double eps, double delta, int k) {
    std::vector<std::tuple<int, double, double>> out;
    for (const FrontierPoint& p : Unwrap(OptimalFrontier(eps, delta, k))) {
      out.emplace_back(p.ell, p.epsilon, p.delta);
    }
    return out;
  }, py::arg("epsilon"), py::arg("delta"), py::arg("k"));
  m.def("select_frontier_point", [](double eps, double delta, int k, double target) {
    const FrontierPoint p = Unwrap(SelectFrontierPoint(eps, delta, k, target));
    return std::make_tuple(p.ell, p.epsilon, p.delta);
  }, py::arg("epsilon"), py::arg("delta"), py::arg("k"), py::arg("target_delta"));
  m.def("risk_curve",
        [](const std::string& method, int k_max, double delta_prime,
           const std::string& criterion, std::optional<double> prior,
           std::optional<double> eps_per, double delta_per,
           std::optional<double> rho_per) {
          RiskCurveOptions options;
          options.per_release = PerRelease(eps_per, delta_per, rho_per);
          options.method = Unwrap(ParseCompositionMethod(method));
          options.k_max = k_max;
          options.delta_prime = delta_prime;
          options.criterion = Unwrap(ParseRiskCriterion(criterion));
          options.prior = prior;
          py::list out;
          for (const RiskCurvePoint& p : Unwrap(RiskCurve(options))) {
            out.append(FromJson(CurvePointToJson(p)));
          }
          return out;
        },
        py::arg("method"), py::arg("k_max"), py::arg("delta_prime"),
        py::arg("criterion"), py::arg("prior") = py::none(),
        py::arg("eps_per") = py::none(), py::arg("delta_per") = 0.0,
        py::arg("rho_per") = py::none());

  // Planner.
  m.def("max_total_epsilon",
        [](const std::string& criterion, double threshold, double delta_prime,
           double total_delta, std::optional<double> prior) {
          const RiskProfile profile{Unwrap(ParseRiskCriterion(criterion)),
                                    threshold, delta_prime, prior};
          return Unwrap(MaxTotalEpsilon(profile, total_delta));
        },
        py::arg("criterion"), py::arg("threshold"), py::arg("delta_prime"),
        py::arg("total_delta"), py::arg("prior") = py::none());
  m.def("per_release_epsilon",
        [](int k, double per_release_delta, double total_delta,
           const std::string& method, double epsilon_total) {
          const ReleaseSchedule schedule{k, per_release_delta, total_delta,
                                         Unwrap(ParseCompositionMethod(method))};
          return Unwrap(PerReleaseEpsilon(schedule, epsilon_total));
        },
        py::arg("k"), py::arg("per_release_delta"), py::arg("total_delta"),
        py::arg("method"), py::arg("epsilon_total"));
  m.def("worst_case_report", [](double eps, double delta, double delta_prime) {
    return FromJson(ReportToJson(Unwrap(MakeWorstCaseReport(eps, delta, delta_prime))));
  }, py::arg("epsilon"), py::arg("delta"), py::arg("delta_prime"));

  // Finite mechanisms.
  py::class_<DiscreteMechanismPair>(m, "MechanismPair")
      .def(py::init([](std::vector<std::string> outcomes,
                       std::vector<double> prob_with,
                       std::vector<double> prob_without) {
             return Unwrap(DiscreteMechanismPair::Create(
                 std::move(outcomes), std::move(prob_with),
                 std::move(prob_without)));
           }),
           py::arg("outcomes"), py::arg("prob_with"), py::arg("prob_without"))
      .def_static("randomized_response",
                  [](double eps, int k) {
                    return Unwrap(ComposedRandomizedResponse(eps, k));
                  },
                  py::arg("epsilon"), py::arg("k") = 1)
      .def_static("diff_gap_counterexample",
                  [](double eps, double delta) {
                    return Unwrap(DiffGapCounterexample(eps, delta));
                  },
                  py::arg("epsilon"), py::arg("delta"))
      .def_static("load", [](const std::string& path) {
        return Unwrap(LoadPairFile(path));
      }, py::arg("path"))
      .def_property_readonly("outcomes", &DiscreteMechanismPair::outcomes)
      .def_property_readonly("prob_with", &DiscreteMechanismPair::prob_with)
      .def_property_readonly("prob_without", &DiscreteMechanismPair::prob_without)
      .def("__len__", &DiscreteMechanismPair::size)
      .def("swapped", &DiscreteMechanismPair::Swapped)
      .def("plrv", [](const DiscreteMechanismPair& pair, const std::string& world) {
        std::vector<std::pair<double, double>> atoms;
        for (const PlrvAtom& a : Plrv(pair, ParseWorld(world)).atoms) {
          atoms.emplace_back(a.z, a.probability);
        }
        return atoms;
      }, py::arg("world") = "with")
      .def("posterior", [](const DiscreteMechanismPair& pair, double prior,
                           const std::string& world) {
        std::vector<std::pair<double, double>> atoms;
        for (const PosteriorAtom& a :
             Unwrap(Posterior(pair, prior, ParseWorld(world))).atoms) {
          atoms.emplace_back(a.posterior, a.probability);
        }
        return atoms;
      }, py::arg("prior"), py::arg("world") = "with")
      .def("tight_delta", [](const DiscreteMechanismPair& pair, double eps) {
        return Unwrap(TightDelta(pair, eps));
      }, py::arg("epsilon"))
      .def("tight_delta_tail_form", [](const DiscreteMechanismPair& pair, double eps) {
        return Unwrap(TightDeltaTailForm(pair, eps));
      }, py::arg("epsilon"))
      .def("pdp_holds", [](const DiscreteMechanismPair& pair, double eps,
                           double delta) {
        return Unwrap(PdpHolds(pair, eps, delta));
      }, py::arg("epsilon"), py::arg("delta"))
      .def("to_json", [](const DiscreteMechanismPair& pair) {
        return FromJson(PairToJson(pair));
      });

  m.attr("FORMAT_VERSION") = std::string(kFormatVersion);
}
