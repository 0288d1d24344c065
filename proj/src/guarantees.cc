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

#include "dprisk/guarantees.h"

#include <cmath>
#include <string>

#include "absl/strings/str_format.h"
#include "dprisk/numeric.h"

namespace dprisk {
namespace {

// Width of the log(delta) window searched below delta'. e^-80 is far below
// any delta where the zCDP epsilon could still be competitive.
constexpr double kLogDeltaSearchWidth = 80.0;
constexpr int kSplitScanPoints = 400;
constexpr double kSplitLogTolerance = 1e-10;

absl::Status CheckEpsilon(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("epsilon must be finite and >= 0, got %g", epsilon));
  }
  return absl::OkStatus();
}

absl::Status CheckDelta(double delta) {
  if (!(delta >= 0 && delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must be in [0, 1), got %g", delta));
  }
  return absl::OkStatus();
}

absl::Status CheckRho(double rho) {
  if (!std::isfinite(rho) || rho <= 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("rho must be finite and > 0, got %g", rho));
  }
  return absl::OkStatus();
}

// DP -> PDP without argument checks. Written as
// eps + log1p(delta (1 + e^-eps) / (delta' - delta)) so neither e^eps nor the
// difference of two nearly equal logs is ever formed.
double DpToPdpEpsilon(double epsilon, double delta, double delta_prime) {
  if (delta == 0) return epsilon;
  return epsilon +
         std::log1p(delta * (1.0 + std::exp(-epsilon)) / (delta_prime - delta));
}

}  // namespace

absl::StatusOr<PureDp> PureDp::Create(double epsilon) {
  if (absl::Status s = CheckEpsilon(epsilon); !s.ok()) return s;
  return PureDp{epsilon};
}

absl::StatusOr<ApproxDp> ApproxDp::Create(double epsilon, double delta) {
  if (absl::Status s = CheckEpsilon(epsilon); !s.ok()) return s;
  if (absl::Status s = CheckDelta(delta); !s.ok()) return s;
  return ApproxDp{epsilon, delta};
}

absl::StatusOr<Pdp> Pdp::Create(double epsilon, double delta) {
  if (absl::Status s = CheckEpsilon(epsilon); !s.ok()) return s;
  if (absl::Status s = CheckDelta(delta); !s.ok()) return s;
  return Pdp{epsilon, delta};
}

absl::StatusOr<Zcdp> Zcdp::Create(double rho) {
  if (absl::Status s = CheckRho(rho); !s.ok()) return s;
  return Zcdp{rho};
}

GuaranteeType TypeOf(const PrivacyGuarantee& guarantee) {
  return static_cast<GuaranteeType>(guarantee.index());
}

std::string_view GuaranteeTypeName(GuaranteeType type) {
  switch (type) {
    case GuaranteeType::kPureDp:
      return "pure_dp";
    case GuaranteeType::kApproxDp:
      return "approx_dp";
    case GuaranteeType::kPdp:
      return "pdp";
    case GuaranteeType::kZcdp:
      return "zcdp";
  }
  return "unknown";
}

absl::StatusOr<GuaranteeType> ParseGuaranteeType(std::string_view name) {
  for (GuaranteeType t : {GuaranteeType::kPureDp, GuaranteeType::kApproxDp,
                          GuaranteeType::kPdp, GuaranteeType::kZcdp}) {
    if (GuaranteeTypeName(t) == name) return t;
  }
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown guarantee type '%s'", std::string(name)));
}

absl::Status Validate(const PrivacyGuarantee& guarantee) {
  return std::visit(
      [](const auto& g) -> absl::Status {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PureDp>) {
          return PureDp::Create(g.epsilon).status();
        } else if constexpr (std::is_same_v<T, ApproxDp>) {
          return ApproxDp::Create(g.epsilon, g.delta).status();
        } else if constexpr (std::is_same_v<T, Pdp>) {
          return Pdp::Create(g.epsilon, g.delta).status();
        } else {
          return Zcdp::Create(g.rho).status();
        }
      },
      guarantee);
}

namespace {

PrivacyGuarantee Normalize(const PrivacyGuarantee& g) {
  if (const auto* a = std::get_if<ApproxDp>(&g); a && a->delta == 0) {
    return PureDp{a->epsilon};
  }
  if (const auto* p = std::get_if<Pdp>(&g); p && p->delta == 0) {
    return PureDp{p->epsilon};
  }
  return g;
}

}  // namespace

bool Equivalent(const PrivacyGuarantee& a, const PrivacyGuarantee& b) {
  return Normalize(a) == Normalize(b);
}

std::optional<ApproxDp> AsApproxDp(const PrivacyGuarantee& guarantee) {
  if (const auto* p = std::get_if<PureDp>(&guarantee)) {
    return ApproxDp{p->epsilon, 0.0};
  }
  if (const auto* a = std::get_if<ApproxDp>(&guarantee)) return *a;
  if (const auto* p = std::get_if<Pdp>(&guarantee)) return PdpToDp(*p);
  return std::nullopt;
}

ApproxDp PdpToDp(const Pdp& guarantee) {
  return ApproxDp{guarantee.epsilon, guarantee.delta};
}

absl::StatusOr<ApproxDp> ZcdpToDp(double rho, double delta) {
  if (absl::Status s = CheckRho(rho); !s.ok()) return s;
  if (!(delta > 0 && delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("zCDP conversion needs delta in (0, 1), got %g", delta));
  }
  return ApproxDp{rho + 2.0 * std::sqrt(rho * -std::log(delta)), delta};
}

absl::StatusOr<Pdp> DpToPdp(double epsilon, double delta, double delta_prime) {
  if (absl::Status s = CheckEpsilon(epsilon); !s.ok()) return s;
  if (absl::Status s = CheckDelta(delta); !s.ok()) return s;
  if (!(delta_prime > delta && delta_prime <= 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "delta' must be in (delta, 1] = (%g, 1], got %g", delta, delta_prime));
  }
  return Pdp{DpToPdpEpsilon(epsilon, delta, delta_prime), delta_prime};
}

absl::StatusOr<Pdp> DpToPdp(const ApproxDp& guarantee, double delta_prime) {
  return DpToPdp(guarantee.epsilon, guarantee.delta, delta_prime);
}

absl::StatusOr<std::vector<PdpCurvePoint>> DpToPdpCurve(
    double epsilon, double delta, std::span<const double> delta_primes) {
  std::vector<PdpCurvePoint> curve;
  curve.reserve(delta_primes.size());
  for (double delta_prime : delta_primes) {
    absl::StatusOr<Pdp> pdp = DpToPdp(epsilon, delta, delta_prime);
    if (!pdp.ok()) return pdp.status();
    curve.push_back({delta_prime, pdp->epsilon});
  }
  return curve;
}

std::optional<double> DiffTildeEpsilon(double epsilon) {
  const double half = std::exp(epsilon / 2.0);
  const double denominator = 3.0 - half;
  if (!(denominator > 0)) return std::nullopt;
  // log(3h - 1) - log(3 - h) = log1p(4 (h - 1) / (3 - h)); exact at eps = 0.
  return std::log1p(4.0 * std::expm1(epsilon / 2.0) / denominator);
}

absl::StatusOr<DiffBoundPdp> DiffBoundToPdp(double epsilon, double delta) {
  if (absl::Status s = CheckEpsilon(epsilon); !s.ok()) return s;
  if (absl::Status s = CheckDelta(delta); !s.ok()) return s;
  DiffBoundPdp result;
  result.doubled_delta = Pdp{epsilon, 2.0 * delta};
  if (std::optional<double> tilde = DiffTildeEpsilon(epsilon)) {
    result.tilde = Pdp{*tilde, delta};
  }
  return result;
}

absl::StatusOr<OptimizedPdp> ZcdpToPdpOptimized(double rho,
                                                double delta_prime) {
  if (absl::Status s = CheckRho(rho); !s.ok()) return s;
  if (!(delta_prime > 0 && delta_prime < 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta' must be in (0, 1), got %g", delta_prime));
  }
  const double log_delta_prime = std::log(delta_prime);
  auto epsilon_prime_at = [&](double log_delta) {
    const double delta = std::exp(log_delta);
    if (!(delta < delta_prime)) return kInfinity;
    const double epsilon = rho + 2.0 * std::sqrt(rho * -log_delta);
    return DpToPdpEpsilon(epsilon, delta, delta_prime);
  };
  // The upper end stays strictly below delta' where epsilon' diverges.
  const ScalarMinimum best = ScanThenGoldenSection(
      epsilon_prime_at, log_delta_prime - kLogDeltaSearchWidth,
      log_delta_prime + std::log1p(-1e-9), kSplitScanPoints,
      kSplitLogTolerance);
  const double delta = std::exp(best.argmin);
  return OptimizedPdp{Pdp{best.value, delta_prime}, delta,
                      rho + 2.0 * std::sqrt(rho * -best.argmin)};
}

std::string_view PdpProvenanceName(PdpProvenance provenance) {
  switch (provenance) {
    case PdpProvenance::kIdentity:
      return "identity";
    case PdpProvenance::kFormula:
      return "formula";
    case PdpProvenance::kOptimizedSplit:
      return "optimized-split";
  }
  return "unknown";
}

absl::StatusOr<ConvertedPdp> ToPdp(const PrivacyGuarantee& guarantee,
                                   double delta_prime) {
  if (absl::Status s = Validate(guarantee); !s.ok()) return s;
  if (const auto* z = std::get_if<Zcdp>(&guarantee)) {
    absl::StatusOr<OptimizedPdp> opt = ZcdpToPdpOptimized(z->rho, delta_prime);
    if (!opt.ok()) return opt.status();
    return ConvertedPdp{opt->pdp, PdpProvenance::kOptimizedSplit};
  }
  if (const auto* p = std::get_if<Pdp>(&guarantee)) {
    return ConvertedPdp{*p, PdpProvenance::kIdentity};
  }
  const ApproxDp dp = *AsApproxDp(guarantee);
  if (dp.delta == 0) {
    return ConvertedPdp{Pdp{dp.epsilon, 0.0}, PdpProvenance::kIdentity};
  }
  absl::StatusOr<Pdp> pdp = DpToPdp(dp, delta_prime);
  if (!pdp.ok()) return pdp.status();
  return ConvertedPdp{*pdp, PdpProvenance::kFormula};
}

}  // namespace dprisk
