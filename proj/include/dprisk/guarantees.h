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

// Privacy guarantees and the conversions between guarantee families.
//
// All privacy-loss parameters are in nats. A guarantee is one of
//
//   PureDp(epsilon)             epsilon-DP
//   ApproxDp(epsilon, delta)    (epsilon, delta)-DP
//   Pdp(epsilon, delta)         probabilistic DP: P[-eps <= Z <= eps] >= 1-delta
//   Zcdp(rho)                   rho-zero-concentrated DP
//
// PureDp(e), ApproxDp(e, 0) and Pdp(e, 0) describe the same set of mechanisms
// and are treated as interchangeable (see Equivalent()).

#ifndef DPRISK_GUARANTEES_H_
#define DPRISK_GUARANTEES_H_

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dprisk {

struct PureDp {
  double epsilon = 0.0;

  static absl::StatusOr<PureDp> Create(double epsilon);
  friend bool operator==(const PureDp&, const PureDp&) = default;
};

struct ApproxDp {
  double epsilon = 0.0;
  double delta = 0.0;

  static absl::StatusOr<ApproxDp> Create(double epsilon, double delta);
  friend bool operator==(const ApproxDp&, const ApproxDp&) = default;
};

struct Pdp {
  double epsilon = 0.0;
  double delta = 0.0;

  static absl::StatusOr<Pdp> Create(double epsilon, double delta);
  friend bool operator==(const Pdp&, const Pdp&) = default;
};

struct Zcdp {
  double rho = 0.0;

  static absl::StatusOr<Zcdp> Create(double rho);
  friend bool operator==(const Zcdp&, const Zcdp&) = default;
};

using PrivacyGuarantee = std::variant<PureDp, ApproxDp, Pdp, Zcdp>;

enum class GuaranteeType { kPureDp, kApproxDp, kPdp, kZcdp };

GuaranteeType TypeOf(const PrivacyGuarantee& guarantee);

// "pure_dp", "approx_dp", "pdp" or "zcdp".
std::string_view GuaranteeTypeName(GuaranteeType type);
absl::StatusOr<GuaranteeType> ParseGuaranteeType(std::string_view name);

// Checks epsilon >= 0, delta in [0, 1) and rho > 0 (all finite).
absl::Status Validate(const PrivacyGuarantee& guarantee);

// True when both guarantees describe the same set of mechanisms, i.e. they are
// equal after collapsing the delta = 0 forms onto PureDp.
bool Equivalent(const PrivacyGuarantee& a, const PrivacyGuarantee& b);

// The (epsilon, delta)-DP reading of a DP-family guarantee. Returns nullopt for
// zCDP, which needs a chosen delta (see ZcdpToDp).
std::optional<ApproxDp> AsApproxDp(const PrivacyGuarantee& guarantee);

// PDP implies DP with the same parameters.
ApproxDp PdpToDp(const Pdp& guarantee);

// rho-zCDP implies (rho + 2 sqrt(rho log(1/delta)), delta)-DP for any
// delta in (0, 1).
absl::StatusOr<ApproxDp> ZcdpToDp(double rho, double delta);

// (epsilon, delta)-DP implies (epsilon', delta')-PDP for every
// delta' in (delta, 1], with
//
//   epsilon' = log(delta' e^epsilon + delta) - log(delta' - delta).
//
// epsilon' = epsilon exactly when delta = 0 and epsilon' > epsilon otherwise.
absl::StatusOr<Pdp> DpToPdp(double epsilon, double delta, double delta_prime);
absl::StatusOr<Pdp> DpToPdp(const ApproxDp& guarantee, double delta_prime);

struct PdpCurvePoint {
  double delta_prime;
  double epsilon_prime;
};

// Pointwise DpToPdp over a grid of delta' values. Fails on the first grid
// point that is not in (delta, 1].
absl::StatusOr<std::vector<PdpCurvePoint>> DpToPdpCurve(
    double epsilon, double delta, std::span<const double> delta_primes);

// log(3 e^{eps/2} - 1) - log(3 - e^{eps/2}). Defined only for
// eps < 2 log 3; nullopt otherwise.
std::optional<double> DiffTildeEpsilon(double epsilon);

// The two PDP guarantees implied by an (epsilon, delta) bound on the
// posterior-to-prior difference holding for every prior.
struct DiffBoundPdp {
  Pdp doubled_delta;          // (epsilon, 2 delta)-PDP
  std::optional<Pdp> tilde;   // (tilde epsilon, delta)-PDP, if defined
};

absl::StatusOr<DiffBoundPdp> DiffBoundToPdp(double epsilon, double delta);

// rho-zCDP to (epsilon', delta')-PDP, routing through (epsilon, delta)-DP and
// choosing the intermediate delta in (0, delta') that minimizes epsilon'.
struct OptimizedPdp {
  Pdp pdp;
  double intermediate_delta;
  double intermediate_epsilon;
};

absl::StatusOr<OptimizedPdp> ZcdpToPdpOptimized(double rho, double delta_prime);

// How a guarantee was turned into PDP.
enum class PdpProvenance {
  kIdentity,        // already PDP, or delta = 0 (confidence 1)
  kFormula,         // closed-form DP -> PDP conversion
  kOptimizedSplit,  // zCDP -> DP -> PDP with optimized intermediate delta
};

std::string_view PdpProvenanceName(PdpProvenance provenance);

struct ConvertedPdp {
  Pdp pdp;
  PdpProvenance provenance;
};

// Reduces any guarantee to the PDP form the risk bounds consume. Pure DP (and
// the delta = 0 forms) map to Pdp(epsilon, 0), holding with probability one;
// delta_prime is ignored for those and for Pdp inputs.
absl::StatusOr<ConvertedPdp> ToPdp(const PrivacyGuarantee& guarantee,
                                   double delta_prime);

}  // namespace dprisk

#endif  // DPRISK_GUARANTEES_H_
