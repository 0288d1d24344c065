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

// JSON serialization of guarantees, mechanism pairs and results.
//
// Numbers are written in nlohmann::json's shortest round-trip form (at most 17
// significant digits). Non-finite values are written as null.

#ifndef DPRISK_JSON_IO_H_
#define DPRISK_JSON_IO_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "dprisk/composition.h"
#include "dprisk/guarantees.h"
#include "dprisk/mechanisms.h"
#include "dprisk/planner.h"
#include "dprisk/risk_bounds.h"
#include "nlohmann/json.hpp"

namespace dprisk {

inline constexpr std::string_view kFormatVersion = "dprisk-output/1";

// A double, or null when it is not finite.
nlohmann::json NumberToJson(double value);

// {"type": ..., "epsilon"?, "delta"?, "rho"?}
nlohmann::json GuaranteeToJson(const PrivacyGuarantee& guarantee);
absl::StatusOr<PrivacyGuarantee> GuaranteeFromJson(const nlohmann::json& json);

// {"outcomes": [...], "prob_with": [...], "prob_without": [...]}. Outcome
// labels may be strings or numbers; numbers are kept in their JSON spelling.
nlohmann::json PairToJson(const DiscreteMechanismPair& pair);
absl::StatusOr<DiscreteMechanismPair> PairFromJson(const nlohmann::json& json);
absl::StatusOr<DiscreteMechanismPair> LoadPairFile(const std::string& path);

nlohmann::json IntervalToJson(const ProbabilityInterval& interval);
nlohmann::json SymmetricBoundToJson(const SymmetricBound& bound);
nlohmann::json CombinedToJson(const CombinedWorstCase& combined);
nlohmann::json CurvePointToJson(const RiskCurvePoint& point);

// {parameters, envelope: {ratio_upper, diff_magnitude},
//  worst_priors: {diff_increase_p, diff_decrease_p}, extrema, grid: [...]}
nlohmann::json ReportToJson(const WorstCaseReport& report);

}  // namespace dprisk

#endif  // DPRISK_JSON_IO_H_
