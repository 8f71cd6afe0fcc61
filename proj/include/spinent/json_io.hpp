// Copyright 2026 The spinent authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <json.hpp>

#include "spinent/solver.hpp"

namespace spinent {

// All emitters use nlohmann::ordered_json so field order is stable and a
// canonical dump round-trips byte-identically.

// { "sigma": "1/2", "basis": "product", "amplitudes": [[re, im], ...] }
nlohmann::ordered_json state_to_json(const StateVector& state);
StateVector state_from_json(const nlohmann::json& j);

// { "sigma": "3/2", "deltas": [0.0, d1, d2, d3] }
nlohmann::ordered_json phase_shifts_to_json(const PhaseShiftVector& delta);
PhaseShiftVector phase_shifts_from_json(const nlohmann::json& j);

// { "sigma": "1", "lambda": "0",
//   "points":   [{ "deltas": [...], "residual_max": x, "nullity": 0 }, ...],
//   "families": [{ "nullity": 1, "samples": [[...], ...] }, ...] }
nlohmann::ordered_json solution_set_to_json(const SolutionSet& set);
SolutionSet solution_set_from_json(const nlohmann::json& j);

nlohmann::ordered_json paper_check_to_json(const PaperCheckReport& report);
nlohmann::ordered_json lambda_report_to_json(const LambdaIndependenceReport& report);

}  // namespace spinent
