// Copyright 2026 The densecode Authors
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

#include <string>
#include <vector>

#include "json.hpp"

#include "densecode/analysis.hpp"
#include "densecode/channels.hpp"
#include "densecode/encoding.hpp"
#include "densecode/protocol.hpp"
#include "densecode/states.hpp"
#include "densecode/tolerance.hpp"

namespace densecode {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "densecode/1";

/// Rounds to 15 significant digits, the precision used for probabilities.
/// Magnitudes below 1e-15 are floating-point residue and become 0.
double round_probability(double p);

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);
Json vector_to_json(const CVector& v);

/// Exact rational strings when the spectrum was built from rationals,
/// decimals otherwise.
Json spectrum_to_json(const SchmidtSpectrum& s);
Json tolerances_to_json(const Tolerances& tol);
std::string seed_to_string(Seed seed);

Json bundle_to_json(const ProtocolBundle& bundle, const Tolerances& tol);
Json distribution_to_json(const OutcomeDistribution& dist);
Json simulation_to_json(const SimulationReport& report);
Json message_set_to_json(const UnitaryMessageSet& set, const SchmidtSpectrum& s, Seed seed);
/// Reads the "unitaries" array written by message_set_to_json.
UnitaryMessageSet message_set_from_json(const Json& j);
Json impossibility_to_json(const ImpossibilityReport& report);
Json support_to_json(const SupportContainmentReport& report);

struct BoundsRow {
  std::size_t d = 0;
  double lambda0 = 0;
  double p1_exact = 0;
  double p1_bound_general = 0;
  double p1_bound_equal_tail = 0;
};

/// Header "d,lambda0,p1_exact,p1_bound_general,p1_bound_equal_tail".
std::string bounds_to_csv(const std::vector<BoundsRow>& rows);
/// Header "outcome,count" with one row per decoder outcome plus
/// "undetected" and "aborted".
std::string simulation_to_csv(const SimulationReport& report);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace densecode
