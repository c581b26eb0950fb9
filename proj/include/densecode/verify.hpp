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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "densecode/rng.hpp"
#include "densecode/tolerance.hpp"

namespace densecode {

struct CheckResult {
  std::string name;
  double defect = 0;      // worst value over the suite's samples
  double tolerance = 0;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const;
};

struct VerifyOptions {
  std::size_t d = 2;      // dimension for the identity suite
  Seed seed = 0x5EEDD0DE;
  Tolerances tol = kDefaultTolerances;
};

/// Suite identifiers accepted by the CLI:
///   appendix-b       Stinespring dilation of random channels
///   appendix-c       Kraus-pair orthogonalization
///   lemma            lifted Kraus states keep the Kraus rank
///   section-3        two-Kraus necessary identities and the uniformity witness
///   support          post-measurement support containment
///   kraus-condition  bundle invariants over random qubit spectra
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws PreconditionError for an
/// unknown name.
std::vector<SuiteReport> run_suites(std::string_view name, const VerifyOptions& options);

}  // namespace densecode
