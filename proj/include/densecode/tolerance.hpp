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

namespace densecode {

// Every numerical threshold used by the library lives here.
struct Tolerances {
  // Orthonormality of supplied columns, unitarity defects.
  double orthonormality = 1e-10;
  // Equality assertions between two computed quantities.
  double equality = 1e-12;
  // Protocol-bundle invariants and Kraus conditions.
  double invariant = 1e-10;
  // Gram-defect threshold for perfect distinguishability.
  double certificate = 1e-9;
  // Post-measurement support leakage.
  double support = 1e-9;
  // Relative eigenvalue cutoff for ranks (Kraus rank, Gram rank).
  double rank = 1e-9;
  // Relative eigenvalue cutoff (times trace) selecting a support basis.
  double support_eigenvalue = 1e-10;
  // Hermiticity check on inputs to eigen solvers and partial traces.
  double hermitian = 1e-10;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace densecode
