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
#include <map>
#include <string>
#include <vector>

#include "densecode/channels.hpp"
#include "densecode/encoding.hpp"
#include "densecode/linalg.hpp"
#include "densecode/states.hpp"

namespace densecode {

/// Numerical record of the identities that a (d^2 - 2)-message unitary code
/// plus an orthogonal two-Kraus final message would have to satisfy.
struct ImpossibilityReport {
  double x = 0;                 // <phi0|phi0>, after relabeling so that x <= 1/2
  bool swapped = false;         // K0 and K1 were exchanged to get x <= 1/2
  std::vector<double> b;        // b_j = sum_i |K0(i, j)|^2
  CMatrix e_mat;                // K0 / sqrt(x)
  CMatrix w_mat;                // K1 / sqrt(1 - x)
  std::map<std::string, double> defects;
  double gamma_row = 0;         // sum_j 1/lambda_j - (d^2 - 2)
  std::string case_tag;         // "case-i", "case-ii" or "hypotheses-violated"

  bool hypotheses_hold() const { return case_tag != "hypotheses-violated"; }
  double max_defect() const;
};

enum class CompletenessCheck { kRequire, kSkip };

/// defect(i, j) = |<col_i K0|col_j K0> + <col_i K1|col_j K1> - delta_ij|.
/// With kSkip, non-trace-preserving pairs are accepted and the matrix shows
/// the completeness deficit.
std::vector<std::vector<double>> two_kraus_column_identity(const CMatrix& k0, const CMatrix& k1,
                                                           CompletenessCheck check = CompletenessCheck::kRequire);

/// Gram check of {U_n psi, phi0/sqrt(x), phi1/sqrt(1-x)} at 1e-9, then every
/// derived identity as a defect. A failed Gram check yields case_tag
/// "hypotheses-violated" with only the "hypothesis_gram" defect filled in.
/// Inputs are not orthogonalized here; see orthogonalize_kraus_pair.
ImpossibilityReport verify_necessary_identities(const SchmidtSpectrum& s, const UnitaryMessageSet& messages,
                                                const CMatrix& k0, const CMatrix& k1);

struct UniformityWitness {
  double value = 0;     // sum_j lambda_0 / lambda_j
  bool is_uniform = false;
};

UniformityWitness uniformity_witness(const SchmidtSpectrum& s);

}  // namespace densecode
