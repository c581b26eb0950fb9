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
#include <optional>
#include <span>
#include <vector>

#include "densecode/linalg.hpp"
#include "densecode/rng.hpp"
#include "densecode/states.hpp"
#include "densecode/tolerance.hpp"

namespace densecode {

/// Encoding unitaries U^(n) acting on Alice's qudit.
class UnitaryMessageSet {
 public:
  /// Throws PreconditionError unless every element is d x d and unitary
  /// within `tol`.
  explicit UnitaryMessageSet(std::vector<CMatrix> unitaries,
                             double tol = kDefaultTolerances.orthonormality);

  std::size_t dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return unitaries_.size(); }
  const CMatrix& operator[](std::size_t n) const { return unitaries_[n]; }
  std::span<const CMatrix> unitaries() const noexcept { return unitaries_; }

 private:
  std::size_t d_ = 0;
  std::vector<CMatrix> unitaries_;
};

struct DistinguishabilityCertificate {
  CMatrix gram;          // Gram matrix of the lifted message states
  double gram_defect = 0;  // max(|G_ij| off the diagonal, |G_ii - 1|)
  bool pass = false;
};

DistinguishabilityCertificate certify_distinguishable(const UnitaryMessageSet& set, const BipartiteState& psi,
                                                      double tol = kDefaultTolerances.certificate);

/// lambda_0 <= d / L (with 1e-12 slack).
bool capacity_bound_check(const SchmidtSpectrum& s, std::size_t num_messages);

/// The d^2 generalized Pauli operators X^a Z^b, listed with a running
/// fastest: element b*d + a is X^a Z^b.
UnitaryMessageSet weyl_set(std::size_t d);

// ---------------------------------------------------------------- search

/// Hermitian d x d matrix from d^2 reals: diagonal entries first, then
/// (Re, Im) of each upper-triangular entry in row-major order.
CMatrix hermitian_from_params(std::span<const double> params, std::size_t d);

/// Sum over pairs i < j of |<psi_i|psi_j>|^2 for psi_n = (U_n (x) I)|psi>.
double message_objective(std::span<const CMatrix> unitaries, const BipartiteState& psi);

/// Gradient of message_objective with respect to the local chart
/// U_n -> exp(i H(x_n)) U_n at x = 0; d^2 entries per unitary, concatenated.
std::vector<double> message_objective_gradient(std::span<const CMatrix> unitaries, const BipartiteState& psi);

struct SearchOptions {
  std::size_t max_restarts = 20;
  std::size_t max_steps = 4000;   // per restart
  double tolerance = kDefaultTolerances.certificate;
};

struct SearchResult {
  std::optional<UnitaryMessageSet> set;  // present on success
  double best_defect = 0;               // certificate defect of the best candidate
  std::size_t restarts_used = 0;
  Seed seed = 0;
};

/// Gradient descent for `count` unitaries whose lifted states are
/// orthonormal on make_schmidt_state(s). The first unitary is pinned to I.
/// Deterministic given the seed; failure is reported (set empty), not thrown.
SearchResult search_message_set(const SchmidtSpectrum& s, std::size_t count, Seed seed,
                                const SearchOptions& options = {});

}  // namespace densecode
