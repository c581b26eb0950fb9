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
#include <string>
#include <string_view>
#include <vector>

#include "densecode/linalg.hpp"
#include "densecode/rng.hpp"
#include "densecode/rational.hpp"

namespace densecode {

/// Squared Schmidt coefficients lambda_0 >= ... >= lambda_{d-1} > 0 summing to 1.
class SchmidtSpectrum {
 public:
  /// Accepts any order; sorts descending (stable) and validates.
  static SchmidtSpectrum from_values(std::vector<double> lambdas);
  static SchmidtSpectrum from_rationals(std::vector<Rational> lambdas);
  /// The maximally entangled spectrum, lambda_j = 1/d.
  static SchmidtSpectrum uniform(std::size_t d);
  /// lambda_0 given, the remaining d-1 coefficients equal.
  static SchmidtSpectrum equal_tail(std::size_t d, double lambda0);

  std::size_t dim() const noexcept { return lambdas_.size(); }
  double operator[](std::size_t j) const { return lambdas_[j]; }
  double largest() const { return lambdas_.front(); }
  double smallest() const { return lambdas_.back(); }
  std::span<const double> values() const noexcept { return lambdas_; }
  /// Exact values when the spectrum was built from rationals.
  const std::optional<std::vector<Rational>>& exact() const noexcept { return exact_; }

  /// Comma-separated literal; rationals when exact values are known.
  std::string to_string() const;

 private:
  explicit SchmidtSpectrum(std::vector<double> lambdas,
                           std::optional<std::vector<Rational>> exact = std::nullopt);

  std::vector<double> lambdas_;
  std::optional<std::vector<Rational>> exact_;
};

/// Parses "81/160,79/160" or "0.6,0.4".
SchmidtSpectrum parse_spectrum(std::string_view literal);

/// Full-support random spectrum: weights floor + U(0,1), normalized.
SchmidtSpectrum random_spectrum(std::size_t d, PhiloxStream& rng, double floor = 0.05);

/// Coordinates of a two-qudit vector in the basis
/// (|00>, |10>, ..., |d-1,0>, |01>, ..., |d-1,d-1>): the Alice index i runs
/// fastest, so |ij> sits at position j*d + i.
class BipartiteState {
 public:
  /// Unit-norm state; throws if ||coords|| differs from 1 by more than 1e-12.
  static BipartiteState normalized(std::size_t d, CVector coords);
  /// Unnormalized branch state such as (K (x) I)|Psi>.
  static BipartiteState branch(std::size_t d, CVector coords);

  static constexpr std::size_t index(std::size_t alice, std::size_t bob, std::size_t d) {
    return bob * d + alice;
  }

  std::size_t dim() const noexcept { return d_; }
  bool is_normalized() const noexcept { return normalized_; }
  const CVector& coords() const noexcept { return coords_; }
  Complex amplitude(std::size_t alice, std::size_t bob) const { return coords_[index(alice, bob, d_)]; }
  double squared_norm() const { return coords_.squared_norm(); }
  CMatrix density() const { return CMatrix::outer(coords_, coords_); }

 private:
  BipartiteState(std::size_t d, CVector coords, bool normalized);

  std::size_t d_;
  CVector coords_;
  bool normalized_;
};

BipartiteState make_schmidt_state(const SchmidtSpectrum& s);

/// Reads lambda_j = |<jj|psi>|^2 back out of a Schmidt-form state.
SchmidtSpectrum extract_spectrum(const BipartiteState& psi);

/// Matrix of (a (x) I_B) in the basis ordering above, i.e. kron(I_d, a).
CMatrix local_operator(const CMatrix& a);

/// (a (x) I_B)|psi>, no renormalization.
BipartiteState apply_local(const CMatrix& a, const BipartiteState& psi);

/// Traces out a trailing N-level ancilla from an operator on (AB) (x) a,
/// where joint index = ab * N + r.
CMatrix partial_trace_ancilla(const CMatrix& rho, std::size_t ancilla_dim);

/// |psi> (x) |0>_a as a vector of dimension d^2 N.
CVector attach_ancilla(const BipartiteState& psi, std::size_t ancilla_dim);

/// Lifts a unitary on A (x) a (index i*N + r) to the ABa ordering
/// (index (j_B*d + i_A)*N + r), i.e. kron(I_B, u).
CMatrix lift_to_aba(const CMatrix& u_aa, std::size_t d);

}  // namespace densecode
