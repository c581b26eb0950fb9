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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "densecode/linalg.hpp"
#include "densecode/rng.hpp"
#include "densecode/states.hpp"
#include "densecode/tolerance.hpp"

namespace densecode {

/// A quantum operation on Alice's qudit in operator-sum form. Each Kraus
/// matrix acts on the joint state as K (x) I_B.
///
/// Construction accepts trace-preserving and sub-normalized collections
/// (largest eigenvalue of sum K^dagger K at most 1 + 1e-10).
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<CMatrix> kraus);

  std::size_t dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return kraus_.size(); }
  const CMatrix& operator[](std::size_t j) const { return kraus_[j]; }
  std::span<const CMatrix> kraus() const noexcept { return kraus_; }

  /// sum_j K_j^dagger K_j
  CMatrix completeness() const;
  /// ||sum_j K_j^dagger K_j - I||_max
  double completeness_defect() const;
  bool is_trace_preserving(double tol = kDefaultTolerances.orthonormality) const {
    return completeness_defect() < tol;
  }

 private:
  std::size_t d_ = 0;
  std::vector<CMatrix> kraus_;
};

/// Random trace-preserving channel: an isometry C^d -> C^d (x) C^N sliced into
/// N Kraus matrices.
QuantumChannel random_channel(std::size_t d, std::size_t num_kraus, Seed seed);

/// sum_j (K_j (x) I) rho (K_j (x) I)^dagger for rho on the d^2-dimensional AB space.
CMatrix apply_channel(const QuantumChannel& ch, const CMatrix& rho);

/// Dimension of span{K_j} measured through the Gram matrix of vectorized
/// Kraus matrices (eigenvalues below `relative_cutoff * largest` are zero).
std::size_t kraus_rank(const QuantumChannel& ch, double relative_cutoff = kDefaultTolerances.rank);

/// (K_j (x) I)|psi> for every Kraus matrix.
std::vector<BipartiteState> lifted_kraus_states(const QuantumChannel& ch, const BipartiteState& psi);

struct DilationResult {
  CMatrix u_tilde;           // dN x dN, index i*N + r on A (x) a
  std::size_t ancilla_dim;   // N
};

/// Unitary on A (x) a whose ancilla-input-0 columns stack the Kraus matrices:
/// u_tilde(i*N + r, j*N) = K_r(i, j). The remaining columns come from
/// complete_to_unitary with the given seed.
DilationResult dilation_unitary(const QuantumChannel& ch, Seed seed);

/// u_tilde applied to |psi>|0>_a, in the ABa ordering of attach_ancilla.
CVector dilated_state(const DilationResult& dilation, const BipartiteState& psi);

struct OrthogonalizationResult {
  CMatrix v;        // 2x2 unitary mixing matrix
  Complex z;        // selected root, z = e^{i xi} tan(theta)
  double theta = 0;
  double xi = 0;    // phase difference mu - nu, with mu fixed to 0
  /// Both roots of -<phi1|phi0> z^2 + (<phi0|phi0> - <phi1|phi1>) z + <phi0|phi1> = 0
  /// (equal to 0 when the lifted states start out orthogonal).
  std::array<Complex, 2> roots{};
  std::array<double, 2> residuals{};
};

struct OrthogonalizedPair {
  OrthogonalizationResult params;
  CMatrix r0;
  CMatrix r1;
};

/// Re-mixes a trace-preserving Kraus pair by a 2x2 unitary so the lifted
/// states (R0 (x) I)|psi> and (R1 (x) I)|psi> become orthogonal. The
/// smaller-modulus root of the quadratic is used (ties: smaller argument).
OrthogonalizedPair orthogonalize_kraus_pair(const CMatrix& k0, const CMatrix& k1,
                                            const BipartiteState& psi);

/// Quadratic from the lifted-state overlaps; returns -<phi1|phi0> z^2 + b z + <phi0|phi1>.
Complex kraus_pair_quadratic(const BipartiteState& phi0, const BipartiteState& phi1, Complex z);

struct OutcomeSupport {
  double probability = 0;   // trace of the unnormalized post-measurement AB operator
  double residual = 0;      // weight of the normalized post-measurement state outside the reference support
  std::size_t rank = 0;     // rank of the post-measurement AB operator
  CMatrix projector;        // onto the post-measurement support
};

struct SupportContainmentReport {
  CMatrix reference_projector;     // onto supp(apply_channel(ch, |psi><psi|))
  std::size_t reference_rank = 0;
  std::vector<OutcomeSupport> outcomes;
  double max_residual = 0;
  bool pass = false;
};

/// Checks that measuring the ancilla after the dilation never produces an
/// AB state with support outside that of the unmeasured channel output.
SupportContainmentReport support_containment_check(const QuantumChannel& ch, const BipartiteState& psi,
                                                   std::span<const CMatrix> measurement, Seed seed,
                                                   const Tolerances& tol = kDefaultTolerances);

/// Orthonormal basis of the support of a PSD operator (eigenvalues above
/// `relative_cutoff * trace`).
std::vector<CVector> support_basis(const CMatrix& rho, double relative_cutoff);

}  // namespace densecode
