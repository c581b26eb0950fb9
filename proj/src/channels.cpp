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

#include "densecode/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "densecode/error.hpp"

namespace densecode {
namespace {

constexpr double kSubNormalizedSlack = 1e-10;
constexpr double kSchmidtTol = 1e-12;
constexpr double kOrthogonalOverlap = 1e-14;
constexpr double kRootTieTol = 1e-12;
constexpr double kProbabilityFloor = 1e-14;

void require_schmidt_form(const BipartiteState& psi) {
  const std::size_t d = psi.dim();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double mag = std::abs(psi.amplitude(i, j));
      if (i != j && mag > kSchmidtTol) {
        throw PreconditionError("state is not in Schmidt form");
      }
      if (i == j && mag * mag <= kSchmidtTol) {
        throw PreconditionError("zero Schmidt coefficient detected at index " + std::to_string(j));
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- channel

QuantumChannel::QuantumChannel(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw PreconditionError("QuantumChannel: no Kraus matrices");
  d_ = kraus_.front().rows();
  for (const auto& k : kraus_) {
    if (k.rows() != d_ || k.cols() != d_) throw DimensionError("QuantumChannel: Kraus shape mismatch");
  }
  const double top = hermitian_eigenvalues(completeness()).front();
  if (top > 1.0 + kSubNormalizedSlack) {
    throw PreconditionError("QuantumChannel: sum K^dagger K exceeds the identity (max eigenvalue " +
                            std::to_string(top) + ")");
  }
}

CMatrix QuantumChannel::completeness() const {
  CMatrix sum(d_, d_);
  for (const auto& k : kraus_) sum += k.adjoint() * k;
  return sum;
}

double QuantumChannel::completeness_defect() const {
  return max_abs_diff(completeness(), CMatrix::identity(d_));
}

QuantumChannel random_channel(std::size_t d, std::size_t num_kraus, Seed seed) {
  const CMatrix u = random_unitary(d * num_kraus, seed);
  std::vector<CMatrix> kraus(num_kraus, CMatrix(d, d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t r = 0; r < num_kraus; ++r) {
      for (std::size_t j = 0; j < d; ++j) kraus[r](i, j) = u(i * num_kraus + r, j);
    }
  }
  return QuantumChannel(std::move(kraus));
}

CMatrix apply_channel(const QuantumChannel& ch, const CMatrix& rho) {
  const std::size_t n = ch.dim() * ch.dim();
  if (rho.rows() != n || rho.cols() != n) throw DimensionError("apply_channel: density dimension mismatch");
  CMatrix out(n, n);
  for (const auto& k : ch.kraus()) {
    const CMatrix lifted = local_operator(k);
    out += lifted * rho * lifted.adjoint();
  }
  return out;
}

std::size_t kraus_rank(const QuantumChannel& ch, double relative_cutoff) {
  std::vector<CVector> flat;
  flat.reserve(ch.size());
  for (const auto& k : ch.kraus()) flat.push_back(vectorize(k));
  const std::size_t rank = gram_rank(gram(flat), relative_cutoff);
  if (rank == 0) throw PreconditionError("kraus_rank: every Kraus matrix is zero");
  return rank;
}

std::vector<BipartiteState> lifted_kraus_states(const QuantumChannel& ch, const BipartiteState& psi) {
  if (psi.dim() != ch.dim()) throw DimensionError("lifted_kraus_states: dimension mismatch");
  require_schmidt_form(psi);
  std::vector<BipartiteState> out;
  out.reserve(ch.size());
  for (const auto& k : ch.kraus()) out.push_back(apply_local(k, psi));
  return out;
}

// ---------------------------------------------------------------- dilation

DilationResult dilation_unitary(const QuantumChannel& ch, Seed seed) {
  const double defect = ch.completeness_defect();
  if (defect >= kDefaultTolerances.orthonormality) {
    throw PreconditionError("dilation_unitary: channel not trace preserving (defect " +
                            std::to_string(defect) + ")");
  }
  const std::size_t d = ch.dim();
  const std::size_t n_anc = ch.size();
  const std::size_t n = d * n_anc;

  std::vector<CVector> stacked(d, CVector(n));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t r = 0; r < n_anc; ++r) stacked[j][i * n_anc + r] = ch[r](i, j);
    }
  }
  const CMatrix completed = complete_to_unitary(stacked, n, seed);

  // Completed column j (< d) goes to position j*N; the rest fill the gaps in order.
  CMatrix u(n, n);
  std::size_t next_extra = d;
  for (std::size_t col = 0; col < n; ++col) {
    if (col % n_anc == 0) {
      u.set_column(col, completed.column(col / n_anc));
    } else {
      u.set_column(col, completed.column(next_extra++));
    }
  }
  return {std::move(u), n_anc};
}

CVector dilated_state(const DilationResult& dilation, const BipartiteState& psi) {
  const std::size_t d = psi.dim();
  const std::size_t n_anc = dilation.ancilla_dim;
  const std::size_t block = d * n_anc;
  if (dilation.u_tilde.rows() != block) throw DimensionError("dilated_state: dimension mismatch");
  CVector out(d * block);
  for (std::size_t bob = 0; bob < d; ++bob) {
    // Input block for this Bob index is sum_i psi(i, bob) |i>|0>_a.
    for (std::size_t row = 0; row < block; ++row) {
      Complex sum = 0.0;
      for (std::size_t i = 0; i < d; ++i) sum += dilation.u_tilde(row, i * n_anc) * psi.amplitude(i, bob);
      out[bob * block + row] = sum;
    }
  }
  return out;
}

// ---------------------------------------------------------------- Kraus-pair orthogonalization

Complex kraus_pair_quadratic(const BipartiteState& phi0, const BipartiteState& phi1, Complex z) {
  const Complex overlap = inner(phi0.coords(), phi1.coords());
  const Complex a = -std::conj(overlap);
  const Complex b = phi0.squared_norm() - phi1.squared_norm();
  return a * z * z + b * z + overlap;
}

OrthogonalizedPair orthogonalize_kraus_pair(const CMatrix& k0, const CMatrix& k1, const BipartiteState& psi) {
  const std::size_t d = psi.dim();
  if (k0.rows() != d || k0.cols() != d || k1.rows() != d || k1.cols() != d) {
    throw DimensionError("orthogonalize_kraus_pair: dimension mismatch");
  }
  const double tp_defect = max_abs_diff(k0.adjoint() * k0 + k1.adjoint() * k1, CMatrix::identity(d));
  if (tp_defect >= kDefaultTolerances.orthonormality) {
    throw PreconditionError("orthogonalize_kraus_pair: pair not trace preserving (defect " +
                            std::to_string(tp_defect) + ")");
  }
  const QuantumChannel pair({k0, k1});
  if (kraus_rank(pair) < 2) throw PreconditionError("orthogonalize_kraus_pair: Kraus matrices are dependent");

  const auto lifted = lifted_kraus_states(pair, psi);
  const BipartiteState& phi0 = lifted[0];
  const BipartiteState& phi1 = lifted[1];
  const Complex c = inner(phi0.coords(), phi1.coords());

  OrthogonalizationResult params;
  if (std::abs(c) <= kOrthogonalOverlap) {
    params.v = CMatrix::identity(2);
    params.z = 0.0;
    params.residuals = {std::abs(c), std::abs(c)};
    return {std::move(params), k0, k1};
  }

  const Complex a = -std::conj(c);
  const Complex b = phi0.squared_norm() - phi1.squared_norm();
  const Complex disc = std::sqrt(b * b - 4.0 * a * c);
  // Pick the sign that avoids cancellation, then use Vieta for the other root.
  const Complex q = -0.5 * (std::real(std::conj(b) * disc) >= 0.0 ? b + disc : b - disc);
  if (q == Complex{}) throw DenseCodeError("orthogonalize_kraus_pair: degenerate quadratic");
  params.roots = {q / a, c / q};
  for (std::size_t k = 0; k < 2; ++k) params.residuals[k] = std::abs(kraus_pair_quadratic(phi0, phi1, params.roots[k]));

  const double m0 = std::abs(params.roots[0]);
  const double m1 = std::abs(params.roots[1]);
  std::size_t pick = m0 <= m1 ? 0 : 1;
  if (std::abs(m0 - m1) <= kRootTieTol * std::max(m0, m1)) {
    pick = std::arg(params.roots[0]) <= std::arg(params.roots[1]) ? 0 : 1;
  }
  params.z = params.roots[pick];
  params.theta = std::atan(std::abs(params.z));
  params.xi = std::arg(params.z);

  const double cs = std::cos(params.theta);
  const double sn = std::sin(params.theta);
  const Complex phase = std::polar(1.0, params.xi);
  params.v = CMatrix{{cs, -std::conj(phase) * sn}, {phase * sn, cs}};

  CMatrix r0 = params.v(0, 0) * k0 + params.v(0, 1) * k1;
  CMatrix r1 = params.v(1, 0) * k0 + params.v(1, 1) * k1;
  return {std::move(params), std::move(r0), std::move(r1)};
}

// ---------------------------------------------------------------- support containment

std::vector<CVector> support_basis(const CMatrix& rho, double relative_cutoff) {
  const auto eig = hermitian_eigen(rho);
  const double cutoff = relative_cutoff * std::abs(rho.trace().real());
  std::vector<CVector> basis;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k] > cutoff) basis.push_back(eig.vectors.column(k));
  }
  return basis;
}

SupportContainmentReport support_containment_check(const QuantumChannel& ch, const BipartiteState& psi,
                                                   std::span<const CMatrix> measurement, Seed seed,
                                                   const Tolerances& tol) {
  const std::size_t n_anc = ch.size();
  const std::size_t n_ab = psi.dim() * psi.dim();
  if (measurement.empty()) throw PreconditionError("support_containment_check: empty measurement");
  CMatrix completeness(n_anc, n_anc);
  for (const auto& m : measurement) {
    if (m.rows() != n_anc || m.cols() != n_anc) {
      throw DimensionError("support_containment_check: measurement operator shape mismatch");
    }
    completeness += m.adjoint() * m;
  }
  const double defect = max_abs_diff(completeness, CMatrix::identity(n_anc));
  if (defect >= tol.orthonormality) {
    throw PreconditionError("support_containment_check: measurement set incomplete (defect " +
                            std::to_string(defect) + ")");
  }

  const CVector joint = dilated_state(dilation_unitary(ch, seed), psi);
  const CMatrix reference = apply_channel(ch, psi.density());

  SupportContainmentReport report;
  const auto reference_basis = support_basis(reference, tol.support_eigenvalue);
  report.reference_rank = reference_basis.size();
  report.reference_projector = projector(reference_basis);
  const CMatrix complement = CMatrix::identity(n_ab) - report.reference_projector;

  for (const auto& m : measurement) {
    // (I_AB (x) M_y) applied to the joint state, ancilla index fastest.
    CVector post(joint.size());
    for (std::size_t ab = 0; ab < n_ab; ++ab) {
      for (std::size_t r = 0; r < n_anc; ++r) {
        Complex sum = 0.0;
        for (std::size_t s = 0; s < n_anc; ++s) sum += m(r, s) * joint[ab * n_anc + s];
        post[ab * n_anc + r] = sum;
      }
    }
    CMatrix rho_ab(n_ab, n_ab);
    for (std::size_t a = 0; a < n_ab; ++a) {
      for (std::size_t b = 0; b < n_ab; ++b) {
        Complex sum = 0.0;
        for (std::size_t r = 0; r < n_anc; ++r) sum += post[a * n_anc + r] * std::conj(post[b * n_anc + r]);
        rho_ab(a, b) = sum;
      }
    }
    OutcomeSupport outcome;
    outcome.probability = rho_ab.trace().real();
    if (outcome.probability > kProbabilityFloor) {
      outcome.residual = std::abs((complement * rho_ab).trace().real()) / outcome.probability;
      const auto basis = support_basis(rho_ab, tol.support_eigenvalue);
      outcome.rank = basis.size();
      outcome.projector = projector(basis);
    } else {
      outcome.projector = CMatrix(n_ab, n_ab);
    }
    report.max_residual = std::max(report.max_residual, outcome.residual);
    report.outcomes.push_back(std::move(outcome));
  }
  report.pass = report.max_residual < tol.support;
  return report;
}

}  // namespace densecode
