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

#include "densecode/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "densecode/error.hpp"

namespace densecode {
namespace {

constexpr double kHypothesisTol = 1e-9;
constexpr double kCaseSplitTol = 1e-10;
constexpr double kCompletenessTol = 1e-10;

double max_sorted_gap(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double gap = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) gap = std::max(gap, std::abs(a[k] - b[k]));
  return gap;
}

}  // namespace

double ImpossibilityReport::max_defect() const {
  double worst = 0.0;
  for (const auto& [name, value] : defects) worst = std::max(worst, value);
  return worst;
}

std::vector<std::vector<double>> two_kraus_column_identity(const CMatrix& k0, const CMatrix& k1,
                                                           CompletenessCheck check) {
  const std::size_t d = k0.rows();
  if (k0.cols() != d || k1.rows() != d || k1.cols() != d) {
    throw DimensionError("two_kraus_column_identity: Kraus matrices must be square and of equal size");
  }
  const CMatrix sum = k0.adjoint() * k0 + k1.adjoint() * k1;
  std::vector<std::vector<double>> defect(d, std::vector<double>(d));
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      defect[i][j] = std::abs(sum(i, j) - (i == j ? 1.0 : 0.0));
      worst = std::max(worst, defect[i][j]);
    }
  }
  if (check == CompletenessCheck::kRequire && !(worst < kCompletenessTol)) {
    throw PreconditionError("two_kraus_column_identity: pair is not trace-preserving (defect " +
                            std::to_string(worst) + ")");
  }
  return defect;
}

ImpossibilityReport verify_necessary_identities(const SchmidtSpectrum& s, const UnitaryMessageSet& messages,
                                                const CMatrix& k0_in, const CMatrix& k1_in) {
  const std::size_t d = s.dim();
  const std::size_t n = d * d;
  if (messages.dim() != d || k0_in.rows() != d || k0_in.cols() != d || k1_in.rows() != d || k1_in.cols() != d) {
    throw DimensionError("verify_necessary_identities: dimension mismatch");
  }
  if (messages.size() != n - 2) {
    throw PreconditionError("verify_necessary_identities: need d^2 - 2 messages");
  }

  ImpossibilityReport rep;
  double inv_sum = 0.0;
  for (std::size_t j = 0; j < d; ++j) inv_sum += 1.0 / s[j];
  rep.gamma_row = inv_sum - static_cast<double>(n - 2);

  const BipartiteState psi = make_schmidt_state(s);
  CMatrix k0 = k0_in;
  CMatrix k1 = k1_in;
  double x = apply_local(k0, psi).squared_norm();
  if (x > 0.5 + kCaseSplitTol) {
    std::swap(k0, k1);
    rep.swapped = true;
    x = apply_local(k0, psi).squared_norm();
  }
  rep.x = x;
  const double y = apply_local(k1, psi).squared_norm();

  std::vector<CVector> columns;
  columns.reserve(n);
  for (const auto& u : messages.unitaries()) columns.push_back(apply_local(u, psi).coords());
  if (x > 0.0 && y > 0.0) {
    CVector phi0 = apply_local(k0, psi).coords();
    CVector phi1 = apply_local(k1, psi).coords();
    phi0 *= 1.0 / std::sqrt(x);
    phi1 *= 1.0 / std::sqrt(1.0 - x);
    columns.push_back(std::move(phi0));
    columns.push_back(std::move(phi1));
    rep.defects["hypothesis_gram"] = max_abs_diff(gram(columns), CMatrix::identity(n));
  } else {
    rep.defects["hypothesis_gram"] = 1.0;
  }
  if (!(rep.defects["hypothesis_gram"] < kHypothesisTol) || !(x > 0.0 && x < 1.0)) {
    rep.case_tag = "hypotheses-violated";
    return rep;
  }
  const CMatrix m = CMatrix::from_columns(columns);
  const bool case_i = std::abs(x - 0.5) < kCaseSplitTol;
  rep.case_tag = case_i ? "case-i" : "case-ii";

  rep.e_mat = (1.0 / std::sqrt(x)) * k0;
  rep.w_mat = (1.0 / std::sqrt(1.0 - x)) * k1;
  rep.b.assign(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) rep.b[j] += std::norm(k0(i, j));
  }

  // Column identity from trace preservation.
  double column_identity = 0.0;
  for (const auto& row : two_kraus_column_identity(k0, k1, CompletenessCheck::kSkip)) {
    for (double v : row) column_identity = std::max(column_identity, v);
  }
  rep.defects["column_identity"] = column_identity;

  const CMatrix g0 = k0.adjoint() * k0;
  const CMatrix g1 = k1.adjoint() * k1;
  double cross = 0.0;
  double col_orth = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      const double w = std::sqrt(s[i] * s[j]);
      cross = std::max(cross, std::abs(w / x * g0(i, j) + w / (1.0 - x) * g1(i, j)));
      col_orth = std::max({col_orth, std::abs(g0(i, j)), std::abs(g1(i, j))});
    }
  }
  rep.defects["cross_column"] = cross;
  if (!case_i) rep.defects["column_orthogonality"] = col_orth;

  // Row lengths of M, entry by entry and summed over i.
  double row_norm = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double acc = 0.0;
      for (const auto& u : messages.unitaries()) acc += std::norm(u(i, j));
      acc += std::norm(k0(i, j)) / x + std::norm(k1(i, j)) / (1.0 - x);
      row_norm = std::max(row_norm, std::abs(s[j] * acc - 1.0));
    }
  }
  rep.defects["row_norm"] = row_norm;
  double matrix_rows = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < n; ++c) acc += std::norm(m(r, c));
    matrix_rows = std::max(matrix_rows, std::abs(acc - 1.0));
  }
  rep.defects["m_row_length"] = matrix_rows;

  const double dd = static_cast<double>(d);
  double row_sum = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double lhs = s[j] * (static_cast<double>(n - 2) + rep.b[j] / x + (1.0 - rep.b[j]) / (1.0 - x));
    row_sum = std::max(row_sum, std::abs(lhs - dd));
  }
  rep.defects["row_sum"] = row_sum;

  const CMatrix ee = rep.e_mat * rep.e_mat.adjoint();
  const CMatrix ww = rep.w_mat * rep.w_mat.adjoint();
  rep.defects["ee_ww_gamma"] = max_abs_diff(ee + ww, rep.gamma_row * CMatrix::identity(d));

  const auto ee_eig = hermitian_eigenvalues(ee);
  const auto ww_eig = hermitian_eigenvalues(ww);
  rep.defects["polar_eigen"] =
      std::max(max_sorted_gap(ee_eig, hermitian_eigenvalues(rep.e_mat.adjoint() * rep.e_mat)),
               max_sorted_gap(ww_eig, hermitian_eigenvalues(rep.w_mat.adjoint() * rep.w_mat)));
  std::vector<double> shifted(d);
  for (std::size_t k = 0; k < d; ++k) shifted[k] = rep.gamma_row - ee_eig[k];
  rep.defects["ww_spectrum"] = max_sorted_gap(ww_eig, shifted);

  if (!case_i) {
    double b_formula = 0.0;
    double b_monotone = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double predicted =
          -x / (1.0 - 2.0 * x) + x * (1.0 - x) / (1.0 - 2.0 * x) * (dd / s[j] + 2.0 - dd * dd);
      b_formula = std::max(b_formula, std::abs(rep.b[j] - predicted));
      if (j + 1 < d) b_monotone = std::max(b_monotone, rep.b[j] - rep.b[j + 1]);
    }
    rep.defects["b_formula"] = b_formula;
    rep.defects["b_monotone"] = std::max(0.0, b_monotone);
    rep.defects["largest_w_eigen"] =
        std::abs((1.0 - rep.b[0]) / (1.0 - x) - (rep.gamma_row - rep.b[0] / x));
  } else {
    double uniform = 0.0;
    for (std::size_t j = 0; j < d; ++j) uniform = std::max(uniform, std::abs(s[j] - 1.0 / dd));
    rep.defects["case_i_uniformity"] = uniform;
  }

  rep.defects["terminal"] = std::abs(uniformity_witness(s).value - dd);
  return rep;
}

UniformityWitness uniformity_witness(const SchmidtSpectrum& s) {
  UniformityWitness out;
  for (std::size_t j = 0; j < s.dim(); ++j) {
    if (!(s[j] > 0.0)) throw PreconditionError("uniformity_witness: zero Schmidt coefficient");
    out.value += s.largest() / s[j];
  }
  out.is_uniform = std::abs(out.value - static_cast<double>(s.dim())) < 1e-10;
  return out;
}

}  // namespace densecode
