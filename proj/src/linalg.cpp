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

#include "densecode/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "densecode/error.hpp"

namespace densecode {
namespace {

constexpr double kOrthonormalTol = 1e-10;
constexpr double kHermitianTol = 1e-10;
constexpr double kRedrawNorm = 1e-8;
constexpr double kJacobiOffMass = 1e-14;
constexpr double kDiagonalTol = 1e-10;

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch");
  }
}

Complex complex_gaussian(PhiloxStream& rng) {
  const double re = rng.normal();
  const double im = rng.normal();
  return {re / std::numbers::sqrt2, im / std::numbers::sqrt2};
}

}  // namespace

// ---------------------------------------------------------------- CVector

CVector CVector::basis(std::size_t dim, std::size_t index) {
  CVector v(dim);
  v[index] = 1.0;
  return v;
}

double CVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& z : data_) sum += std::norm(z);
  return sum;
}

double CVector::norm() const { return std::sqrt(squared_norm()); }

CVector& CVector::operator+=(const CVector& other) {
  if (other.size() != size()) throw DimensionError("vector +: size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CVector& CVector::operator-=(const CVector& other) {
  if (other.size() != size()) throw DimensionError("vector -: size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CVector& CVector::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

CVector operator+(CVector a, const CVector& b) { return a += b; }
CVector operator-(CVector a, const CVector& b) { return a -= b; }
CVector operator*(Complex scale, CVector v) { return v *= scale; }

Complex inner(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw DimensionError("inner: size mismatch");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

// ---------------------------------------------------------------- CMatrix

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("CMatrix literal: ragged rows");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> entries) {
  CMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

CMatrix CMatrix::from_columns(std::span<const CVector> columns) {
  if (columns.empty()) return {};
  const std::size_t n = columns.front().size();
  CMatrix m(n, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

CMatrix CMatrix::outer(const CVector& u, const CVector& v) {
  CMatrix m(u.size(), v.size());
  for (std::size_t r = 0; r < u.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = u[r] * std::conj(v[c]);
  }
  return m;
}

CVector CMatrix::column(std::size_t c) const {
  CVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void CMatrix::set_column(std::size_t c, const CVector& v) {
  if (v.size() != rows_) throw DimensionError("set_column: size mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

CVector CMatrix::row(std::size_t r) const {
  CVector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
  return v;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  }
  return m;
}

Complex CMatrix::trace() const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) sum += (*this)(i, i);
  return sum;
}

double CMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& z : data_) best = std::max(best, std::abs(z));
  return best;
}

double CMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& z : data_) sum += std::norm(z);
  return std::sqrt(sum);
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  require_same_shape(*this, other, "matrix +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  require_same_shape(*this, other, "matrix -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Complex scale, CMatrix m) { return m *= scale; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix *: inner dimension mismatch");
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

CVector operator*(const CMatrix& a, const CVector& v) {
  if (a.cols() != v.size()) throw DimensionError("matrix-vector *: dimension mismatch");
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex sum = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * v[k];
    out[i] = sum;
  }
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double best = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    best = std::max(best, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return best;
}

double max_abs_diff(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw DimensionError("max_abs_diff: size mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

double unitarity_defect(const CMatrix& m) {
  if (!m.is_square()) throw DimensionError("unitarity_defect: matrix not square");
  return max_abs_diff(m.adjoint() * m, CMatrix::identity(m.rows()));
}

double hermiticity_defect(const CMatrix& h) {
  if (!h.is_square()) throw DimensionError("hermiticity_defect: matrix not square");
  return max_abs_diff(h, h.adjoint());
}

// ---------------------------------------------------------------- products

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t p = b.rows();
  const std::size_t q = b.cols();
  CMatrix out(a.rows() * p, a.cols() * q);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < p; ++k) {
        for (std::size_t l = 0; l < q; ++l) out(i * p + k, j * q + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
  }
  return out;
}

CMatrix gram(std::span<const CVector> vectors) {
  const std::size_t n = vectors.size();
  CMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (vectors[i].size() != vectors[0].size()) throw DimensionError("gram: dimension mismatch");
    for (std::size_t j = i; j < n; ++j) {
      const Complex value = inner(vectors[i], vectors[j]);
      g(i, j) = value;
      g(j, i) = std::conj(value);
    }
    g(i, i) = g(i, i).real();
  }
  return g;
}

// ---------------------------------------------------------------- completion

CMatrix complete_to_unitary(std::span<const CVector> columns, std::size_t n, Seed seed) {
  if (columns.size() > n) throw PreconditionError("complete_to_unitary: more columns than dimension");
  for (const auto& c : columns) {
    if (c.size() != n) throw DimensionError("complete_to_unitary: column dimension mismatch");
  }
  if (!columns.empty()) {
    const double defect = max_abs_diff(gram(columns), CMatrix::identity(columns.size()));
    if (defect >= kOrthonormalTol) {
      throw PreconditionError("complete_to_unitary: input columns not orthonormal (defect " +
                              std::to_string(defect) + ")");
    }
  }

  std::vector<CVector> basis(columns.begin(), columns.end());
  basis.reserve(n);
  PhiloxStream rng(seed);
  while (basis.size() < n) {
    CVector candidate(n);
    for (std::size_t i = 0; i < n; ++i) candidate[i] = complex_gaussian(rng);
    const double start_norm = candidate.norm();
    // Two MGS passes keep the result orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) candidate -= inner(q, candidate) * q;
    }
    const double remaining = candidate.norm();
    if (remaining < kRedrawNorm * start_norm) continue;
    candidate *= 1.0 / remaining;
    basis.push_back(std::move(candidate));
  }
  return CMatrix::from_columns(basis);
}

CMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, PhiloxStream& rng) {
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_gaussian(rng);
  }
  return m;
}

CMatrix random_unitary(std::size_t n, Seed seed) { return complete_to_unitary({}, n, seed); }

// ---------------------------------------------------------------- eigen

HermitianEigen hermitian_eigen(const CMatrix& h) {
  if (!h.is_square()) throw DimensionError("hermitian_eigen: matrix not square");
  const double herm_defect = hermiticity_defect(h);
  if (herm_defect >= kHermitianTol * std::max(1.0, h.max_abs())) {
    throw PreconditionError("hermitian_eigen: input not Hermitian (defect " +
                            std::to_string(herm_defect) + ")");
  }
  const std::size_t n = h.rows();
  CMatrix a = 0.5 * (h + h.adjoint());
  CMatrix v = CMatrix::identity(n);
  const double scale = std::max(1.0, a.frobenius_norm());

  auto off_mass = [&] {
    double sum = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        if (p != q) sum += std::norm(a(p, q));
      }
    }
    return std::sqrt(sum);
  };

  for (int sweep = 0; sweep < 100 && off_mass() >= kJacobiOffMass * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const Complex phase = a(p, q) / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = [[c, s e^{i phi}], [-s e^{-i phi}, c]] acting on the (p, q) plane.
        const Complex g_pq = s * phase;
        const Complex g_qp = -s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * c + akq * g_qp;
          a(k, q) = akp * g_pq + akq * c;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * c + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * c;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });
  HermitianEigen result{std::vector<double>(n), CMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    result.values[k] = a(order[k], order[k]).real();
    result.vectors.set_column(k, v.column(order[k]));
  }
  return result;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h) { return hermitian_eigen(h).values; }

CMatrix sqrt_psd_diagonal(const CMatrix& h) {
  if (!h.is_square()) throw DimensionError("sqrt_psd_diagonal: matrix not square");
  const std::size_t n = h.rows();
  CMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (r != c && std::abs(h(r, c)) > kDiagonalTol) {
        throw PreconditionError("sqrt_psd_diagonal: off-diagonal entry " + std::to_string(std::abs(h(r, c))));
      }
    }
    const Complex diag = h(r, r);
    if (std::abs(diag.imag()) > kDiagonalTol) {
      throw PreconditionError("sqrt_psd_diagonal: complex diagonal entry");
    }
    if (diag.real() < -kDiagonalTol) {
      throw PreconditionError("sqrt_psd_diagonal: negative diagonal entry " + std::to_string(diag.real()));
    }
    out(r, r) = std::sqrt(std::max(0.0, diag.real()));
  }
  return out;
}

CMatrix expm_i_hermitian(const CMatrix& h) {
  if (!h.is_square()) throw DimensionError("expm_i_hermitian: matrix not square");
  const std::size_t n = h.rows();
  const double norm = h.frobenius_norm();
  int squarings = 0;
  while (std::ldexp(norm, -squarings) > 0.25) ++squarings;
  const CMatrix scaled = Complex(0.0, std::ldexp(1.0, -squarings)) * h;

  CMatrix result = CMatrix::identity(n);
  CMatrix term = CMatrix::identity(n);
  for (int k = 1; k <= 18; ++k) {
    term = (1.0 / k) * (term * scaled);
    result += term;
    if (term.max_abs() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

CVector vectorize(const CMatrix& m) {
  return CVector(std::vector<Complex>(m.entries().begin(), m.entries().end()));
}

CMatrix projector(std::span<const CVector> orthonormal) {
  if (orthonormal.empty()) return {};
  const std::size_t n = orthonormal.front().size();
  CMatrix p(n, n);
  for (const auto& u : orthonormal) p += CMatrix::outer(u, u);
  return p;
}

std::size_t gram_rank(const CMatrix& gram_matrix, double relative_cutoff) {
  const auto values = hermitian_eigenvalues(gram_matrix);
  if (values.empty() || values.front() <= 0.0) return 0;
  const double cutoff = relative_cutoff * values.front();
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](double x) { return x > cutoff; }));
}

}  // namespace densecode
