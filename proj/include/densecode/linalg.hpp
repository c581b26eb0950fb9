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

// Small dense complex linear algebra sized for qudit dimensions up to 16
// (joint spaces up to a few hundred). Everything is row-major, double
// precision, and value-semantic.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "densecode/rng.hpp"

namespace densecode {

using Complex = std::complex<double>;

class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim) : data_(dim) {}
  CVector(std::initializer_list<Complex> entries) : data_(entries) {}
  explicit CVector(std::vector<Complex> entries) : data_(std::move(entries)) {}

  static CVector basis(std::size_t dim, std::size_t index);

  std::size_t size() const noexcept { return data_.size(); }
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }
  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  double norm() const;
  double squared_norm() const;

  CVector& operator+=(const CVector& other);
  CVector& operator-=(const CVector& other);
  CVector& operator*=(Complex scale);

  bool operator==(const CVector&) const = default;

 private:
  std::vector<Complex> data_;
};

CVector operator+(CVector a, const CVector& b);
CVector operator-(CVector a, const CVector& b);
CVector operator*(Complex scale, CVector v);

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const CVector& a, const CVector& b);

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Row-by-row literal, e.g. CMatrix{{1, 0}, {0, 1}}.
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
  static CMatrix diagonal(std::span<const double> entries);
  static CMatrix from_columns(std::span<const CVector> columns);
  /// |u><v|
  static CMatrix outer(const CVector& u, const CVector& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Complex> entries() const noexcept { return data_; }

  CVector column(std::size_t c) const;
  void set_column(std::size_t c, const CVector& v);
  CVector row(std::size_t r) const;

  CMatrix adjoint() const;
  Complex trace() const;
  /// Largest entry magnitude.
  double max_abs() const;
  double frobenius_norm() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex scale);

  bool operator==(const CMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(Complex scale, CMatrix m);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CVector operator*(const CMatrix& a, const CVector& v);

/// Max-entry distance between two equally shaped matrices.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const CVector& a, const CVector& b);

/// ||M^dagger M - I||_max
double unitarity_defect(const CMatrix& m);
/// ||H - H^dagger||_max
double hermiticity_defect(const CMatrix& h);

/// Standard Kronecker product: entry (i*p + k, j*q + l) = a(i,j) * b(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

/// Matrix of inner products <v_i|v_j>.
CMatrix gram(std::span<const CVector> vectors);

/// Extends orthonormal columns of dimension n to an n x n unitary. The
/// supplied columns are copied unchanged into the leading positions; the
/// rest are seeded complex-Gaussian draws orthogonalized by modified
/// Gram-Schmidt against every earlier column.
CMatrix complete_to_unitary(std::span<const CVector> columns, std::size_t n, Seed seed);

struct HermitianEigen {
  std::vector<double> values;  // descending
  CMatrix vectors;             // column k belongs to values[k]
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
HermitianEigen hermitian_eigen(const CMatrix& h);
std::vector<double> hermitian_eigenvalues(const CMatrix& h);

/// Square root of a diagonal positive semidefinite matrix. Diagonal entries
/// in [-1e-10, 0) are clamped to zero.
CMatrix sqrt_psd_diagonal(const CMatrix& h);

/// exp(iH) for Hermitian H by scaling and squaring a truncated Taylor series.
CMatrix expm_i_hermitian(const CMatrix& h);

/// Row-major flattening of a matrix (used for Frobenius inner products).
CVector vectorize(const CMatrix& m);

/// Hermitian projector onto the span of orthonormal vectors.
CMatrix projector(std::span<const CVector> orthonormal);

/// Numerical rank of a Gram (Hermitian PSD) matrix: eigenvalues above
/// `relative_cutoff * max eigenvalue` count.
std::size_t gram_rank(const CMatrix& gram_matrix, double relative_cutoff);

/// Haar-like random unitary built from a seeded Gaussian matrix.
CMatrix random_unitary(std::size_t n, Seed seed);
/// Matrix with independent standard complex-Gaussian entries.
CMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, PhiloxStream& rng);

}  // namespace densecode
