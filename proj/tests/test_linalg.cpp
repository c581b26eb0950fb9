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

#include <cmath>
#include <numbers>

#include "doctest.h"

#include "densecode/error.hpp"
#include "densecode/linalg.hpp"
#include "oracles.hpp"

#ifdef DENSECODE_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace densecode;

namespace {

const CMatrix kX{{0.0, 1.0}, {1.0, 0.0}};
const CMatrix kZ{{1.0, 0.0}, {0.0, -1.0}};

#ifdef DENSECODE_HAVE_EIGEN
Eigen::MatrixXcd to_eigen(const CMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return e;
}
#endif

}  // namespace

TEST_CASE("kron uses first-factor-slow layout") {
  const CVector e0 = CVector::basis(4, 0);
  const CVector out = kron(kX, CMatrix::identity(2)) * e0;
  CHECK(max_abs_diff(out, CVector::basis(4, 2)) == 0.0);

  PhiloxStream rng(3);
  const CMatrix a = random_gaussian_matrix(2, 3, rng);
  const CMatrix b = random_gaussian_matrix(3, 2, rng);
  const CMatrix k = kron(a, b);
  REQUIRE(k.rows() == 6);
  REQUIRE(k.cols() == 6);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 2; ++q) CHECK(k(i * 3 + p, j * 2 + q) == a(i, j) * b(p, q));
}

TEST_CASE("matrix products agree with a naive oracle") {
  PhiloxStream rng(5);
  const CMatrix a = random_gaussian_matrix(4, 3, rng);
  const CMatrix b = random_gaussian_matrix(3, 5, rng);
  CHECK(oracle::max_diff(oracle::multiply(oracle::to_dense(a), oracle::to_dense(b)), a * b) < 1e-14);
  CHECK_THROWS_AS(b * a * a, DimensionError);
}

TEST_CASE("inner product is conjugate-linear in the first slot") {
  const CVector a{Complex(0.0, 1.0), 0.0};
  const CVector b{1.0, 0.0};
  CHECK(inner(a, b) == Complex(0.0, -1.0));
  CHECK(inner(b, a) == Complex(0.0, 1.0));
}

TEST_CASE("complete_to_unitary extends an orthonormal set") {
  const double h = 1.0 / std::numbers::sqrt2;
  std::vector<CVector> cols{CVector{h, 0.0, 0.0, h}, CVector{0.0, h, h, 0.0}};
  const CMatrix u = complete_to_unitary(cols, 4, 99);
  CHECK(unitarity_defect(u) < 1e-14);
  CHECK(max_abs_diff(u.column(0), cols[0]) == 0.0);
  CHECK(max_abs_diff(u.column(1), cols[1]) == 0.0);
  CHECK(max_abs_diff(u, complete_to_unitary(cols, 4, 99)) == 0.0);

  SUBCASE("rejects bad input") {
    std::vector<CVector> skew{CVector{1.0, 0.0}, CVector{1.0, 1.0}};
    CHECK_THROWS_AS(complete_to_unitary(skew, 2, 1), PreconditionError);
    std::vector<CVector> many{CVector::basis(2, 0), CVector::basis(2, 1), CVector::basis(2, 0)};
    CHECK_THROWS(complete_to_unitary(many, 2, 1));
  }
  SUBCASE("random unitaries of several sizes") {
    for (std::size_t n = 1; n <= 9; ++n) CHECK(unitarity_defect(random_unitary(n, n)) < 1e-13);
  }
}

TEST_CASE("hermitian eigensolver") {
  PhiloxStream rng(17);
  for (std::size_t n = 1; n <= 9; ++n) {
    const CMatrix hm = oracle::random_hermitian(n, rng);
    const HermitianEigen eig = hermitian_eigen(hm);
    REQUIRE(eig.values.size() == n);
    for (std::size_t k = 0; k + 1 < n; ++k) CHECK(eig.values[k] >= eig.values[k + 1]);
    CHECK(unitarity_defect(eig.vectors) < 1e-12);
    for (std::size_t k = 0; k < n; ++k) {
      const CVector v = eig.vectors.column(k);
      CHECK(max_abs_diff(hm * v, Complex(eig.values[k]) * v) < 1e-11);
    }
#ifdef DENSECODE_HAVE_EIGEN
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(to_eigen(hm));
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(eig.values[k] - ref.eigenvalues()(static_cast<Eigen::Index>(n - 1 - k))) < 1e-11);
    }
#endif
  }
  CHECK_THROWS_AS(hermitian_eigen(CMatrix{{0.0, 1.0}, {0.0, 0.0}}), PreconditionError);
}

TEST_CASE("degenerate spectra still give orthonormal eigenvectors") {
  const CMatrix u = random_unitary(4, 8);
  const std::vector<double> diag{2.0, 2.0, -1.0, -1.0};
  const CMatrix hm = u * CMatrix::diagonal(diag) * u.adjoint();
  const HermitianEigen eig = hermitian_eigen(hm);
  CHECK(unitarity_defect(eig.vectors) < 1e-12);
  CHECK(eig.values[0] == doctest::Approx(2.0));
  CHECK(eig.values[3] == doctest::Approx(-1.0));
}

TEST_CASE("exponential of i times a Hermitian matrix") {
  PhiloxStream rng(23);
  for (double scale : {1e-6, 0.3, 1.0, 25.0}) {
    for (std::size_t n : {1u, 2u, 3u, 5u}) {
      const CMatrix hm = Complex(scale) * oracle::random_hermitian(n, rng);
      const CMatrix u = expm_i_hermitian(hm);
      CHECK(unitarity_defect(u) < 1e-12);
      // Oracle: V exp(i Lambda) V^dagger from the eigendecomposition.
      const HermitianEigen eig = hermitian_eigen(hm);
      CMatrix phase(n, n);
      for (std::size_t k = 0; k < n; ++k) phase(k, k) = std::exp(Complex(0.0, eig.values[k]));
      CHECK(max_abs_diff(u, eig.vectors * phase * eig.vectors.adjoint()) < 1e-10 * std::max(1.0, scale));
#ifdef DENSECODE_HAVE_EIGEN
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(to_eigen(hm));
      const Eigen::VectorXcd ph = (Complex(0.0, 1.0) * ref.eigenvalues().cast<Complex>()).array().exp();
      const Eigen::MatrixXcd expect = ref.eigenvectors() * ph.asDiagonal() * ref.eigenvectors().adjoint();
      double worst = 0.0;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          worst = std::max(worst, std::abs(expect(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) - u(r, c)));
      CHECK(worst < 1e-10 * std::max(1.0, scale));
#endif
    }
  }
  const double t = 0.7;
  const CMatrix rot = expm_i_hermitian(Complex(t) * kX);
  CHECK(std::abs(rot(0, 0) - std::cos(t)) < 1e-15);
  CHECK(std::abs(rot(0, 1) - Complex(0.0, std::sin(t))) < 1e-15);
}

TEST_CASE("square root of a diagonal PSD matrix") {
  const std::vector<double> d{4.0, 0.0, 9.0};
  const CMatrix r = sqrt_psd_diagonal(CMatrix::diagonal(d));
  CHECK(r(0, 0) == Complex(2.0));
  CHECK(r(1, 1) == Complex(0.0));
  CHECK(r(2, 2) == Complex(3.0));
  const std::vector<double> tiny{1.0, -1e-12};
  CHECK(sqrt_psd_diagonal(CMatrix::diagonal(tiny))(1, 1) == Complex(0.0));
  const std::vector<double> neg{1.0, -0.1};
  CHECK_THROWS_AS(sqrt_psd_diagonal(CMatrix::diagonal(neg)), PreconditionError);
  CHECK_THROWS_AS(sqrt_psd_diagonal(CMatrix{{1.0, 0.5}, {0.5, 1.0}}), PreconditionError);
}

TEST_CASE("vectorize, projector and gram_rank") {
  const CMatrix m{{1.0, 2.0}, {3.0, 4.0}};
  const CVector v = vectorize(m);
  CHECK(v[1] == Complex(2.0));
  CHECK(v[2] == Complex(3.0));

  const std::vector<CVector> basis{CVector::basis(3, 0), CVector::basis(3, 2)};
  const CMatrix p = projector(basis);
  CHECK(max_abs_diff(p * p, p) < 1e-15);
  CHECK(p.trace() == Complex(2.0));

  std::vector<CVector> vecs{CVector{1.0, 0.0, 0.0}, CVector{0.0, 1.0, 0.0}, CVector{1.0, 1.0, 0.0}};
  CHECK(gram_rank(gram(vecs), 1e-9) == 2);
}

TEST_CASE("defect helpers") {
  CHECK(unitarity_defect(kX * kZ) < 1e-16);
  CHECK(unitarity_defect(Complex(2.0) * kX) == doctest::Approx(3.0));
  CHECK(hermiticity_defect(kX) == 0.0);
  CHECK(hermiticity_defect(CMatrix{{0.0, 1.0}, {0.0, 0.0}}) == doctest::Approx(1.0));
}
