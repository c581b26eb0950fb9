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

// Shared helpers for the unit tests. The exact-fraction type and the dense
// helpers here do not use the library kernels they are checking.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include "densecode/linalg.hpp"
#include "densecode/rng.hpp"

namespace oracle {

struct Frac {
  std::int64_t n = 0;
  std::int64_t d = 1;

  Frac(std::int64_t num = 0, std::int64_t den = 1) : n(num), d(den) { normalize(); }
  void normalize() {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
  }
  double value() const { return static_cast<double>(n) / static_cast<double>(d); }
  friend Frac operator+(Frac a, Frac b) { return Frac(a.n * b.d + b.n * a.d, a.d * b.d); }
  friend Frac operator-(Frac a, Frac b) { return Frac(a.n * b.d - b.n * a.d, a.d * b.d); }
  friend Frac operator*(Frac a, Frac b) { return Frac(a.n * b.n, a.d * b.d); }
  friend Frac operator/(Frac a, Frac b) { return Frac(a.n * b.d, a.d * b.n); }
  friend bool operator==(Frac a, Frac b) { return a.n == b.n && a.d == b.d; }
};

using C = std::complex<double>;
using Dense = std::vector<std::vector<C>>;

inline Dense to_dense(const densecode::CMatrix& m) {
  Dense out(m.rows(), std::vector<C>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

inline Dense multiply(const Dense& a, const Dense& b) {
  Dense out(a.size(), std::vector<C>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline double max_diff(const Dense& a, const densecode::CMatrix& b) {
  double worst = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a[0].size(); ++c) worst = std::max(worst, std::abs(a[r][c] - b(r, c)));
  return worst;
}

/// Random Hermitian matrix with Gaussian entries.
inline densecode::CMatrix random_hermitian(std::size_t n, densecode::PhiloxStream& rng) {
  densecode::CMatrix h(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    h(r, r) = rng.normal();
    for (std::size_t c = r + 1; c < n; ++c) {
      h(r, c) = C(rng.normal(), rng.normal());
      h(c, r) = std::conj(h(r, c));
    }
  }
  return h;
}

/// Random normalized complex vector.
inline densecode::CVector random_vector(std::size_t n, densecode::PhiloxStream& rng) {
  densecode::CVector v(n);
  double norm = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = C(rng.normal(), rng.normal());
    norm += std::norm(v[k]);
  }
  for (std::size_t k = 0; k < n; ++k) v[k] /= std::sqrt(norm);
  return v;
}

}  // namespace oracle
