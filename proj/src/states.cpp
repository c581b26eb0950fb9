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

#include "densecode/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "densecode/error.hpp"

namespace densecode {
namespace {

constexpr double kSumTol = 1e-12;
constexpr double kNormTol = 1e-12;
constexpr double kHermitianTol = 1e-10;

void validate_spectrum(const std::vector<double>& lambdas) {
  if (lambdas.size() < 2) throw PreconditionError("spectrum: dimension must be at least 2");
  double sum = 0.0;
  for (double x : lambdas) {
    if (!std::isfinite(x)) throw PreconditionError("spectrum: non-finite coefficient");
    if (x <= 0.0) throw PreconditionError("spectrum: all Schmidt coefficients must be nonzero");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    throw PreconditionError("spectrum: coefficients sum to " + std::to_string(sum) + ", not 1");
  }
}

void require_length(const CVector& v, std::size_t expected, const char* what) {
  if (v.size() != expected) throw DimensionError(std::string(what) + ": dimension mismatch");
}

}  // namespace

// ---------------------------------------------------------------- spectrum

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> lambdas,
                                 std::optional<std::vector<Rational>> exact)
    : lambdas_(std::move(lambdas)), exact_(std::move(exact)) {}

SchmidtSpectrum SchmidtSpectrum::from_values(std::vector<double> lambdas) {
  std::stable_sort(lambdas.begin(), lambdas.end(), std::greater<>());
  validate_spectrum(lambdas);
  return SchmidtSpectrum(std::move(lambdas));
}

SchmidtSpectrum SchmidtSpectrum::from_rationals(std::vector<Rational> lambdas) {
  std::stable_sort(lambdas.begin(), lambdas.end(),
                   [](const Rational& a, const Rational& b) { return b < a; });
  std::vector<double> values;
  values.reserve(lambdas.size());
  for (const auto& r : lambdas) values.push_back(r.to_double());
  validate_spectrum(values);
  return SchmidtSpectrum(std::move(values), std::move(lambdas));
}

SchmidtSpectrum SchmidtSpectrum::uniform(std::size_t d) {
  return from_rationals(std::vector<Rational>(d, Rational{1, static_cast<std::int64_t>(d)}));
}

SchmidtSpectrum SchmidtSpectrum::equal_tail(std::size_t d, double lambda0) {
  if (d < 2) throw PreconditionError("spectrum: dimension must be at least 2");
  std::vector<double> values(d, (1.0 - lambda0) / static_cast<double>(d - 1));
  values[0] = lambda0;
  return from_values(std::move(values));
}

std::string SchmidtSpectrum::to_string() const {
  std::ostringstream out;
  for (std::size_t j = 0; j < dim(); ++j) {
    if (j) out << ',';
    if (exact_) {
      out << (*exact_)[j].to_string();
    } else {
      out.precision(17);
      out << lambdas_[j];
    }
  }
  return out.str();
}

SchmidtSpectrum parse_spectrum(std::string_view literal) {
  std::vector<Rational> parts;
  std::size_t start = 0;
  while (start <= literal.size()) {
    const auto comma = literal.find(',', start);
    const auto piece = literal.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                              : comma - start);
    parts.push_back(Rational::parse(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return SchmidtSpectrum::from_rationals(std::move(parts));
}

// ---------------------------------------------------------------- states

BipartiteState::BipartiteState(std::size_t d, CVector coords, bool normalized)
    : d_(d), coords_(std::move(coords)), normalized_(normalized) {
  require_length(coords_, d * d, "BipartiteState");
}

BipartiteState BipartiteState::normalized(std::size_t d, CVector coords) {
  const double norm = coords.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw PreconditionError("BipartiteState: norm " + std::to_string(norm) + " is not 1");
  }
  return BipartiteState(d, std::move(coords), true);
}

BipartiteState BipartiteState::branch(std::size_t d, CVector coords) {
  const bool unit = std::abs(coords.norm() - 1.0) <= kNormTol;
  return BipartiteState(d, std::move(coords), unit);
}

BipartiteState make_schmidt_state(const SchmidtSpectrum& s) {
  const std::size_t d = s.dim();
  CVector coords(d * d);
  for (std::size_t j = 0; j < d; ++j) coords[BipartiteState::index(j, j, d)] = std::sqrt(s[j]);
  return BipartiteState::branch(d, std::move(coords));
}

SchmidtSpectrum extract_spectrum(const BipartiteState& psi) {
  std::vector<double> lambdas(psi.dim());
  for (std::size_t j = 0; j < psi.dim(); ++j) lambdas[j] = std::norm(psi.amplitude(j, j));
  return SchmidtSpectrum::from_values(std::move(lambdas));
}

CMatrix local_operator(const CMatrix& a) {
  if (!a.is_square()) throw DimensionError("local_operator: operator not square");
  return kron(CMatrix::identity(a.rows()), a);
}

BipartiteState apply_local(const CMatrix& a, const BipartiteState& psi) {
  const std::size_t d = psi.dim();
  if (a.rows() != d || a.cols() != d) throw DimensionError("apply_local: operator dimension mismatch");
  // Block j (Bob index) of the coordinates is the d-vector psi(., j); a acts on each block.
  CVector out(d * d);
  for (std::size_t bob = 0; bob < d; ++bob) {
    for (std::size_t i = 0; i < d; ++i) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < d; ++k) sum += a(i, k) * psi.amplitude(k, bob);
      out[BipartiteState::index(i, bob, d)] = sum;
    }
  }
  return BipartiteState::branch(d, std::move(out));
}

CMatrix partial_trace_ancilla(const CMatrix& rho, std::size_t ancilla_dim) {
  if (!rho.is_square()) throw DimensionError("partial_trace_ancilla: operator not square");
  if (ancilla_dim == 0 || rho.rows() % ancilla_dim != 0) {
    throw DimensionError("partial_trace_ancilla: dimension not divisible by ancilla dimension");
  }
  const double defect = hermiticity_defect(rho);
  if (defect > kHermitianTol * std::max(1.0, rho.max_abs())) {
    throw PreconditionError("partial_trace_ancilla: operator not Hermitian");
  }
  const std::size_t n = rho.rows() / ancilla_dim;
  CMatrix out(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Complex sum = 0.0;
      for (std::size_t r = 0; r < ancilla_dim; ++r) sum += rho(a * ancilla_dim + r, b * ancilla_dim + r);
      out(a, b) = sum;
    }
  }
  return out;
}

CVector attach_ancilla(const BipartiteState& psi, std::size_t ancilla_dim) {
  return kron(psi.coords(), CVector::basis(ancilla_dim, 0));
}

CMatrix lift_to_aba(const CMatrix& u_aa, std::size_t d) {
  if (!u_aa.is_square() || u_aa.rows() % d != 0) throw DimensionError("lift_to_aba: shape mismatch");
  return kron(CMatrix::identity(d), u_aa);
}

SchmidtSpectrum random_spectrum(std::size_t d, PhiloxStream& rng, double floor) {
  std::vector<double> w(d);
  double total = 0.0;
  for (auto& v : w) {
    v = floor + rng.uniform();
    total += v;
  }
  for (auto& v : w) v /= total;
  return SchmidtSpectrum::from_values(std::move(w));
}

}  // namespace densecode
