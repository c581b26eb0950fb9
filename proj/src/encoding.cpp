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

#include "densecode/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "densecode/error.hpp"

namespace densecode {

UnitaryMessageSet::UnitaryMessageSet(std::vector<CMatrix> unitaries, double tol)
    : unitaries_(std::move(unitaries)) {
  if (unitaries_.empty()) throw PreconditionError("UnitaryMessageSet: empty set");
  d_ = unitaries_.front().rows();
  for (std::size_t n = 0; n < unitaries_.size(); ++n) {
    const auto& u = unitaries_[n];
    if (u.rows() != d_ || u.cols() != d_) throw DimensionError("UnitaryMessageSet: shape mismatch");
    const double defect = unitarity_defect(u);
    if (defect >= tol) {
      throw PreconditionError("UnitaryMessageSet: element " + std::to_string(n) +
                              " is not unitary (defect " + std::to_string(defect) + ")");
    }
  }
}

namespace {

std::vector<CVector> lifted_coords(std::span<const CMatrix> unitaries, const BipartiteState& psi) {
  std::vector<CVector> out;
  out.reserve(unitaries.size());
  for (const auto& u : unitaries) out.push_back(apply_local(u, psi).coords());
  return out;
}

double gram_defect(const CMatrix& g) {
  double defect = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const double term = i == j ? std::abs(g(i, j) - 1.0) : std::abs(g(i, j));
      defect = std::max(defect, term);
    }
  }
  return defect;
}

}  // namespace

DistinguishabilityCertificate certify_distinguishable(const UnitaryMessageSet& set, const BipartiteState& psi,
                                                      double tol) {
  if (set.dim() != psi.dim()) throw DimensionError("certify_distinguishable: dimension mismatch");
  DistinguishabilityCertificate cert;
  cert.gram = gram(lifted_coords(set.unitaries(), psi));
  cert.gram_defect = gram_defect(cert.gram);
  cert.pass = cert.gram_defect < tol;
  return cert;
}

bool capacity_bound_check(const SchmidtSpectrum& s, std::size_t num_messages) {
  if (num_messages == 0) return true;
  return s.largest() <= static_cast<double>(s.dim()) / static_cast<double>(num_messages) + 1e-12;
}

UnitaryMessageSet weyl_set(std::size_t d) {
  if (d < 2) throw PreconditionError("weyl_set: dimension must be at least 2");
  CMatrix shift(d, d);
  CMatrix clock(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    shift((j + 1) % d, j) = 1.0;
    clock(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d));
  }
  // Exact roots of unity for the obvious cases keep the d = 2 set real.
  if (d == 2) clock(1, 1) = -1.0;
  std::vector<CMatrix> powers_x{CMatrix::identity(d)};
  std::vector<CMatrix> powers_z{CMatrix::identity(d)};
  for (std::size_t k = 1; k < d; ++k) {
    powers_x.push_back(shift * powers_x.back());
    powers_z.push_back(clock * powers_z.back());
  }
  std::vector<CMatrix> elements;
  elements.reserve(d * d);
  for (std::size_t b = 0; b < d; ++b) {
    for (std::size_t a = 0; a < d; ++a) elements.push_back(powers_x[a] * powers_z[b]);
  }
  return UnitaryMessageSet(std::move(elements));
}

// ---------------------------------------------------------------- search

CMatrix hermitian_from_params(std::span<const double> params, std::size_t d) {
  if (params.size() != d * d) throw DimensionError("hermitian_from_params: need d^2 parameters");
  CMatrix h(d, d);
  std::size_t p = 0;
  for (std::size_t j = 0; j < d; ++j) h(j, j) = params[p++];
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t l = j + 1; l < d; ++l) {
      const Complex z(params[p], params[p + 1]);
      p += 2;
      h(j, l) = z;
      h(l, j) = std::conj(z);
    }
  }
  return h;
}

double message_objective(std::span<const CMatrix> unitaries, const BipartiteState& psi) {
  const auto states = lifted_coords(unitaries, psi);
  double total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) total += std::norm(inner(states[i], states[j]));
  }
  return total;
}

std::vector<double> message_objective_gradient(std::span<const CMatrix> unitaries, const BipartiteState& psi) {
  const std::size_t d = psi.dim();
  const auto states = lifted_coords(unitaries, psi);
  const std::size_t count = states.size();
  std::vector<double> grad(count * d * d, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    // G_k = -2i sum_{j != k} conj(g_kj) Tr_B |psi_j><psi_k|; df = Re tr(H G_k).
    CMatrix g_k(d, d);
    for (std::size_t j = 0; j < count; ++j) {
      if (j == k) continue;
      const Complex weight = Complex(0.0, -2.0) * std::conj(inner(states[k], states[j]));
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
          Complex sum = 0.0;
          for (std::size_t b = 0; b < d; ++b) {
            sum += states[j][BipartiteState::index(r, b, d)] * std::conj(states[k][BipartiteState::index(c, b, d)]);
          }
          g_k(r, c) += weight * sum;
        }
      }
    }
    double* out = grad.data() + k * d * d;
    std::size_t p = 0;
    for (std::size_t j = 0; j < d; ++j) out[p++] = g_k(j, j).real();
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t l = j + 1; l < d; ++l) {
        out[p++] = (g_k(l, j) + g_k(j, l)).real();
        out[p++] = (Complex(0.0, 1.0) * (g_k(l, j) - g_k(j, l))).real();
      }
    }
  }
  return grad;
}

namespace {

double max_overlap(std::span<const CMatrix> unitaries, const BipartiteState& psi) {
  return gram_defect(gram(lifted_coords(unitaries, psi)));
}

// Residuals (Re g_jk, Im g_jk) over pairs j < k and their Jacobian with
// respect to the chart U_m -> exp(i H(x_m)) U_m, m >= 1, at x = 0.
void residual_system(std::span<const CMatrix> unitaries, const BipartiteState& psi, std::vector<double>& res,
                     std::vector<double>& jac) {
  const std::size_t d = psi.dim();
  const std::size_t count = unitaries.size();
  const std::size_t dd = d * d;
  const std::size_t cols = (count - 1) * dd;
  const auto states = lifted_coords(unitaries, psi);
  const std::size_t rows = count * (count - 1);
  res.assign(rows, 0.0);
  jac.assign(rows * cols, 0.0);

  std::vector<Complex> deriv(dd);
  std::size_t row = 0;
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t k = j + 1; k < count; ++k, row += 2) {
      const Complex g = inner(states[j], states[k]);
      res[row] = g.real();
      res[row + 1] = g.imag();
      // A(r, c) = sum_b psi_k[r, b] conj(psi_j[c, b]); <psi_j|H (x) I|psi_k> = tr(H A).
      CMatrix amat(d, d);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
          Complex sum = 0.0;
          for (std::size_t bb = 0; bb < d; ++bb) {
            sum += states[k][BipartiteState::index(r, bb, d)] * std::conj(states[j][BipartiteState::index(c, bb, d)]);
          }
          amat(r, c) = sum;
        }
      }
      std::size_t p = 0;
      for (std::size_t a = 0; a < d; ++a) deriv[p++] = amat(a, a);
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t l = a + 1; l < d; ++l) {
          deriv[p++] = amat(l, a) + amat(a, l);
          deriv[p++] = Complex(0.0, 1.0) * (amat(l, a) - amat(a, l));
        }
      }
      for (const auto& [m, sign] : {std::pair<std::size_t, double>{j, -1.0}, {k, 1.0}}) {
        if (m == 0) continue;
        const std::size_t off = (m - 1) * dd;
        for (std::size_t q = 0; q < dd; ++q) {
          const Complex v = Complex(0.0, sign) * deriv[q];
          jac[row * cols + off + q] += v.real();
          jac[(row + 1) * cols + off + q] += v.imag();
        }
      }
    }
  }
}

// Solves (A + mu I) x = rhs for symmetric positive semidefinite A by Cholesky.
bool solve_damped(std::vector<double> a, std::size_t n, double mu, std::vector<double>& x) {
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] += mu;
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) diag -= a[j * n + k] * a[j * n + k];
    if (!(diag > 0.0)) return false;
    diag = std::sqrt(diag);
    a[j * n + j] = diag;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = v / diag;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double v = x[i];
    for (std::size_t k = 0; k < i; ++k) v -= a[i * n + k] * x[k];
    x[i] = v / a[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double v = x[i];
    for (std::size_t k = i + 1; k < n; ++k) v -= a[k * n + i] * x[k];
    x[i] = v / a[i * n + i];
  }
  return true;
}

std::vector<CMatrix> apply_step(std::span<const CMatrix> current, std::span<const double> delta, std::size_t d) {
  std::vector<CMatrix> next(current.begin(), current.end());
  const std::size_t dd = d * d;
  for (std::size_t m = 1; m < current.size(); ++m) {
    next[m] = expm_i_hermitian(hermitian_from_params(delta.subspan((m - 1) * dd, dd), d)) * current[m];
  }
  return next;
}

}  // namespace

SearchResult search_message_set(const SchmidtSpectrum& s, std::size_t count, Seed seed,
                                const SearchOptions& options) {
  const std::size_t d = s.dim();
  if (count == 0 || count > d * d) throw PreconditionError("search_message_set: count must be in [1, d^2]");
  if (!capacity_bound_check(s, count)) {
    throw PreconditionError("search_message_set: spectrum violates lambda_0 <= d/L for L = " + std::to_string(count));
  }
  const BipartiteState psi = make_schmidt_state(s);
  SearchResult result;
  result.seed = seed;
  result.best_defect = std::numeric_limits<double>::infinity();

  if (count == 1) {
    result.set = UnitaryMessageSet({CMatrix::identity(d)});
    result.best_defect = 0.0;
    return result;
  }

  // Polish well past the acceptance tolerance; LM converges quadratically here.
  const double target = std::min(0.1 * options.tolerance, 1e-14);
  for (std::size_t restart = 0; restart < std::max<std::size_t>(1, options.max_restarts); ++restart) {
    result.restarts_used = restart + 1;
    const Seed restart_seed = derive_seed(seed, restart);
    std::vector<CMatrix> current{CMatrix::identity(d)};
    for (std::size_t k = 1; k < count; ++k) current.push_back(random_unitary(d, derive_seed(restart_seed, k)));

    // Levenberg-Marquardt on the pairwise overlaps.
    const std::size_t n = (count - 1) * d * d;
    std::vector<double> res, jac, normal(n * n), step(n);
    double f = message_objective(current, psi);
    double mu = 1e-3;
    for (std::size_t iter = 0; iter < options.max_steps; ++iter) {
      if (max_overlap(current, psi) < target) break;
      residual_system(current, psi, res, jac);
      const std::size_t rows = res.size();
      std::fill(normal.begin(), normal.end(), 0.0);
      std::fill(step.begin(), step.end(), 0.0);
      for (std::size_t r = 0; r < rows; ++r) {
        const double* jr = jac.data() + r * n;
        for (std::size_t a = 0; a < n; ++a) {
          if (jr[a] == 0.0) continue;
          step[a] -= jr[a] * res[r];
          for (std::size_t b = 0; b < n; ++b) normal[a * n + b] += jr[a] * jr[b];
        }
      }
      bool accepted = false;
      for (int trial = 0; trial < 40 && !accepted; ++trial) {
        std::vector<double> delta = step;
        if (solve_damped(normal, n, mu, delta)) {
          auto candidate = apply_step(current, delta, d);
          const double f_new = message_objective(candidate, psi);
          if (f_new < f) {
            current = std::move(candidate);
            f = f_new;
            mu = std::max(mu / 3.0, 1e-15);
            accepted = true;
            continue;
          }
        }
        mu *= 4.0;
      }
      if (!accepted) break;
    }

    const double defect = max_overlap(current, psi);
    result.best_defect = std::min(result.best_defect, defect);
    if (defect < options.tolerance) {
      result.set = UnitaryMessageSet(std::move(current));
      result.best_defect = defect;
      return result;
    }
  }
  return result;
}

}  // namespace densecode
