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

#include "densecode/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <unordered_map>

#include "densecode/error.hpp"

namespace densecode {
namespace {

constexpr double kSpectrumSlack = 1e-12;

double d_over(std::size_t d) { return static_cast<double>(d) / static_cast<double>(d * d - 2); }

void check(std::map<std::string, double>& defects, const std::string& name, double defect, double tol) {
  defects[name] = defect;
  if (!(defect < tol)) throw InvariantError(name, defect);
}

// Dense AB operator from the ABa vector by tracing out the ancilla.
CMatrix reduced_density(const CVector& joint, std::size_t ancilla_dim) {
  const std::size_t n = joint.size() / ancilla_dim;
  CMatrix rho(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Complex sum = 0.0;
      for (std::size_t r = 0; r < ancilla_dim; ++r) {
        sum += joint[a * ancilla_dim + r] * std::conj(joint[b * ancilla_dim + r]);
      }
      rho(a, b) = sum;
    }
  }
  return rho;
}

}  // namespace

std::vector<double> compute_R(const SchmidtSpectrum& s) {
  const std::size_t d = s.dim();
  if (!(s.largest() < d_over(d) - kSpectrumSlack)) {
    throw PreconditionError("compute_R: lambda_0 = " + std::to_string(s.largest()) +
                            " is not below d/(d^2-2) = " + std::to_string(d_over(d)));
  }
  std::vector<double> r(d);
  const double scale = static_cast<double>(d * d - 2);
  for (std::size_t j = 0; j < d; ++j) r[j] = static_cast<double>(d) - scale * s[j];
  return r;
}

std::vector<double> gamma_closed_form(const SchmidtSpectrum& s) {
  const std::size_t d = s.dim();
  const double dd = static_cast<double>(d);
  const double last = s.smallest();
  const double denom_tail = dd - (dd * dd - 2.0) * last;
  std::vector<double> gamma(d);
  for (std::size_t j = 0; j < d; ++j) gamma[j] = dd * (s[j] - last) / (s[j] * denom_tail);
  return gamma;
}

ProtocolBundle build_bundle(const SchmidtSpectrum& s, const UnitaryMessageSet& messages, Seed seed,
                            const Tolerances& tol) {
  const std::size_t d = s.dim();
  const std::size_t n = d * d;
  if (messages.dim() != d) throw DimensionError("build_bundle: message dimension mismatch");
  if (messages.size() != n - 2) {
    throw PreconditionError("build_bundle: need d^2 - 2 = " + std::to_string(n - 2) + " messages, got " +
                            std::to_string(messages.size()));
  }
  const BipartiteState psi = make_schmidt_state(s);
  const auto cert = certify_distinguishable(messages, psi, tol.certificate);
  if (!cert.pass) {
    throw PreconditionError("build_bundle: messages not perfectly distinguishable (Gram defect " +
                            std::to_string(cert.gram_defect) + ")");
  }
  const auto r = compute_R(s);

  std::vector<CVector> columns;
  columns.reserve(n - 2);
  for (const auto& u : messages.unitaries()) columns.push_back(apply_local(u, psi).coords());
  CMatrix m = complete_to_unitary(columns, n, seed);
  CVector v = m.column(n - 2);
  CVector w = m.column(n - 1);

  const double lam_last = s.smallest();
  const double r_last = r[d - 1];
  CMatrix t(d, d), y(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const double scale = std::sqrt(lam_last) / (std::sqrt(s[j]) * std::sqrt(r_last));
    for (std::size_t i = 0; i < d; ++i) {
      t(i, j) = scale * v[BipartiteState::index(i, j, d)];
      y(i, j) = scale * w[BipartiteState::index(i, j, d)];
    }
  }

  std::map<std::string, double> defects;
  check(defects, "m_unitarity", unitarity_defect(m), tol.orthonormality);

  const CMatrix deficit = CMatrix::identity(d) - t.adjoint() * t - y.adjoint() * y;
  double off_diag = 0.0;
  double negativity = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      if (a != b) off_diag = std::max(off_diag, std::abs(deficit(a, b)));
    }
    negativity = std::max(negativity, -deficit(a, a).real());
  }
  check(defects, "deficit_diagonal", off_diag, tol.invariant);
  check(defects, "deficit_nonnegative", std::max(0.0, negativity), tol.invariant);
  // Entries that vanish analytically come out as rounding noise; their square
  // roots would be ~1e-8 and leak into every C-branch amplitude.
  CMatrix snapped = deficit;
  for (std::size_t a = 0; a < d; ++a) {
    if (std::abs(snapped(a, a)) < tol.equality) snapped(a, a) = 0.0;
  }
  CMatrix c = sqrt_psd_diagonal(snapped);

  std::vector<double> gamma(d);
  const CMatrix ctc = c.adjoint() * c;
  for (std::size_t j = 0; j < d; ++j) gamma[j] = ctc(j, j).real();

  const auto t_state = apply_local(t, psi);
  const auto y_state = apply_local(y, psi);
  const auto c_state = apply_local(c, psi);
  const double p_t = t_state.squared_norm();
  const double p_y = y_state.squared_norm();
  double p1 = 0.0;
  for (std::size_t j = 0; j < d; ++j) p1 += s[j] * gamma[j];

  check(defects, "kraus_condition",
        max_abs_diff(t.adjoint() * t + y.adjoint() * y + ctc, CMatrix::identity(d)), tol.invariant);
  check(defects, "gamma_last", std::abs(gamma[d - 1]), tol.invariant);
  const auto gamma_exact = gamma_closed_form(s);
  double gamma_formula = 0.0;
  double gamma_bound = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    gamma_formula = std::max(gamma_formula, std::abs(gamma[j] - gamma_exact[j]));
    const double overestimate = static_cast<double>(d * d) * (s[j] - lam_last) / (2.0 * s[j]);
    gamma_bound = std::max(gamma_bound, gamma[j] - overestimate);
  }
  check(defects, "gamma_formula", gamma_formula, tol.invariant);
  check(defects, "gamma_overestimate", std::max(0.0, gamma_bound), tol.invariant);
  check(defects, "p_t_formula", std::abs(p_t - lam_last / r_last), tol.invariant);
  check(defects, "p_y_formula", std::abs(p_y - lam_last / r_last), tol.invariant);
  check(defects, "probability_sum", std::abs(p_t + p_y + p1 - 1.0), tol.invariant);
  check(defects, "p1_c_branch_norm", std::abs(p1 - c_state.squared_norm()), tol.equality);
  check(defects, "p1_closed_form", std::abs(p1 - (1.0 - 2.0 * lam_last / r_last)), tol.invariant);

  double leakage = 0.0;
  for (const auto& col : columns) {
    leakage = std::max({leakage, std::abs(inner(col, t_state.coords())), std::abs(inner(col, y_state.coords()))});
  }
  check(defects, "ty_orthogonal_to_messages", leakage, tol.invariant);
  check(defects, "ty_orthogonal", std::abs(inner(t_state.coords(), y_state.coords())), tol.invariant);

  DilationResult dilation = dilation_unitary(QuantumChannel({t, y, c}), derive_seed(seed, 1));
  check(defects, "dilation_unitarity", unitarity_defect(dilation.u_tilde), tol.orthonormality);
  const CVector joint = dilated_state(dilation, psi);
  CVector branches = kron(t_state.coords(), CVector::basis(3, 0)) + kron(y_state.coords(), CVector::basis(3, 1)) +
                     kron(c_state.coords(), CVector::basis(3, 2));
  check(defects, "dilation_branches", max_abs_diff(joint, branches), tol.equality);

  return ProtocolBundle{s,          messages,        psi,  std::move(m),        std::move(v),
                        std::move(w), std::move(t),  std::move(y), std::move(c), std::move(gamma),
                        r,          p1,              p_t,  p_y,                 std::move(dilation),
                        seed,       std::move(defects)};
}

double success_probability(const ProtocolBundle& bundle) {
  double total = 0.0;
  for (std::size_t j = 0; j < bundle.dim(); ++j) total += bundle.spectrum[j] * bundle.gamma[j];
  return total;
}

double p1_bound_general(const SchmidtSpectrum& s) {
  const double d = static_cast<double>(s.dim());
  return d * d * d * (d - 1.0) / 2.0 * (s.largest() - 1.0 / d);
}

EqualTailP1 p1_equal_tail(std::size_t d, double lambda0) {
  if (d < 2) throw PreconditionError("p1_equal_tail: dimension must be at least 2");
  const double dd = static_cast<double>(d);
  if (lambda0 < 1.0 / dd - kSpectrumSlack || !(lambda0 < d_over(d))) {
    throw PreconditionError("p1_equal_tail: lambda0 = " + std::to_string(lambda0) + " outside [1/d, d/(d^2-2))");
  }
  const double excess = std::max(0.0, lambda0 - 1.0 / dd);
  EqualTailP1 out;
  const double num = dd * dd * excess;
  out.exact = num / (num + 2.0 * (1.0 - lambda0));
  out.bound = dd * dd * dd / (2.0 * (dd - 1.0)) * excess;
  return out;
}

Decoder build_decoder(const ProtocolBundle& bundle) {
  Decoder decoder;
  for (const auto& u : bundle.messages.unitaries()) {
    CVector state = apply_local(u, bundle.psi).coords();
    state *= 1.0 / state.norm();
    decoder.projectors.push_back(CMatrix::outer(state, state));
  }
  const CVector t_state = apply_local(bundle.t, bundle.psi).coords();
  const CVector y_state = apply_local(bundle.y, bundle.psi).coords();
  decoder.projectors.push_back((1.0 / bundle.p_t) * CMatrix::outer(t_state, t_state) +
                               (1.0 / bundle.p_y) * CMatrix::outer(y_state, y_state));
  return decoder;
}

const char* to_string(Variant v) noexcept { return v == Variant::kMeasureAncilla ? "measure" : "no-measure"; }

Variant parse_variant(std::string_view text) {
  if (text == "measure") return Variant::kMeasureAncilla;
  if (text == "no-measure") return Variant::kNoMeasure;
  throw PreconditionError("unknown variant '" + std::string(text) + "' (expected measure or no-measure)");
}

EncodedMessage encode_message(const ProtocolBundle& bundle, std::size_t index, Variant variant, PhiloxStream& rng) {
  if (index > bundle.final_message()) {
    throw PreconditionError("encode_message: message index " + std::to_string(index) + " out of range");
  }
  EncodedMessage out;
  if (index < bundle.final_message()) {
    out.state = apply_local(bundle.messages[index], bundle.psi).coords();
    return out;
  }

  CVector joint = dilated_state(bundle.dilation, bundle.psi);
  out.ancilla_dim = 3;
  if (variant == Variant::kNoMeasure) {
    out.state = std::move(joint);
    return out;
  }

  const std::size_t n_ab = bundle.dim() * bundle.dim();
  if (rng.uniform() < bundle.p1) {
    out.ancilla_outcome = 1;
    out.aborted = true;
    out.ancilla_dim = 1;
    CVector collapsed(n_ab);
    for (std::size_t ab = 0; ab < n_ab; ++ab) collapsed[ab] = joint[ab * 3 + 2];
    collapsed *= 1.0 / collapsed.norm();
    out.state = std::move(collapsed);
    return out;
  }
  out.ancilla_outcome = 0;
  for (std::size_t ab = 0; ab < n_ab; ++ab) joint[ab * 3 + 2] = 0.0;
  joint *= 1.0 / joint.norm();
  out.state = std::move(joint);
  return out;
}

std::vector<double> decode_probabilities(const Decoder& decoder, const EncodedMessage& encoded) {
  std::vector<double> probs;
  probs.reserve(decoder.projectors.size());
  if (encoded.ancilla_dim == 1) {
    for (const auto& p : decoder.projectors) probs.push_back(inner(encoded.state, p * encoded.state).real());
  } else {
    const CMatrix rho = reduced_density(encoded.state, encoded.ancilla_dim);
    for (const auto& p : decoder.projectors) probs.push_back((p * rho).trace().real());
  }
  for (auto& p : probs) p = std::max(0.0, p);
  return probs;
}

OutcomeDistribution outcome_distribution(const ProtocolBundle& bundle, const Decoder& decoder, std::size_t message,
                                         Variant variant) {
  OutcomeDistribution dist;
  EncodedMessage encoded;
  if (message == bundle.final_message() && variant == Variant::kMeasureAncilla) {
    dist.aborted = bundle.p1;
    // Build the kept branch directly rather than sampling for it.
    CVector joint = dilated_state(bundle.dilation, bundle.psi);
    const std::size_t n_ab = bundle.dim() * bundle.dim();
    for (std::size_t ab = 0; ab < n_ab; ++ab) joint[ab * 3 + 2] = 0.0;
    const double keep = joint.squared_norm();
    if (keep > 0.0) joint *= 1.0 / std::sqrt(keep);
    encoded.state = std::move(joint);
    encoded.ancilla_dim = 3;
    dist.outcome = decode_probabilities(decoder, encoded);
    for (auto& p : dist.outcome) p *= 1.0 - bundle.p1;
  } else {
    PhiloxStream rng(0);
    encoded = encode_message(bundle, message, variant, rng);
    dist.outcome = decode_probabilities(decoder, encoded);
  }
  double total = dist.aborted;
  for (double p : dist.outcome) total += p;
  dist.undetected = std::max(0.0, 1.0 - total);
  return dist;
}

std::size_t SimulationReport::total() const {
  std::size_t sum = undetected + aborted;
  for (auto c : outcome_histogram) sum += c;
  return sum;
}

SimulationReport simulate(const ProtocolBundle& bundle, const Decoder& decoder, std::size_t message,
                          std::size_t trials, Variant variant, Seed seed, unsigned threads) {
  if (trials == 0) throw PreconditionError("simulate: trials must be at least 1");
  if (message > bundle.final_message()) throw PreconditionError("simulate: message index out of range");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));

  const std::size_t outcomes = decoder.projectors.size();
  struct Partial {
    std::vector<std::size_t> histogram;
    std::size_t undetected = 0;
    std::size_t aborted = 0;
  };
  std::vector<Partial> partials(threads, Partial{std::vector<std::size_t>(outcomes, 0)});

  auto run = [&](unsigned worker) {
    Partial& local = partials[worker];
    // Decode probabilities depend only on which encoding branch occurred.
    std::unordered_map<int, std::vector<double>> cache;
    for (std::size_t trial = worker; trial < trials; trial += threads) {
      PhiloxStream rng(seed, trial);
      const EncodedMessage encoded = encode_message(bundle, message, variant, rng);
      if (encoded.aborted) {
        ++local.aborted;
        continue;
      }
      const int key = encoded.ancilla_outcome.value_or(-1);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, decode_probabilities(decoder, encoded)).first;
      const double u = rng.uniform();
      double cumulative = 0.0;
      std::size_t hit = outcomes;
      for (std::size_t j = 0; j < outcomes; ++j) {
        cumulative += it->second[j];
        if (u < cumulative) {
          hit = j;
          break;
        }
      }
      if (hit == outcomes) {
        ++local.undetected;
      } else {
        ++local.histogram[hit];
      }
    }
  };

  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned wkr = 0; wkr < threads; ++wkr) pool.emplace_back(run, wkr);
  }

  SimulationReport report;
  report.trials = trials;
  report.message_sent = message;
  report.variant = variant;
  report.seed = seed;
  report.outcome_histogram.assign(outcomes, 0);
  for (const auto& part : partials) {
    for (std::size_t j = 0; j < outcomes; ++j) report.outcome_histogram[j] += part.histogram[j];
    report.undetected += part.undetected;
    report.aborted += part.aborted;
  }
  return report;
}

UnitaryMessageSet qubit_example_messages() {
  return UnitaryMessageSet({CMatrix::identity(2), CMatrix{{0.0, 1.0}, {1.0, 0.0}}});
}

}  // namespace densecode
