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

#include "densecode/verify.hpp"

#include <algorithm>
#include <cmath>

#include "densecode/analysis.hpp"
#include "densecode/channels.hpp"
#include "densecode/encoding.hpp"
#include "densecode/error.hpp"
#include "densecode/protocol.hpp"
#include "densecode/states.hpp"

namespace densecode {
namespace {

// Accumulates the worst defect of one named property over many samples.
class Check {
 public:
  Check(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}
  void observe(double defect) {
    worst_ = std::max(worst_, defect);
    ok_ = ok_ && defect < tol_;
    ++samples_;
  }
  void fail() {
    ok_ = false;
    ++samples_;
  }
  CheckResult result(std::string detail = {}) const {
    if (detail.empty()) detail = std::to_string(samples_) + " samples";
    return CheckResult{name_, worst_, tol_, ok_ && samples_ > 0, std::move(detail)};
  }

 private:
  std::string name_;
  double tol_;
  double worst_ = 0.0;
  bool ok_ = true;
  std::size_t samples_ = 0;
};

BipartiteState random_pure_state(std::size_t d, PhiloxStream& rng) {
  CVector v(d * d);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = Complex(rng.normal(), rng.normal());
  v *= 1.0 / v.norm();
  return BipartiteState::normalized(d, std::move(v));
}

SuiteReport dilation_suite(const VerifyOptions& opt) {
  Check unitarity("dilation_unitarity", opt.tol.orthonormality);
  Check agreement("partial_trace_matches_operator_sum", opt.tol.equality);
  Check kraus_columns("kraus_columns_embedded", opt.tol.equality);
  PhiloxStream rng(opt.seed, 0xB);
  for (std::size_t k = 0; k < 50; ++k) {
    const std::size_t d = 2 + k % 2;
    const std::size_t n = 2 + (k / 2) % 2;
    const Seed s = derive_seed(opt.seed, k);
    const QuantumChannel ch = random_channel(d, n, s);
    const DilationResult dil = dilation_unitary(ch, derive_seed(s, 1));
    unitarity.observe(unitarity_defect(dil.u_tilde));
    double col = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) col = std::max(col, std::abs(dil.u_tilde(i * n + r, j * n) - ch[r](i, j)));
      }
    }
    kraus_columns.observe(col);
    const BipartiteState psi = random_pure_state(d, rng);
    CVector joint = lift_to_aba(dil.u_tilde, d) * attach_ancilla(psi, n);
    const CMatrix reduced = partial_trace_ancilla(CMatrix::outer(joint, joint), n);
    agreement.observe(max_abs_diff(reduced, apply_channel(ch, psi.density())));
  }
  return SuiteReport{"appendix-b", {unitarity.result(), agreement.result(), kraus_columns.result()}};
}

SuiteReport orthogonalization_suite(const VerifyOptions& opt) {
  Check overlap("lifted_overlap", opt.tol.orthonormality);
  Check action("channel_action_deviation", opt.tol.invariant);
  Check residual("quadratic_residual", opt.tol.equality);
  Check mixing("mixing_unitarity", opt.tol.orthonormality);
  PhiloxStream rng(opt.seed, 0xC);
  for (std::size_t k = 0; k < 100; ++k) {
    const std::size_t d = 2 + k % 3;
    const QuantumChannel ch = random_channel(d, 2, derive_seed(opt.seed, 1000 + k));
    const BipartiteState psi = make_schmidt_state(random_spectrum(d, rng));
    const OrthogonalizedPair out = orthogonalize_kraus_pair(ch[0], ch[1], psi);
    overlap.observe(std::abs(inner(apply_local(out.r0, psi).coords(), apply_local(out.r1, psi).coords())));
    const CMatrix rho = psi.density();
    action.observe(max_abs_diff(apply_channel(QuantumChannel({out.r0, out.r1}), rho), apply_channel(ch, rho)));
    residual.observe(std::max(out.params.residuals[0], out.params.residuals[1]));
    mixing.observe(unitarity_defect(out.params.v));
  }
  return SuiteReport{"appendix-c", {overlap.result(), action.result(), residual.result(), mixing.result()}};
}

SuiteReport lifted_rank_suite(const VerifyOptions& opt) {
  Check rank("lifted_rank_equals_kraus_count", 0.5);
  Check dependent("dependent_collection_rank_drop", 0.5);
  PhiloxStream rng(opt.seed, 0x1);
  for (std::size_t k = 0; k < 100; ++k) {
    const std::size_t d = 2 + k % 2;
    const std::size_t count = 1 + k % std::min<std::size_t>(d * d, 6);
    const QuantumChannel ch = random_channel(d, count, derive_seed(opt.seed, 2000 + k));
    const BipartiteState psi = make_schmidt_state(random_spectrum(d, rng));
    const auto lifted = lifted_kraus_states(ch, psi);
    std::vector<CVector> coords;
    for (const auto& st : lifted) coords.push_back(st.coords());
    const std::size_t independent = kraus_rank(ch, opt.tol.rank);
    const std::size_t got = gram_rank(gram(coords), opt.tol.rank);
    rank.observe(independent == count && got == count ? 0.0 : 1.0);

    // Appending a combination of existing operators must not raise the rank.
    CMatrix combo = (0.5 * ch[0]);
    if (count > 1) combo += 0.5 * ch[count - 1];
    coords.push_back(apply_local(combo, psi).coords());
    dependent.observe(gram_rank(gram(coords), opt.tol.rank) == count ? 0.0 : 1.0);
  }
  return SuiteReport{"lemma", {rank.result(), dependent.result()}};
}

SuiteReport identity_suite(const VerifyOptions& opt) {
  const std::size_t d = opt.d;
  if (d < 2) throw PreconditionError("identity suite: d must be at least 2");
  const std::size_t n = d * d;
  const double id_tol = 1e-9;
  SuiteReport rep{"section-3", {}};
  const UnitaryMessageSet weyl = weyl_set(d);
  std::vector<CMatrix> head(weyl.unitaries().begin(), weyl.unitaries().begin() + static_cast<std::ptrdiff_t>(n - 2));
  const UnitaryMessageSet messages(head);
  const SchmidtSpectrum uniform = SchmidtSpectrum::uniform(d);

  auto add_report = [&](const std::string& label, const ImpossibilityReport& r, const std::string& expect) {
    const bool tag_ok = r.case_tag == expect;
    rep.checks.push_back(CheckResult{label + ".case", tag_ok ? 0.0 : 1.0, 0.5, tag_ok, r.case_tag});
    for (const auto& [name, value] : r.defects) {
      rep.checks.push_back(CheckResult{label + "." + name, value, id_tol, value < id_tol, {}});
    }
  };

  const double half = 1.0 / std::sqrt(2.0);
  add_report("weyl", verify_necessary_identities(uniform, messages, half * weyl[n - 2], half * weyl[n - 1]), "case-i");

  const double x = 0.3;
  add_report("weyl_unbalanced",
             verify_necessary_identities(uniform, messages, std::sqrt(x) * weyl[n - 2], std::sqrt(1.0 - x) * weyl[n - 1]),
             "case-ii");

  // The same pair on a non-maximal spectrum cannot satisfy the hypotheses.
  PhiloxStream rng(opt.seed, 0x3);
  Check violated("non_maximal_hypotheses_violated", 0.5);
  for (std::size_t k = 0; k < 20; ++k) {
    const SchmidtSpectrum s = random_spectrum(d, rng);
    const auto r = verify_necessary_identities(s, messages, half * weyl[n - 2], half * weyl[n - 1]);
    violated.observe(r.case_tag == "hypotheses-violated" ? 0.0 : 1.0);
  }
  rep.checks.push_back(violated.result());

  Check witness_floor("uniformity_witness_at_least_d", opt.tol.equality);
  Check witness_strict("uniformity_witness_exceeds_d_off_uniform", 0.5);
  for (std::size_t k = 0; k < 1000; ++k) {
    const SchmidtSpectrum s = random_spectrum(d, rng);
    const auto w = uniformity_witness(s);
    witness_floor.observe(std::max(0.0, static_cast<double>(d) - w.value));
    witness_strict.observe(w.is_uniform ? 1.0 : 0.0);
  }
  const auto wu = uniformity_witness(uniform);
  witness_floor.observe(std::abs(wu.value - static_cast<double>(d)));
  rep.checks.push_back(witness_floor.result());
  rep.checks.push_back(witness_strict.result());
  return rep;
}

SuiteReport support(const VerifyOptions& opt) {
  Check residual("post_measurement_support_residual", opt.tol.support);
  Check reports("support_reports_pass", 0.5);
  PhiloxStream rng(opt.seed, 0x5);
  for (std::size_t k = 0; k < 50; ++k) {
    const std::size_t d = 2 + k % 2;
    const std::size_t n = 2 + (k / 2) % 2;
    const Seed s = derive_seed(opt.seed, 3000 + k);
    const QuantumChannel ch = random_channel(d, n, s);
    const QuantumChannel meas = random_channel(n, 2 + k % 3, derive_seed(s, 7));
    const BipartiteState psi = make_schmidt_state(random_spectrum(d, rng));
    const auto r = support_containment_check(ch, psi, meas.kraus(), derive_seed(s, 9), opt.tol);
    residual.observe(r.max_residual);
    reports.observe(r.pass ? 0.0 : 1.0);
  }
  return SuiteReport{"support", {residual.result(), reports.result()}};
}

SuiteReport kraus_condition(const VerifyOptions& opt) {
  Check built("bundle_built", 0.5);
  Check invariants("bundle_invariants", opt.tol.invariant);
  Check closed("p1_closed_form", opt.tol.invariant);
  Check bound("p1_below_general_bound", opt.tol.invariant);
  PhiloxStream rng(opt.seed, 0x4);
  const UnitaryMessageSet messages = qubit_example_messages();
  for (std::size_t k = 0; k < 50; ++k) {
    const double lam0 = 0.5 + 0.48 * rng.uniform();
    const SchmidtSpectrum s = SchmidtSpectrum::from_values({lam0, 1.0 - lam0});
    try {
      const ProtocolBundle b = build_bundle(s, messages, derive_seed(opt.seed, 4000 + k), opt.tol);
      built.observe(0.0);
      double worst = 0.0;
      for (const auto& [_, v] : b.defects) worst = std::max(worst, v);
      invariants.observe(worst);
      closed.observe(std::abs(b.p1 - (1.0 - 2.0 * s.smallest() / b.r[1])));
      bound.observe(std::max(0.0, b.p1 - p1_bound_general(s)));
    } catch (const DenseCodeError&) {
      built.fail();
    }
  }
  return SuiteReport{"kraus-condition", {built.result(), invariants.result(), closed.result(), bound.result()}};
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"appendix-b", "appendix-c", "lemma", "section-3", "support",
                                              "kraus-condition"};
  return names;
}

std::vector<SuiteReport> run_suites(std::string_view name, const VerifyOptions& options) {
  auto one = [&](std::string_view n) -> SuiteReport {
    if (n == "appendix-b") return dilation_suite(options);
    if (n == "appendix-c") return orthogonalization_suite(options);
    if (n == "lemma") return lifted_rank_suite(options);
    if (n == "section-3") return identity_suite(options);
    if (n == "support") return support(options);
    if (n == "kraus-condition") return kraus_condition(options);
    throw PreconditionError("unknown suite '" + std::string(n) + "'");
  };
  std::vector<SuiteReport> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(one(n));
  } else {
    out.push_back(one(name));
  }
  return out;
}

}  // namespace densecode
