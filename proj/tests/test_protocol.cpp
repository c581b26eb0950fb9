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

#include "doctest.h"

#include "densecode/encoding.hpp"
#include "densecode/error.hpp"
#include "densecode/protocol.hpp"
#include "oracles.hpp"

using namespace densecode;
using oracle::Frac;

namespace {

const SchmidtSpectrum& example_spectrum() {
  static const SchmidtSpectrum s = parse_spectrum("81/160,79/160");
  return s;
}

const ProtocolBundle& example_bundle() {
  static const ProtocolBundle b = build_bundle(example_spectrum(), qubit_example_messages(), 0x5EEDD0DE);
  return b;
}

// Exact-fraction oracle for the d = 2 example, written from the defining
// formulas rather than the library code paths.
struct ExampleOracle {
  Frac l0{81, 160}, l1{79, 160};
  Frac r0 = Frac(2) - Frac(2) * l0;
  Frac r1 = Frac(2) - Frac(2) * l1;
  Frac gamma0 = Frac(2) * (l0 - l1) / (l0 * r1);
  Frac p_t = l1 / r1;
  Frac p1 = l0 * gamma0;
};

}  // namespace

TEST_CASE("exact values of the qubit example") {
  const ExampleOracle ex;
  CHECK(ex.r0 == Frac(79, 80));
  CHECK(ex.r1 == Frac(81, 80));
  CHECK(ex.gamma0 == Frac(320, 6561));
  CHECK(ex.p_t == Frac(79, 162));
  CHECK(ex.p1 == Frac(2, 81));
  CHECK(Frac(1) - Frac(2) * ex.p_t == ex.p1);

  const ProtocolBundle& b = example_bundle();
  const auto r = compute_R(example_spectrum());
  CHECK(std::abs(r[0] - ex.r0.value()) < 1e-15);
  CHECK(std::abs(r[1] - ex.r1.value()) < 1e-15);
  CHECK(std::abs(b.gamma[0] - ex.gamma0.value()) < 1e-12);
  CHECK(std::abs(b.gamma[1]) < 1e-12);
  CHECK(std::abs(b.p1 - ex.p1.value()) < 1e-12);
  CHECK(std::abs(success_probability(b) - ex.p1.value()) < 1e-12);
  CHECK(std::abs(b.p_t - ex.p_t.value()) < 1e-12);
  CHECK(std::abs(b.p_y - ex.p_t.value()) < 1e-12);
  const auto g = gamma_closed_form(example_spectrum());
  CHECK(std::abs(g[0] - ex.gamma0.value()) < 1e-15);
  CHECK(g[1] == 0.0);
}

TEST_CASE("completion-invariant quantities match the printed completion") {
  // The last two printed columns of M for the example, and the printed T, Y.
  const double a = std::sqrt(395.0) / 40.0;
  const double c = 9.0 * std::sqrt(5.0) / 40.0;
  const CVector v_ref{a, a, -c, -c};
  const CVector w_ref{a, -a, c, -c};
  const std::vector<CVector> ref{v_ref, w_ref};
  const ProtocolBundle& b = example_bundle();
  const std::vector<CVector> ours{b.v, b.w};
  CHECK(max_abs_diff(projector(ours), projector(ref)) < 1e-14);

  const double t = 79.0 / 162.0;
  const CMatrix t_ref{{t, -0.5}, {t, -0.5}};
  const CMatrix y_ref{{t, 0.5}, {-t, -0.5}};
  CHECK(max_abs_diff(b.t.adjoint() * b.t + b.y.adjoint() * b.y, t_ref.adjoint() * t_ref + y_ref.adjoint() * y_ref) <
        1e-14);
  CHECK(max_abs_diff(b.c, CMatrix{{std::sqrt(320.0 / 6561.0), 0.0}, {0.0, 0.0}}) < 1e-14);
}

TEST_CASE("bundle invariants hold and are recorded") {
  const ProtocolBundle& b = example_bundle();
  for (const char* name : {"kraus_condition", "gamma_formula", "probability_sum", "ty_orthogonal_to_messages",
                           "dilation_unitarity", "p1_closed_form", "gamma_last"}) {
    REQUIRE(b.defects.count(name) == 1);
    CHECK(b.defects.at(name) < 1e-12);
  }
  CHECK(b.num_messages() == 3);
  CHECK(b.final_message() == 2);
  CHECK(unitarity_defect(b.m) < 1e-14);
  CHECK(b.dilation.ancilla_dim == 3);
}

TEST_CASE("maximally entangled qubits need no failure branch") {
  const ProtocolBundle b = build_bundle(SchmidtSpectrum::uniform(2), qubit_example_messages(), 1);
  CHECK(b.p1 < 1e-15);
  CHECK(b.p_t == doctest::Approx(0.5));
  CHECK(max_abs_diff(b.c, CMatrix(2, 2)) < 1e-12);
}

TEST_CASE("random qubit spectra satisfy the closed forms") {
  PhiloxStream rng(77);
  for (int k = 0; k < 40; ++k) {
    const double l0 = 0.5 + 0.49 * rng.uniform();
    const SchmidtSpectrum s = SchmidtSpectrum::from_values({l0, 1.0 - l0});
    const ProtocolBundle b = build_bundle(s, qubit_example_messages(), k);
    const double r1 = 2.0 - 2.0 * (1.0 - l0);
    CHECK(std::abs(b.p1 - (1.0 - 2.0 * (1.0 - l0) / r1)) < 1e-10);
    CHECK(b.p1 <= p1_bound_general(s) + 1e-10);
    // The overestimate of each gamma_j.
    for (std::size_t j = 0; j < 2; ++j) CHECK(b.gamma[j] <= 4.0 * (s[j] - s[1]) / (2.0 * s[j]) + 1e-12);
  }
}

TEST_CASE("equal-tail qutrit bundle reproduces the closed form") {
  const SchmidtSpectrum s = parse_spectrum("3/8,5/16,5/16");
  const SearchResult found = search_message_set(s, 7, 2024);
  REQUIRE(found.set.has_value());
  const ProtocolBundle b = build_bundle(s, *found.set, 5);
  const Frac l0(3, 8), d(3);
  const Frac excess = d * d * (l0 - Frac(1, 3));
  const Frac exact = excess / (excess + Frac(2) * (Frac(1) - l0));
  CHECK(exact == Frac(3, 13));
  CHECK(std::abs(b.p1 - exact.value()) < 1e-10);
  CHECK(std::abs(p1_equal_tail(3, 0.375).exact - exact.value()) < 1e-15);
  CHECK(std::abs(b.gamma[1]) < 1e-10);
  CHECK(std::abs(b.gamma[2]) < 1e-10);
}

TEST_CASE("p1 bounds") {
  CHECK(std::abs(p1_bound_general(example_spectrum()) - 1.0 / 40.0) < 1e-15);
  CHECK(std::abs(p1_bound_general(parse_spectrum("3/8,5/16,5/16")) - 9.0 / 8.0) < 1e-14);
  CHECK(p1_bound_general(SchmidtSpectrum::uniform(4)) == 0.0);
  CHECK(std::abs(p1_equal_tail(3, 0.375).bound - 0.28125) < 1e-15);
  CHECK(std::abs(p1_equal_tail(7, 7.0 / 48.0).bound - 343.0 / 4032.0) < 1e-15);
  const auto at_floor = p1_equal_tail(5, 0.2);
  CHECK(at_floor.exact == 0.0);
  CHECK(at_floor.bound == 0.0);
  CHECK_THROWS_AS(p1_equal_tail(3, 0.3), PreconditionError);
  CHECK_THROWS_AS(p1_equal_tail(3, 3.0 / 7.0), PreconditionError);
  for (std::size_t dd = 2; dd <= 7; ++dd) {
    const double lo = 1.0 / static_cast<double>(dd);
    const double hi = static_cast<double>(dd) / static_cast<double>(dd * dd - 2);
    for (int k = 0; k < 50; ++k) {
      const auto r = p1_equal_tail(dd, lo + (hi - lo) * k / 50.0);
      CHECK(r.exact <= r.bound + 1e-12);
    }
  }
}

TEST_CASE("compute_R rejects spectra at or above d/(d^2-2)") {
  CHECK_THROWS_AS(compute_R(SchmidtSpectrum::from_values({0.5, 0.3, 0.2})), PreconditionError);
  CHECK_NOTHROW(compute_R(SchmidtSpectrum::from_values({0.4, 0.3, 0.3})));
}

TEST_CASE("bundle preconditions") {
  const SchmidtSpectrum s = SchmidtSpectrum::from_values({0.6, 0.4});
  CHECK_THROWS_AS(build_bundle(s, UnitaryMessageSet({CMatrix::identity(2)}), 1), PreconditionError);
  const UnitaryMessageSet iz({CMatrix::identity(2), CMatrix{{1.0, 0.0}, {0.0, -1.0}}});
  CHECK_THROWS_AS(build_bundle(s, iz, 1), PreconditionError);
  CHECK_THROWS_AS(build_bundle(SchmidtSpectrum::uniform(3), qubit_example_messages(), 1), DimensionError);
}

TEST_CASE("decoder never misidentifies unitary messages") {
  const ProtocolBundle& b = example_bundle();
  const Decoder dec = build_decoder(b);
  REQUIRE(dec.projectors.size() == 3);
  for (const auto& p : dec.projectors) CHECK(max_abs_diff(p * p, p) < 1e-13);
  for (std::size_t m = 0; m < 2; ++m) {
    const auto dist = outcome_distribution(b, dec, m, Variant::kMeasureAncilla);
    for (std::size_t j = 0; j < 3; ++j) {
      if (j == m) {
        CHECK(std::abs(dist.outcome[j] - 1.0) < 1e-12);
      } else {
        CHECK(dist.outcome[j] < 1e-12);
      }
    }
  }
}

TEST_CASE("final-message distributions for both variants") {
  const ProtocolBundle& b = example_bundle();
  const Decoder dec = build_decoder(b);
  const auto measured = outcome_distribution(b, dec, 2, Variant::kMeasureAncilla);
  CHECK(std::abs(measured.aborted - 2.0 / 81.0) < 1e-12);
  CHECK(std::abs(measured.outcome[2] - 79.0 / 81.0) < 1e-12);
  CHECK(measured.outcome[0] < 1e-12);
  CHECK(measured.outcome[1] < 1e-12);
  const auto raw = outcome_distribution(b, dec, 2, Variant::kNoMeasure);
  CHECK(std::abs(raw.outcome[0] - 1.0 / 80.0) < 1e-12);
  CHECK(raw.outcome[1] < 1e-12);
  CHECK(std::abs(raw.outcome[2] - 79.0 / 80.0) < 1e-12);
  CHECK(raw.aborted == 0.0);
  CHECK(raw.undetected < 1e-12);
}

TEST_CASE("encode_message branches") {
  const ProtocolBundle& b = example_bundle();
  PhiloxStream rng(3);
  const EncodedMessage m0 = encode_message(b, 0, Variant::kMeasureAncilla, rng);
  CHECK(m0.ancilla_dim == 1);
  CHECK(max_abs_diff(m0.state, b.psi.coords()) < 1e-15);
  const EncodedMessage raw = encode_message(b, 2, Variant::kNoMeasure, rng);
  CHECK(raw.ancilla_dim == 3);
  CHECK_FALSE(raw.ancilla_outcome.has_value());
  CHECK(std::abs(raw.state.norm() - 1.0) < 1e-14);

  bool saw_abort = false, saw_keep = false;
  for (std::uint64_t t = 0; t < 400 && !(saw_abort && saw_keep); ++t) {
    PhiloxStream trial(9, t);
    const EncodedMessage e = encode_message(b, 2, Variant::kMeasureAncilla, trial);
    REQUIRE(e.ancilla_outcome.has_value());
    if (e.aborted) {
      saw_abort = true;
      // C-branch collapses to |00>.
      CHECK(std::abs(std::abs(e.state[0]) - 1.0) < 1e-12);
    } else {
      saw_keep = true;
      CHECK(std::abs(e.state.norm() - 1.0) < 1e-14);
    }
  }
  CHECK(saw_abort);
  CHECK(saw_keep);
  CHECK_THROWS_AS(encode_message(b, 3, Variant::kNoMeasure, rng), PreconditionError);
}

TEST_CASE("simulation is reproducible and thread-count independent") {
  const ProtocolBundle& b = example_bundle();
  const Decoder dec = build_decoder(b);
  const auto one = simulate(b, dec, 2, 20000, Variant::kMeasureAncilla, 42, 1);
  const auto three = simulate(b, dec, 2, 20000, Variant::kMeasureAncilla, 42, 3);
  CHECK(one.outcome_histogram == three.outcome_histogram);
  CHECK(one.aborted == three.aborted);
  CHECK(one.total() == 20000);
  const auto again = simulate(b, dec, 2, 20000, Variant::kMeasureAncilla, 42, 2);
  CHECK(again.aborted == one.aborted);

  const auto zero = simulate(b, dec, 0, 1000, Variant::kNoMeasure, 1);
  CHECK(zero.outcome_histogram[0] == 1000);
  CHECK_THROWS_AS(simulate(b, dec, 0, 0, Variant::kNoMeasure, 1), PreconditionError);
}

TEST_CASE("variant names") {
  CHECK(parse_variant("measure") == Variant::kMeasureAncilla);
  CHECK(parse_variant("no-measure") == Variant::kNoMeasure);
  CHECK(std::string(to_string(Variant::kNoMeasure)) == "no-measure");
  CHECK_THROWS_AS(parse_variant("sometimes"), PreconditionError);
}
