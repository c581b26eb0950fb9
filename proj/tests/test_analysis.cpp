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

#include "densecode/analysis.hpp"
#include "densecode/error.hpp"
#include "densecode/protocol.hpp"
#include "oracles.hpp"

using namespace densecode;

namespace {

UnitaryMessageSet leading_weyl(std::size_t d) {
  const UnitaryMessageSet w = weyl_set(d);
  return UnitaryMessageSet(std::vector<CMatrix>(w.unitaries().begin(), w.unitaries().end() - 2));
}

void check_all_below(const ImpossibilityReport& r, double tol) {
  for (const auto& [name, value] : r.defects) {
    INFO(name);
    CHECK(value >= 0.0);
    CHECK(value < tol);
  }
}

}  // namespace

TEST_CASE("column identity of a trace-preserving pair") {
  const double h = 1.0 / std::numbers::sqrt2;
  const auto defect = two_kraus_column_identity(Complex(h) * CMatrix::identity(2), Complex(h) * CMatrix{{1.0, 0.0}, {0.0, -1.0}});
  for (const auto& row : defect)
    for (double v : row) CHECK(v < 1e-15);
  for (int k = 0; k < 100; ++k) {
    const QuantumChannel ch = random_channel(2 + k % 3, 2, 300 + k);
    for (const auto& row : two_kraus_column_identity(ch[0], ch[1]))
      for (double v : row) CHECK(v < 1e-10);
  }
}

TEST_CASE("column identity exposes the deficit of {T, Y}") {
  const ProtocolBundle b = build_bundle(parse_spectrum("81/160,79/160"), qubit_example_messages(), 3);
  CHECK_THROWS_AS(two_kraus_column_identity(b.t, b.y), PreconditionError);
  const auto defect = two_kraus_column_identity(b.t, b.y, CompletenessCheck::kSkip);
  CHECK(std::abs(defect[0][0] - 320.0 / 6561.0) < 1e-12);
  CHECK(defect[1][1] < 1e-12);
  CHECK(defect[0][1] < 1e-12);
}

TEST_CASE("Weyl witness at d = 2 satisfies every identity") {
  const double h = 1.0 / std::numbers::sqrt2;
  const UnitaryMessageSet w = weyl_set(2);
  const auto r = verify_necessary_identities(SchmidtSpectrum::uniform(2), leading_weyl(2), Complex(h) * w[2], Complex(h) * w[3]);
  CHECK(r.case_tag == "case-i");
  CHECK(r.x == doctest::Approx(0.5));
  CHECK(r.gamma_row == doctest::Approx(2.0));
  CHECK(r.defects.at("terminal") == 0.0);
  CHECK(r.defects.count("case_i_uniformity") == 1);
  check_all_below(r, 1e-10);
}

TEST_CASE("Weyl witness at d = 3 satisfies every identity") {
  const double h = 1.0 / std::numbers::sqrt2;
  const UnitaryMessageSet w = weyl_set(3);
  const auto r = verify_necessary_identities(SchmidtSpectrum::uniform(3), leading_weyl(3), Complex(h) * w[7], Complex(h) * w[8]);
  CHECK(r.case_tag == "case-i");
  CHECK(r.gamma_row == doctest::Approx(2.0));  // 9 - 7
  check_all_below(r, 1e-9);
}

TEST_CASE("unbalanced witness exercises the second case") {
  const UnitaryMessageSet w = weyl_set(3);
  for (double x : {0.1, 0.3, 0.45, 0.8}) {
    const auto r = verify_necessary_identities(SchmidtSpectrum::uniform(3), leading_weyl(3),
                                               Complex(std::sqrt(x)) * w[7], Complex(std::sqrt(1.0 - x)) * w[8]);
    CHECK(r.case_tag == "case-ii");
    CHECK(r.swapped == (x > 0.5));
    CHECK(r.x == doctest::Approx(std::min(x, 1.0 - x)));
    for (const char* name : {"b_formula", "b_monotone", "column_orthogonality", "largest_w_eigen"}) {
      CHECK(r.defects.count(name) == 1);
    }
    // b_j = x on uniform Weyl witnesses (each column of sqrt(x) W has squared norm x).
    for (double bj : r.b) CHECK(bj == doctest::Approx(r.x));
    check_all_below(r, 1e-9);
  }
}

TEST_CASE("non-maximal spectra violate the hypotheses") {
  const double h = 1.0 / std::numbers::sqrt2;
  const UnitaryMessageSet w = weyl_set(2);
  const SchmidtSpectrum s = parse_spectrum("81/160,79/160");
  const auto r = verify_necessary_identities(s, qubit_example_messages(), Complex(h) * w[2], Complex(h) * w[3]);
  CHECK(r.case_tag == "hypotheses-violated");
  CHECK_FALSE(r.hypotheses_hold());
  CHECK(r.defects.at("hypothesis_gram") >= 1e-9);

  // The protocol's own final-message pair is not trace preserving, so it fails too.
  const ProtocolBundle b = build_bundle(s, qubit_example_messages(), 8);
  CHECK(verify_necessary_identities(s, qubit_example_messages(), b.t, b.y).case_tag == "hypotheses-violated");
}

TEST_CASE("identity checker preconditions") {
  const UnitaryMessageSet w = weyl_set(2);
  CHECK_THROWS_AS(verify_necessary_identities(SchmidtSpectrum::uniform(2), w, w[2], w[3]), PreconditionError);
  CHECK_THROWS_AS(verify_necessary_identities(SchmidtSpectrum::uniform(3), leading_weyl(2), w[2], w[3]), DimensionError);
}

TEST_CASE("uniformity witness") {
  const auto u5 = uniformity_witness(SchmidtSpectrum::uniform(5));
  CHECK(u5.value == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(u5.is_uniform);
  const auto ex = uniformity_witness(parse_spectrum("81/160,79/160"));
  CHECK(ex.value == doctest::Approx(1.0 + 81.0 / 79.0));
  CHECK_FALSE(ex.is_uniform);
  const auto q = uniformity_witness(SchmidtSpectrum::from_values({0.5, 0.3, 0.2}));
  CHECK(q.value == doctest::Approx(1.0 + 5.0 / 3.0 + 2.5));

  PhiloxStream rng(99);
  for (int k = 0; k < 1000; ++k) {
    const SchmidtSpectrum s = random_spectrum(2 + k % 6, rng);
    const auto w = uniformity_witness(s);
    CHECK(w.value >= static_cast<double>(s.dim()) - 1e-12);
    CHECK_FALSE(w.is_uniform);
  }
}
