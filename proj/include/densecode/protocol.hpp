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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "densecode/channels.hpp"
#include "densecode/encoding.hpp"
#include "densecode/linalg.hpp"
#include "densecode/rng.hpp"
#include "densecode/states.hpp"
#include "densecode/tolerance.hpp"

namespace densecode {

/// R_j = d - (d^2 - 2) lambda_j. Throws PreconditionError when
/// lambda_0 >= d / (d^2 - 2), where the construction does not apply.
std::vector<double> compute_R(const SchmidtSpectrum& s);

/// gamma_j = d (lambda_j - lambda_{d-1}) / (lambda_j [d - (d^2-2) lambda_{d-1}]),
/// the diagonal of C^dagger C as a function of the spectrum alone.
std::vector<double> gamma_closed_form(const SchmidtSpectrum& s);

/// Everything that defines one protocol instance: d^2 - 2 unitary messages
/// plus the non-trace-preserving final message built from (T, Y, C).
struct ProtocolBundle {
  SchmidtSpectrum spectrum;
  UnitaryMessageSet messages;
  BipartiteState psi;
  CMatrix m;      // d^2 x d^2 unitary; first d^2-2 columns are the lifted messages
  CVector v, w;   // last two columns of m
  CMatrix t, y, c;
  std::vector<double> gamma;  // diag(C^dagger C)
  std::vector<double> r;      // R_j
  double p1 = 0;              // probability the ancilla is found in |2>
  double p_t = 0;
  double p_y = 0;
  DilationResult dilation;    // unitary on A (x) qutrit for {T, Y, C}
  Seed seed = 0;
  /// Named invariant defects, all below the invariant tolerance on return.
  std::map<std::string, double> defects;

  std::size_t dim() const noexcept { return spectrum.dim(); }
  std::size_t num_messages() const noexcept { return dim() * dim() - 1; }
  std::size_t final_message() const noexcept { return dim() * dim() - 2; }
};

/// Builds and validates a protocol bundle. Throws PreconditionError when the
/// messages are not certified or the spectrum is too skewed, and
/// InvariantError naming the first invariant that fails.
ProtocolBundle build_bundle(const SchmidtSpectrum& s, const UnitaryMessageSet& messages, Seed seed,
                            const Tolerances& tol = kDefaultTolerances);

/// p1 = sum_j lambda_j gamma_j.
double success_probability(const ProtocolBundle& bundle);

/// (d^3 (d-1) / 2) (lambda_0 - 1/d).
double p1_bound_general(const SchmidtSpectrum& s);

struct EqualTailP1 {
  double exact = 0;
  double bound = 0;
};

/// Failure probability and its bound when lambda_1 = ... = lambda_{d-1}.
/// Requires 1/d <= lambda0 < d/(d^2-2).
EqualTailP1 p1_equal_tail(std::size_t d, double lambda0);

/// Bob's projective measurement: rank-1 projectors onto each lifted unitary
/// message, then the rank-2 projector onto span{(T (x) I)psi, (Y (x) I)psi}.
struct Decoder {
  std::vector<CMatrix> projectors;
};

Decoder build_decoder(const ProtocolBundle& bundle);

enum class Variant { kMeasureAncilla, kNoMeasure };

const char* to_string(Variant v) noexcept;
Variant parse_variant(std::string_view text);

struct EncodedMessage {
  /// AB coordinates (ancilla_dim 1) for unitary messages and the aborted
  /// branch; ABa coordinates (ancilla_dim 3, ancilla index fastest) for the
  /// final message, measured or not.
  CVector state;
  std::size_t ancilla_dim = 1;
  /// Ancilla outcome: 0 (|0> or |1>), 1 (|2>); empty when not measured.
  std::optional<int> ancilla_outcome;
  /// Alice saw |2>_a and withholds her qudit; `state` is the collapsed AB
  /// state (C (x) I)psi / ||.||.
  bool aborted = false;
};

EncodedMessage encode_message(const ProtocolBundle& bundle, std::size_t index, Variant variant, PhiloxStream& rng);

/// Exact probabilities Bob sees for one message before any sampling.
struct OutcomeDistribution {
  std::vector<double> outcome;  // one entry per decoder projector
  double undetected = 0;        // mass outside every S_j
  double aborted = 0;           // Alice withheld the qudit
};

OutcomeDistribution outcome_distribution(const ProtocolBundle& bundle, const Decoder& decoder, std::size_t message,
                                         Variant variant);

/// Decoder outcome probabilities for an encoded message.
std::vector<double> decode_probabilities(const Decoder& decoder, const EncodedMessage& encoded);

struct SimulationReport {
  std::size_t trials = 0;
  std::size_t message_sent = 0;
  std::vector<std::size_t> outcome_histogram;  // per decoder outcome
  std::size_t undetected = 0;
  std::size_t aborted = 0;
  Variant variant = Variant::kMeasureAncilla;
  Seed seed = 0;

  std::size_t total() const;
};

/// Monte-Carlo run: each trial encodes, then samples Bob's measurement. Trial
/// t draws from PhiloxStream(seed, t), so results do not depend on `threads`
/// (0 picks the hardware concurrency).
SimulationReport simulate(const ProtocolBundle& bundle, const Decoder& decoder, std::size_t message,
                          std::size_t trials, Variant variant, Seed seed, unsigned threads = 0);

/// {I, X} for d = 2, the message set of the worked two-qubit example.
UnitaryMessageSet qubit_example_messages();

}  // namespace densecode
