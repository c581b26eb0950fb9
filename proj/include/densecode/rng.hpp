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

#include <array>
#include <cstdint>

namespace densecode {

using Seed = std::uint64_t;

/// Philox4x32-10 counter-based generator.
///
/// A stream is identified by (seed, stream id); draws within a stream are
/// indexed by an internal 64-bit counter. Identical (seed, stream, draw)
/// triples give identical bits on every platform, which is what makes
/// simulations reproducible independently of thread count.
class PhiloxStream {
 public:
  explicit PhiloxStream(Seed seed, std::uint64_t stream = 0) noexcept;

  /// Next 32 random bits.
  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;
  /// Uniform double in [0, 1) with 53 bits of resolution.
  double uniform() noexcept;
  /// Standard normal variate (Box-Muller; both outputs are used).
  double normal() noexcept;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key) noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t draw_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// Deterministic child seed, used to hand independent seeds to sub-steps.
Seed derive_seed(Seed parent, std::uint64_t tag) noexcept;

}  // namespace densecode
