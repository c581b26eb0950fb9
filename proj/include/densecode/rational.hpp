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

#include <cstdint>
#include <string>
#include <string_view>

namespace densecode {

__extension__ using Int128 = __int128;

/// Exact rational used only for parsing and echoing spectrum literals.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  /// Parses "81/160", "0.6", "1", "-3/4". Decimals are converted exactly.
  static Rational parse(std::string_view text);

  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<Int128>(a.num) * b.den < static_cast<Int128>(b.num) * a.den;
  }
};

Rational operator+(const Rational& a, const Rational& b);

}  // namespace densecode
