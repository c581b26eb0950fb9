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

#include "densecode/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>

#include "densecode/error.hpp"

namespace densecode {
namespace {

Rational reduced(Int128 num, Int128 den) {
  if (den == 0) throw PreconditionError("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int128 a = num < 0 ? -num : num;
  Int128 b = den;
  while (b != 0) {
    const Int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  if (num > kMax || -num > kMax || den > kMax) throw PreconditionError("rational: overflow");
  return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

Int128 parse_decimal(std::string_view text, Int128& scale) {
  bool negative = false;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
  Int128 value = 0;
  scale = 1;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch == '.' && !seen_point) {
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw PreconditionError("rational: unexpected character in '" + std::string(text) + "'");
    }
    seen_digit = true;
    value = value * 10 + (ch - '0');
    if (seen_point) scale *= 10;
    if (value > static_cast<Int128>(1) << 100) throw PreconditionError("rational: literal too long");
  }
  if (!seen_digit) throw PreconditionError("rational: empty literal '" + std::string(text) + "'");
  return negative ? -value : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  Int128 num_scale = 1;
  const Int128 num = parse_decimal(text.substr(0, slash), num_scale);
  if (slash == std::string_view::npos) return reduced(num, num_scale);
  Int128 den_scale = 1;
  const Int128 den = parse_decimal(text.substr(slash + 1), den_scale);
  // (num / num_scale) / (den / den_scale)
  return reduced(num * den_scale, den * num_scale);
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(const Rational& a, const Rational& b) {
  return reduced(static_cast<Int128>(a.num) * b.den + static_cast<Int128>(b.num) * a.den,
                 static_cast<Int128>(a.den) * b.den);
}

}  // namespace densecode
