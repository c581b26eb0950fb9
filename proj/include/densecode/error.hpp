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

#include <stdexcept>
#include <string>
#include <utility>

namespace densecode {

class DenseCodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not agree.
class DimensionError : public DenseCodeError {
 public:
  using DenseCodeError::DenseCodeError;
};

// An input violates a documented precondition (not Hermitian, not
// orthonormal, not trace preserving, spectrum out of range, ...).
class PreconditionError : public DenseCodeError {
 public:
  using DenseCodeError::DenseCodeError;
};

// A computed object failed one of its own invariant checks.
class InvariantError : public DenseCodeError {
 public:
  InvariantError(std::string check, double defect)
      : DenseCodeError("invariant '" + check + "' failed with defect " +
                       std::to_string(defect)),
        check_(std::move(check)),
        defect_(defect) {}

  const std::string& check() const noexcept { return check_; }
  double defect() const noexcept { return defect_; }

 private:
  std::string check_;
  double defect_;
};

}  // namespace densecode
