// Copyright 2026 The qdasim Authors
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

namespace qdasim {

/// A well-formed request the mathematics cannot satisfy: rank collapse,
/// degenerate scatter, a postselection branch that vanishes.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Floating-point breakdown: non-finite values, a solver that did not converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments (bad dimensions, out-of-range parameters) throw
// std::invalid_argument.

}  // namespace qdasim
