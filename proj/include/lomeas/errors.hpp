// Copyright 2026 The lomeas Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace lomeas {

/// Raised when an argument violates a documented precondition
/// (register mismatch, non-orthonormal basis, bad assignment, ...).
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An assignment column with no basis state would define a zero projector.
class EmptySubsetError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Normalizing or comparing a (near-)zero vector.
class DegenerateStateError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

} // namespace lomeas
