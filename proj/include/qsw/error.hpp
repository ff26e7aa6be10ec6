// Copyright 2026 The qsw Authors
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

namespace qsw {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed networks, out-of-range parameters, config files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Dimension mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure during propagation or evaluation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A density-matrix or probability-vector invariant was violated beyond tolerance.
class InvariantViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The adaptive integrator could not make progress.
class StepSizeUnderflow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Scaling fits: too few points, degenerate abscissa, or no admissible window.
class FitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qsw
