// Copyright 2026 The hessian-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace hessian_lab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the natural domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A requested value lies outside the range of a map being inverted.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// An integral fails to converge under cutoff refinement.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double rate)
      : Error(what), rate_(rate) {}

  /// Fitted growth exponent of the partial integrals in (-log cutoff).
  [[nodiscard]] double rate() const noexcept { return rate_; }

 private:
  double rate_;
};

/// The radial solution is unbounded at the origin.
class UnboundedSolutionError : public DivergenceError {
 public:
  using DivergenceError::DivergenceError;
};

/// A function has infinite modular for every scaling.
class NotInSpaceError : public Error {
 public:
  using Error::Error;
};

/// A computed Hessian density is negative beyond tolerance.
class NotMSubharmonicError : public Error {
 public:
  using Error::Error;
};

/// The instance is outside what a verifier supports (e.g. unbounded data).
class UnsupportedInstanceError : public Error {
 public:
  using Error::Error;
};

/// A sublevel set reaches the boundary of the unit ball.
class BoundaryTouchingError : public Error {
 public:
  using Error::Error;
};

/// No grid point satisfies the stopping condition of the iteration.
class HorizonError : public Error {
 public:
  using Error::Error;
};

/// A parameter constraint (e.g. on gamma or alpha) is violated.
class ConditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace hessian_lab
