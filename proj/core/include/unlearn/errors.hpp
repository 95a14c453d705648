// Copyright 2026 The Unlearn Authors
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

#ifndef UNLEARN_ERRORS_HPP
#define UNLEARN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace unlearn {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions are incompatible, or a matrix is not square where required.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An iterative decomposition ran out of budget, or non-finite values appeared.
class NumericError : public Error {
 public:
  using Error::Error;
};

class NotPsdError : public Error {
 public:
  using Error::Error;
};

/// An operator has a singular value above one, so it cannot belong to a complete set.
class NotContractionError : public Error {
 public:
  using Error::Error;
};

/// A branch was requested whose Born probability is below the zero-probability threshold.
class ZeroProbabilityError : public Error {
 public:
  using Error::Error;
};

/// A scalar argument is outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Measurement-tree misuse, such as attaching a POVM to an interior node.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// The branch operator has a non-trivial nullspace and no correction can make it unitary.
class UnrecoverableBranchError : public Error {
 public:
  using Error::Error;
};

/// A set of Kraus operators that was required to be complete is not.
class CompletenessError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document. Carries the 1-based line and column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace unlearn

#endif  // UNLEARN_ERRORS_HPP
