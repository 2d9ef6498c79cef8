// Copyright 2026 The viewbayes Authors
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

#ifndef VIEWBAYES_ERROR_HPP
#define VIEWBAYES_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace viewbayes {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Malformed input record; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyMeshError : public Error {
 public:
  using Error::Error;
};

class DegenerateMeshError : public Error {
 public:
  using Error::Error;
};

class InvalidIncrementError : public Error {
 public:
  using Error::Error;
};

class EmptySilhouetteError : public Error {
 public:
  using Error::Error;
};

/// Density is infinite at the requested point (Beta endpoint with a<1 or b<1).
class SingularDensityError : public Error {
 public:
  using Error::Error;
};

/// A fused grid density carries no mass and cannot be renormalized.
class DegenerateFusionError : public Error {
 public:
  using Error::Error;
};

}  // namespace viewbayes

#endif  // VIEWBAYES_ERROR_HPP
