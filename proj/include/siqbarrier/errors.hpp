// Copyright 2026 siqbarrier contributors
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

#include <complex>
#include <stdexcept>
#include <string>

namespace siqbarrier {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the admissible domain (non-positive energy, bad parameters, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// log_gamma evaluated at a non-positive integer.
class PoleError : public DomainError {
 public:
  explicit PoleError(double location)
      : DomainError("log_gamma: pole at z = " + std::to_string(location)),
        location_(location) {}
  double location() const noexcept { return location_; }

 private:
  double location_;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// F12 = 0: the incidence basis cannot carry a transmitted wave.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// An F-matrix conservation property failed beyond tolerance.
class ConservationError : public Error {
 public:
  using Error::Error;
};

/// The oracle could not reach the requested matching quality.
class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, double x_reached, double quality)
      : Error(what), x_reached_(x_reached), quality_(quality) {}
  double x_reached() const noexcept { return x_reached_; }
  double quality() const noexcept { return quality_; }

 private:
  double x_reached_;
  double quality_;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

}  // namespace siqbarrier
