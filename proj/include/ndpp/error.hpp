// Copyright 2026 The Authors.
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
#include <vector>

namespace ndpp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument: index out of range, negative coefficient, size mismatch.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A required principal minor is (numerically) zero.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, double det)
      : Error(what), det_(det) {}
  double det() const { return det_; }

 private:
  double det_;
};

/// Numerical breakdown in a polynomial or eigenvalue computation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// No positive-mass set is reachable.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Enumeration would exceed the desk-scale limits.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Local search hit its iteration cap; carries the best set seen.
class IncompleteSearchError : public Error {
 public:
  IncompleteSearchError(const std::string& what, std::vector<int> best,
                        double value)
      : Error(what), best_(std::move(best)), value_(value) {}
  const std::vector<int>& best() const { return best_; }
  double value() const { return value_; }

 private:
  std::vector<int> best_;
  double value_;
};

/// The up-step of a down-up walk has no positive-mass completion.
class TrappedStateError : public Error {
 public:
  TrappedStateError(const std::string& what, std::vector<int> down_set)
      : Error(what), down_set_(std::move(down_set)) {}
  const std::vector<int>& down_set() const { return down_set_; }

 private:
  std::vector<int> down_set_;
};

}  // namespace ndpp
