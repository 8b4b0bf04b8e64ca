// Copyright 2026 The holonomy-lab Authors
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

namespace holonomy {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero in cyclotomic field") {}
};

struct OrderMismatch : Error {
  OrderMismatch(int a, int b)
      : Error("cyclotomic order mismatch: " + std::to_string(a) + " vs " +
              std::to_string(b)) {}
};

/// A square root or eigenvector left the working cyclotomic field.
struct FieldError : Error {
  using Error::Error;
};

struct UnsupportedParams : Error {
  using Error::Error;
};

struct IdentityElement : Error {
  IdentityElement() : Error("identity has infinitely many fixed points") {}
};

struct BasisMismatch : Error {
  using Error::Error;
};

struct PoleHit : Error {
  using Error::Error;
};

struct SearchFailed : Error {
  using Error::Error;
};

struct GeometryFailure : Error {
  using Error::Error;
};

struct StepUnderflow : Error {
  using Error::Error;
};

}  // namespace holonomy
