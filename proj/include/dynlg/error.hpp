// Copyright 2026 The dynlg Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace dynlg {

using Int = mpz_class;
using Rational = mpq_class;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Factorization ran out of its step budget; `cofactor` is the part left unsplit.
class FactorizationBudgetExceeded : public Error {
 public:
  explicit FactorizationBudgetExceeded(Int cofactor)
      : Error("factorization budget exceeded; unfactored cofactor " + cofactor.get_str()),
        cofactor_(std::move(cofactor)) {}
  const Int& cofactor() const { return cofactor_; }

 private:
  Int cofactor_;
};

/// A coordinate outgrew the configured bit cap while iterating.
class HeightBudgetExceeded : public Error {
 public:
  HeightBudgetExceeded(std::uint64_t last_index, std::uint64_t bits)
      : Error("height budget exceeded at iterate " + std::to_string(last_index) + " (" +
              std::to_string(bits) + " bits)"),
        last_index_(last_index) {}
  /// Index of the last iterate that was still within budget.
  std::uint64_t last_index() const { return last_index_; }

 private:
  std::uint64_t last_index_;
};

class BadReduction : public Error {
 public:
  explicit BadReduction(const Int& p) : Error("no good reduction at p = " + p.get_str()) {}
};

class CycleBlowup : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string token)
      : Error(what + ": '" + token + "'"), token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

}  // namespace dynlg
