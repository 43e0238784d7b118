// Copyright 2026 The fpmod Authors
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
#include <string_view>

namespace fpmod {

enum class ErrorCode {
  // input errors
  InvalidInput,
  InvalidRing,
  UnsupportedRing,
  UnsupportedRingMap,
  DivisionByZero,
  DimensionMismatch,
  RingMismatch,
  NotWellDefined,
  SourceMismatch,
  SquareDoesNotCommute,
  NotARetraction,
  NotFaithfullyFlat,
  HypothesisViolation,
  LiftFailedAtHorizon,
  NotDirected,
  AxiomViolation,
  PreconditionViolation,
  InvalidFiltration,
  NotInternal,
  NotIdempotent,
  NotProjective,
  DoesNotSpan,
  ProbeInconclusive,
  // internal invariant failures: these indicate a bug, never bad input
  DeciderDisagreement,
  ComponentsDoNotSpan,
  InternalInvariant,
};

std::string_view error_name(ErrorCode code);

/// True for codes that signal a broken internal invariant rather than bad input.
bool is_internal(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::string location = {})
      : std::runtime_error(what), code_(code), location_(std::move(location)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& location() const noexcept { return location_; }

 private:
  ErrorCode code_;
  std::string location_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what,
                              std::string location = {}) {
  throw Error(code, what, std::move(location));
}

}  // namespace fpmod
