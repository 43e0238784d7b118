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

#include <string>

#include "fpmod/devissage.hpp"
#include "fpmod/limits.hpp"

namespace fpmod {

struct DescentReport {
  RingMap map;
  ModuleInvariants base_invariants;
  ModuleInvariants extended_invariants;
  bool verdict_base = false;
  bool verdict_extended = false;
  bool equivalence_holds = false;
  /// Set when the verdicts diverge along a map that is not faithfully flat.
  std::optional<std::string> counterexample_flag;
};

/// Projectivity of p against projectivity of its base change. Along a
/// faithfully flat map a divergence throws InternalInvariant.
DescentReport check_projectivity_descent(const RingMap& phi, const FpModule& p);

/// s ⊗ x with s in the target ring and x a coordinate column over the source.
struct PureTensor {
  RingElem scalar;
  Mat element;
};
using TensorSum = std::vector<PureTensor>;

/// Coordinates of a sum of pure tensors in base_change(phi, p).
Mat tensor_sum_coordinates(const RingMap& phi, const FpModule& p, const TensorSum& t);

/// The source-side components of all pure tensors, verified to span p.
std::vector<Mat> descend_generators(const RingMap& phi, const FpModule& p, const std::vector<TensorSum>& ext_gens);

struct MLDescentReport {
  MLVerdict base;
  MLVerdict extended;
  /// "holds" or "inconclusive"
  std::string verdict;
  /// extended ML-certified implies base ML-certified
  bool implication_holds = true;
};

MLDescentReport check_ml_descent(const RingMap& phi, const Tower& t, std::size_t horizon);

struct ProjCharReport {
  bool flat = false;
  bool projective = false;
  /// Automatic for finitely presented modules.
  bool mittag_leffler = true;
  /// Direct sum of cyclic modules, read off the minimal presentation.
  bool sum_of_cyclics = true;
  bool consistent = false;
};

/// Flatness against projectivity; throws DeciderDisagreement on mismatch.
ProjCharReport projchar_check(const FpModule& p);

}  // namespace fpmod
