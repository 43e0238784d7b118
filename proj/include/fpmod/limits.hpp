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

#include <map>
#include <string>

#include "fpmod/homtensor.hpp"

namespace fpmod {

enum class TowerDirection { Forward, Backward };

/// Self-similar chain: one object, one endomorphism. Forward towers are
/// directed systems F -> F -> ...; backward towers are inverse systems
/// F <- F <- ... with level j mapping to level i by step^{j-i}.
struct Tower {
  FpModule object;
  Morphism step;
  TowerDirection direction = TowerDirection::Forward;

  static Tower make(Morphism step, TowerDirection direction);
};

enum class MLStatus { ML, NotML, UnknownAtHorizon };

std::string_view ml_status_name(MLStatus s);

struct MLVerdict {
  MLStatus status = MLStatus::UnknownAtHorizon;
  std::size_t horizon = 0;
  /// Level j of the witness (ML only).
  std::optional<std::size_t> level;
  /// h with step^j ≡ h ∘ step^{j+1} (forward towers only).
  std::optional<Morphism> factor;
  std::string note;
};

/// Least j ≤ horizon with step^j factoring through step^{j+1}.
MLVerdict tower_ml_check(const Tower& t, std::size_t horizon);

/// Least k ≤ horizon with image(step^k) = image(step^{k+1}).
MLVerdict inverse_tower_stabilization(const Tower& t, std::size_t horizon);

/// Given levelwise exact A -f-> B -g-> C -> 0 of backward towers and a
/// compatible family c_0..c_horizon, returns b_0..b_horizon with g(b_i) = c_i
/// and B.step(b_{i+1}) = b_i.
std::vector<Mat> tower_surjective_lift(const Tower& a, const Tower& b, const Tower& c, const Morphism& fmap,
                                       const Morphism& gmap, const std::vector<Mat>& c_family,
                                       std::size_t horizon);

/// Finite poset given by le[i][j] (i ≤ j) with maps for every related pair.
struct FiniteDirectedSystem {
  std::vector<std::vector<bool>> le;
  std::vector<FpModule> objects;
  std::map<std::pair<std::size_t, std::size_t>, Morphism> maps;
};

struct ColimitResult {
  FpModule colimit;
  std::vector<Morphism> canonical;
  std::size_t top = 0;
};

ColimitResult finite_system_colimit(const FiniteDirectedSystem& s);

struct EnlargeResult {
  /// Generators of the enlarged relation module, as columns over R^J.
  Mat relations;
  std::size_t generators = 0;
  bool inside_kernel = false;
  bool quotient_free = false;
  bool contains_input = false;
  ModuleInvariants quotient;
};

/// psi : R^J -> m (m torsion-free) with n ⊆ ker psi. Returns a relation
/// module N' ⊇ n inside ker psi whose quotient R^J / N' is free.
EnlargeResult enlarge_to_free(const FpModule& m, std::size_t j_size, const Mat& psi, const Mat& n);

}  // namespace fpmod
