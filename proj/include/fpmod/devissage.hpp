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

#include "fpmod/homtensor.hpp"

namespace fpmod {

/// Finite filtration 0 = stages[0] ⊆ ... ⊆ stages[L] = ambient with
/// stages[a+1] = stages[a] ⊕ complements[a].
struct KaplanskyFiltration {
  FpModule ambient;
  std::vector<SubmoduleRep> stages;
  std::vector<SubmoduleRep> complements;
};

struct InternalDecomposition {
  FpModule ambient;
  std::vector<SubmoduleRep> parts;
};

struct StructureCheck {
  bool valid = true;
  /// First violated clause, empty when valid.
  std::string clause;
  std::size_t index = 0;
  /// Clauses that hold vacuously at finite length.
  std::vector<std::string> vacuous;
};

StructureCheck validate_filtration(const KaplanskyFiltration& f);
/// Parts jointly span, and each part meets the sum of the others in 0.
StructureCheck check_internal(const InternalDecomposition& d);

InternalDecomposition filtration_to_decomposition(const KaplanskyFiltration& f);
KaplanskyFiltration decomposition_to_filtration(const InternalDecomposition& d);

/// One step of the closure algorithm: the stage is the span of whole parts
/// and is stable under e and id - e.
struct DevissageStage {
  std::vector<std::size_t> part_indices;
  SubmoduleRep stage;
  /// stage ∩ im(e) and stage ∩ im(id - e), in ambient coordinates.
  SubmoduleRep in_image;
  SubmoduleRep in_kernel;
};

struct SummandDecomposition {
  /// im(e) as a module; its generators are the images of the ambient
  /// generators, so its coordinates are ambient coordinates fed through e.
  Embedded image;
  InternalDecomposition decomposition;
  std::vector<DevissageStage> stages;
};

SummandDecomposition summand_devissage(const InternalDecomposition& d, const Morphism& e);

/// Cyclic summands: the presented generators when the relations are
/// diagonal, otherwise read off the Smith form. Requires a projective module.
InternalDecomposition projective_cyclic_decomposition(const FpModule& p);

}  // namespace fpmod
