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

#include "fpmod/pushout.hpp"

namespace fpmod {

/// A fixed test module Q used to witness failure of injectivity of f ⊗ Q.
struct TensorProbe {
  FpModule module;
  std::string label;
};

struct PurityCounterexample {
  TensorProbe probe;
  /// Coordinates in source ⊗ probe: nonzero there, killed by f ⊗ id.
  Mat element;
};

struct PurityVerdict {
  bool pure = false;
  std::optional<Morphism> retraction;
  std::optional<PurityCounterexample> counterexample;
};

/// R itself, then R/(π^k) for small primes π and the primes dividing the
/// torsion of f's source, target and cokernel, k up to one past the
/// largest exponent seen. Over Z/n: R/(d) for the divisors d of n.
std::vector<TensorProbe> probe_family(const Morphism& f);

/// A nonzero element of ker(f ⊗ id_Q), if any.
std::optional<Mat> probe_kernel_element(const Morphism& f, const FpModule& q);

/// Split criterion, with probe counterexamples when no retraction exists.
/// Throws ProbeInconclusive if neither is found.
PurityVerdict is_universally_injective(const Morphism& f);

/// For a commuting square h ∘ k ≡ f ∘ g with F, G free and π ∘ f ≡ id,
/// returns φ : G -> M with φ ∘ k ≡ g.
Morphism lift_through_univ_injective(const Morphism& f, const Morphism& pi, const Morphism& g,
                                     const Morphism& h, const Morphism& k);

struct DominationVerdict {
  bool dominates = false;
  /// h with g ≡ h ∘ f
  std::optional<Morphism> factor;
  bool pushout_agrees = false;
};

DominationVerdict dominates(const Morphism& f, const Morphism& g);
/// Purity of the second leg of pushout(f, g).
bool dominates_via_pushout(const Morphism& f, const Morphism& g);
bool mutually_dominate(const Morphism& f, const Morphism& g);

/// Checks that purity after a faithfully flat base change implies purity.
bool purity_descends(const RingMap& phi, const Morphism& f);

}  // namespace fpmod
