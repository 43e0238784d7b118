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

#include "fpmod/homtensor.hpp"

namespace fpmod {

/// object = (B ⊕ C) / span{(f(a), -g(a))}; generators are B's then C's.
struct PushoutData {
  Morphism f;
  Morphism g;
  FpModule object;
  Morphism inl;
  Morphism inr;
};

PushoutData pushout(const Morphism& f, const Morphism& g);

/// The unique w with w ∘ inl ≡ u and w ∘ inr ≡ v.
Morphism pushout_induced(const PushoutData& p, const Morphism& u, const Morphism& v);

/// Base change of the pushout against the pushout of the base-changed maps:
/// isomorphic objects, and the identification carries the base-changed inr
/// onto inr of the second pushout.
bool pushout_base_change_check(const RingMap& phi, const Morphism& f, const Morphism& g);

}  // namespace fpmod
