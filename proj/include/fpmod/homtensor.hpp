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

#include "fpmod/module.hpp"

namespace fpmod {

/// Hom(source, target) as a presented module. Elements are coordinate
/// columns in the generators of `underlying`.
struct HomModule {
  FpModule source;
  FpModule target;
  FpModule underlying;
  /// underlying -> target^{source.gens}; column-stacked morphism matrices.
  Morphism incl;

  Mat encode(const Morphism& f) const;
  Morphism decode(const Mat& element) const;
};

HomModule hom_module(const FpModule& m, const FpModule& n);

/// Generator (i, j) of m ⊗ n has index i * n.gens() + j.
FpModule tensor(const FpModule& m, const FpModule& n);
Morphism tensor_mor(const Morphism& f, const Morphism& g);

FpModule base_change(const RingMap& phi, const FpModule& m);
Morphism base_change_mor(const RingMap& phi, const Morphism& f);

/// Tensoring with m preserves injectivity. Decided without invariant factors:
/// saturation of the relation lattice over domains, and comparison of
/// ker(×d) with (n/d)·m over Z/n.
bool is_flat(const FpModule& m);

/// Invariant-factor criterion.
bool projective_by_invariants(const FpModule& m);
/// Searches for a section of the canonical surjection R^gens -> m.
bool projective_by_splitting(const FpModule& m);
/// Runs both deciders; throws DeciderDisagreement if they differ.
bool is_projective(const FpModule& m);

/// Positive divisors of a positive integer, ascending.
std::vector<mpz_class> divisors(const mpz_class& n);
/// Prime factors with multiplicity exponents, ascending primes.
std::vector<std::pair<mpz_class, unsigned>> factor_integer(const mpz_class& n);

}  // namespace fpmod
