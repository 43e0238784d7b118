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

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "fpmod/normal_form.hpp"

namespace fpmod {

/// Isomorphism invariant: M ≅ ⊕ R/(torsion[i]) ⊕ R^free_rank.
/// Torsion entries are nonunit, nonzero canonical associates forming a
/// divisibility chain. Over fields the torsion list is always empty.
struct ModuleInvariants {
  std::vector<RingElem> torsion;
  std::size_t free_rank = 0;
};

/// coker(rels : R^{rels.cols()} -> R^{gens}). Over IntegersMod(n) the
/// relations n·e_i are implicit.
class FpModule {
 public:
  FpModule();
  FpModule(RingDesc ring, Mat rels);

  static FpModule free(const RingDesc& ring, std::size_t rank);
  /// R/(d1) ⊕ R/(d2) ⊕ ...
  static FpModule cyclic_sum(const RingDesc& ring, const std::vector<RingElem>& ds);
  static FpModule cyclic_sum(const RingDesc& ring, std::initializer_list<long> ds);

  const RingDesc& ring() const { return data_->ring; }
  std::size_t gens() const { return data_->rels.rows(); }
  const Mat& rels() const { return data_->rels; }

  /// Relations over the Euclidean base ring, including the implicit n·I
  /// block for IntegersMod(n).
  Mat base_relations() const;

  /// Lazily computed, shared between copies; computed at most once.
  const ModuleInvariants& invariants() const;

  bool is_zero() const;

  friend bool operator==(const FpModule& a, const FpModule& b) {
    return a.data_ == b.data_ || (a.ring() == b.ring() && a.rels() == b.rels());
  }

 private:
  struct Data {
    RingDesc ring;
    Mat rels;
    mutable std::once_flag once;
    mutable ModuleInvariants inv;
  };
  std::shared_ptr<const Data> data_;
};

/// A presented module map: mat (target.gens x source.gens) together with a
/// witness X satisfying mat·source.rels = target.rels·X.
class Morphism {
 public:
  /// Solves for the witness; throws NotWellDefined when none exists.
  static Morphism make(FpModule source, FpModule target, Mat mat);
  /// Skips the solve when a witness is already known (checked).
  static Morphism with_witness(FpModule source, FpModule target, Mat mat, Mat witness);
  static Morphism identity(const FpModule& m);
  static Morphism zero(const FpModule& source, const FpModule& target);

  const FpModule& source() const { return source_; }
  const FpModule& target() const { return target_; }
  const Mat& mat() const { return mat_; }
  const Mat& witness() const { return witness_; }
  const RingDesc& ring() const { return source_.ring(); }

  /// Image of a coordinate vector (column) of the source.
  Mat apply(const Mat& x) const { return mat_ * x; }

 private:
  Morphism(FpModule s, FpModule t, Mat m, Mat w)
      : source_(std::move(s)), target_(std::move(t)), mat_(std::move(m)), witness_(std::move(w)) {}

  FpModule source_;
  FpModule target_;
  Mat mat_;
  Mat witness_;
};

/// g ∘ f
Morphism compose(const Morphism& g, const Morphism& f);
Morphism add(const Morphism& f, const Morphism& g);
Morphism subtract(const Morphism& f, const Morphism& g);
Morphism scale(const RingElem& c, const Morphism& f);

/// f ≡ g modulo the target relations.
bool equivalent(const Morphism& f, const Morphism& g);
bool is_zero_map(const Morphism& f);

/// Columns of gens_mat are coordinates in the ambient generators.
struct SubmoduleRep {
  FpModule ambient;
  Mat gens_mat;
};

SubmoduleRep zero_submodule(const FpModule& m);
SubmoduleRep full_submodule(const FpModule& m);

/// x ∈ span(sub.gens_mat) + span(ambient.rels)
bool member(const SubmoduleRep& sub, const Mat& x);
/// Every column of x is a member.
bool members(const SubmoduleRep& sub, const Mat& x);
/// a ⊆ b
bool contained(const SubmoduleRep& a, const SubmoduleRep& b);
bool same_submodule(const SubmoduleRep& a, const SubmoduleRep& b);
bool is_zero_submodule(const SubmoduleRep& s);
SubmoduleRep sum(const SubmoduleRep& a, const SubmoduleRep& b);
SubmoduleRep intersect(const SubmoduleRep& a, const SubmoduleRep& b);
/// x ≡ y in the module.
bool equal_elements(const FpModule& m, const Mat& x, const Mat& y);

/// The submodule as an abstract module, with its inclusion into the ambient.
struct Embedded {
  FpModule module;
  Morphism incl;
};
Embedded as_module(const SubmoduleRep& sub);

ModuleInvariants invariant_factors(const FpModule& m);
bool is_iso(const FpModule& a, const FpModule& b);

struct KernelResult {
  FpModule module;
  Morphism incl;
};
KernelResult kernel(const Morphism& f);

struct CokernelResult {
  FpModule module;
  Morphism proj;
};
CokernelResult cokernel(const Morphism& f);

SubmoduleRep image(const Morphism& f);

struct DirectSum {
  FpModule sum;
  Morphism inj1, inj2, proj1, proj2;
};
DirectSum direct_sum(const FpModule& a, const FpModule& b);

struct QuotientResult {
  FpModule module;
  Morphism proj;
};
QuotientResult quotient_by(const SubmoduleRep& sub);

/// Minimal presentation: generators correspond to the nonunit Smith
/// invariants, with mutually inverse isomorphisms to the input.
struct Simplified {
  FpModule module;
  Morphism to_original;
  Morphism from_original;
};
Simplified simplify(const FpModule& m);

/// Some h : f.target -> g.target with h ∘ f ≡ g (requires f.source == g.source).
std::optional<Morphism> factor_through(const Morphism& f, const Morphism& g);
/// Some h : g.source -> p.source with p ∘ h ≡ g (requires p.target == g.target).
std::optional<Morphism> lift_through(const Morphism& p, const Morphism& g);

/// Multiplication by a ring element as an endomorphism.
Morphism multiplication(const FpModule& m, const RingElem& c);

}  // namespace fpmod
