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

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "fpmod/error.hpp"

namespace fpmod {

enum class RingKind { Integers, IntegersMod, Rationals, PrimeField, GaussianIntegers };

struct Gaussian {
  mpz_class re;
  mpz_class im;
};

inline bool operator==(const Gaussian& a, const Gaussian& b) {
  return a.re == b.re && a.im == b.im;
}

/// Exact ring element. The active alternative is fixed by the owning ring:
/// mpz_class for Integers, IntegersMod and PrimeField (residues in [0, n)),
/// mpq_class for Rationals (always canonicalized), Gaussian for Z[i].
class RingElem {
 public:
  RingElem() = default;
  explicit RingElem(mpz_class v) : v_(std::move(v)) {}
  explicit RingElem(mpq_class v) : v_(std::move(v)) {}
  explicit RingElem(Gaussian v) : v_(std::move(v)) {}

  const mpz_class& integer() const { return get<mpz_class>(); }
  const mpq_class& rational() const { return get<mpq_class>(); }
  const Gaussian& gaussian() const { return get<Gaussian>(); }

  bool holds_integer() const { return std::holds_alternative<mpz_class>(v_); }
  bool holds_rational() const { return std::holds_alternative<mpq_class>(v_); }
  bool holds_gaussian() const { return std::holds_alternative<Gaussian>(v_); }

  friend bool operator==(const RingElem& a, const RingElem& b) { return a.v_ == b.v_; }

 private:
  template <typename T>
  const T& get() const {
    if (const T* p = std::get_if<T>(&v_)) return *p;
    fail(ErrorCode::RingMismatch, "ring element has the wrong representation");
  }

  std::variant<mpz_class, mpq_class, Gaussian> v_;
};

/// Result of an extended gcd: g = s*a + t*b with g the canonical associate.
struct ExtGcd {
  RingElem g;
  RingElem s;
  RingElem t;
};

/// Descriptor of one of the supported base rings. Carries all arithmetic.
class RingDesc {
 public:
  RingDesc() = default;  // Integers

  static RingDesc integers();
  static RingDesc integers_mod(const mpz_class& n);
  static RingDesc rationals();
  static RingDesc prime_field(const mpz_class& p);
  static RingDesc gaussian();

  RingKind kind() const { return kind_; }
  /// n for IntegersMod, p for PrimeField, 0 otherwise.
  const mpz_class& modulus() const { return modulus_; }

  bool is_euclidean() const { return kind_ != RingKind::IntegersMod; }
  bool is_field() const { return kind_ == RingKind::Rationals || kind_ == RingKind::PrimeField; }
  bool is_finite() const {
    return kind_ == RingKind::IntegersMod || kind_ == RingKind::PrimeField;
  }
  /// The Euclidean domain computations are carried out in (Integers for IntegersMod).
  RingDesc euclidean_base() const;

  std::string name() const;

  RingElem zero() const;
  RingElem one() const;
  RingElem from_int(const mpz_class& v) const;
  RingElem from_int(long v) const { return from_int(mpz_class(v)); }
  RingElem gaussian_elem(const mpz_class& re, const mpz_class& im) const;
  RingElem rational_elem(const mpz_class& num, const mpz_class& den) const;

  /// Validates and canonicalizes an element built from raw data.
  RingElem canonical(const RingElem& a) const;

  RingElem add(const RingElem& a, const RingElem& b) const;
  RingElem sub(const RingElem& a, const RingElem& b) const;
  RingElem mul(const RingElem& a, const RingElem& b) const;
  RingElem neg(const RingElem& a) const;

  bool is_zero(const RingElem& a) const;
  bool is_one(const RingElem& a) const { return a == one(); }
  bool is_unit(const RingElem& a) const;
  RingElem inverse(const RingElem& unit) const;

  /// a = q*b + r with norm(r) < norm(b). Euclidean kinds only.
  std::pair<RingElem, RingElem> euclid_div(const RingElem& a, const RingElem& b) const;
  /// Euclidean norm: |a| on Z, a^2+b^2 on Z[i], 0/1 on fields.
  mpz_class norm(const RingElem& a) const;
  ExtGcd gcdext(const RingElem& a, const RingElem& b) const;
  RingElem gcd(const RingElem& a, const RingElem& b) const { return gcdext(a, b).g; }

  /// Canonical associate of a, and the unit u with u*a = associate.
  std::pair<RingElem, RingElem> normalize(const RingElem& a) const;
  bool associates(const RingElem& a, const RingElem& b) const;
  /// b / a when a divides b exactly.
  std::optional<RingElem> exact_div(const RingElem& b, const RingElem& a) const;
  bool divides(const RingElem& a, const RingElem& b) const { return exact_div(b, a).has_value(); }

  /// IntegersMod residue -> Integers representative in [0, n). Identity elsewhere.
  RingElem lift(const RingElem& a) const;
  /// Integers element -> this ring (reduction or embedding).
  RingElem from_integer_elem(const RingElem& a) const;

  std::string to_string(const RingElem& a) const;

  friend bool operator==(const RingDesc& a, const RingDesc& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
  }

 private:
  RingDesc(RingKind kind, mpz_class modulus) : kind_(kind), modulus_(std::move(modulus)) {}

  RingKind kind_ = RingKind::Integers;
  mpz_class modulus_;
};

enum class RingMapKind { CanonicalEmbedding, CanonicalQuotient, FreeExtension };

/// A supported ring homomorphism together with its flatness metadata.
class RingMap {
 public:
  /// Builds the canonical map source -> target; throws UnsupportedRingMap
  /// when no canonical map between the two kinds is registered.
  static RingMap make(const RingDesc& source, const RingDesc& target);

  const RingDesc& source() const { return source_; }
  const RingDesc& target() const { return target_; }
  RingMapKind kind() const { return kind_; }
  /// Rank of the target as a free source-module (FreeExtension only, else 0).
  int basis_size() const { return basis_size_; }
  bool flat() const { return flat_; }
  bool faithfully_flat() const { return faithfully_flat_; }

  RingElem apply(const RingElem& a) const;
  std::string name() const;

 private:
  RingMap(RingDesc s, RingDesc t, RingMapKind k, int d, bool flat, bool ff)
      : source_(std::move(s)), target_(std::move(t)), kind_(k), basis_size_(d),
        flat_(flat), faithfully_flat_(ff) {}

  RingDesc source_;
  RingDesc target_;
  RingMapKind kind_;
  int basis_size_;
  bool flat_;
  bool faithfully_flat_;
};

std::string_view kind_name(RingKind kind);
std::string_view map_kind_name(RingMapKind kind);

}  // namespace fpmod
