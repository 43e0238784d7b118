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

#include "fpmod/ring.hpp"

#include <array>
#include <sstream>

namespace fpmod {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidRing: return "InvalidRing";
    case ErrorCode::UnsupportedRing: return "UnsupportedRing";
    case ErrorCode::UnsupportedRingMap: return "UnsupportedRingMap";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::NotWellDefined: return "NotWellDefined";
    case ErrorCode::SourceMismatch: return "SourceMismatch";
    case ErrorCode::SquareDoesNotCommute: return "SquareDoesNotCommute";
    case ErrorCode::NotARetraction: return "NotARetraction";
    case ErrorCode::NotFaithfullyFlat: return "NotFaithfullyFlat";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::LiftFailedAtHorizon: return "LiftFailedAtHorizon";
    case ErrorCode::NotDirected: return "NotDirected";
    case ErrorCode::AxiomViolation: return "AxiomViolation";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::InvalidFiltration: return "InvalidFiltration";
    case ErrorCode::NotInternal: return "NotInternal";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::NotProjective: return "NotProjective";
    case ErrorCode::DoesNotSpan: return "DoesNotSpan";
    case ErrorCode::ProbeInconclusive: return "ProbeInconclusive";
    case ErrorCode::DeciderDisagreement: return "DeciderDisagreement";
    case ErrorCode::ComponentsDoNotSpan: return "ComponentsDoNotSpan";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

bool is_internal(ErrorCode code) {
  return code == ErrorCode::DeciderDisagreement || code == ErrorCode::ComponentsDoNotSpan ||
         code == ErrorCode::InternalInvariant;
}

std::string_view kind_name(RingKind kind) {
  switch (kind) {
    case RingKind::Integers: return "Integers";
    case RingKind::IntegersMod: return "IntegersMod";
    case RingKind::Rationals: return "Rationals";
    case RingKind::PrimeField: return "PrimeField";
    case RingKind::GaussianIntegers: return "GaussianIntegers";
  }
  return "?";
}

std::string_view map_kind_name(RingMapKind kind) {
  switch (kind) {
    case RingMapKind::CanonicalEmbedding: return "canonical_embedding";
    case RingMapKind::CanonicalQuotient: return "canonical_quotient";
    case RingMapKind::FreeExtension: return "free_extension";
  }
  return "?";
}

namespace {

mpz_class mod_floor(const mpz_class& a, const mpz_class& n) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Nearest integer to x/n (n > 0), ties toward zero.
mpz_class round_div(const mpz_class& x, const mpz_class& n) {
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
  mpz_class twice = 2 * r;
  if (twice > n) return q + 1;
  if (twice < n) return q;
  return q >= 0 ? q : mpz_class(q + 1);
}

Gaussian gmul(const Gaussian& a, const Gaussian& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

}  // namespace

RingDesc RingDesc::integers() { return RingDesc(RingKind::Integers, 0); }

RingDesc RingDesc::integers_mod(const mpz_class& n) {
  if (n < 2) fail(ErrorCode::InvalidRing, "IntegersMod requires n >= 2");
  return RingDesc(RingKind::IntegersMod, n);
}

RingDesc RingDesc::rationals() { return RingDesc(RingKind::Rationals, 0); }

RingDesc RingDesc::prime_field(const mpz_class& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
    fail(ErrorCode::InvalidRing, "PrimeField requires a prime, got " + p.get_str());
  return RingDesc(RingKind::PrimeField, p);
}

RingDesc RingDesc::gaussian() { return RingDesc(RingKind::GaussianIntegers, 0); }

RingDesc RingDesc::euclidean_base() const {
  return kind_ == RingKind::IntegersMod ? integers() : *this;
}

std::string RingDesc::name() const {
  switch (kind_) {
    case RingKind::IntegersMod: return "IntegersMod(" + modulus_.get_str() + ")";
    case RingKind::PrimeField: return "PrimeField(" + modulus_.get_str() + ")";
    default: return std::string(kind_name(kind_));
  }
}

RingElem RingDesc::zero() const { return from_int(0L); }
RingElem RingDesc::one() const { return from_int(1L); }

RingElem RingDesc::from_int(const mpz_class& v) const {
  switch (kind_) {
    case RingKind::Integers: return RingElem(v);
    case RingKind::IntegersMod:
    case RingKind::PrimeField: return RingElem(mod_floor(v, modulus_));
    case RingKind::Rationals: return RingElem(mpq_class(v));
    case RingKind::GaussianIntegers: return RingElem(Gaussian{v, 0});
  }
  return RingElem();
}

RingElem RingDesc::gaussian_elem(const mpz_class& re, const mpz_class& im) const {
  if (kind_ != RingKind::GaussianIntegers) {
    if (im != 0) fail(ErrorCode::RingMismatch, "imaginary part outside Z[i]");
    return from_int(re);
  }
  return RingElem(Gaussian{re, im});
}

RingElem RingDesc::rational_elem(const mpz_class& num, const mpz_class& den) const {
  if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
  if (kind_ == RingKind::Rationals) {
    mpq_class q(num, den);
    q.canonicalize();
    return RingElem(q);
  }
  RingElem d = from_int(den);
  if (!is_unit(d)) fail(ErrorCode::RingMismatch, "denominator is not invertible in " + name());
  return mul(from_int(num), inverse(d));
}

RingElem RingDesc::canonical(const RingElem& a) const {
  switch (kind_) {
    case RingKind::Integers:
      if (!a.holds_integer()) fail(ErrorCode::RingMismatch, "expected an integer");
      return a;
    case RingKind::IntegersMod:
    case RingKind::PrimeField:
      if (!a.holds_integer()) fail(ErrorCode::RingMismatch, "expected a residue");
      return RingElem(mod_floor(a.integer(), modulus_));
    case RingKind::Rationals: {
      if (a.holds_integer()) return RingElem(mpq_class(a.integer()));
      mpq_class q = a.rational();
      q.canonicalize();
      return RingElem(q);
    }
    case RingKind::GaussianIntegers:
      if (a.holds_integer()) return RingElem(Gaussian{a.integer(), 0});
      return RingElem(a.gaussian());
  }
  return a;
}

RingElem RingDesc::add(const RingElem& a, const RingElem& b) const {
  switch (kind_) {
    case RingKind::Integers: return RingElem(mpz_class(a.integer() + b.integer()));
    case RingKind::IntegersMod:
    case RingKind::PrimeField: {
      mpz_class s = a.integer() + b.integer();
      if (s >= modulus_) s -= modulus_;
      return RingElem(s);
    }
    case RingKind::Rationals: return RingElem(mpq_class(a.rational() + b.rational()));
    case RingKind::GaussianIntegers: {
      const auto& x = a.gaussian();
      const auto& y = b.gaussian();
      return RingElem(Gaussian{x.re + y.re, x.im + y.im});
    }
  }
  return RingElem();
}

RingElem RingDesc::neg(const RingElem& a) const {
  switch (kind_) {
    case RingKind::Integers: return RingElem(mpz_class(-a.integer()));
    case RingKind::IntegersMod:
    case RingKind::PrimeField:
      return RingElem(a.integer() == 0 ? mpz_class(0) : mpz_class(modulus_ - a.integer()));
    case RingKind::Rationals: return RingElem(mpq_class(-a.rational()));
    case RingKind::GaussianIntegers: {
      const auto& x = a.gaussian();
      return RingElem(Gaussian{-x.re, -x.im});
    }
  }
  return RingElem();
}

RingElem RingDesc::sub(const RingElem& a, const RingElem& b) const { return add(a, neg(b)); }

RingElem RingDesc::mul(const RingElem& a, const RingElem& b) const {
  switch (kind_) {
    case RingKind::Integers: return RingElem(mpz_class(a.integer() * b.integer()));
    case RingKind::IntegersMod:
    case RingKind::PrimeField: return RingElem(mod_floor(a.integer() * b.integer(), modulus_));
    case RingKind::Rationals: return RingElem(mpq_class(a.rational() * b.rational()));
    case RingKind::GaussianIntegers: return RingElem(gmul(a.gaussian(), b.gaussian()));
  }
  return RingElem();
}

bool RingDesc::is_zero(const RingElem& a) const {
  switch (kind_) {
    case RingKind::Rationals: return a.rational() == 0;
    case RingKind::GaussianIntegers: return a.gaussian().re == 0 && a.gaussian().im == 0;
    default: return a.integer() == 0;
  }
}

bool RingDesc::is_unit(const RingElem& a) const {
  switch (kind_) {
    case RingKind::Integers: return abs(a.integer()) == 1;
    case RingKind::IntegersMod: {
      mpz_class g = ::gcd(a.integer(), modulus_);
      return g == 1;
    }
    case RingKind::PrimeField: return a.integer() != 0;
    case RingKind::Rationals: return a.rational() != 0;
    case RingKind::GaussianIntegers: return norm(a) == 1;
  }
  return false;
}

RingElem RingDesc::inverse(const RingElem& u) const {
  if (!is_unit(u)) fail(ErrorCode::DivisionByZero, to_string(u) + " is not a unit in " + name());
  switch (kind_) {
    case RingKind::Integers: return u;
    case RingKind::IntegersMod:
    case RingKind::PrimeField: {
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), u.integer().get_mpz_t(), modulus_.get_mpz_t());
      return RingElem(inv);
    }
    case RingKind::Rationals: return RingElem(mpq_class(1 / u.rational()));
    case RingKind::GaussianIntegers: {
      // units are ±1, ±i; inverse is the conjugate
      const auto& g = u.gaussian();
      return RingElem(Gaussian{g.re, -g.im});
    }
  }
  return u;
}

mpz_class RingDesc::norm(const RingElem& a) const {
  switch (kind_) {
    case RingKind::Integers: return abs(a.integer());
    case RingKind::GaussianIntegers: {
      const auto& g = a.gaussian();
      return g.re * g.re + g.im * g.im;
    }
    case RingKind::IntegersMod: fail(ErrorCode::UnsupportedRing, "IntegersMod has no Euclidean norm");
    default: return is_zero(a) ? 0 : 1;
  }
}

std::pair<RingElem, RingElem> RingDesc::euclid_div(const RingElem& a, const RingElem& b) const {
  if (kind_ == RingKind::IntegersMod)
    fail(ErrorCode::UnsupportedRing, "euclid_div is undefined over " + name());
  if (is_zero(b)) fail(ErrorCode::DivisionByZero, "euclid_div by zero");
  switch (kind_) {
    case RingKind::Integers: {
      // remainder in [0, |b|)
      const mpz_class& x = a.integer();
      const mpz_class& y = b.integer();
      mpz_class r = mod_floor(x, abs(y));
      mpz_class q = (x - r) / y;
      return {RingElem(q), RingElem(r)};
    }
    case RingKind::GaussianIntegers: {
      const auto& x = a.gaussian();
      const auto& y = b.gaussian();
      Gaussian num = gmul(x, Gaussian{y.re, -y.im});
      mpz_class n = y.re * y.re + y.im * y.im;
      Gaussian q{round_div(num.re, n), round_div(num.im, n)};
      Gaussian qb = gmul(q, y);
      return {RingElem(q), RingElem(Gaussian{x.re - qb.re, x.im - qb.im})};
    }
    default:
      return {mul(a, inverse(b)), zero()};
  }
}

std::pair<RingElem, RingElem> RingDesc::normalize(const RingElem& a) const {
  if (is_zero(a)) return {a, one()};
  switch (kind_) {
    case RingKind::Integers:
      if (a.integer() < 0) return {neg(a), from_int(-1L)};
      return {a, one()};
    case RingKind::GaussianIntegers: {
      static const std::array<Gaussian, 4> units{Gaussian{1, 0}, Gaussian{0, 1}, Gaussian{-1, 0},
                                                 Gaussian{0, -1}};
      for (const auto& u : units) {
        Gaussian r = gmul(u, a.gaussian());
        if (r.re > 0 && r.im >= 0) return {RingElem(r), RingElem(u)};
      }
      return {a, one()};
    }
    case RingKind::IntegersMod: {
      // associate class of a residue is determined by gcd(a, n)
      mpz_class g = ::gcd(a.integer(), modulus_);
      return {RingElem(g), one()};
    }
    default: return {one(), inverse(a)};
  }
}

bool RingDesc::associates(const RingElem& a, const RingElem& b) const {
  return normalize(a).first == normalize(b).first;
}

std::optional<RingElem> RingDesc::exact_div(const RingElem& b, const RingElem& a) const {
  if (is_zero(a)) {
    if (is_zero(b)) return zero();
    return std::nullopt;
  }
  if (kind_ == RingKind::IntegersMod) {
    // solve a*x = b (mod n)
    mpz_class g = ::gcd(a.integer(), modulus_);
    if (b.integer() % g != 0) return std::nullopt;
    mpz_class n2 = modulus_ / g;
    mpz_class a2 = a.integer() / g;
    mpz_class b2 = b.integer() / g;
    mpz_class inv;
    if (n2 == 1) return zero();
    mpz_invert(inv.get_mpz_t(), a2.get_mpz_t(), n2.get_mpz_t());
    return RingElem(mod_floor(b2 * inv, n2));
  }
  auto [q, r] = euclid_div(b, a);
  if (!is_zero(r)) return std::nullopt;
  return q;
}

ExtGcd RingDesc::gcdext(const RingElem& a, const RingElem& b) const {
  if (kind_ == RingKind::IntegersMod) fail(ErrorCode::UnsupportedRing, "gcdext over IntegersMod");
  if (is_field()) {
    if (!is_zero(a)) return {one(), inverse(a), zero()};
    if (!is_zero(b)) return {one(), zero(), inverse(b)};
    return {zero(), zero(), zero()};
  }
  // invariant: r0 = s0*a + t0*b, r1 = s1*a + t1*b
  RingElem r0 = a, r1 = b;
  RingElem s0 = one(), s1 = zero();
  RingElem t0 = zero(), t1 = one();
  while (!is_zero(r1)) {
    auto [q, r] = euclid_div(r0, r1);
    RingElem s2 = sub(s0, mul(q, s1));
    RingElem t2 = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  auto [g, u] = normalize(r0);
  return {g, mul(u, s0), mul(u, t0)};
}

RingElem RingDesc::lift(const RingElem& a) const {
  return a;  // residues are already stored as representatives in [0, n)
}

RingElem RingDesc::from_integer_elem(const RingElem& a) const { return from_int(a.integer()); }

std::string RingDesc::to_string(const RingElem& a) const {
  switch (kind_) {
    case RingKind::Rationals: return a.rational().get_str();
    case RingKind::GaussianIntegers: {
      const auto& g = a.gaussian();
      std::ostringstream os;
      if (g.im == 0) return g.re.get_str();
      if (g.re != 0) os << g.re.get_str() << (g.im > 0 ? "+" : "-");
      else if (g.im < 0) os << "-";
      mpz_class m = abs(g.im);
      if (m != 1) os << m.get_str();
      os << "i";
      return os.str();
    }
    default: return a.integer().get_str();
  }
}

RingMap RingMap::make(const RingDesc& s, const RingDesc& t) {
  using K = RingKind;
  if (s == t) return RingMap(s, t, RingMapKind::FreeExtension, 1, true, true);
  if (s.kind() == K::Integers) {
    switch (t.kind()) {
      case K::Rationals: return RingMap(s, t, RingMapKind::CanonicalEmbedding, 0, true, false);
      case K::GaussianIntegers: return RingMap(s, t, RingMapKind::FreeExtension, 2, true, true);
      case K::IntegersMod:
      case K::PrimeField: return RingMap(s, t, RingMapKind::CanonicalQuotient, 0, false, false);
      default: break;
    }
  }
  if (s.kind() == K::IntegersMod && (t.kind() == K::IntegersMod || t.kind() == K::PrimeField)) {
    const mpz_class& n = s.modulus();
    const mpz_class& m = t.modulus();
    if (n % m == 0) {
      if (n == m) return RingMap(s, t, RingMapKind::FreeExtension, 1, true, true);
      // Z/n -> Z/m is flat exactly when Z/m splits off Z/n (CRT)
      mpz_class cof = n / m;
      bool flat = gcd(m, cof) == 1;
      return RingMap(s, t, RingMapKind::CanonicalQuotient, 0, flat, false);
    }
  }
  fail(ErrorCode::UnsupportedRingMap, "no canonical map " + s.name() + " -> " + t.name());
}

RingElem RingMap::apply(const RingElem& a) const {
  switch (source_.kind()) {
    case RingKind::Integers:
    case RingKind::IntegersMod:
      if (source_ == target_) return a;
      return target_.from_int(a.integer());
    default:
      if (source_ == target_) return a;
      fail(ErrorCode::UnsupportedRingMap, "cannot apply " + name());
  }
}

std::string RingMap::name() const { return source_.name() + "->" + target_.name(); }

}  // namespace fpmod
