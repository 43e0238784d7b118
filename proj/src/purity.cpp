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

#include "fpmod/purity.hpp"

#include <algorithm>

namespace fpmod {

namespace {

// Gaussian primes above the rational prime p.
std::vector<RingElem> gaussian_primes_over(const RingDesc& R, const mpz_class& p) {
  if (p == 2) return {R.gaussian_elem(1, 1)};
  if (p % 4 == 3) return {R.from_int(p)};
  for (mpz_class a = 1; a * a < p; ++a) {
    mpz_class b2 = p - a * a;
    mpz_class b = sqrt(b2);
    if (b * b == b2) return {R.canonical(R.gaussian_elem(a, b)), R.canonical(R.gaussian_elem(a, -b))};
  }
  fail(ErrorCode::InternalInvariant, "no two-square decomposition of a prime congruent to 1 mod 4");
}

std::vector<RingElem> primes_dividing(const RingDesc& R, const RingElem& t) {
  std::vector<RingElem> out;
  if (R.kind() == RingKind::GaussianIntegers) {
    for (const auto& [p, e] : factor_integer(R.norm(t)))
      for (auto& pi : gaussian_primes_over(R, p))
        if (R.divides(pi, t)) out.push_back(pi);
  } else {
    for (const auto& [p, e] : factor_integer(t.integer())) out.push_back(R.from_int(p));
  }
  return out;
}

unsigned valuation(const RingDesc& R, const RingElem& pi, RingElem t) {
  unsigned v = 0;
  while (!R.is_zero(t)) {
    auto q = R.exact_div(t, pi);
    if (!q) break;
    t = *q;
    ++v;
  }
  return v;
}

void add_unique(const RingDesc& R, std::vector<RingElem>& v, const RingElem& x) {
  for (const auto& y : v)
    if (R.associates(x, y)) return;
  v.push_back(R.canonical(R.normalize(x).first));
}

}  // namespace

std::vector<TensorProbe> probe_family(const Morphism& f) {
  const RingDesc& R = f.ring();
  std::vector<TensorProbe> out;
  out.push_back({FpModule::free(R, 1), "R"});
  if (R.is_field()) return out;
  if (R.kind() == RingKind::IntegersMod) {
    for (const auto& d : divisors(R.modulus())) {
      if (d == 1 || d == R.modulus()) continue;
      out.push_back({FpModule::cyclic_sum(R, {R.from_int(d)}), "R/(" + d.get_str() + ")"});
    }
    return out;
  }
  std::vector<RingElem> torsion;
  for (const FpModule* m : {&f.source(), &f.target()})
    for (const auto& t : m->invariants().torsion) torsion.push_back(t);
  const CokernelResult coker = cokernel(f);
  for (const auto& t : coker.module.invariants().torsion) torsion.push_back(t);

  std::vector<RingElem> primes;
  for (long p : {2L, 3L, 5L, 7L}) {
    if (R.kind() == RingKind::GaussianIntegers) {
      for (const auto& pi : gaussian_primes_over(R, p)) add_unique(R, primes, pi);
    } else {
      add_unique(R, primes, R.from_int(p));
    }
  }
  for (const auto& t : torsion)
    for (const auto& pi : primes_dividing(R, t)) add_unique(R, primes, pi);
  std::stable_sort(primes.begin(), primes.end(), [&](const RingElem& a, const RingElem& b) {
    return R.norm(a) < R.norm(b);
  });

  for (const auto& pi : primes) {
    unsigned top = 0;
    for (const auto& t : torsion) top = std::max(top, valuation(R, pi, t));
    RingElem pk = R.one();
    for (unsigned k = 1; k <= top + 1; ++k) {
      pk = R.mul(pk, pi);
      const std::string p = R.to_string(pi);
      std::string label = k == 1 ? "R/(" + p + ")" : "R/((" + p + ")^" + std::to_string(k) + ")";
      out.push_back({FpModule::cyclic_sum(R, {pk}), label});
    }
  }
  return out;
}

std::optional<Mat> probe_kernel_element(const Morphism& f, const FpModule& q) {
  Morphism t = tensor_mor(f, Morphism::identity(q));
  KernelResult k = kernel(t);
  if (k.module.is_zero()) return std::nullopt;
  for (std::size_t j = 0; j < k.incl.mat().cols(); ++j) {
    Mat x = k.incl.mat().col(j);
    if (equal_elements(t.source(), x, Mat(x.ring(), x.rows(), 1))) continue;
    if (!equal_elements(t.target(), t.apply(x), Mat(x.ring(), t.target().gens(), 1)))
      fail(ErrorCode::InternalInvariant, "probe kernel element is not killed");
    return x;
  }
  fail(ErrorCode::InternalInvariant, "nonzero kernel without a nonzero generator");
}

PurityVerdict is_universally_injective(const Morphism& f) {
  PurityVerdict v;
  if (auto r = factor_through(f, Morphism::identity(f.source()))) {
    v.pure = true;
    v.retraction = std::move(r);
    return v;
  }
  for (auto& probe : probe_family(f)) {
    if (auto x = probe_kernel_element(f, probe.module)) {
      v.counterexample = PurityCounterexample{std::move(probe), std::move(*x)};
      return v;
    }
  }
  fail(ErrorCode::ProbeInconclusive, "no retraction and no probe witness for " + f.mat().to_string());
}

Morphism lift_through_univ_injective(const Morphism& f, const Morphism& pi, const Morphism& g,
                                     const Morphism& h, const Morphism& k) {
  if (g.source().rels().cols() != 0 || h.source().rels().cols() != 0)
    fail(ErrorCode::PreconditionViolation, "lift_through_univ_injective: F and G must be free");
  if (!(pi.source() == f.target()) || !(pi.target() == f.source()) ||
      !equivalent(compose(pi, f), Morphism::identity(f.source())))
    fail(ErrorCode::NotARetraction, "π ∘ f is not the identity");
  if (!equivalent(compose(h, k), compose(f, g)))
    fail(ErrorCode::SquareDoesNotCommute, "h ∘ k differs from f ∘ g");
  Morphism phi = compose(pi, h);
  if (!equivalent(compose(phi, k), g)) fail(ErrorCode::InternalInvariant, "φ ∘ k differs from g");
  return phi;
}

bool dominates_via_pushout(const Morphism& f, const Morphism& g) {
  return is_universally_injective(pushout(f, g).inr).pure;
}

DominationVerdict dominates(const Morphism& f, const Morphism& g) {
  if (!(f.source() == g.source())) fail(ErrorCode::SourceMismatch, "dominates: maps have different sources");
  DominationVerdict v;
  v.factor = factor_through(f, g);
  v.dominates = v.factor.has_value();
  if (v.factor && !equivalent(compose(*v.factor, f), g))
    fail(ErrorCode::InternalInvariant, "domination factor does not re-verify");
  v.pushout_agrees = dominates_via_pushout(f, g) == v.dominates;
  return v;
}

bool mutually_dominate(const Morphism& f, const Morphism& g) {
  return dominates(f, g).dominates && dominates(g, f).dominates;
}

bool purity_descends(const RingMap& phi, const Morphism& f) {
  if (!phi.faithfully_flat()) fail(ErrorCode::NotFaithfullyFlat, phi.name() + " is not faithfully flat");
  const bool extended = is_universally_injective(base_change_mor(phi, f)).pure;
  const bool base = is_universally_injective(f).pure;
  return !extended || base;
}

}  // namespace fpmod
