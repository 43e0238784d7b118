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

#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace tu;

namespace {

const FpModule ZZ = FpModule::free(Z, 1);

bool error_is(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

bool square_commutes(const PushoutData& p) {
  return equivalent(compose(p.inl, p.f), compose(p.inr, p.g));
}

}  // namespace

TEST_SUITE("pushout") {
  TEST_CASE("pushout examples") {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 10; ++t) {
      FpModule a = random_module(rng, Z, 3, 5);
      Morphism g = random_morphism(rng, a, 3, 5);
      auto p = pushout(Morphism::identity(a), g);
      CHECK(square_commutes(p));
      CHECK(is_iso(p.object, g.target()));
      CHECK(kernel(p.inr).module.is_zero());
      CHECK(cokernel(p.inr).module.is_zero());
    }
    auto p23 = pushout(mor(ZZ, ZZ, {{2}}), mor(ZZ, ZZ, {{3}}));
    CHECK(p23.object.invariants().free_rank == 1);
    CHECK(p23.object.invariants().torsion.empty());
    auto zero = FpModule::free(Z, 0);
    auto p20 = pushout(mor(ZZ, ZZ, {{2}}), Morphism::zero(ZZ, zero));
    CHECK(torsion_strings(p20.object) == std::vector<std::string>{"2"});
    CHECK(p20.object.invariants().free_rank == 0);
    CHECK(error_is(ErrorCode::SourceMismatch,
                   [&] { pushout(mor(ZZ, ZZ, {{2}}), Morphism::identity(FpModule::free(Z, 2))); }));
  }

  TEST_CASE("pushout object has the expected size over Z/6") {
    // |B ⊕ C| / |image of A| counted by enumeration
    std::mt19937_64 rng(73);
    const RingDesc R = RingDesc::integers_mod(6);
    for (int t = 0; t < 25; ++t) {
      FpModule a = random_module(rng, R, 2, 5);
      Morphism f = random_morphism(rng, a, 2, 5);
      Morphism g = random_morphism(rng, a, 2, 5);
      if (finite_size(f.target()) * finite_size(g.target()) > 1296) continue;
      auto p = pushout(f, g);
      CHECK(square_commutes(p));
      auto ds = direct_sum(f.target(), g.target());
      Mat rels = lift_to_base(ds.sum.rels());
      oracle::FiniteModule bc(6, ds.sum.gens(), columns_long(rels));
      Mat fg = lift_to_base(vcat(f.mat(), g.mat().scaled(R.from_int(-1))));
      oracle::FiniteModule quo(6, ds.sum.gens(), [&] {
        auto cols = columns_long(rels);
        for (auto& c : columns_long(fg)) cols.push_back(c);
        return cols;
      }());
      CHECK(finite_size(p.object) == quo.size());
      CHECK(bc.size() % quo.size() == 0);
    }
  }

  TEST_CASE("induced maps") {
    std::mt19937_64 rng(79);
    for (const RingDesc& R : {Z, RingDesc::integers_mod(6), RingDesc::gaussian()}) {
      for (int t = 0; t < 20; ++t) {
        FpModule a = random_module(rng, R, 3, 5);
        auto p = pushout(random_morphism(rng, a, 3, 5), random_morphism(rng, a, 3, 5));
        CHECK(equivalent(pushout_induced(p, p.inl, p.inr), Morphism::identity(p.object)));
        auto zero = FpModule::free(R, 0);
        CHECK(is_zero_map(pushout_induced(p, Morphism::zero(p.inl.source(), zero), Morphism::zero(p.inr.source(), zero))));
        Morphism w0 = random_morphism(rng, p.object, 3, 5);
        Morphism w = pushout_induced(p, compose(w0, p.inl), compose(w0, p.inr));
        CHECK(equivalent(w, w0));
      }
    }
    auto p = pushout(mor(ZZ, ZZ, {{2}}), mor(ZZ, ZZ, {{3}}));
    CHECK(error_is(ErrorCode::SquareDoesNotCommute, [&] { pushout_induced(p, Morphism::identity(ZZ), Morphism::identity(ZZ)); }));
  }

  TEST_CASE("base change of pushouts") {
    auto two = mor(ZZ, ZZ, {{2}}), three = mor(ZZ, ZZ, {{3}});
    CHECK(pushout_base_change_check(RingMap::make(Z, RingDesc::gaussian()), two, three));
    CHECK(pushout_base_change_check(RingMap::make(Z, RingDesc::integers_mod(4)), two, Morphism::zero(ZZ, FpModule::free(Z, 0))));
    std::mt19937_64 rng(83);
    for (const RingDesc& S : {RingDesc::rationals(), RingDesc::gaussian(), RingDesc::integers_mod(4), RingDesc::integers_mod(6)}) {
      RingMap phi = RingMap::make(Z, S);
      FpModule a = random_module(rng, Z, 3, 5);
      CHECK(pushout_base_change_check(phi, Morphism::identity(a), Morphism::identity(a)));
      for (int t = 0; t < 10; ++t) {
        a = random_module(rng, Z, 3, 5);
        CHECK(pushout_base_change_check(phi, random_morphism(rng, a, 3, 5), random_morphism(rng, a, 3, 5)));
      }
    }
  }
}

TEST_SUITE("purity") {
  TEST_CASE("purity examples") {
    auto id = is_universally_injective(Morphism::identity(ZZ));
    CHECK(id.pure);
    REQUIRE(id.retraction);
    CHECK(equivalent(*id.retraction, Morphism::identity(ZZ)));

    auto two = is_universally_injective(mor(ZZ, ZZ, {{2}}));
    CHECK_FALSE(two.pure);
    REQUIRE(two.counterexample);
    CHECK(is_iso(two.counterexample->probe.module, cyc(Z, {2})));
    CHECK(equal_elements(tensor(ZZ, two.counterexample->probe.module), two.counterexample->element, col(Z, {1})));

    auto tgt = direct_sum(ZZ, cyc(Z, {3}));
    auto first = is_universally_injective(tgt.inj1);
    CHECK(first.pure);
    REQUIRE(first.retraction);
    CHECK(equivalent(compose(*first.retraction, tgt.inj1), Morphism::identity(ZZ)));
  }

  TEST_CASE("verdicts carry verified witnesses") {
    std::mt19937_64 rng(89);
    int pure = 0, impure = 0;
    for (const RingDesc& R : {Z, RingDesc::integers_mod(4), RingDesc::integers_mod(12), RingDesc::gaussian()}) {
      for (int t = 0; t < 30; ++t) {
        FpModule a = random_module(rng, R, 2, 4);
        Morphism f = random_morphism(rng, a, 2, 4);
        if (t % 3 == 0) {
          // split injections with a change of basis on the target
          auto ds = direct_sum(a, random_module(rng, R, 2, 4));
          f = ds.inj1;
        }
        PurityVerdict v = is_universally_injective(f);
        if (v.pure) {
          ++pure;
          REQUIRE(v.retraction);
          CHECK(equivalent(compose(*v.retraction, f), Morphism::identity(a)));
          for (const auto& q : probe_family(f)) CHECK_FALSE(probe_kernel_element(f, q.module));
        } else {
          ++impure;
          REQUIRE(v.counterexample);
          const auto& ce = *v.counterexample;
          Morphism fq = tensor_mor(f, Morphism::identity(ce.probe.module));
          CHECK_FALSE(members(zero_submodule(fq.source()), ce.element));
          CHECK(members(zero_submodule(fq.target()), fq.mat() * ce.element));
        }
      }
    }
    CHECK(pure > 10);
    CHECK(impure > 10);
  }

  TEST_CASE("lifting through split injections") {
    std::mt19937_64 rng(97);
    for (int t = 0; t < 40; ++t) {
      FpModule m = random_module(rng, Z, 3, 5);
      auto ds = direct_sum(m, random_module(rng, Z, 2, 5));
      const Morphism& f = ds.inj1;
      const Morphism& pi = ds.proj1;
      std::uniform_int_distribution<int> rk(0, 3);
      FpModule F = FpModule::free(Z, rk(rng)), G = FpModule::free(Z, rk(rng));
      Morphism k = Morphism::make(F, G, random_int_mat(rng, Z, G.gens(), F.gens(), 4));
      Morphism psi = Morphism::make(G, m, random_int_mat(rng, Z, m.gens(), G.gens(), 4));
      Morphism g = compose(psi, k), h = compose(f, psi);
      Morphism phi = lift_through_univ_injective(f, pi, g, h, k);
      CHECK(equivalent(compose(phi, k), g));
      CHECK(equivalent(compose(f, phi), h));
    }
    // k = id and f = id
    auto g = mor(ZZ, ZZ, {{5}});
    CHECK(equivalent(lift_through_univ_injective(Morphism::identity(ZZ), Morphism::identity(ZZ), g, g,
                                                 Morphism::identity(ZZ)),
                     g));
    CHECK(error_is(ErrorCode::PreconditionViolation, [&] {
      auto c = cyc(Z, {2});
      lift_through_univ_injective(Morphism::identity(c), Morphism::identity(c), Morphism::identity(c),
                                  Morphism::identity(c), Morphism::identity(c));
    }));
    CHECK(error_is(ErrorCode::NotARetraction, [&] {
      lift_through_univ_injective(mor(ZZ, ZZ, {{2}}), Morphism::identity(ZZ), g, g, Morphism::identity(ZZ));
    }));
    CHECK(error_is(ErrorCode::SquareDoesNotCommute, [&] {
      lift_through_univ_injective(Morphism::identity(ZZ), Morphism::identity(ZZ), g, mor(ZZ, ZZ, {{4}}),
                                  Morphism::identity(ZZ));
    }));
  }

  TEST_CASE("domination examples") {
    auto two = mor(ZZ, ZZ, {{2}});
    auto id = Morphism::identity(ZZ);
    auto d = dominates(two, id);
    CHECK_FALSE(d.dominates);
    CHECK(d.pushout_agrees);
    CHECK_FALSE(dominates_via_pushout(two, id));
    CHECK(dominates_via_pushout(id, two));
    CHECK_FALSE(mutually_dominate(two, id));
    CHECK(mutually_dominate(two, two));
    std::mt19937_64 rng(101);
    for (int t = 0; t < 10; ++t) {
      FpModule m = random_module(rng, Z, 3, 5);
      Morphism f = random_morphism(rng, m, 3, 5);
      Morphism h0 = random_morphism(rng, f.target(), 3, 5);
      auto v = dominates(f, compose(h0, f));
      CHECK(v.dominates);
      REQUIRE(v.factor);
      CHECK(equivalent(compose(*v.factor, f), compose(h0, f)));
      auto vi = dominates(Morphism::identity(m), f);
      CHECK(vi.dominates);
      REQUIRE(vi.factor);
      CHECK(equivalent(*vi.factor, f));
      CHECK(mutually_dominate(f, scale(Z.from_int(-1), f)));
    }
  }

  TEST_CASE("domination agrees with the pushout criterion") {
    std::mt19937_64 rng(103);
    int yes = 0, no = 0;
    for (const RingDesc& R : {Z, RingDesc::integers_mod(6), RingDesc::integers_mod(8)}) {
      for (int t = 0; t < 40; ++t) {
        FpModule m = random_module(rng, R, 2, 4);
        Morphism f = random_morphism(rng, m, 2, 4);
        Morphism g = random_morphism(rng, m, 2, 4);
        auto v = dominates(f, g);
        CHECK(v.pushout_agrees);
        CHECK(dominates_via_pushout(f, g) == v.dominates);
        (v.dominates ? yes : no)++;
      }
    }
    CHECK(yes > 5);
    CHECK(no > 5);
  }

  TEST_CASE("purity descends along faithfully flat maps") {
    RingMap phi = RingMap::make(Z, RingDesc::gaussian());
    auto ds = direct_sum(ZZ, ZZ);
    CHECK(purity_descends(phi, ds.inj1));
    CHECK(is_universally_injective(base_change_mor(phi, ds.inj1)).pure);
    auto two = mor(ZZ, ZZ, {{2}});
    CHECK(purity_descends(phi, two));
    auto bc = is_universally_injective(base_change_mor(phi, two));
    CHECK_FALSE(bc.pure);
    REQUIRE(bc.counterexample);
    CHECK(error_is(ErrorCode::NotFaithfullyFlat, [&] { purity_descends(RingMap::make(Z, RingDesc::rationals()), two); }));
    std::mt19937_64 rng(107);
    for (int t = 0; t < 40; ++t) {
      FpModule m = random_module(rng, Z, 2, 4);
      CHECK(purity_descends(phi, random_morphism(rng, m, 2, 4)));
    }
  }
}
