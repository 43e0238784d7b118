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

// Endomorphism S of (Z/n)^k, enumerated.
struct FreeEndo {
  long n;
  oracle::IMat s;  // rows
  std::vector<std::vector<long>> vectors() const {
    return oracle::FiniteModule(n, static_cast<int>(s.size()), {}).all_vectors();
  }
  std::vector<long> power_apply(std::size_t e, std::vector<long> x) const {
    for (std::size_t i = 0; i < e; ++i) {
      x = oracle::apply(s, x);
      for (auto& v : x) v = ((v % n) + n) % n;
    }
    return x;
  }
  bool zero(const std::vector<long>& x) const {
    return std::all_of(x.begin(), x.end(), [](long v) { return v == 0; });
  }
  // (Z/n)^k is self-injective, so S^j factors through S^{j+1} iff
  // ker S^{j+1} ⊆ ker S^j.
  std::optional<std::size_t> ml_level(std::size_t horizon) const {
    for (std::size_t j = 0; j <= horizon; ++j) {
      bool ok = true;
      for (const auto& x : vectors())
        if (zero(power_apply(j + 1, x)) && !zero(power_apply(j, x))) ok = false;
      if (ok) return j;
    }
    return std::nullopt;
  }
  std::optional<std::size_t> stable_level(std::size_t horizon) const {
    auto image_size = [&](std::size_t e) {
      std::set<std::vector<long>> im;
      for (const auto& x : vectors()) im.insert(power_apply(e, x));
      return im.size();
    };
    for (std::size_t k = 0; k <= horizon; ++k)
      if (image_size(k) == image_size(k + 1)) return k;
    return std::nullopt;
  }
};

FreeEndo random_endo(std::mt19937_64& rng, long n, std::size_t k) {
  std::uniform_int_distribution<long> d(0, n - 1);
  FreeEndo e{n, oracle::IMat(k, std::vector<long>(k))};
  for (auto& row : e.s)
    for (auto& v : row) v = d(rng);
  // bias toward nilpotent parts
  if (d(rng) % 2 == 0)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j <= i; ++j) e.s[i][j] = (e.s[i][j] * 2) % n;
  return e;
}

Morphism endo_morphism(const FreeEndo& e) {
  const RingDesc R = RingDesc::integers_mod(e.n);
  const std::size_t k = e.s.size();
  std::vector<long> flat;
  for (const auto& row : e.s) flat.insert(flat.end(), row.begin(), row.end());
  FpModule m = FpModule::free(R, k);
  return Morphism::make(m, m, Mat::from_ints(R, k, k, flat));
}

std::vector<Mat> compatible_family(const Tower& c, const Mat& top, std::size_t horizon) {
  std::vector<Mat> fam(horizon + 1, top);
  for (std::size_t i = horizon; i-- > 0;) fam[i] = c.step.apply(fam[i + 1]);
  return fam;
}

void check_lift(const Tower& b, const Tower& c, const Morphism& g, const std::vector<Mat>& fam,
                const std::vector<Mat>& lift) {
  REQUIRE(lift.size() == fam.size());
  for (std::size_t i = 0; i < lift.size(); ++i) {
    CHECK(equal_elements(c.object, g.apply(lift[i]), fam[i]));
    if (i + 1 < lift.size()) CHECK(equal_elements(b.object, b.step.apply(lift[i + 1]), lift[i]));
  }
}

}  // namespace

TEST_SUITE("limits") {
  TEST_CASE("forward towers") {
    auto id = tower_ml_check(Tower::make(Morphism::identity(ZZ), TowerDirection::Forward), 5);
    CHECK(id.status == MLStatus::ML);
    CHECK(id.level == std::size_t{0});
    REQUIRE(id.factor);
    CHECK(equivalent(*id.factor, Morphism::identity(ZZ)));

    auto two = tower_ml_check(Tower::make(mor(ZZ, ZZ, {{2}}), TowerDirection::Forward), 10);
    CHECK(two.status == MLStatus::UnknownAtHorizon);
    CHECK(two.horizon == 10);
    CHECK_FALSE(two.level);

    auto z4 = cyc(Z, {4});
    auto nil = tower_ml_check(Tower::make(mor(z4, z4, {{2}}), TowerDirection::Forward), 4);
    CHECK(nil.status == MLStatus::ML);
    CHECK(nil.level == std::size_t{2});
    REQUIRE(nil.factor);
    CHECK(is_zero_map(*nil.factor));
    CHECK(ml_status_name(MLStatus::UnknownAtHorizon) == "UnknownAtHorizon");
    CHECK(error_is(ErrorCode::PreconditionViolation,
                   [&] { tower_ml_check(Tower::make(mor(z4, z4, {{2}}), TowerDirection::Backward), 4); }));
  }

  TEST_CASE("backward towers") {
    auto id = inverse_tower_stabilization(Tower::make(Morphism::identity(ZZ), TowerDirection::Backward), 5);
    CHECK(id.status == MLStatus::ML);
    CHECK(id.level == std::size_t{0});
    auto two = inverse_tower_stabilization(Tower::make(mor(ZZ, ZZ, {{2}}), TowerDirection::Backward), 10);
    CHECK(two.status == MLStatus::UnknownAtHorizon);
    auto z4 = cyc(Z, {4});
    auto nil = inverse_tower_stabilization(Tower::make(mor(z4, z4, {{2}}), TowerDirection::Backward), 4);
    CHECK(nil.status == MLStatus::ML);
    CHECK(nil.level == std::size_t{2});
  }

  TEST_CASE("tower levels agree with enumeration") {
    std::mt19937_64 rng(109);
    for (long n : {4L, 6L, 8L}) {
      for (int t = 0; t < 20; ++t) {
        FreeEndo e = random_endo(rng, n, 1 + t % 2);
        Morphism s = endo_morphism(e);
        auto f = tower_ml_check(Tower::make(s, TowerDirection::Forward), 6);
        auto b = inverse_tower_stabilization(Tower::make(s, TowerDirection::Backward), 6);
        auto fl = e.ml_level(6), bl = e.stable_level(6);
        CHECK(f.level == fl);
        CHECK(b.level == bl);
        CHECK((f.status == MLStatus::ML) == fl.has_value());
      }
    }
  }

  TEST_CASE("lifting compatible families") {
    // constant towers
    auto ds = direct_sum(cyc(Z, {3}), ZZ);
    Tower a = Tower::make(Morphism::identity(cyc(Z, {3})), TowerDirection::Backward);
    Tower b = Tower::make(Morphism::identity(ds.sum), TowerDirection::Backward);
    Tower c = Tower::make(Morphism::identity(ZZ), TowerDirection::Backward);
    auto fam = compatible_family(c, col(Z, {7}), 3);
    check_lift(b, c, ds.proj2, fam, tower_surjective_lift(a, b, c, ds.inj1, ds.proj2, fam, 3));

    // Z/2 -> Z/4 -> Z/2, B's step is ×3
    auto z2 = cyc(Z, {2}), z4 = cyc(Z, {4});
    Tower a2 = Tower::make(Morphism::identity(z2), TowerDirection::Backward);
    Tower b4 = Tower::make(mor(z4, z4, {{3}}), TowerDirection::Backward);
    Tower c2 = Tower::make(Morphism::identity(z2), TowerDirection::Backward);
    auto fam2 = compatible_family(c2, col(Z, {1}), 4);
    check_lift(b4, c2, mor(z4, z2, {{1}}),
               fam2, tower_surjective_lift(a2, b4, c2, mor(z2, z4, {{2}}), mor(z4, z2, {{1}}), fam2, 4));

    // A = (Z, ×2) never stabilizes
    auto bsum = direct_sum(ZZ, ZZ);
    Tower az = Tower::make(mor(ZZ, ZZ, {{2}}), TowerDirection::Backward);
    Tower bz = Tower::make(Morphism::make(bsum.sum, bsum.sum, Mat::from_ints(Z, {{2, 0}, {0, 1}})), TowerDirection::Backward);
    Tower cz = Tower::make(Morphism::identity(ZZ), TowerDirection::Backward);
    auto famz = compatible_family(cz, col(Z, {1}), 5);
    CHECK(error_is(ErrorCode::LiftFailedAtHorizon,
                   [&] { tower_surjective_lift(az, bz, cz, bsum.inj1, bsum.proj2, famz, 5); }));

    // hypothesis violations
    auto bad = famz;
    bad[2] = col(Z, {5});
    CHECK(error_is(ErrorCode::HypothesisViolation,
                   [&] { tower_surjective_lift(az, bz, cz, bsum.inj1, bsum.proj2, bad, 5); }));
    CHECK(error_is(ErrorCode::HypothesisViolation, [&] {
      tower_surjective_lift(az, bz, cz, bsum.inj1, Morphism::make(bsum.sum, ZZ, Mat::from_ints(Z, {{0, 2}})), famz, 5);
    }));
  }

  TEST_CASE("lifting along non-split tower extensions over Z/8") {
    std::mt19937_64 rng(113);
    const RingDesc R = RingDesc::integers_mod(8);
    for (int t = 0; t < 30; ++t) {
      std::uniform_int_distribution<std::size_t> rk(1, 2);
      const std::size_t ka = rk(rng), kc = rk(rng);
      FreeEndo ea = random_endo(rng, 8, ka), ec = random_endo(rng, 8, kc);
      Morphism sa = endo_morphism(ea), sc = endo_morphism(ec);
      Mat x = random_int_mat(rng, R, ka, kc, 7);
      Mat sb = vcat(hcat(sa.mat(), x), hcat(Mat(R, kc, ka), sc.mat()));
      auto ds = direct_sum(sa.source(), sc.source());
      Tower a = Tower::make(sa, TowerDirection::Backward);
      Tower b = Tower::make(Morphism::make(ds.sum, ds.sum, sb), TowerDirection::Backward);
      Tower c = Tower::make(sc, TowerDirection::Backward);
      const std::size_t horizon = 6;
      auto fam = compatible_family(c, random_int_mat(rng, R, kc, 1, 7), horizon);
      check_lift(b, c, ds.proj2, fam, tower_surjective_lift(a, b, c, ds.inj1, ds.proj2, fam, horizon));
    }
  }

  TEST_CASE("colimits of finite directed systems") {
    FiniteDirectedSystem one{{{true}}, {ZZ}, {{{0, 0}, Morphism::identity(ZZ)}}};
    auto r1 = finite_system_colimit(one);
    CHECK(r1.colimit == ZZ);
    CHECK(equivalent(r1.canonical[0], Morphism::identity(ZZ)));

    FiniteDirectedSystem chain;
    chain.le = {{true, true, true}, {false, true, true}, {false, false, true}};
    chain.objects = {ZZ, ZZ, ZZ};
    for (std::size_t i = 0; i < 3; ++i) chain.maps.emplace(std::pair{i, i}, Morphism::identity(ZZ));
    chain.maps.emplace(std::pair{0, 1}, mor(ZZ, ZZ, {{2}}));
    chain.maps.emplace(std::pair{1, 2}, mor(ZZ, ZZ, {{2}}));
    chain.maps.emplace(std::pair{0, 2}, mor(ZZ, ZZ, {{4}}));
    auto rc = finite_system_colimit(chain);
    CHECK(rc.top == 2);
    CHECK(equivalent(rc.canonical[0], mor(ZZ, ZZ, {{4}})));
    CHECK(equivalent(rc.canonical[1], mor(ZZ, ZZ, {{2}})));
    CHECK(equivalent(rc.canonical[2], Morphism::identity(ZZ)));

    auto broken = chain;
    broken.maps.erase({0, 2});
    broken.maps.emplace(std::pair{0, 2}, mor(ZZ, ZZ, {{3}}));
    CHECK(error_is(ErrorCode::AxiomViolation, [&] { finite_system_colimit(broken); }));

    // diamond over Z/6
    const RingDesc R = RingDesc::integers_mod(6);
    FpModule m = FpModule::free(R, 1);
    FiniteDirectedSystem dia;
    dia.le = {{true, true, true, true}, {false, true, false, true}, {false, false, true, true}, {false, false, false, true}};
    dia.objects = {m, m, m, m};
    for (std::size_t i = 0; i < 4; ++i) dia.maps.emplace(std::pair{i, i}, Morphism::identity(m));
    dia.maps.emplace(std::pair{0, 1}, mor(m, m, {{2}}));
    dia.maps.emplace(std::pair{1, 3}, mor(m, m, {{3}}));
    dia.maps.emplace(std::pair{0, 2}, mor(m, m, {{3}}));
    dia.maps.emplace(std::pair{2, 3}, mor(m, m, {{2}}));
    dia.maps.emplace(std::pair{0, 3}, mor(m, m, {{0}}));
    auto rd = finite_system_colimit(dia);
    CHECK(rd.top == 3);
    for (const auto& [ij, f] : dia.maps)
      CHECK(equivalent(compose(rd.canonical[ij.second], f), rd.canonical[ij.first]));

    FiniteDirectedSystem vee;
    vee.le = {{true, true, true}, {false, true, false}, {false, false, true}};
    vee.objects = {m, m, m};
    for (std::size_t i = 0; i < 3; ++i) vee.maps.emplace(std::pair{i, i}, Morphism::identity(m));
    vee.maps.emplace(std::pair{0, 1}, mor(m, m, {{1}}));
    vee.maps.emplace(std::pair{0, 2}, mor(m, m, {{1}}));
    CHECK(error_is(ErrorCode::NotDirected, [&] { finite_system_colimit(vee); }));
  }

  TEST_CASE("enlarging relations to a free quotient") {
    auto r = enlarge_to_free(ZZ, 2, Mat::from_ints(Z, {{2, 3}}), Mat::from_ints(Z, {{3}, {-2}}));
    CHECK(r.inside_kernel);
    CHECK(r.quotient_free);
    CHECK(r.contains_input);
    CHECK(r.quotient.free_rank == 1);
    CHECK(r.quotient.torsion.empty());
    CHECK(same_submodule(SubmoduleRep{FpModule::free(Z, 2), r.relations},
                         SubmoduleRep{FpModule::free(Z, 2), Mat::from_ints(Z, {{3}, {-2}})}));

    auto inj = enlarge_to_free(FpModule::free(Z, 2), 2, Mat::identity(Z, 2), Mat(Z, 2, 0));
    CHECK(is_zero_submodule(SubmoduleRep{FpModule::free(Z, 2), inj.relations}));
    CHECK(inj.quotient.free_rank == 2);

    auto r24 = enlarge_to_free(ZZ, 2, Mat::from_ints(Z, {{2, 4}}), Mat(Z, 2, 0));
    CHECK(same_submodule(SubmoduleRep{FpModule::free(Z, 2), r24.relations},
                         SubmoduleRep{FpModule::free(Z, 2), Mat::from_ints(Z, {{2}, {-1}})}));
    CHECK(r24.quotient.free_rank == 1);
    CHECK(r24.quotient.torsion.empty());

    CHECK(error_is(ErrorCode::PreconditionViolation,
                   [&] { enlarge_to_free(cyc(Z, {2}), 1, Mat::from_ints(Z, {{1}}), Mat(Z, 1, 0)); }));
    CHECK(error_is(ErrorCode::PreconditionViolation,
                   [&] { enlarge_to_free(ZZ, 2, Mat::from_ints(Z, {{2, 3}}), Mat::from_ints(Z, {{1}, {1}})); }));
    CHECK(error_is(ErrorCode::DimensionMismatch,
                   [&] { enlarge_to_free(ZZ, 3, Mat::from_ints(Z, {{2, 3}}), Mat(Z, 2, 0)); }));
    const RingDesc R6 = RingDesc::integers_mod(6);
    CHECK(error_is(ErrorCode::UnsupportedRing, [&] {
      enlarge_to_free(FpModule::free(R6, 1), 1, Mat::from_ints(R6, {{1}}), Mat(R6, 1, 0));
    }));

    std::mt19937_64 rng(127);
    for (int t = 0; t < 30; ++t) {
      std::uniform_int_distribution<std::size_t> sz(1, 4);
      const std::size_t g = sz(rng), j = sz(rng);
      Mat psi = random_int_mat(rng, Z, g, j, 5);
      // a random sublattice of the kernel
      Mat ker = kernel(Morphism::make(FpModule::free(Z, j), FpModule::free(Z, g), psi)).incl.mat();
      Mat n = ker * random_int_mat(rng, Z, ker.cols(), 2, 3);
      auto e = enlarge_to_free(FpModule::free(Z, g), j, psi, n);
      CHECK(e.inside_kernel);
      CHECK(e.quotient_free);
      CHECK(e.contains_input);
      CHECK(e.quotient.torsion.empty());
    }
  }
}
