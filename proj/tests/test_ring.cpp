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

TEST_SUITE("ring") {
  TEST_CASE("euclidean division") {
    auto [q, r] = Z.euclid_div(Z.from_int(7), Z.from_int(3));
    CHECK(q == Z.from_int(2));
    CHECK(r == Z.from_int(1));
    auto [q2, r2] = Z.euclid_div(Z.from_int(-7), Z.from_int(3));
    CHECK(Z.add(Z.mul(q2, Z.from_int(3)), r2) == Z.from_int(-7));
    CHECK(Z.norm(r2) < 3);
    auto [q3, r3] = Z.euclid_div(Z.from_int(11), Z.one());
    CHECK(q3 == Z.from_int(11));
    CHECK(Z.is_zero(r3));
    CHECK_THROWS_AS(Z.euclid_div(Z.one(), Z.zero()), Error);
    CHECK_THROWS_AS(RingDesc::integers_mod(6).euclid_div(Z.one(), Z.one()), Error);
  }

  TEST_CASE("gaussian division matches the nearest-quotient search") {
    const RingDesc G = RingDesc::gaussian();
    auto [q, r] = G.euclid_div(G.from_int(5), G.gaussian_elem(1, 2));
    CHECK(G.norm(r) < 5);
    CHECK(G.norm(r) == oracle::gaussian_best_remainder_norm(5, 0, 1, 2));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-20, 20);
    for (int t = 0; t < 300; ++t) {
      long ar = d(rng), ai = d(rng), br = d(rng), bi = d(rng);
      if (br == 0 && bi == 0) continue;
      RingElem a = G.gaussian_elem(ar, ai), b = G.gaussian_elem(br, bi);
      auto [qq, rr] = G.euclid_div(a, b);
      CHECK(G.add(G.mul(qq, b), rr) == a);
      CHECK(G.norm(rr) < G.norm(b));
      CHECK(G.norm(rr) == oracle::gaussian_best_remainder_norm(ar, ai, br, bi));
    }
  }

  TEST_CASE("hermite form examples") {
    auto h1 = hnf(Mat::identity(Z, 3));
    CHECK(h1.H == Mat::identity(Z, 3));
    CHECK(h1.U == Mat::identity(Z, 3));
    CHECK(hnf(Mat::from_ints(Z, {{2, 4}})).H == Mat::from_ints(Z, {{2, 0}}));
    CHECK(hnf(Mat::from_ints(Z, {{2, 3}})).H == Mat::from_ints(Z, {{1, 0}}));
    CHECK_THROWS_AS(hnf(Mat(RingDesc::integers_mod(4), 1, 1)), Error);
  }

  TEST_CASE("smith form examples") {
    auto s = snf(Mat::from_ints(Z, {{2, 0}, {0, 3}}));
    REQUIRE(s.invariant_factors.size() == 2);
    CHECK(s.invariant_factors[0] == Z.from_int(1));
    CHECK(s.invariant_factors[1] == Z.from_int(6));
    CHECK(snf(Mat(Z, 3, 2)).invariant_factors.empty());
    auto s2 = snf(Mat::from_ints(Z, {{2, 0}, {0, 4}}));
    REQUIRE(s2.invariant_factors.size() == 2);
    CHECK(s2.invariant_factors[0] == Z.from_int(2));
    CHECK(s2.invariant_factors[1] == Z.from_int(4));
    // oracle: gcd of 1x1 minors and the determinant
    auto a = to_mpz(Mat::from_ints(Z, {{2, 0}, {0, 4}}));
    CHECK(oracle::minor_gcd(a, 1) == 2);
    CHECK(oracle::minor_gcd(a, 2) == 8);
  }

  TEST_CASE("smith form invariants on random integer matrices") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int t = 0; t < 200; ++t) {
      Mat a = random_int_mat(rng, Z, dim(rng), dim(rng), 10);
      auto s = snf(a);
      CHECK(s.U * a * s.V == s.D);
      CHECK(s.U * s.U_inv == Mat::identity(Z, a.rows()));
      CHECK(abs(oracle::det(to_mpz(s.U))) == 1);
      CHECK(abs(oracle::det(to_mpz(s.V))) == 1);
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
          if (i != j) CHECK(Z.is_zero(s.D(i, j)));
      for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i)
        CHECK(Z.divides(s.invariant_factors[i], s.invariant_factors[i + 1]));
      mpz_class prod = 1;
      const std::size_t k = std::min<std::size_t>(4, s.invariant_factors.size());
      for (std::size_t j = 1; j <= k; ++j) {
        prod *= s.invariant_factors[j - 1].integer();
        CHECK(prod == oracle::minor_gcd(to_mpz(a), j));
      }
      CHECK(oracle::minor_gcd(to_mpz(a), s.invariant_factors.size() + 1) == 0);
    }
  }

  TEST_CASE("smith form over the gaussian integers") {
    const RingDesc G = RingDesc::gaussian();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int t = 0; t < 60; ++t) {
      std::vector<RingElem> e;
      for (int i = 0; i < 6; ++i) e.push_back(G.gaussian_elem(d(rng), d(rng)));
      Mat a(G, 2, 3, e);
      auto s = snf(a);
      CHECK(s.U * a * s.V == s.D);
      for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i)
        CHECK(G.divides(s.invariant_factors[i], s.invariant_factors[i + 1]));
    }
  }

  TEST_CASE("hermite column span equals the input span") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int t = 0; t < 100; ++t) {
      Mat a = random_int_mat(rng, Z, dim(rng), dim(rng), 10);
      auto h = hnf(a);
      CHECK(a * h.U == h.H);
      CHECK(solve_linear(h.H, a).has_value());
      CHECK(solve_linear(a, h.H).has_value());
    }
  }

  TEST_CASE("linear solve examples") {
    CHECK_FALSE(solve_linear(Mat::from_ints(Z, {{2}}), Mat::from_ints(Z, {{3}})).has_value());
    Mat b = Mat::from_ints(Z, {{1, 2}, {3, 4}});
    CHECK(*solve_linear(Mat::identity(Z, 2), b) == b);
    const RingDesc Z6 = RingDesc::integers_mod(6);
    auto x = solve_linear(Mat::from_ints(Z6, {{2}}), Mat::from_ints(Z6, {{4}}));
    REQUIRE(x.has_value());
    CHECK(Mat::from_ints(Z6, {{2}}) * *x == Mat::from_ints(Z6, {{4}}));
    CHECK(oracle::solvable_mod(6, {{2}}, {4}));
    CHECK_THROWS_AS(solve_linear(Mat(Z, 2, 1), Mat(Z, 3, 1)), Error);
  }

  TEST_CASE("modular solve is complete against enumeration") {
    std::mt19937_64 rng(19);
    for (long n = 2; n <= 8; ++n) {
      const RingDesc R = RingDesc::integers_mod(n);
      std::uniform_int_distribution<long> e(0, n - 1);
      std::uniform_int_distribution<int> dim(1, 2);
      for (int t = 0; t < 40; ++t) {
        const int r = dim(rng), c = dim(rng);
        oracle::IMat a(r, std::vector<long>(c));
        std::vector<long> flat, bv(r);
        for (auto& row : a)
          for (auto& v : row) {
            v = e(rng);
            flat.push_back(v);
          }
        for (auto& v : bv) v = e(rng);
        Mat A = Mat::from_ints(R, r, c, flat);
        Mat B = Mat::from_ints(R, r, 1, bv);
        auto x = solve_linear(A, B);
        CHECK(x.has_value() == oracle::solvable_mod(n, a, bv));
        if (x) CHECK(A * *x == B);
      }
    }
  }

  TEST_CASE("ring maps act entrywise") {
    auto q = map_entries(RingMap::make(Z, RingDesc::rationals()), Mat::from_ints(Z, {{2}}));
    CHECK(q(0, 0) == RingDesc::rationals().rational_elem(2, 1));
    auto r4 = map_entries(RingMap::make(Z, RingDesc::integers_mod(4)), Mat::from_ints(Z, {{6}}));
    CHECK(r4(0, 0) == RingDesc::integers_mod(4).from_int(2));
    const RingDesc G = RingDesc::gaussian();
    auto g = map_entries(RingMap::make(Z, G), Mat::from_ints(Z, {{3}}));
    CHECK(g(0, 0) == G.gaussian_elem(3, 0));
    auto zi = RingMap::make(Z, G);
    CHECK(zi.flat());
    CHECK(zi.faithfully_flat());
    CHECK(zi.basis_size() == 2);
    auto zq = RingMap::make(Z, RingDesc::rationals());
    CHECK(zq.flat());
    CHECK_FALSE(zq.faithfully_flat());
    CHECK_FALSE(RingMap::make(Z, RingDesc::integers_mod(4)).flat());
    CHECK_THROWS_AS(RingMap::make(RingDesc::rationals(), Z), Error);
  }

  TEST_CASE("ring construction is checked") {
    CHECK_THROWS_AS(RingDesc::integers_mod(1), Error);
    CHECK_THROWS_AS(RingDesc::prime_field(6), Error);
    CHECK(RingDesc::prime_field(7).is_field());
    const RingDesc Q = RingDesc::rationals();
    CHECK(Q.rational_elem(2, 4) == Q.rational_elem(1, 2));
    CHECK(RingDesc::integers_mod(5).from_int(-1) == RingDesc::integers_mod(5).from_int(4));
  }
}
