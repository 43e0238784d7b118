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

#include <random>

#include "fpmod/descent.hpp"
#include "fpmod/purity.hpp"

namespace tu {

using namespace fpmod;

inline const RingDesc Z = RingDesc::integers();

inline Mat col(const RingDesc& r, std::initializer_list<long> v) {
  std::vector<long> x(v);
  return Mat::from_ints(r, x.size(), 1, x);
}

inline FpModule cyc(const RingDesc& r, std::initializer_list<long> ds) { return FpModule::cyclic_sum(r, ds); }

inline Morphism mor(const FpModule& s, const FpModule& t, std::initializer_list<std::initializer_list<long>> m) {
  return Morphism::make(s, t, Mat::from_ints(s.ring(), m));
}

inline std::vector<std::string> torsion_strings(const FpModule& m) {
  std::vector<std::string> out;
  for (const auto& t : m.invariants().torsion) out.push_back(m.ring().to_string(t));
  return out;
}

inline Mat random_int_mat(std::mt19937_64& rng, const RingDesc& r, std::size_t rows, std::size_t cols, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<long> v(rows * cols);
  for (auto& x : v) x = d(rng);
  return Mat::from_ints(r, rows, cols, v);
}

inline std::vector<std::vector<mpz_class>> to_mpz(const Mat& m) {
  std::vector<std::vector<mpz_class>> out(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).integer();
  return out;
}

inline std::vector<std::vector<long>> columns_long(const Mat& m) {
  std::vector<std::vector<long>> out(m.cols(), std::vector<long>(m.rows()));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out[j][i] = m(i, j).integer().get_si();
  return out;
}

}  // namespace tu

namespace tu {

/// Number of elements of a module over Z/n, from its invariants.
inline long finite_size(const FpModule& m) {
  const RingDesc& R = m.ring();
  long s = 1;
  for (const auto& t : m.invariants().torsion) s *= t.integer().get_si();
  for (std::size_t i = 0; i < m.invariants().free_rank; ++i) s *= R.modulus().get_si();
  return s;
}

inline FpModule random_module(std::mt19937_64& rng, const RingDesc& r, int max_gens, long bound) {
  std::uniform_int_distribution<int> g(0, max_gens);
  const int gens = g(rng);
  const int rels = g(rng);
  return FpModule(r, random_int_mat(rng, r, gens, rels, bound));
}

/// A random map out of s; the target gets the extra relations that make it
/// well defined.
inline Morphism random_morphism(std::mt19937_64& rng, const FpModule& s, int max_gens, long bound) {
  FpModule t0 = random_module(rng, s.ring(), max_gens, bound);
  Mat f = random_int_mat(rng, s.ring(), t0.gens(), s.gens(), bound);
  FpModule t(s.ring(), hcat(t0.rels(), f * s.rels()));
  return Morphism::make(s, t, f);
}

}  // namespace tu
