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

#include "fpmod/random_instances.hpp"

namespace fpmod::gen {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  // FNV-1a of the stream name
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return splitmix64(splitmix64(seed ^ h) + index);
}

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

bool coin(Rng& rng, int one_in) { return uniform(rng, 0, one_in - 1) == 0; }

RingElem random_elem(Rng& rng, const RingDesc& r, long bound) {
  if (coin(rng, 2)) return r.zero();
  switch (r.kind()) {
    case RingKind::IntegersMod:
    case RingKind::PrimeField: {
      const long n = r.modulus().get_si();
      return r.from_int(uniform(rng, 1, std::min(n - 1, std::max(bound, 1L))));
    }
    case RingKind::GaussianIntegers:
      return r.gaussian_elem(uniform(rng, -bound, bound), coin(rng, 2) ? 0 : uniform(rng, -bound, bound));
    case RingKind::Rationals:
      return r.rational_elem(uniform(rng, -bound, bound), uniform(rng, 1, 3));
    default: return r.from_int(uniform(rng, -bound, bound));
  }
}

Mat random_mat(Rng& rng, const RingDesc& r, std::size_t rows, std::size_t cols, long bound) {
  Mat m(r, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, random_elem(rng, r, bound));
  return m;
}

Unimodular random_unimodular(Rng& rng, const RingDesc& r, std::size_t k, long bound) {
  Unimodular u{Mat::identity(r, k), Mat::identity(r, k)};
  if (k < 2) return u;
  const long c = std::min(bound, 2L);
  for (int s = 0; s < 4; ++s) {
    const std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(k) - 1));
    const std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(k) - 1));
    if (i == j) continue;
    const RingElem a = r.from_int(uniform(rng, -c, c));
    Mat e = Mat::identity(r, k), einv = Mat::identity(r, k);
    e.set(i, j, a);
    einv.set(i, j, r.neg(a));
    u.mat = e * u.mat;
    u.inverse = u.inverse * einv;
  }
  return u;
}

Mat random_relations(Rng& rng, const RingDesc& r, std::size_t max_gens, long bound) {
  const auto g = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_gens)));
  const auto k = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_gens) + 1));
  return random_mat(rng, r, g, k, bound);
}

RingElem random_cyclic_order(Rng& rng, const RingDesc& r, long bound) {
  switch (r.kind()) {
    case RingKind::IntegersMod: {
      std::vector<long> ds;
      const long n = r.modulus().get_si();
      for (long d = 1; d <= n; ++d)
        if (n % d == 0) ds.push_back(d);
      return r.from_int(ds[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(ds.size()) - 1))]);
    }
    case RingKind::Rationals:
    case RingKind::PrimeField: return coin(rng, 2) ? r.zero() : r.one();
    case RingKind::GaussianIntegers: {
      const long b = std::min(bound, 3L);
      return r.gaussian_elem(uniform(rng, 0, b), uniform(rng, 0, b));
    }
    default: return r.from_int(uniform(rng, 0, bound));
  }
}

RandomMap random_map_from(Rng& rng, const Mat& source_rels, std::size_t max_gens, long bound) {
  const RingDesc& r = source_rels.ring();
  Mat t0 = random_relations(rng, r, max_gens, bound);
  Mat f = random_mat(rng, r, t0.rows(), source_rels.rows(), bound);
  return {hcat(t0, f * source_rels), f};
}

}  // namespace fpmod::gen
