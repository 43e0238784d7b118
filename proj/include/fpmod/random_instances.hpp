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

#include <cstdint>
#include <random>

#include "fpmod/module.hpp"

namespace fpmod::gen {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
/// Seed for instance `index` of the stream named `stream`.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index);

long uniform(Rng& rng, long lo, long hi);
bool coin(Rng& rng, int one_in);

/// Small entry: |.| ≤ bound over Z, Z[i] and Q; a residue over Z/n, F_p.
/// Zero with probability about one half, which keeps presentations sparse.
RingElem random_elem(Rng& rng, const RingDesc& r, long bound);
Mat random_mat(Rng& rng, const RingDesc& r, std::size_t rows, std::size_t cols, long bound);
/// Product of elementary matrices, with explicit inverse.
struct Unimodular {
  Mat mat;
  Mat inverse;
};
Unimodular random_unimodular(Rng& rng, const RingDesc& r, std::size_t k, long bound);

/// Relation matrix with 0..max_gens generators and 0..max_gens+1 relations.
Mat random_relations(Rng& rng, const RingDesc& r, std::size_t max_gens, long bound);
/// Element d with R/(d) an interesting cyclic module: 0, units and nonunits.
RingElem random_cyclic_order(Rng& rng, const RingDesc& r, long bound);

/// A random map out of the module presented by `source_rels`; the target
/// relations absorb the image of the source relations.
struct RandomMap {
  Mat target_rels;
  Mat mat;
};
RandomMap random_map_from(Rng& rng, const Mat& source_rels, std::size_t max_gens, long bound);

}  // namespace fpmod::gen
