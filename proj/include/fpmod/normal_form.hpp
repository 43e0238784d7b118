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

#include <optional>
#include <vector>

#include "fpmod/mat.hpp"

namespace fpmod {

/// Column Hermite form H = A·U with U unimodular. Column t < rank has its
/// pivot at pivot_rows[t] (strictly increasing), zeros above the pivot, a
/// canonical-associate pivot, and entries to the left of the pivot reduced
/// modulo it. Columns rank.. of H are zero.
struct HermiteForm {
  Mat H;
  Mat U;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

/// U·A·V = D with U, V unimodular and D diagonal. invariant_factors are the
/// nonzero diagonal entries d1 | d2 | ... in canonical-associate form.
/// U_inv is carried along so callers can map normal-form coordinates back.
struct SmithForm {
  Mat U;
  Mat V;
  Mat D;
  Mat U_inv;
  std::vector<RingElem> invariant_factors;
};

HermiteForm hnf(const Mat& a);
SmithForm snf(const Mat& a);

/// Some X with A·X = B, or nullopt when no solution exists over the ring.
/// IntegersMod systems are lifted to Integers with n·I appended.
std::optional<Mat> solve_linear(const Mat& a, const Mat& b);

/// Generators (as columns) of {x : A·x = 0} over the ring of A.
Mat syzygies(const Mat& a);

/// Rank over the fraction field of a Euclidean domain.
std::size_t rank(const Mat& a);

/// Matrix inverse for a unimodular square matrix (throws otherwise).
Mat inverse_unimodular(const Mat& a);

}  // namespace fpmod
