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

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "fpmod/ring.hpp"

namespace fpmod {

/// Dense row-major matrix over a RingDesc. Value type: copies are independent
/// and every arithmetic operation returns a fresh matrix.
class Mat {
 public:
  Mat() = default;
  Mat(RingDesc ring, std::size_t rows, std::size_t cols);
  /// Entries are canonicalized against `ring`; rows must all have equal length.
  Mat(RingDesc ring, std::size_t rows, std::size_t cols, std::vector<RingElem> entries);

  static Mat identity(const RingDesc& ring, std::size_t n);
  static Mat zero(const RingDesc& ring, std::size_t rows, std::size_t cols) {
    return Mat(ring, rows, cols);
  }
  /// Convenience for small integer literals: rows of machine integers.
  static Mat from_ints(const RingDesc& ring,
                       std::initializer_list<std::initializer_list<long>> rows);
  static Mat from_ints(const RingDesc& ring, std::size_t rows, std::size_t cols,
                       const std::vector<long>& row_major);
  static Mat diagonal(const RingDesc& ring, const std::vector<RingElem>& diag);
  static Mat column_vector(const RingDesc& ring, const std::vector<RingElem>& v);

  const RingDesc& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const RingElem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, RingElem v) { data_[i * cols_ + j] = std::move(v); }
  std::span<const RingElem> entries() const { return data_; }

  bool is_zero() const;

  Mat operator*(const Mat& other) const;
  Mat operator+(const Mat& other) const;
  Mat operator-(const Mat& other) const;
  Mat operator-() const;
  Mat scaled(const RingElem& c) const;

  Mat transpose() const;
  Mat col(std::size_t j) const;
  Mat row(std::size_t i) const;
  Mat cols_range(std::size_t begin, std::size_t end) const;
  Mat rows_range(std::size_t begin, std::size_t end) const;
  Mat select_cols(const std::vector<std::size_t>& idx) const;
  Mat select_rows(const std::vector<std::size_t>& idx) const;
  Mat without_row(std::size_t i) const;
  Mat without_col(std::size_t j) const;
  /// Drops columns that are entirely zero.
  Mat nonzero_cols() const;
  Mat power(std::size_t k) const;

  std::string to_string() const;

  friend bool operator==(const Mat& a, const Mat& b);

 private:
  RingDesc ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<RingElem> data_;
};

Mat hcat(const Mat& a, const Mat& b);
Mat hcat(std::span<const Mat> parts, const RingDesc& ring, std::size_t rows);
Mat vcat(const Mat& a, const Mat& b);
Mat block_diag(const Mat& a, const Mat& b);
/// Kronecker product; (a ⊗ b)[(i,k),(j,l)] = a[i][j] * b[k][l].
Mat kron(const Mat& a, const Mat& b);
/// Stacks columns: vec(A)[j*rows + i] = A[i][j].
Mat vec(const Mat& a);
Mat unvec(const Mat& v, std::size_t rows, std::size_t cols);
/// Entrywise image along a ring map.
Mat map_entries(const RingMap& phi, const Mat& a);
/// IntegersMod matrix -> its representative matrix over Integers.
Mat lift_to_base(const Mat& a);
/// Integers matrix -> matrix over `ring` (reduction for IntegersMod).
Mat reduce_from_base(const RingDesc& ring, const Mat& a);

}  // namespace fpmod
