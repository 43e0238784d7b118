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

#include "fpmod/mat.hpp"

#include <sstream>

namespace fpmod {

namespace {

void require_same_ring(const Mat& a, const Mat& b, const char* op) {
  if (!(a.ring() == b.ring()))
    fail(ErrorCode::RingMismatch, std::string(op) + ": " + a.ring().name() + " vs " + b.ring().name());
}

}  // namespace

Mat::Mat(RingDesc ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_.zero()) {}

Mat::Mat(RingDesc ring, std::size_t rows, std::size_t cols, std::vector<RingElem> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols)
    fail(ErrorCode::DimensionMismatch, "entry count does not match matrix shape");
  for (auto& e : data_) e = ring_.canonical(e);
}

Mat Mat::identity(const RingDesc& ring, std::size_t n) {
  Mat m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, ring.one());
  return m;
}

Mat Mat::from_ints(const RingDesc& ring,
                   std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  Mat m(ring, r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) fail(ErrorCode::DimensionMismatch, "ragged matrix literal");
    std::size_t j = 0;
    for (long v : row) m.set(i, j++, ring.from_int(v));
    ++i;
  }
  return m;
}

Mat Mat::from_ints(const RingDesc& ring, std::size_t rows, std::size_t cols,
                   const std::vector<long>& row_major) {
  if (row_major.size() != rows * cols) fail(ErrorCode::DimensionMismatch, "bad literal size");
  Mat m(ring, rows, cols);
  for (std::size_t k = 0; k < row_major.size(); ++k)
    m.data_[k] = ring.from_int(row_major[k]);
  return m;
}

Mat Mat::diagonal(const RingDesc& ring, const std::vector<RingElem>& diag) {
  Mat m(ring, diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, ring.canonical(diag[i]));
  return m;
}

Mat Mat::column_vector(const RingDesc& ring, const std::vector<RingElem>& v) {
  return Mat(ring, v.size(), 1, v);
}

bool Mat::is_zero() const {
  for (const auto& e : data_)
    if (!ring_.is_zero(e)) return false;
  return true;
}

Mat Mat::operator*(const Mat& o) const {
  require_same_ring(*this, o, "multiply");
  if (cols_ != o.rows_)
    fail(ErrorCode::DimensionMismatch, "multiply " + std::to_string(rows_) + "x" +
                                           std::to_string(cols_) + " by " +
                                           std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  Mat out(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const RingElem& a = (*this)(i, k);
      if (ring_.is_zero(a)) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const RingElem& b = o(k, j);
        if (ring_.is_zero(b)) continue;
        out.data_[i * o.cols_ + j] = ring_.add(out(i, j), ring_.mul(a, b));
      }
    }
  }
  return out;
}

Mat Mat::operator+(const Mat& o) const {
  require_same_ring(*this, o, "add");
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::DimensionMismatch, "add shape");
  Mat out(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = ring_.add(data_[k], o.data_[k]);
  return out;
}

Mat Mat::operator-(const Mat& o) const {
  require_same_ring(*this, o, "subtract");
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::DimensionMismatch, "subtract shape");
  Mat out(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = ring_.sub(data_[k], o.data_[k]);
  return out;
}

Mat Mat::operator-() const {
  Mat out(*this);
  for (auto& e : out.data_) e = ring_.neg(e);
  return out;
}

Mat Mat::scaled(const RingElem& c) const {
  Mat out(*this);
  for (auto& e : out.data_) e = ring_.mul(c, e);
  return out;
}

Mat Mat::transpose() const {
  Mat out(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.set(j, i, (*this)(i, j));
  return out;
}

Mat Mat::col(std::size_t j) const { return cols_range(j, j + 1); }
Mat Mat::row(std::size_t i) const { return rows_range(i, i + 1); }

Mat Mat::cols_range(std::size_t b, std::size_t e) const {
  if (b > e || e > cols_) fail(ErrorCode::DimensionMismatch, "column range");
  Mat out(ring_, rows_, e - b);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = b; j < e; ++j) out.set(i, j - b, (*this)(i, j));
  return out;
}

Mat Mat::rows_range(std::size_t b, std::size_t e) const {
  if (b > e || e > rows_) fail(ErrorCode::DimensionMismatch, "row range");
  Mat out(ring_, e - b, cols_);
  for (std::size_t i = b; i < e; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.set(i - b, j, (*this)(i, j));
  return out;
}

Mat Mat::select_cols(const std::vector<std::size_t>& idx) const {
  Mat out(ring_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < idx.size(); ++k) out.set(i, k, (*this)(i, idx[k]));
  return out;
}

Mat Mat::select_rows(const std::vector<std::size_t>& idx) const {
  Mat out(ring_, idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t j = 0; j < cols_; ++j) out.set(k, j, (*this)(idx[k], j));
  return out;
}

Mat Mat::without_row(std::size_t r) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < rows_; ++i)
    if (i != r) idx.push_back(i);
  return select_rows(idx);
}

Mat Mat::without_col(std::size_t c) const {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < cols_; ++j)
    if (j != c) idx.push_back(j);
  return select_cols(idx);
}

Mat Mat::nonzero_cols() const {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!ring_.is_zero((*this)(i, j))) {
        idx.push_back(j);
        break;
      }
    }
  }
  return select_cols(idx);
}

Mat Mat::power(std::size_t k) const {
  if (rows_ != cols_) fail(ErrorCode::DimensionMismatch, "power of a non-square matrix");
  Mat result = identity(ring_, rows_);
  Mat base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << ring_.to_string((*this)(i, j));
    os << "]";
  }
  os << "]";
  if (rows_ == 0 || cols_ == 0) os << "(" << rows_ << "x" << cols_ << ")";
  return os.str();
}

bool operator==(const Mat& a, const Mat& b) {
  return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Mat hcat(const Mat& a, const Mat& b) {
  require_same_ring(a, b, "hcat");
  if (a.rows() != b.rows()) fail(ErrorCode::DimensionMismatch, "hcat row counts differ");
  Mat out(a.ring(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j));
    for (std::size_t j = 0; j < b.cols(); ++j) out.set(i, a.cols() + j, b(i, j));
  }
  return out;
}

Mat hcat(std::span<const Mat> parts, const RingDesc& ring, std::size_t rows) {
  Mat out(ring, rows, 0);
  for (const auto& p : parts) out = hcat(out, p);
  return out;
}

Mat vcat(const Mat& a, const Mat& b) {
  require_same_ring(a, b, "vcat");
  if (a.cols() != b.cols()) fail(ErrorCode::DimensionMismatch, "vcat column counts differ");
  Mat out(a.ring(), a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) out.set(i, j, a(i, j));
    for (std::size_t i = 0; i < b.rows(); ++i) out.set(a.rows() + i, j, b(i, j));
  }
  return out;
}

Mat block_diag(const Mat& a, const Mat& b) {
  require_same_ring(a, b, "block_diag");
  Mat out(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out.set(a.rows() + i, a.cols() + j, b(i, j));
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  require_same_ring(a, b, "kron");
  const auto& R = a.ring();
  Mat out(R, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const RingElem& x = a(i, j);
      if (R.is_zero(x)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out.set(i * b.rows() + k, j * b.cols() + l, R.mul(x, b(k, l)));
    }
  return out;
}

Mat vec(const Mat& a) {
  Mat out(a.ring(), a.rows() * a.cols(), 1);
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out.set(j * a.rows() + i, 0, a(i, j));
  return out;
}

Mat unvec(const Mat& v, std::size_t rows, std::size_t cols) {
  if (v.rows() != rows * cols || v.cols() != 1) fail(ErrorCode::DimensionMismatch, "unvec shape");
  Mat out(v.ring(), rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) out.set(i, j, v(j * rows + i, 0));
  return out;
}

Mat map_entries(const RingMap& phi, const Mat& a) {
  if (!(a.ring() == phi.source()))
    fail(ErrorCode::RingMismatch, "matrix is over " + a.ring().name() + ", map is " + phi.name());
  std::vector<RingElem> out;
  out.reserve(a.rows() * a.cols());
  for (const auto& e : a.entries()) out.push_back(phi.apply(e));
  return Mat(phi.target(), a.rows(), a.cols(), std::move(out));
}

Mat lift_to_base(const Mat& a) {
  if (a.ring().kind() != RingKind::IntegersMod) return a;
  std::vector<RingElem> e(a.entries().begin(), a.entries().end());
  return Mat(RingDesc::integers(), a.rows(), a.cols(), std::move(e));
}

Mat reduce_from_base(const RingDesc& ring, const Mat& a) {
  if (a.ring() == ring) return a;
  std::vector<RingElem> out;
  out.reserve(a.rows() * a.cols());
  for (const auto& e : a.entries()) out.push_back(ring.from_integer_elem(e));
  return Mat(ring, a.rows(), a.cols(), std::move(out));
}

}  // namespace fpmod
