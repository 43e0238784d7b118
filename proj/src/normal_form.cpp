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

#include "fpmod/normal_form.hpp"

#include <algorithm>
#include <utility>

namespace fpmod {

namespace {

void require_euclidean(const RingDesc& r, const char* op) {
  if (!r.is_euclidean())
    fail(ErrorCode::UnsupportedRing, std::string(op) + " requires a Euclidean domain, got " + r.name());
}

// Elementary operations on a working matrix. All of them are unimodular.

void swap_cols(Mat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    RingElem t = m(i, a);
    m.set(i, a, m(i, b));
    m.set(i, b, std::move(t));
  }
}

void swap_rows(Mat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    RingElem t = m(a, j);
    m.set(a, j, m(b, j));
    m.set(b, j, std::move(t));
  }
}

// col[dst] += c * col[src]
void add_col(Mat& m, std::size_t dst, std::size_t src, const RingElem& c) {
  const auto& R = m.ring();
  if (R.is_zero(c)) return;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const RingElem& s = m(i, src);
    if (R.is_zero(s)) continue;
    m.set(i, dst, R.add(m(i, dst), R.mul(c, s)));
  }
}

// row[dst] += c * row[src]
void add_row(Mat& m, std::size_t dst, std::size_t src, const RingElem& c) {
  const auto& R = m.ring();
  if (R.is_zero(c)) return;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const RingElem& s = m(src, j);
    if (R.is_zero(s)) continue;
    m.set(dst, j, R.add(m(dst, j), R.mul(c, s)));
  }
}

void scale_col(Mat& m, std::size_t j, const RingElem& u) {
  const auto& R = m.ring();
  for (std::size_t i = 0; i < m.rows(); ++i) m.set(i, j, R.mul(u, m(i, j)));
}

void scale_row(Mat& m, std::size_t i, const RingElem& u) {
  const auto& R = m.ring();
  for (std::size_t j = 0; j < m.cols(); ++j) m.set(i, j, R.mul(u, m(i, j)));
}

}  // namespace

HermiteForm hnf(const Mat& a) {
  const RingDesc& R = a.ring();
  require_euclidean(R, "hnf");
  const std::size_t m = a.rows(), n = a.cols();
  Mat H = a;
  Mat U = Mat::identity(R, n);
  std::vector<std::size_t> pivots;
  std::size_t k = 0;
  for (std::size_t r = 0; r < m && k < n; ++r) {
    // Euclidean reduction along row r: repeatedly pivot on a smallest-norm
    // entry and reduce the others by it, which keeps entries small.
    bool any = false;
    for (;;) {
      std::size_t best = n;
      mpz_class best_norm;
      std::size_t nonzero = 0;
      for (std::size_t j = k; j < n; ++j) {
        if (R.is_zero(H(r, j))) continue;
        ++nonzero;
        mpz_class nm = R.norm(H(r, j));
        if (best == n || nm < best_norm) {
          best = j;
          best_norm = nm;
        }
      }
      if (best == n) break;
      any = true;
      swap_cols(H, k, best);
      swap_cols(U, k, best);
      if (nonzero == 1) break;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (R.is_zero(H(r, j))) continue;
        RingElem q = R.euclid_div(H(r, j), H(r, k)).first;
        if (R.is_zero(q)) continue;
        RingElem nq = R.neg(q);
        add_col(H, j, k, nq);
        add_col(U, j, k, nq);
      }
    }
    if (!any) continue;
    auto [assoc, unit] = R.normalize(H(r, k));
    if (!R.is_one(unit)) {
      scale_col(H, k, unit);
      scale_col(U, k, unit);
    }
    // reduce earlier columns modulo the new pivot to bound coefficient growth
    for (std::size_t j = 0; j < k; ++j) {
      if (R.is_zero(H(r, j))) continue;
      RingElem q = R.euclid_div(H(r, j), H(r, k)).first;
      if (R.is_zero(q)) continue;
      RingElem nq = R.neg(q);
      add_col(H, j, k, nq);
      add_col(U, j, k, nq);
    }
    pivots.push_back(r);
    ++k;
  }
  return HermiteForm{std::move(H), std::move(U), k, std::move(pivots)};
}

SmithForm snf(const Mat& a) {
  const RingDesc& R = a.ring();
  require_euclidean(R, "snf");
  const std::size_t m = a.rows(), n = a.cols();
  Mat D = a;
  Mat U = Mat::identity(R, m);
  Mat Ui = Mat::identity(R, m);
  Mat V = Mat::identity(R, n);
  std::vector<RingElem> factors;

  // row ops mirror onto U (left) and, inverted, onto U_inv (right)
  auto row_swap = [&](std::size_t i, std::size_t j) {
    swap_rows(D, i, j);
    swap_rows(U, i, j);
    swap_cols(Ui, i, j);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const RingElem& c) {
    add_row(D, dst, src, c);
    add_row(U, dst, src, c);
    add_col(Ui, src, dst, R.neg(c));
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    swap_cols(D, i, j);
    swap_cols(V, i, j);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const RingElem& c) {
    add_col(D, dst, src, c);
    add_col(V, dst, src, c);
  };

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    // smallest-norm nonzero entry of the trailing block
    std::size_t bi = m, bj = n;
    mpz_class bn;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (R.is_zero(D(i, j))) continue;
        mpz_class nm = R.norm(D(i, j));
        if (bi == m || nm < bn) {
          bi = i;
          bj = j;
          bn = nm;
        }
      }
    if (bi == m) break;
    row_swap(t, bi);
    col_swap(t, bj);

    for (;;) {
      for (std::size_t i = t + 1; i < m; ++i) {
        if (R.is_zero(D(i, t))) continue;
        RingElem q = R.euclid_div(D(i, t), D(t, t)).first;
        row_add(i, t, R.neg(q));
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (R.is_zero(D(t, j))) continue;
        RingElem q = R.euclid_div(D(t, j), D(t, t)).first;
        col_add(j, t, R.neg(q));
      }
      // any remainder left in the pivot row/column has smaller norm: promote it
      std::size_t ri = m, rj = n;
      mpz_class rn;
      for (std::size_t i = t + 1; i < m; ++i)
        if (!R.is_zero(D(i, t))) {
          mpz_class nm = R.norm(D(i, t));
          if (ri == m || nm < rn) {
            ri = i;
            rj = n;
            rn = nm;
          }
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (!R.is_zero(D(t, j))) {
          mpz_class nm = R.norm(D(t, j));
          if ((ri == m && rj == n) || nm < rn) {
            ri = m;
            rj = j;
            rn = nm;
          }
        }
      if (ri != m) {
        row_swap(t, ri);
        continue;
      }
      if (rj != n) {
        col_swap(t, rj);
        continue;
      }
      // pivot row and column are clear; enforce divisibility of the rest
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n && !fixed; ++j)
          if (!R.divides(D(t, t), D(i, j))) {
            row_add(t, i, R.one());
            fixed = true;
          }
      if (!fixed) break;
    }
    auto [assoc, unit] = R.normalize(D(t, t));
    if (!R.is_one(unit)) {
      scale_row(D, t, unit);
      scale_row(U, t, unit);
      scale_col(Ui, t, R.inverse(unit));
    }
    factors.push_back(D(t, t));
  }
  return SmithForm{std::move(U), std::move(V), std::move(D), std::move(Ui), std::move(factors)};
}

namespace {

// Column echelon form over Z/n. Each pool column carries its image h = A·u.
// After a pivot p is fixed at row r, (n / gcd(p, n))·pivot is added back to
// the pool, so the columns with pivot rows >= r span every element of the
// column span that vanishes above row r.
class ModEchelon {
 public:
  explicit ModEchelon(const Mat& a) : n_(a.ring().modulus()), rows_(a.rows()), cols_(a.cols()) {
    for (std::size_t j = 0; j < cols_; ++j) {
      Entry e{std::vector<mpz_class>(rows_), std::vector<mpz_class>(cols_, 0)};
      for (std::size_t i = 0; i < rows_; ++i) e.h[i] = a(i, j).integer();
      e.u[j] = 1;
      pool_.push_back(std::move(e));
    }
    for (std::size_t r = 0; r < rows_; ++r) eliminate_row(r);
  }

  std::optional<std::vector<mpz_class>> solve(std::vector<mpz_class> rhs) const {
    std::vector<mpz_class> x(cols_, 0);
    std::size_t t = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      reduce(rhs[i]);
      if (t < pivots_.size() && pivot_rows_[t] == i) {
        const Entry& p = pivots_[t++];
        mpz_class g, s, unused;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), unused.get_mpz_t(), p.h[i].get_mpz_t(), n_.get_mpz_t());
        if (rhs[i] % g != 0) return std::nullopt;
        // s·p ≡ g (mod n)
        mpz_class y = (rhs[i] / g) * s;
        reduce(y);
        if (y == 0) continue;
        for (std::size_t k = i; k < rows_; ++k) rhs[k] -= y * p.h[k];
        for (std::size_t k = 0; k < cols_; ++k) x[k] += y * p.u[k];
      } else if (rhs[i] != 0) {
        return std::nullopt;
      }
    }
    for (auto& v : x) reduce(v);
    return x;
  }

  /// u-parts of the pool columns whose image vanishes; they span ker A.
  std::vector<std::vector<mpz_class>> kernel() const {
    std::vector<std::vector<mpz_class>> out;
    for (const auto& e : pool_) out.push_back(e.u);
    return out;
  }

 private:
  struct Entry {
    std::vector<mpz_class> h;
    std::vector<mpz_class> u;
  };

  void reduce(mpz_class& v) const {
    v %= n_;
    if (v < 0) v += n_;
  }

  // (x, y) <- (s·x + t·y, c·x + d·y)
  void combine(Entry& x, Entry& y, const mpz_class& s, const mpz_class& t, const mpz_class& c,
               const mpz_class& d) const {
    auto mix = [&](std::vector<mpz_class>& a, std::vector<mpz_class>& b) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        mpz_class na = s * a[i] + t * b[i];
        mpz_class nb = c * a[i] + d * b[i];
        reduce(na);
        reduce(nb);
        a[i] = std::move(na);
        b[i] = std::move(nb);
      }
    };
    mix(x.h, y.h);
    mix(x.u, y.u);
  }

  void eliminate_row(std::size_t r) {
    std::size_t piv = pool_.size();
    for (std::size_t j = 0; j < pool_.size(); ++j) {
      reduce(pool_[j].h[r]);
      if (pool_[j].h[r] == 0) continue;
      if (piv == pool_.size()) {
        piv = j;
        continue;
      }
      const mpz_class a = pool_[piv].h[r], b = pool_[j].h[r];
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      // [[s, t], [-b/g, a/g]] has determinant 1
      combine(pool_[piv], pool_[j], s, t, -b / g, a / g);
    }
    if (piv == pool_.size()) return;
    Entry p = std::move(pool_[piv]);
    pool_.erase(pool_.begin() + static_cast<std::ptrdiff_t>(piv));
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p.h[r].get_mpz_t(), n_.get_mpz_t());
    if (g != 1) {
      const mpz_class ann = n_ / g;
      Entry extra = p;
      for (auto& v : extra.h) reduce(v *= ann);
      for (auto& v : extra.u) reduce(v *= ann);
      if (std::any_of(extra.h.begin(), extra.h.end(), [](const mpz_class& v) { return v != 0; }) ||
          std::any_of(extra.u.begin(), extra.u.end(), [](const mpz_class& v) { return v != 0; }))
        pool_.push_back(std::move(extra));
    }
    pivots_.push_back(std::move(p));
    pivot_rows_.push_back(r);
  }

  mpz_class n_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Entry> pool_;
  std::vector<Entry> pivots_;
  std::vector<std::size_t> pivot_rows_;
};

std::optional<Mat> solve_euclidean(const Mat& a, const Mat& b) {
  const RingDesc& R = a.ring();
  HermiteForm hf = hnf(a);
  const std::size_t m = a.rows(), n = a.cols();
  Mat Y(R, n, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    std::vector<RingElem> res(m);
    for (std::size_t i = 0; i < m; ++i) res[i] = b(i, c);
    std::size_t t = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (t < hf.rank && hf.pivot_rows[t] == i) {
        auto y = R.exact_div(res[i], hf.H(i, t));
        if (!y) return std::nullopt;
        if (!R.is_zero(*y)) {
          for (std::size_t k = i; k < m; ++k)
            res[k] = R.sub(res[k], R.mul(*y, hf.H(k, t)));
        }
        Y.set(t, c, std::move(*y));
        ++t;
      } else if (!R.is_zero(res[i])) {
        return std::nullopt;
      }
    }
  }
  return hf.U * Y;
}

}  // namespace

std::optional<Mat> solve_linear(const Mat& a, const Mat& b) {
  if (!(a.ring() == b.ring())) fail(ErrorCode::RingMismatch, "solve_linear: operands over different rings");
  if (a.rows() != b.rows())
    fail(ErrorCode::DimensionMismatch, "solve_linear: A has " + std::to_string(a.rows()) +
                                           " rows, B has " + std::to_string(b.rows()));
  const RingDesc& R = a.ring();
  if (R.kind() != RingKind::IntegersMod) return solve_euclidean(a, b);
  ModEchelon e(a);
  Mat x(R, a.cols(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    std::vector<mpz_class> rhs(b.rows());
    for (std::size_t i = 0; i < b.rows(); ++i) rhs[i] = b(i, c).integer();
    auto y = e.solve(std::move(rhs));
    if (!y) return std::nullopt;
    for (std::size_t i = 0; i < a.cols(); ++i) x.set(i, c, R.from_int((*y)[i]));
  }
  return x;
}

Mat syzygies(const Mat& a) {
  const RingDesc& R = a.ring();
  if (R.kind() != RingKind::IntegersMod) {
    HermiteForm hf = hnf(a);
    return hf.U.cols_range(hf.rank, a.cols());
  }
  ModEchelon e(a);
  std::vector<Mat> cols;
  for (const auto& k : e.kernel()) {
    Mat v(R, a.cols(), 1);
    for (std::size_t i = 0; i < a.cols(); ++i) v.set(i, 0, R.from_int(k[i]));
    cols.push_back(std::move(v));
  }
  return hcat(cols, R, a.cols()).nonzero_cols();
}

std::size_t rank(const Mat& a) { return hnf(a).rank; }

Mat inverse_unimodular(const Mat& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  auto x = solve_linear(a, Mat::identity(a.ring(), a.rows()));
  if (!x) fail(ErrorCode::PreconditionViolation, "matrix is not invertible");
  return *x;
}

}  // namespace fpmod
