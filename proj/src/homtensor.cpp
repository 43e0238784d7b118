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

#include "fpmod/homtensor.hpp"

#include <algorithm>

namespace fpmod {

namespace {

void require_same_ring(const FpModule& a, const FpModule& b, const char* op) {
  if (!(a.ring() == b.ring()))
    fail(ErrorCode::RingMismatch, std::string(op) + ": " + a.ring().name() + " vs " + b.ring().name());
}

}  // namespace

// ---------------------------------------------------------------------- hom

Mat HomModule::encode(const Morphism& f) const {
  if (!(f.source() == source) || !(f.target() == target))
    fail(ErrorCode::SourceMismatch, "encode: morphism is not in this Hom module");
  const Mat& G = incl.mat();
  auto z = solve_linear(hcat(G, incl.target().rels()), vec(f.mat()));
  if (!z) fail(ErrorCode::InternalInvariant, "encode: morphism not in the image of the Hom inclusion");
  return z->rows_range(0, G.cols());
}

Morphism HomModule::decode(const Mat& element) const {
  if (element.rows() != underlying.gens() || element.cols() != 1)
    fail(ErrorCode::DimensionMismatch, "decode: expected a column with " +
                                           std::to_string(underlying.gens()) + " entries");
  return Morphism::make(source, target, unvec(incl.mat() * element, target.gens(), source.gens()));
}

HomModule hom_module(const FpModule& m, const FpModule& n) {
  require_same_ring(m, n, "hom_module");
  const auto& R = m.ring();
  const Mat& A = m.rels();
  const Mat& B = n.rels();
  const std::size_t g = m.gens(), h = n.gens(), a = A.cols();
  // F in n^g (column-stacked) is well defined iff F·A vanishes in n^a
  FpModule ng(R, kron(Mat::identity(R, g), B));
  FpModule na(R, kron(Mat::identity(R, a), B));
  Morphism eval = Morphism::make(ng, na, kron(A.transpose(), Mat::identity(R, h)));
  KernelResult k = kernel(eval);
  return HomModule{m, n, k.module, k.incl};
}

// ------------------------------------------------------------------- tensor

FpModule tensor(const FpModule& m, const FpModule& n) {
  require_same_ring(m, n, "tensor");
  const auto& R = m.ring();
  return FpModule(R, hcat(kron(m.rels(), Mat::identity(R, n.gens())), kron(Mat::identity(R, m.gens()), n.rels())));
}

Morphism tensor_mor(const Morphism& f, const Morphism& g) {
  if (!(f.ring() == g.ring())) fail(ErrorCode::RingMismatch, "tensor_mor: maps over different rings");
  return Morphism::make(tensor(f.source(), g.source()), tensor(f.target(), g.target()), kron(f.mat(), g.mat()));
}

FpModule base_change(const RingMap& phi, const FpModule& m) {
  if (!(m.ring() == phi.source()))
    fail(ErrorCode::RingMismatch, "base_change: module over " + m.ring().name() + ", map " + phi.name());
  return FpModule(phi.target(), map_entries(phi, m.rels()));
}

Morphism base_change_mor(const RingMap& phi, const Morphism& f) {
  if (!(f.ring() == phi.source()))
    fail(ErrorCode::RingMismatch, "base_change_mor: map over " + f.ring().name() + ", ring map " + phi.name());
  return Morphism::with_witness(base_change(phi, f.source()), base_change(phi, f.target()),
                                map_entries(phi, f.mat()), map_entries(phi, f.witness()));
}

// ------------------------------------------------------------ number theory

std::vector<std::pair<mpz_class, unsigned>> factor_integer(const mpz_class& n0) {
  std::vector<std::pair<mpz_class, unsigned>> out;
  mpz_class n = abs(n0);
  if (n <= 1) return out;
  for (mpz_class p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<mpz_class> divisors(const mpz_class& n) {
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : factor_integer(n)) {
    const std::size_t base = out.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ----------------------------------------------------------------- deciders

bool is_flat(const FpModule& m) {
  const RingDesc& R = m.ring();
  if (R.is_field()) return true;
  if (R.kind() == RingKind::IntegersMod) {
    const mpz_class& n = R.modulus();
    const std::size_t g = m.gens();
    const Mat I = Mat::identity(R, g);
    for (const auto& d : divisors(n)) {
      if (d == 1 || d == n) continue;
      // ker(×d) ⊆ (n/d)·m; the reverse inclusion always holds
      Mat syz = syzygies(hcat(I.scaled(R.from_int(d)), m.rels()));
      Mat ker = syz.rows_range(0, g);
      if (!members(SubmoduleRep{m, I.scaled(R.from_int(n / d))}, ker)) return false;
    }
    return true;
  }
  // torsion-free iff the relation lattice is saturated: the double
  // orthogonal of colspan(rels) lies in colspan(rels)
  const Mat& A = m.rels();
  Mat perp = syzygies(A.transpose());
  Mat sat = syzygies(perp.transpose());
  return solve_linear(A, sat).has_value();
}

bool projective_by_invariants(const FpModule& m) {
  const RingDesc& R = m.ring();
  const auto& inv = m.invariants();
  if (R.kind() != RingKind::IntegersMod) return inv.torsion.empty();
  const mpz_class& n = R.modulus();
  const auto nf = factor_integer(n);
  for (const auto& d : inv.torsion) {
    for (const auto& [p, e] : factor_integer(d.integer())) {
      for (const auto& [q, en] : nf)
        if (q == p && en != e) return false;
    }
  }
  return true;
}

bool projective_by_splitting(const FpModule& m) {
  const auto& R = m.ring();
  FpModule F = FpModule::free(R, m.gens());
  Morphism pi = Morphism::make(F, m, Mat::identity(R, m.gens()));
  return lift_through(pi, Morphism::identity(m)).has_value();
}

bool is_projective(const FpModule& m) {
  const bool a = projective_by_invariants(m);
  const bool b = projective_by_splitting(m);
  if (a != b)
    fail(ErrorCode::DeciderDisagreement, std::string("projectivity deciders disagree: invariants say ") +
                                             (a ? "true" : "false") + ", splitting says " + (b ? "true" : "false"));
  return a;
}

}  // namespace fpmod
