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

#include "fpmod/module.hpp"

namespace fpmod {

FpModule::FpModule() : FpModule(RingDesc::integers(), Mat(RingDesc::integers(), 0, 0)) {}

FpModule::FpModule(RingDesc ring, Mat rels) {
  if (!(rels.ring() == ring))
    fail(ErrorCode::RingMismatch, "relations over " + rels.ring().name() + " for a module over " + ring.name());
  auto d = std::make_shared<Data>();
  d->ring = std::move(ring);
  d->rels = std::move(rels);
  data_ = std::move(d);
}

FpModule FpModule::free(const RingDesc& ring, std::size_t rank) {
  return FpModule(ring, Mat(ring, rank, 0));
}

FpModule FpModule::cyclic_sum(const RingDesc& ring, const std::vector<RingElem>& ds) {
  return FpModule(ring, Mat::diagonal(ring, ds));
}

FpModule FpModule::cyclic_sum(const RingDesc& ring, std::initializer_list<long> ds) {
  std::vector<RingElem> v;
  for (long d : ds) v.push_back(ring.from_int(d));
  return cyclic_sum(ring, v);
}

Mat FpModule::base_relations() const {
  const RingDesc& R = ring();
  if (R.kind() != RingKind::IntegersMod) return rels();
  const RingDesc Z = RingDesc::integers();
  return hcat(lift_to_base(rels()), Mat::identity(Z, gens()).scaled(Z.from_int(R.modulus())));
}

const ModuleInvariants& FpModule::invariants() const {
  std::call_once(data_->once, [this] {
    const RingDesc& R = ring();
    SmithForm sf = snf(base_relations());
    ModuleInvariants inv;
    if (R.kind() == RingKind::IntegersMod) {
      const mpz_class& n = R.modulus();
      for (const auto& d : sf.invariant_factors) {
        if (d.integer() == n) ++inv.free_rank;
        else if (d.integer() != 1) inv.torsion.push_back(R.from_int(d.integer()));
      }
    } else {
      for (const auto& d : sf.invariant_factors)
        if (!R.is_unit(d)) inv.torsion.push_back(d);
      inv.free_rank = gens() - sf.invariant_factors.size();
    }
    data_->inv = std::move(inv);
  });
  return data_->inv;
}

bool FpModule::is_zero() const {
  const auto& inv = invariants();
  return inv.free_rank == 0 && inv.torsion.empty();
}

// ---------------------------------------------------------------- morphisms

Morphism Morphism::make(FpModule source, FpModule target, Mat mat) {
  if (!(source.ring() == target.ring()) || !(mat.ring() == source.ring()))
    fail(ErrorCode::RingMismatch, "morphism data over different rings");
  if (mat.rows() != target.gens() || mat.cols() != source.gens())
    fail(ErrorCode::DimensionMismatch,
         "morphism matrix is " + std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()) +
             ", expected " + std::to_string(target.gens()) + "x" + std::to_string(source.gens()));
  auto w = solve_linear(target.rels(), mat * source.rels());
  if (!w) fail(ErrorCode::NotWellDefined, "matrix " + mat.to_string() + " does not respect relations");
  return Morphism(std::move(source), std::move(target), std::move(mat), std::move(*w));
}

Morphism Morphism::with_witness(FpModule source, FpModule target, Mat mat, Mat witness) {
  if (mat.rows() != target.gens() || mat.cols() != source.gens())
    fail(ErrorCode::DimensionMismatch, "morphism matrix shape");
  if (!(mat * source.rels() == target.rels() * witness))
    fail(ErrorCode::InternalInvariant, "supplied witness does not certify well-definedness");
  return Morphism(std::move(source), std::move(target), std::move(mat), std::move(witness));
}

Morphism Morphism::identity(const FpModule& m) {
  const auto& R = m.ring();
  return Morphism(m, m, Mat::identity(R, m.gens()), Mat::identity(R, m.rels().cols()));
}

Morphism Morphism::zero(const FpModule& s, const FpModule& t) {
  const auto& R = s.ring();
  return Morphism(s, t, Mat(R, t.gens(), s.gens()), Mat(R, t.rels().cols(), s.rels().cols()));
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.target() == g.source()))
    fail(ErrorCode::SourceMismatch, "compose: codomain of the inner map is not the domain of the outer");
  return Morphism::with_witness(f.source(), g.target(), g.mat() * f.mat(), g.witness() * f.witness());
}

namespace {

void require_parallel(const Morphism& f, const Morphism& g, const char* op) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    fail(ErrorCode::SourceMismatch, std::string(op) + ": maps are not parallel");
}

}  // namespace

Morphism add(const Morphism& f, const Morphism& g) {
  require_parallel(f, g, "add");
  return Morphism::with_witness(f.source(), f.target(), f.mat() + g.mat(), f.witness() + g.witness());
}

Morphism subtract(const Morphism& f, const Morphism& g) {
  require_parallel(f, g, "subtract");
  return Morphism::with_witness(f.source(), f.target(), f.mat() - g.mat(), f.witness() - g.witness());
}

Morphism scale(const RingElem& c, const Morphism& f) {
  return Morphism::with_witness(f.source(), f.target(), f.mat().scaled(c), f.witness().scaled(c));
}

bool equivalent(const Morphism& f, const Morphism& g) {
  if (!(f.target() == g.target()) || f.mat().cols() != g.mat().cols())
    fail(ErrorCode::SourceMismatch, "equivalent: maps are not parallel");
  Mat diff = f.mat() - g.mat();
  if (diff.is_zero()) return true;
  return solve_linear(f.target().rels(), diff).has_value();
}

bool is_zero_map(const Morphism& f) {
  if (f.mat().is_zero()) return true;
  return solve_linear(f.target().rels(), f.mat()).has_value();
}

Morphism multiplication(const FpModule& m, const RingElem& c) {
  const auto& R = m.ring();
  return Morphism::with_witness(m, m, Mat::identity(R, m.gens()).scaled(c),
                                Mat::identity(R, m.rels().cols()).scaled(c));
}

// --------------------------------------------------------------- submodules

SubmoduleRep zero_submodule(const FpModule& m) { return {m, Mat(m.ring(), m.gens(), 0)}; }
SubmoduleRep full_submodule(const FpModule& m) { return {m, Mat::identity(m.ring(), m.gens())}; }

bool members(const SubmoduleRep& sub, const Mat& x) {
  if (x.rows() != sub.ambient.gens())
    fail(ErrorCode::DimensionMismatch, "element has " + std::to_string(x.rows()) +
                                           " coordinates, ambient has " +
                                           std::to_string(sub.ambient.gens()) + " generators");
  if (x.is_zero()) return true;
  return solve_linear(hcat(sub.gens_mat, sub.ambient.rels()), x).has_value();
}

bool member(const SubmoduleRep& sub, const Mat& x) { return members(sub, x); }

bool contained(const SubmoduleRep& a, const SubmoduleRep& b) {
  if (!(a.ambient == b.ambient)) fail(ErrorCode::SourceMismatch, "submodules of different ambients");
  return members(b, a.gens_mat);
}

bool same_submodule(const SubmoduleRep& a, const SubmoduleRep& b) {
  return contained(a, b) && contained(b, a);
}

bool is_zero_submodule(const SubmoduleRep& s) { return members(zero_submodule(s.ambient), s.gens_mat); }

SubmoduleRep sum(const SubmoduleRep& a, const SubmoduleRep& b) {
  if (!(a.ambient == b.ambient)) fail(ErrorCode::SourceMismatch, "submodules of different ambients");
  return {a.ambient, hcat(a.gens_mat, b.gens_mat)};
}

SubmoduleRep intersect(const SubmoduleRep& a, const SubmoduleRep& b) {
  if (!(a.ambient == b.ambient)) fail(ErrorCode::SourceMismatch, "submodules of different ambients");
  // a·u = b·v (mod rels)  <=>  [a | -b | rels]·(u, v, w) = 0
  Mat sys = hcat(hcat(a.gens_mat, -b.gens_mat), a.ambient.rels());
  Mat syz = syzygies(sys);
  Mat u = syz.rows_range(0, a.gens_mat.cols());
  return {a.ambient, (a.gens_mat * u).nonzero_cols()};
}

bool equal_elements(const FpModule& m, const Mat& x, const Mat& y) {
  return members(zero_submodule(m), x - y);
}

Embedded as_module(const SubmoduleRep& sub) {
  const Mat& G = sub.gens_mat;
  const Mat& A = sub.ambient.rels();
  Mat syz = syzygies(hcat(G, A));
  Mat z = syz.rows_range(0, G.cols());
  Mat w = syz.rows_range(G.cols(), G.cols() + A.cols());
  FpModule module(sub.ambient.ring(), z);
  // G·z + A·w = 0, so G·z = A·(-w)
  Morphism incl = Morphism::with_witness(module, sub.ambient, G, -w);
  return {std::move(module), std::move(incl)};
}

ModuleInvariants invariant_factors(const FpModule& m) { return m.invariants(); }

bool is_iso(const FpModule& a, const FpModule& b) {
  if (!(a.ring() == b.ring())) fail(ErrorCode::RingMismatch, "is_iso: modules over different rings");
  const auto& ia = a.invariants();
  const auto& ib = b.invariants();
  return ia.free_rank == ib.free_rank && ia.torsion == ib.torsion;
}

// ------------------------------------------------------- kernels & cokernels

KernelResult kernel(const Morphism& f) {
  const FpModule& M = f.source();
  const FpModule& N = f.target();
  Mat syz = syzygies(hcat(f.mat(), N.rels()));
  Mat kx = syz.rows_range(0, M.gens()).nonzero_cols();
  Embedded e = as_module(SubmoduleRep{M, kx});
  Simplified s = simplify(e.module);
  return {s.module, compose(e.incl, s.to_original)};
}

CokernelResult cokernel(const Morphism& f) {
  const FpModule& N = f.target();
  const auto& R = N.ring();
  FpModule C(R, hcat(N.rels(), f.mat()));
  Mat w = vcat(Mat::identity(R, N.rels().cols()), Mat(R, f.mat().cols(), N.rels().cols()));
  Morphism proj = Morphism::with_witness(N, C, Mat::identity(R, N.gens()), w);
  return {std::move(C), std::move(proj)};
}

SubmoduleRep image(const Morphism& f) { return {f.target(), f.mat()}; }

DirectSum direct_sum(const FpModule& a, const FpModule& b) {
  const auto& R = a.ring();
  if (!(R == b.ring())) fail(ErrorCode::RingMismatch, "direct_sum: modules over different rings");
  FpModule S(R, block_diag(a.rels(), b.rels()));
  const std::size_t ga = a.gens(), gb = b.gens(), ca = a.rels().cols(), cb = b.rels().cols();
  Mat i1 = vcat(Mat::identity(R, ga), Mat(R, gb, ga));
  Mat i2 = vcat(Mat(R, ga, gb), Mat::identity(R, gb));
  Mat w1 = vcat(Mat::identity(R, ca), Mat(R, cb, ca));
  Mat w2 = vcat(Mat(R, ca, cb), Mat::identity(R, cb));
  Mat p1 = hcat(Mat::identity(R, ga), Mat(R, ga, gb));
  Mat p2 = hcat(Mat(R, gb, ga), Mat::identity(R, gb));
  Mat pw1 = hcat(Mat::identity(R, ca), Mat(R, ca, cb));
  Mat pw2 = hcat(Mat(R, cb, ca), Mat::identity(R, cb));
  return {S,
          Morphism::with_witness(a, S, i1, w1),
          Morphism::with_witness(b, S, i2, w2),
          Morphism::with_witness(S, a, p1, pw1),
          Morphism::with_witness(S, b, p2, pw2)};
}

QuotientResult quotient_by(const SubmoduleRep& sub) {
  const FpModule& M = sub.ambient;
  const auto& R = M.ring();
  if (sub.gens_mat.rows() != M.gens()) fail(ErrorCode::DimensionMismatch, "quotient_by: generator shape");
  FpModule Q(R, hcat(M.rels(), sub.gens_mat));
  Mat w = vcat(Mat::identity(R, M.rels().cols()), Mat(R, sub.gens_mat.cols(), M.rels().cols()));
  return {Q, Morphism::with_witness(M, Q, Mat::identity(R, M.gens()), w)};
}

Simplified simplify(const FpModule& m) {
  const RingDesc& R = m.ring();
  SmithForm sf = snf(m.base_relations());
  const RingDesc base = R.euclidean_base();
  std::vector<std::size_t> keep;
  std::vector<RingElem> rel_diag;
  for (std::size_t t = 0; t < m.gens(); ++t) {
    if (t < sf.invariant_factors.size()) {
      const RingElem& d = sf.invariant_factors[t];
      if (base.is_unit(d)) continue;
      keep.push_back(t);
      rel_diag.push_back(d);
    } else {
      keep.push_back(t);
    }
  }
  // relations: one column per kept torsion factor (dropping those that vanish in R)
  Mat rels(R, keep.size(), 0);
  {
    std::vector<Mat> cols;
    for (std::size_t k = 0; k < rel_diag.size(); ++k) {
      RingElem d = R.kind() == RingKind::IntegersMod ? R.from_int(rel_diag[k].integer()) : rel_diag[k];
      if (R.is_zero(d)) continue;
      Mat c(R, keep.size(), 1);
      c.set(k, 0, d);
      cols.push_back(std::move(c));
    }
    rels = hcat(cols, R, keep.size());
  }
  FpModule out(R, rels);
  Mat from = reduce_from_base(R, sf.U.select_rows(keep));
  Mat to = reduce_from_base(R, sf.U_inv.select_cols(keep));
  return {out, Morphism::make(out, m, to), Morphism::make(m, out, from)};
}

// ------------------------------------------------------------ factorization

std::optional<Morphism> factor_through(const Morphism& f, const Morphism& g) {
  if (!(f.source() == g.source())) fail(ErrorCode::SourceMismatch, "factor_through: different sources");
  const auto& R = f.ring();
  const FpModule& N = f.target();
  const FpModule& T = g.target();
  const Mat& F = f.mat();
  const Mat& B = N.rels();
  const Mat& C = T.rels();
  const std::size_t t = T.gens(), n = N.gens(), g0 = F.cols(), b = B.cols(), c = C.cols();
  // unknowns: vec(H) (t*n), vec(Y1) (c*g0), vec(Y2) (c*b)
  //   H·F - C·Y1 = G     and     H·B - C·Y2 = 0
  Mat It = Mat::identity(R, t);
  Mat top = hcat(hcat(kron(F.transpose(), It), -kron(Mat::identity(R, g0), C)), Mat(R, t * g0, c * b));
  Mat bottom = hcat(hcat(kron(B.transpose(), It), Mat(R, t * b, c * g0)), -kron(Mat::identity(R, b), C));
  Mat rhs = vcat(vec(g.mat()), Mat(R, t * b, 1));
  auto x = solve_linear(vcat(top, bottom), rhs);
  if (!x) return std::nullopt;
  Mat H = unvec(x->rows_range(0, t * n), t, n);
  return Morphism::make(N, T, H);
}

std::optional<Morphism> lift_through(const Morphism& p, const Morphism& g) {
  if (!(p.target() == g.target())) fail(ErrorCode::SourceMismatch, "lift_through: different targets");
  const auto& R = p.ring();
  const FpModule& F = p.source();
  const FpModule& P = g.source();
  const Mat& C = p.target().rels();
  const Mat& E = F.rels();
  const Mat& Prel = P.rels();
  const std::size_t f = F.gens(), q = P.gens(), mg = p.target().gens(), c = C.cols(), e = E.cols(),
                    r = Prel.cols();
  //   p·H - C·Y1 = g     and     H·Prel - E·Y2 = 0
  Mat Iq = Mat::identity(R, q);
  Mat top = hcat(hcat(kron(Iq, p.mat()), -kron(Iq, C)), Mat(R, mg * q, e * r));
  Mat bottom =
      hcat(hcat(kron(Prel.transpose(), Mat::identity(R, f)), Mat(R, f * r, c * q)), -kron(Mat::identity(R, r), E));
  Mat rhs = vcat(vec(g.mat()), Mat(R, f * r, 1));
  auto x = solve_linear(vcat(top, bottom), rhs);
  if (!x) return std::nullopt;
  Mat H = unvec(x->rows_range(0, f * q), f, q);
  return Morphism::make(P, F, H);
}

}  // namespace fpmod
