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

#include "fpmod/pushout.hpp"

namespace fpmod {

PushoutData pushout(const Morphism& f, const Morphism& g) {
  if (!(f.source() == g.source())) fail(ErrorCode::SourceMismatch, "pushout: maps have different sources");
  if (!(f.ring() == g.ring())) fail(ErrorCode::RingMismatch, "pushout: maps over different rings");
  const auto& R = f.ring();
  const FpModule& B = f.target();
  const FpModule& C = g.target();
  const std::size_t b = B.gens(), c = C.gens(), rb = B.rels().cols(), rc = C.rels().cols(),
                    a = f.source().gens();
  FpModule D(R, hcat(block_diag(B.rels(), C.rels()), vcat(f.mat(), -g.mat())));
  Mat inl = vcat(Mat::identity(R, b), Mat(R, c, b));
  Mat inr = vcat(Mat(R, b, c), Mat::identity(R, c));
  Mat wl = vcat(Mat::identity(R, rb), Mat(R, rc + a, rb));
  Mat wr = vcat(vcat(Mat(R, rb, rc), Mat::identity(R, rc)), Mat(R, a, rc));
  return PushoutData{f, g, D, Morphism::with_witness(B, D, inl, wl), Morphism::with_witness(C, D, inr, wr)};
}

Morphism pushout_induced(const PushoutData& p, const Morphism& u, const Morphism& v) {
  if (!(u.source() == p.f.target()) || !(v.source() == p.g.target()) || !(u.target() == v.target()))
    fail(ErrorCode::SourceMismatch, "pushout_induced: u, v do not match the pushout legs");
  if (!equivalent(compose(u, p.f), compose(v, p.g)))
    fail(ErrorCode::SquareDoesNotCommute, "pushout_induced: u ∘ f differs from v ∘ g");
  Morphism w = Morphism::make(p.object, u.target(), hcat(u.mat(), v.mat()));
  if (!equivalent(compose(w, p.inl), u) || !equivalent(compose(w, p.inr), v))
    fail(ErrorCode::InternalInvariant, "pushout_induced: induced map does not restrict to u, v");
  // an independent solve through B ⊕ C must agree with w
  DirectSum bc = direct_sum(p.f.target(), p.g.target());
  Morphism q = Morphism::make(bc.sum, p.object, Mat::identity(u.ring(), p.object.gens()));
  Morphism uv = Morphism::make(bc.sum, u.target(), hcat(u.mat(), v.mat()));
  auto w2 = factor_through(q, uv);
  if (!w2 || !equivalent(*w2, w))
    fail(ErrorCode::InternalInvariant, "pushout_induced: induced map is not unique");
  return w;
}

bool pushout_base_change_check(const RingMap& phi, const Morphism& f, const Morphism& g) {
  PushoutData p = pushout(f, g);
  FpModule lhs = base_change(phi, p.object);
  PushoutData ps = pushout(base_change_mor(phi, f), base_change_mor(phi, g));
  if (!is_iso(lhs, ps.object)) return false;
  const Mat I = Mat::identity(phi.target(), lhs.gens());
  try {
    Morphism there = Morphism::make(lhs, ps.object, I);
    Morphism back = Morphism::make(ps.object, lhs, I);
    if (!equivalent(compose(back, there), Morphism::identity(lhs))) return false;
    return equivalent(compose(there, base_change_mor(phi, p.inr)), ps.inr);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotWellDefined) return false;
    throw;
  }
}

}  // namespace fpmod
