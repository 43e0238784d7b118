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

#include "fpmod/limits.hpp"

namespace fpmod {

namespace {

[[noreturn]] void violated(const std::string& what, const std::string& where) {
  fail(ErrorCode::HypothesisViolation, what, where);
}

}  // namespace

std::string_view ml_status_name(MLStatus s) {
  switch (s) {
    case MLStatus::ML: return "ML";
    case MLStatus::NotML: return "NotML";
    case MLStatus::UnknownAtHorizon: return "UnknownAtHorizon";
  }
  return "?";
}

Tower Tower::make(Morphism step, TowerDirection direction) {
  if (!(step.source() == step.target()))
    fail(ErrorCode::PreconditionViolation, "tower step must be an endomorphism");
  FpModule obj = step.source();
  return Tower{std::move(obj), std::move(step), direction};
}

MLVerdict tower_ml_check(const Tower& t, std::size_t horizon) {
  if (t.direction != TowerDirection::Forward)
    fail(ErrorCode::PreconditionViolation, "tower_ml_check expects a forward tower");
  if (horizon < 1) fail(ErrorCode::PreconditionViolation, "horizon must be at least 1");
  MLVerdict v;
  v.horizon = horizon;
  Morphism sj = Morphism::identity(t.object);
  for (std::size_t j = 0; j <= horizon; ++j) {
    Morphism sj1 = compose(t.step, sj);
    std::optional<Morphism> h;
    if (is_zero_map(sj))
      h = Morphism::zero(t.object, t.object);
    else
      h = factor_through(sj1, sj);
    if (h) {
      // step^j ≡ h^m ∘ step^{j+m} for every m ≤ horizon
      Morphism hm = Morphism::identity(t.object);
      Morphism sjm = sj;
      for (std::size_t m = 1; m <= horizon; ++m) {
        hm = compose(hm, *h);
        sjm = compose(t.step, sjm);
        if (!equivalent(compose(hm, sjm), sj))
          fail(ErrorCode::InternalInvariant, "iterated Mittag-Leffler factorization fails at m = " + std::to_string(m));
      }
      v.status = MLStatus::ML;
      v.level = j;
      v.factor = std::move(h);
      return v;
    }
    sj = std::move(sj1);
  }
  v.note = "no level j <= " + std::to_string(horizon) + " factors through the next level";
  return v;
}

MLVerdict inverse_tower_stabilization(const Tower& t, std::size_t horizon) {
  if (t.direction != TowerDirection::Backward)
    fail(ErrorCode::PreconditionViolation, "inverse_tower_stabilization expects a backward tower");
  if (horizon < 1) fail(ErrorCode::PreconditionViolation, "horizon must be at least 1");
  MLVerdict v;
  v.horizon = horizon;
  std::vector<SubmoduleRep> images;
  Morphism sk = Morphism::identity(t.object);
  for (std::size_t k = 0; k <= horizon + 1; ++k) {
    images.push_back(image(sk));
    sk = compose(t.step, sk);
  }
  for (std::size_t k = 0; k <= horizon; ++k) {
    if (!same_submodule(images[k], images[k + 1])) continue;
    for (std::size_t k2 = k + 1; k2 <= horizon; ++k2)
      if (!same_submodule(images[k2], images[k2 + 1]))
        fail(ErrorCode::InternalInvariant, "image stabilization not persistent at " + std::to_string(k2));
    v.status = MLStatus::ML;
    v.level = k;
    return v;
  }
  v.note = "images of step^k still descend at every k <= " + std::to_string(horizon);
  return v;
}

std::vector<Mat> tower_surjective_lift(const Tower& a, const Tower& b, const Tower& c, const Morphism& fmap,
                                       const Morphism& gmap, const std::vector<Mat>& c_family,
                                       std::size_t horizon) {
  for (const Tower* t : {&a, &b, &c})
    if (t->direction != TowerDirection::Backward) violated("towers must be backward", "towers");
  if (!(fmap.source() == a.object) || !(fmap.target() == b.object)) violated("f must map A to B", "fmap");
  if (!(gmap.source() == b.object) || !(gmap.target() == c.object)) violated("g must map B to C", "gmap");
  if (c_family.size() != horizon + 1)
    violated("c_family must have horizon + 1 entries", "c_family");
  for (std::size_t i = 0; i < c_family.size(); ++i)
    if (c_family[i].rows() != c.object.gens() || c_family[i].cols() != 1)
      violated("element has the wrong shape", "c_family[" + std::to_string(i) + "]");

  if (!members(image(gmap), Mat::identity(c.object.ring(), c.object.gens())))
    violated("g is not surjective", "all levels");
  KernelResult kg = kernel(gmap);
  if (!same_submodule(image(fmap), image(kg.incl))) violated("image(f) differs from kernel(g)", "all levels");
  if (!equivalent(compose(b.step, fmap), compose(fmap, a.step)))
    violated("f does not commute with the transition maps", "all levels");
  if (!equivalent(compose(c.step, gmap), compose(gmap, b.step)))
    violated("g does not commute with the transition maps", "all levels");
  for (std::size_t i = 0; i < horizon; ++i)
    if (!equal_elements(c.object, c.step.apply(c_family[i + 1]), c_family[i]))
      violated("c_family is not compatible", "level " + std::to_string(i));

  MLVerdict st = inverse_tower_stabilization(a, horizon);
  if (st.status != MLStatus::ML)
    fail(ErrorCode::LiftFailedAtHorizon, "A's images do not stabilize within horizon " + std::to_string(horizon));
  const std::size_t k0 = *st.level;

  const Mat& G = gmap.mat();
  const Mat& F = fmap.mat();
  const Mat& Brels = b.object.rels();
  const Mat& Crels = c.object.rels();
  const Mat SB = b.step.mat();
  const Mat SBk = SB.power(k0);
  const Mat SAk = a.step.mat().power(k0);
  const Mat SAk1 = a.step.mat() * SAk;
  const std::size_t gb = b.object.gens();

  auto lift = [&](const Mat& ci) {
    auto x = solve_linear(hcat(G, Crels), ci);
    if (!x) fail(ErrorCode::InternalInvariant, "surjective g has no preimage");
    return x->rows_range(0, gb);
  };

  std::vector<Mat> bs(horizon + 1);
  // β_i = step^{k0}(lift of c_{i+k0}) is well defined modulo f(stable image of A)
  bs[0] = SBk * lift(c_family[k0]);
  for (std::size_t i = 1; i + k0 <= horizon; ++i) {
    Mat beta = SBk * lift(c_family[i + k0]);
    Mat d = bs[i - 1] - SB * beta;
    Mat FS = F * SAk1;
    auto y = solve_linear(hcat(FS, Brels), d);
    if (!y) fail(ErrorCode::InternalInvariant, "correction through the stable image failed at level " + std::to_string(i));
    bs[i] = beta + F * (SAk * y->rows_range(0, FS.cols()));
  }
  if (k0 > 0) {
    const std::size_t H = horizon;
    const auto& R = b.object.ring();
    const std::size_t rc = Crels.cols(), rb = Brels.cols();
    Mat top = hcat(hcat(G, -Crels), Mat(R, G.rows(), rb));
    Mat bot = hcat(hcat(SBk, Mat(R, gb, rc)), -Brels);
    auto e = solve_linear(vcat(top, bot), vcat(c_family[H], bs[H - k0]));
    if (!e) fail(ErrorCode::InternalInvariant, "top-level extension failed");
    Mat cur = e->rows_range(0, gb);
    for (std::size_t j = 0; j < k0; ++j) {
      bs[H - j] = cur;
      cur = SB * cur;
    }
  }

  for (std::size_t i = 0; i <= horizon; ++i) {
    if (!equal_elements(c.object, G * bs[i], c_family[i]))
      fail(ErrorCode::InternalInvariant, "lift is not a section at level " + std::to_string(i));
    if (i < horizon && !equal_elements(b.object, SB * bs[i + 1], bs[i]))
      fail(ErrorCode::InternalInvariant, "lift is not compatible at level " + std::to_string(i));
  }
  return bs;
}

ColimitResult finite_system_colimit(const FiniteDirectedSystem& s) {
  const std::size_t n = s.objects.size();
  if (n == 0) fail(ErrorCode::NotDirected, "empty index set");
  if (s.le.size() != n) fail(ErrorCode::AxiomViolation, "order table has the wrong size");
  for (const auto& row : s.le)
    if (row.size() != n) fail(ErrorCode::AxiomViolation, "order table has the wrong size");
  auto at = [&](std::size_t i, std::size_t j) -> const Morphism& {
    auto it = s.maps.find({i, j});
    if (it == s.maps.end())
      fail(ErrorCode::AxiomViolation, "missing map", std::to_string(i) + "->" + std::to_string(j));
    return it->second;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!s.le[i][i]) fail(ErrorCode::AxiomViolation, "order is not reflexive", std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && s.le[i][j] && s.le[j][i])
        fail(ErrorCode::AxiomViolation, "order is not antisymmetric", std::to_string(i) + "," + std::to_string(j));
      if (!s.le[i][j]) continue;
      const Morphism& f = at(i, j);
      if (!(f.source() == s.objects[i]) || !(f.target() == s.objects[j]))
        fail(ErrorCode::AxiomViolation, "map has the wrong endpoints", std::to_string(i) + "->" + std::to_string(j));
    }
    if (!equivalent(at(i, i), Morphism::identity(s.objects[i])))
      fail(ErrorCode::AxiomViolation, "diagonal map is not the identity", std::to_string(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (!s.le[i][j] || !s.le[j][k]) continue;
        const std::string where = std::to_string(i) + "->" + std::to_string(j) + "->" + std::to_string(k);
        if (!s.le[i][k]) fail(ErrorCode::AxiomViolation, "order is not transitive", where);
        if (!equivalent(at(i, k), compose(at(j, k), at(i, j))))
          fail(ErrorCode::AxiomViolation, "composition law fails", where);
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool bound = false;
      for (std::size_t k = 0; k < n && !bound; ++k) bound = s.le[i][k] && s.le[j][k];
      if (!bound) fail(ErrorCode::NotDirected, "no upper bound", std::to_string(i) + "," + std::to_string(j));
    }
  std::size_t top = n;
  for (std::size_t t = 0; t < n && top == n; ++t) {
    bool greatest = true;
    for (std::size_t i = 0; i < n && greatest; ++i) greatest = s.le[i][t];
    if (greatest) top = t;
  }
  if (top == n) fail(ErrorCode::NotDirected, "no greatest element");
  ColimitResult r{s.objects[top], {}, top};
  for (std::size_t i = 0; i < n; ++i) r.canonical.push_back(at(i, top));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (s.le[i][j] && !equivalent(compose(r.canonical[j], at(i, j)), r.canonical[i]))
        fail(ErrorCode::InternalInvariant, "cocone does not commute");
  return r;
}

EnlargeResult enlarge_to_free(const FpModule& m, std::size_t j_size, const Mat& psi, const Mat& n) {
  const RingDesc& R = m.ring();
  if (!R.is_euclidean()) fail(ErrorCode::UnsupportedRing, "enlarge_to_free requires a Euclidean domain");
  if (!(psi.ring() == R) || !(n.ring() == R)) fail(ErrorCode::RingMismatch, "enlarge_to_free: ring mismatch");
  if (psi.rows() != m.gens() || psi.cols() != j_size || n.rows() != j_size)
    fail(ErrorCode::DimensionMismatch, "enlarge_to_free: psi must be gens x J and N must have J rows");
  if (!m.invariants().torsion.empty()) fail(ErrorCode::PreconditionViolation, "target module has torsion");
  const SubmoduleRep zero = zero_submodule(m);
  for (std::size_t c = 0; c < n.cols(); ++c)
    if (!members(zero, psi * n.col(c)))
      fail(ErrorCode::PreconditionViolation, "relation is not in the kernel of psi", "N[:," + std::to_string(c) + "]");

  EnlargeResult r;
  r.relations = syzygies(hcat(psi, m.rels())).rows_range(0, j_size).nonzero_cols();
  r.generators = j_size;
  r.inside_kernel = members(zero, psi * r.relations);
  SmithForm sf = snf(r.relations);
  r.quotient_free = true;
  for (const auto& d : sf.invariant_factors) r.quotient_free = r.quotient_free && R.is_unit(d);
  r.contains_input = solve_linear(r.relations, n).has_value();
  r.quotient = FpModule(R, r.relations).invariants();
  if (!r.inside_kernel || !r.quotient_free || !r.contains_input)
    fail(ErrorCode::InternalInvariant, "enlarged relations fail a required condition");
  return r;
}

}  // namespace fpmod
