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

#include "fpmod/devissage.hpp"

namespace fpmod {

namespace {

StructureCheck violation(std::string clause, std::size_t index) {
  StructureCheck c;
  c.valid = false;
  c.clause = std::move(clause);
  c.index = index;
  return c;
}

SubmoduleRep span_of(const FpModule& m, const std::vector<SubmoduleRep>& parts, const std::vector<std::size_t>& idx) {
  std::vector<Mat> gens;
  for (auto i : idx) gens.push_back(parts[i].gens_mat);
  return {m, hcat(gens, m.ring(), m.gens())};
}

bool same_ambient(const FpModule& m, const SubmoduleRep& s) {
  return s.ambient == m && s.gens_mat.rows() == m.gens();
}

// Components of x in each part of an internal decomposition.
std::vector<Mat> components(const FpModule& m, const std::vector<SubmoduleRep>& parts, const Mat& x) {
  std::vector<Mat> blocks;
  for (const auto& p : parts) blocks.push_back(p.gens_mat);
  blocks.push_back(m.rels());
  auto y = solve_linear(hcat(blocks, m.ring(), m.gens()), x);
  if (!y) fail(ErrorCode::InternalInvariant, "element is not in the span of the parts");
  std::vector<Mat> out;
  std::size_t off = 0;
  for (const auto& p : parts) {
    const std::size_t k = p.gens_mat.cols();
    out.push_back(p.gens_mat * y->rows_range(off, off + k));
    off += k;
  }
  return out;
}

bool is_zero_element(const FpModule& m, const Mat& x) { return members(zero_submodule(m), x); }

}  // namespace

StructureCheck validate_filtration(const KaplanskyFiltration& f) {
  const FpModule& M = f.ambient;
  if (f.stages.empty() || f.stages.size() != f.complements.size() + 1) return violation("shape", 0);
  for (std::size_t i = 0; i < f.stages.size(); ++i)
    if (!same_ambient(M, f.stages[i])) return violation("ambient", i);
  for (std::size_t i = 0; i < f.complements.size(); ++i)
    if (!same_ambient(M, f.complements[i])) return violation("ambient", i);
  if (!is_zero_submodule(f.stages.front())) return violation("first_stage_zero", 0);
  const std::size_t L = f.complements.size();
  if (!contained(full_submodule(M), f.stages[L])) return violation("last_stage_full", L);
  for (std::size_t a = 0; a < L; ++a) {
    const SubmoduleRep& lo = f.stages[a];
    const SubmoduleRep& hi = f.stages[a + 1];
    const SubmoduleRep& c = f.complements[a];
    if (!contained(lo, hi)) return violation("monotone", a);
    if (!contained(c, hi)) return violation("complement_inside_next", a);
    if (!is_zero_submodule(intersect(lo, c))) return violation("disjoint", a);
    if (!contained(hi, sum(lo, c))) return violation("spans_next", a);
  }
  StructureCheck ok;
  ok.vacuous.push_back("limit_continuity");
  return ok;
}

StructureCheck check_internal(const InternalDecomposition& d) {
  const FpModule& M = d.ambient;
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    if (!same_ambient(M, d.parts[i])) return violation("ambient", i);
    all.push_back(i);
  }
  if (!members(span_of(M, d.parts, all), Mat::identity(M.ring(), M.gens()))) return violation("spans", 0);
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    std::vector<std::size_t> others;
    for (auto j : all)
      if (j != i) others.push_back(j);
    if (!is_zero_submodule(intersect(d.parts[i], span_of(M, d.parts, others)))) return violation("independent", i);
  }
  return {};
}

InternalDecomposition filtration_to_decomposition(const KaplanskyFiltration& f) {
  StructureCheck c = validate_filtration(f);
  if (!c.valid)
    fail(ErrorCode::InvalidFiltration, "filtration violates " + c.clause, "stage " + std::to_string(c.index));
  InternalDecomposition d{f.ambient, f.complements};
  if (!check_internal(d).valid) fail(ErrorCode::InternalInvariant, "complements of a valid filtration are not internal");
  return d;
}

KaplanskyFiltration decomposition_to_filtration(const InternalDecomposition& d) {
  StructureCheck c = check_internal(d);
  if (!c.valid) fail(ErrorCode::NotInternal, "decomposition violates " + c.clause, "part " + std::to_string(c.index));
  KaplanskyFiltration f{d.ambient, {zero_submodule(d.ambient)}, d.parts};
  std::vector<std::size_t> upto;
  for (std::size_t a = 0; a < d.parts.size(); ++a) {
    upto.push_back(a);
    f.stages.push_back(span_of(d.ambient, d.parts, upto));
  }
  if (d.parts.empty()) {
    // a zero ambient still needs a full last stage
    f.stages.front() = full_submodule(d.ambient);
    if (!is_zero_submodule(f.stages.front())) fail(ErrorCode::NotInternal, "no parts for a nonzero module");
  }
  if (!validate_filtration(f).valid) fail(ErrorCode::InternalInvariant, "derived filtration is invalid");
  return f;
}

SummandDecomposition summand_devissage(const InternalDecomposition& d, const Morphism& e) {
  const FpModule& M = d.ambient;
  if (!(e.source() == M) || !(e.target() == M))
    fail(ErrorCode::SourceMismatch, "summand_devissage: e must be an endomorphism of the ambient");
  if (!equivalent(compose(e, e), e)) fail(ErrorCode::NotIdempotent, "e ∘ e differs from e");
  StructureCheck c = check_internal(d);
  if (!c.valid) fail(ErrorCode::NotInternal, "decomposition violates " + c.clause, "part " + std::to_string(c.index));

  std::vector<SubmoduleRep> parts;
  for (const auto& p : d.parts)
    if (!is_zero_submodule(p)) parts.push_back(p);
  const std::size_t m = parts.size();
  const Morphism f = subtract(Morphism::identity(M), e);

  SummandDecomposition out{as_module(SubmoduleRep{M, e.mat()}), {}, {}};
  out.decomposition.ambient = out.image.module;

  std::vector<bool> taken(m, false);
  std::vector<std::size_t> stage_idx;
  for (std::size_t start = 0; start < m; ++start) {
    if (taken[start]) continue;
    // close {start} under e and id - e, absorbing every touched part
    std::vector<std::size_t> fresh{start};
    taken[start] = true;
    for (std::size_t qi = 0; qi < fresh.size(); ++qi) {
      const Mat& g = parts[fresh[qi]].gens_mat;
      for (std::size_t col = 0; col < g.cols(); ++col) {
        for (const Morphism* op : {&e, &f}) {
          auto comps = components(M, parts, op->apply(g.col(col)));
          for (std::size_t q = 0; q < m; ++q) {
            if (taken[q] || is_zero_element(M, comps[q])) continue;
            taken[q] = true;
            fresh.push_back(q);
          }
        }
      }
    }
    // complement of the previous image part: e(q(e(c))) for c in the new parts,
    // q the projection onto the new parts along the old stage
    std::vector<Mat> qgens;
    for (auto p : fresh) {
      const Mat& g = parts[p].gens_mat;
      for (std::size_t col = 0; col < g.cols(); ++col) {
        auto comps = components(M, parts, e.apply(g.col(col)));
        Mat y(M.ring(), M.gens(), 1);
        for (auto q : fresh) y = y + comps[q];
        qgens.push_back(y);
      }
    }
    SubmoduleRep qpart{out.image.module, hcat(qgens, M.ring(), M.gens())};
    if (!is_zero_submodule(qpart)) out.decomposition.parts.push_back(qpart);

    stage_idx.insert(stage_idx.end(), fresh.begin(), fresh.end());
    DevissageStage st{stage_idx, span_of(M, parts, stage_idx), {}, {}};
    st.in_image = SubmoduleRep{M, e.mat() * st.stage.gens_mat};
    st.in_kernel = SubmoduleRep{M, f.mat() * st.stage.gens_mat};
    // stage = (stage ∩ im e) ⊕ (stage ∩ im(id - e))
    const bool ok = contained(st.in_image, st.stage) && contained(st.in_image, image(e)) &&
                    contained(st.in_kernel, st.stage) && contained(st.in_kernel, image(f)) &&
                    contained(st.stage, sum(st.in_image, st.in_kernel)) &&
                    is_zero_submodule(intersect(st.in_image, st.in_kernel));
    if (!ok)
      fail(ErrorCode::InternalInvariant, "stage does not split along e", "stage " + std::to_string(out.stages.size()));
    out.stages.push_back(std::move(st));
  }
  if (!check_internal(out.decomposition).valid)
    fail(ErrorCode::InternalInvariant, "image decomposition is not internal");
  return out;
}

InternalDecomposition projective_cyclic_decomposition(const FpModule& p) {
  if (!is_projective(p)) fail(ErrorCode::NotProjective, "module is not projective");
  const RingDesc& R = p.ring();
  const Mat& rels = p.rels();
  bool diagonal = true;
  for (std::size_t j = 0; j < rels.cols() && diagonal; ++j) {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < rels.rows(); ++i)
      if (!R.is_zero(rels(i, j))) ++nonzero;
    diagonal = nonzero <= 1;
  }
  if (diagonal) {
    // presented generators already span cyclic summands
    InternalDecomposition d{p, {}};
    const Mat id = Mat::identity(R, p.gens());
    for (std::size_t t = 0; t < p.gens(); ++t) {
      SubmoduleRep part{p, id.col(t)};
      if (!is_zero_submodule(part)) d.parts.push_back(std::move(part));
    }
    if (!check_internal(d).valid) fail(ErrorCode::InternalInvariant, "presented cyclic parts are not internal");
    return d;
  }
  const RingDesc base = R.euclidean_base();
  SmithForm sf = snf(p.base_relations());
  Mat ui = reduce_from_base(R, sf.U_inv);
  InternalDecomposition d{p, {}};
  for (std::size_t t = 0; t < p.gens(); ++t) {
    if (t < sf.invariant_factors.size() && base.is_unit(sf.invariant_factors[t])) continue;
    d.parts.push_back(SubmoduleRep{p, ui.col(t)});
  }
  if (!check_internal(d).valid) fail(ErrorCode::InternalInvariant, "cyclic parts are not internal");
  return d;
}

}  // namespace fpmod
