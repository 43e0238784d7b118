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

#include "fpmod/descent.hpp"

namespace fpmod {

DescentReport check_projectivity_descent(const RingMap& phi, const FpModule& p) {
  if (!(p.ring() == phi.source()))
    fail(ErrorCode::RingMismatch, "module over " + p.ring().name() + ", map " + phi.name());
  FpModule ext = base_change(phi, p);
  DescentReport r{phi, p.invariants(), ext.invariants(), is_projective(p), is_projective(ext), false, {}};
  r.equivalence_holds = r.verdict_base == r.verdict_extended;
  if (!r.equivalence_holds) {
    if (phi.faithfully_flat())
      fail(ErrorCode::InternalInvariant, "projectivity changed along the faithfully flat map " + phi.name());
    r.counterexample_flag = "projectivity is not reflected by " + phi.name() +
                            ", which is not faithfully flat: base " + (r.verdict_base ? "projective" : "not projective") +
                            ", extended " + (r.verdict_extended ? "projective" : "not projective");
  }
  return r;
}

Mat tensor_sum_coordinates(const RingMap& phi, const FpModule& p, const TensorSum& t) {
  const RingDesc& S = phi.target();
  Mat out(S, p.gens(), 1);
  for (const auto& pt : t) {
    if (pt.element.rows() != p.gens() || pt.element.cols() != 1)
      fail(ErrorCode::DimensionMismatch, "pure tensor component has the wrong shape");
    out = out + map_entries(phi, pt.element).scaled(S.canonical(pt.scalar));
  }
  return out;
}

std::vector<Mat> descend_generators(const RingMap& phi, const FpModule& p, const std::vector<TensorSum>& ext_gens) {
  if (phi.kind() != RingMapKind::FreeExtension)
    fail(ErrorCode::UnsupportedRingMap, "descend_generators needs a free extension, got " + phi.name());
  if (!(p.ring() == phi.source())) fail(ErrorCode::RingMismatch, "module is not over the source ring");
  FpModule ext = base_change(phi, p);
  std::vector<Mat> cols;
  std::vector<Mat> comps;
  for (const auto& t : ext_gens) {
    cols.push_back(tensor_sum_coordinates(phi, p, t));
    for (const auto& pt : t) comps.push_back(pt.element);
  }
  if (!members(SubmoduleRep{ext, hcat(cols, phi.target(), p.gens())}, Mat::identity(phi.target(), p.gens())))
    fail(ErrorCode::DoesNotSpan, "extended generators do not span the base-changed module");
  if (!members(SubmoduleRep{p, hcat(comps, p.ring(), p.gens())}, Mat::identity(p.ring(), p.gens())))
    fail(ErrorCode::ComponentsDoNotSpan, "collected components do not span");
  return comps;
}

MLDescentReport check_ml_descent(const RingMap& phi, const Tower& t, std::size_t horizon) {
  if (!phi.faithfully_flat()) fail(ErrorCode::NotFaithfullyFlat, phi.name() + " is not faithfully flat");
  Tower ext = Tower::make(base_change_mor(phi, t.step), t.direction);
  MLDescentReport r{tower_ml_check(t, horizon), tower_ml_check(ext, horizon), {}, true};
  const bool base_ml = r.base.status == MLStatus::ML;
  const bool ext_ml = r.extended.status == MLStatus::ML;
  r.implication_holds = !ext_ml || base_ml;
  const bool unknown = r.base.status == MLStatus::UnknownAtHorizon || r.extended.status == MLStatus::UnknownAtHorizon;
  r.verdict = unknown ? "inconclusive" : "holds";
  return r;
}

ProjCharReport projchar_check(const FpModule& p) {
  ProjCharReport r;
  r.flat = is_flat(p);
  r.projective = is_projective(p);
  Simplified s = simplify(p);
  const Mat& rel = s.module.rels();
  for (std::size_t i = 0; i < rel.rows(); ++i)
    for (std::size_t j = 0; j < rel.cols(); ++j)
      if (i != j && !p.ring().is_zero(rel(i, j))) r.sum_of_cyclics = false;
  r.consistent = r.flat == r.projective;
  if (!r.consistent)
    fail(ErrorCode::DeciderDisagreement, std::string("flatness says ") + (r.flat ? "true" : "false") +
                                             ", projectivity says " + (r.projective ? "true" : "false"));
  return r;
}

}  // namespace fpmod
