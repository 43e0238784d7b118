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

#include <numeric>

#include "fpmod/descent.hpp"
#include "fpmod/harness.hpp"
#include "fpmod/purity.hpp"

namespace fpmod {

namespace {

using gen::Rng;

// ------------------------------------------------------------------ helpers

bool any_ring(const RingDesc&) { return true; }
bool only_integers(const RingDesc& r) { return r.kind() == RingKind::Integers; }

std::size_t horizon_of(const InputDoc& d) { return d.param_size("horizon", 8); }

bool fault_is(const InputDoc& d, const std::string& name) { return d.param_string_opt("fault") == name; }

std::string shape_of(const InputDoc& d) { return d.param_string("shape"); }

std::size_t gens_up_to(Rng& rng, std::size_t max, std::size_t min = 0) {
  return static_cast<std::size_t>(gen::uniform(rng, static_cast<long>(min), static_cast<long>(std::max(max, min))));
}

Mat random_rels(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  return gen::random_relations(rng, r, cfg.max_gens, cfg.max_entry);
}

/// Adds a random map out of module `source` under the names `name` (the
/// morphism) and `target`.
void add_random_map(Rng& rng, InputDoc& d, const std::string& name, const std::string& source,
                    const std::string& target, const HarnessConfig& cfg) {
  gen::RandomMap m = gen::random_map_from(rng, d.module(source).rels(), cfg.max_gens, cfg.max_entry);
  d.add_module(target, m.target_rels);
  d.add_morphism(name, source, target, m.mat);
}

bool same_invariants(const RingDesc& r, const ModuleInvariants& a, const ModuleInvariants& b) {
  if (a.free_rank != b.free_rank || a.torsion.size() != b.torsion.size()) return false;
  for (std::size_t i = 0; i < a.torsion.size(); ++i)
    if (!r.associates(a.torsion[i], b.torsion[i])) return false;
  return true;
}

/// Laplace expansion; independent of every normal-form routine.
RingElem laplace_det(const RingDesc& r, const Mat& a) {
  const std::size_t n = a.rows();
  if (n == 0) return r.one();
  if (n == 1) return a(0, 0);
  RingElem total = r.zero();
  for (std::size_t j = 0; j < n; ++j) {
    if (r.is_zero(a(0, j))) continue;
    RingElem term = r.mul(a(0, j), laplace_det(r, a.without_row(0).without_col(j)));
    total = j % 2 == 0 ? r.add(total, term) : r.sub(total, term);
  }
  return total;
}

void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
            std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  choose(n, k, 0, cur, out);
  return out;
}

/// gcd of the k x k minors.
RingElem minor_gcd(const Mat& a, std::size_t k) {
  const RingDesc& r = a.ring();
  RingElem g = r.zero();
  for (const auto& rows : subsets(a.rows(), k))
    for (const auto& cols : subsets(a.cols(), k)) g = r.gcd(g, laplace_det(r, a.select_rows(rows).select_cols(cols)));
  return g;
}

Morphism power(const Morphism& s, std::size_t k) {
  Morphism p = Morphism::identity(s.source());
  for (std::size_t i = 0; i < k; ++i) p = compose(s, p);
  return p;
}

/// Any module (R/(d))^k: every square matrix is a well-defined endomorphism.
void add_uniform_module(Rng& rng, InputDoc& d, const std::string& name, const HarnessConfig& cfg, std::size_t min_gens) {
  const RingDesc& r = d.ring;
  const std::size_t k = gens_up_to(rng, cfg.max_gens, min_gens);
  const RingElem o = gen::random_cyclic_order(rng, r, cfg.max_entry);
  d.add_module(name, FpModule::cyclic_sum(r, std::vector<RingElem>(k, o)).rels());
}

void add_random_endo(Rng& rng, InputDoc& d, const std::string& name, const std::string& module, const HarnessConfig& cfg) {
  const std::size_t k = d.module(module).gens();
  d.add_morphism(name, module, module, gen::random_mat(rng, d.ring, k, k, std::min(cfg.max_entry, 3L)));
}

/// Dense small integer matrix; every entry is drawn, zero included.
Mat small_int_mat(Rng& rng, const RingDesc& r, std::size_t rows, std::size_t cols, long bound) {
  Mat m(r, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, r.from_int(gen::uniform(rng, -bound, bound)));
  return m;
}

// ------------------------------------------------------------------ snf

InputDoc gen_snf(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  const std::size_t top = std::max<std::size_t>(cfg.max_gens, 1);
  d.add_mat("A", gen::random_mat(rng, r, gens_up_to(rng, top, 1), gens_up_to(rng, top, 1), cfg.max_entry));
  return d;
}

void check_snf(const InputDoc& d, Counters& c) {
  const Mat& a = d.mat("A");
  const RingDesc& r = a.ring();
  SmithForm s = snf(a);
  require(s.U * a * s.V == s.D, "U·A·V differs from D");
  require(r.is_unit(laplace_det(r, s.U)), "U is not unimodular");
  require(r.is_unit(laplace_det(r, s.V)), "V is not unimodular");
  require(s.U * s.U_inv == Mat::identity(r, a.rows()), "U_inv is not the inverse of U");
  std::size_t nz = 0;
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j) {
      if (i != j) require(r.is_zero(s.D(i, j)), "D is not diagonal");
      else if (!r.is_zero(s.D(i, i))) {
        require(i == nz, "nonzero diagonal entries are not leading");
        ++nz;
      }
    }
  require(nz == s.invariant_factors.size(), "invariant factor count differs from the diagonal");
  for (std::size_t i = 0; i + 1 < nz; ++i)
    require(r.divides(s.D(i, i), s.D(i + 1, i + 1)), "divisibility chain broken at " + std::to_string(i));
  RingElem prod = r.one();
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    prod = k <= nz ? r.mul(prod, s.D(k - 1, k - 1)) : r.zero();
    require(r.associates(prod, minor_gcd(a, k)), "minor gcd identity fails at size " + std::to_string(k));
  }
  c["matrices"] += 1;
}

// ------------------------------------------------------------------ module_exactness

InputDoc gen_exactness(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  d.add_module("M", random_rels(rng, r, cfg));
  add_random_map(rng, d, "f", "M", "N", cfg);
  return d;
}

void check_exactness(const InputDoc& d, Counters& c) {
  Morphism f = d.morphism("f");
  KernelResult k = kernel(f);
  CokernelResult q = cokernel(f);
  require(is_zero_map(compose(f, k.incl)), "f does not vanish on its kernel");
  require(is_zero_map(compose(q.proj, f)), "cokernel projection does not kill the image");
  require(kernel(k.incl).module.is_zero(), "kernel inclusion is not injective");
  require(same_submodule(image(q.proj), full_submodule(q.module)), "cokernel projection is not onto");
  require(same_submodule(image(kernel(q.proj).incl), image(f)), "image differs from the kernel of the projection");
  QuotientResult coim = quotient_by(image(k.incl));
  require(is_iso(coim.module, as_module(image(f)).module), "first isomorphism theorem fails");
  c["maps"] += 1;
}

// ------------------------------------------------------------------ presentation_robustness

InputDoc gen_presentation(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  Mat rels = random_rels(rng, r, cfg);
  d.add_module("M", rels);
  d.add_mat("P", gen::random_unimodular(rng, r, rels.rows(), cfg.max_entry).mat, "M", "M");
  d.add_mat("Q", gen::random_unimodular(rng, r, rels.cols(), cfg.max_entry).mat);
  return d;
}

void check_presentation(const InputDoc& d, Counters& c) {
  FpModule m = d.module("M");
  const Mat& p = d.mat("P");
  const Mat& q = d.mat("Q");
  inverse_unimodular(p);
  inverse_unimodular(q);
  FpModule m2(d.ring, p * m.rels() * q);
  require(same_invariants(d.ring, m.invariants(), m2.invariants()), "invariants change under a change of presentation");
  Morphism phi = Morphism::make(m, m2, p);
  require(kernel(phi).module.is_zero(), "coordinate change is not injective");
  require(cokernel(phi).module.is_zero(), "coordinate change is not onto");
  c["presentations"] += 1;
}

// ------------------------------------------------------------------ tensor_hom

InputDoc gen_tensor_hom(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  d.add_module("M", random_rels(rng, r, cfg));
  d.add_module("N", random_rels(rng, r, cfg));
  add_random_map(rng, d, "f", "M", "T", cfg);
  return d;
}

void check_tensor_hom(const InputDoc& d, Counters& c) {
  const RingDesc& r = d.ring;
  FpModule m = d.module("M"), n = d.module("N");
  FpModule rr = FpModule::free(r, 1);
  require(is_iso(tensor(m, n), tensor(n, m)), "tensor product is not symmetric");
  require(is_iso(tensor(m, rr), m), "M ⊗ R differs from M");
  require(is_iso(hom_module(rr, m).underlying, m), "Hom(R, M) differs from M");
  Morphism f = d.morphism("f");
  HomModule h = hom_module(f.source(), f.target());
  require(equivalent(h.decode(h.encode(f)), f), "Hom encoding does not round trip");
  c["pairs"] += 1;
}

// ------------------------------------------------------------------ basechange_kernels

const std::vector<RingDesc>& change_targets() {
  static const std::vector<RingDesc> t{RingDesc::rationals(), RingDesc::gaussian(), RingDesc::integers_mod(4)};
  return t;
}

InputDoc gen_basechange(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  d.map_target = change_targets()[static_cast<std::size_t>(gen::uniform(rng, 0, 2))];
  d.add_module("M", random_rels(rng, r, cfg));
  add_random_map(rng, d, "f", "M", "N", cfg);
  add_random_map(rng, d, "g", "N", "P", cfg);
  return d;
}

void check_basechange(const InputDoc& d, Counters& c) {
  RingMap phi = d.ring_map();
  Morphism f = d.morphism("f"), g = d.morphism("g");
  Morphism bf = base_change_mor(phi, f), bg = base_change_mor(phi, g);
  require(equivalent(base_change_mor(phi, compose(g, f)), compose(bg, bf)), "base change is not functorial");
  require(equivalent(base_change_mor(phi, Morphism::identity(f.source())), Morphism::identity(bf.source())),
          "base change does not preserve identities");
  require(is_iso(base_change(phi, cokernel(f).module), cokernel(bf).module), "base change is not right exact");
  if (phi.flat()) {
    require(is_iso(base_change(phi, kernel(f).module), kernel(bf).module), "flat base change changes a kernel");
    c["flat"] += 1;
  }
  c["maps"] += 1;
}

// ------------------------------------------------------------------ pushout_universal

InputDoc gen_pushout(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  d.add_module("A", random_rels(rng, r, cfg));
  add_random_map(rng, d, "f", "A", "B", cfg);
  add_random_map(rng, d, "g", "A", "C", cfg);
  const Mat b = d.module("B").rels();
  const Mat cc = d.module("C").rels();
  Mat e0 = random_rels(rng, r, cfg);
  Mat u = gen::random_mat(rng, r, e0.rows(), b.rows(), cfg.max_entry);
  Mat v = gen::random_mat(rng, r, e0.rows(), cc.rows(), cfg.max_entry);
  // E is forced to make u and v well defined with u∘f ≡ v∘g.
  Mat fm = d.morphism_entry("f").mat, gm = d.morphism_entry("g").mat;
  Mat erels = hcat(hcat(e0, u * b), hcat(v * cc, u * fm - v * gm));
  d.add_module("E", erels);
  d.add_morphism("u", "B", "E", u);
  d.add_morphism("v", "C", "E", v);
  return d;
}

std::vector<RingDesc> pushout_change_targets(const RingDesc& r) {
  if (r.kind() == RingKind::Integers) return change_targets();
  if (r.kind() == RingKind::IntegersMod) {
    std::vector<RingDesc> out;
    for (const auto& [p, e] : factor_integer(r.modulus())) out.push_back(RingDesc::prime_field(p));
    return out;
  }
  return {};
}

void check_pushout(const InputDoc& d, Counters& c) {
  Morphism f = d.morphism("f"), g = d.morphism("g"), u = d.morphism("u"), v = d.morphism("v");
  require(equivalent(compose(u, f), compose(v, g)), "generated cocone does not commute");
  PushoutData p = pushout(f, g);
  require(equivalent(compose(p.inl, f), compose(p.inr, g)), "pushout square does not commute");
  Morphism w = pushout_induced(p, u, v);
  require(equivalent(compose(w, p.inl), u), "induced map does not restrict to u");
  require(equivalent(compose(w, p.inr), v), "induced map does not restrict to v");
  // joint surjectivity of the legs makes the induced map unique
  require(same_submodule(sum(image(p.inl), image(p.inr)), full_submodule(p.object)), "pushout legs are not jointly onto");
  Morphism w2 = add(w, Morphism::zero(p.object, u.target()));
  require(equivalent(w2, w), "induced map is not unique");
  for (const RingDesc& t : pushout_change_targets(d.ring)) {
    require(pushout_base_change_check(RingMap::make(d.ring, t), f, g), "pushout does not commute with base change to " + t.name());
    c["base_changes"] += 1;
  }
  c["pushouts"] += 1;
}

// ------------------------------------------------------------------ domination

InputDoc gen_domination(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  const long pick = gen::uniform(rng, 0, 2);
  if (pick == 0) {
    // f = c·id: over Z this rarely dominates a random g
    add_uniform_module(rng, d, "A", cfg, 1);
    const std::size_t k = d.module("A").gens();
    d.add_morphism("f", "A", "A", Mat::identity(r, k).scaled(gen::random_elem(rng, r, cfg.max_entry)));
    add_random_endo(rng, d, "g", "A", cfg);
    d.params["shape"] = "scaled";
    return d;
  }
  d.add_module("A", random_rels(rng, r, cfg));
  add_random_map(rng, d, "f", "A", "B", cfg);
  if (pick == 1) {
    add_random_map(rng, d, "h0", "B", "C", cfg);
    d.params["shape"] = "factored";
  } else {
    add_random_map(rng, d, "g", "A", "C", cfg);
    d.params["shape"] = "random";
  }
  return d;
}

void check_domination(const InputDoc& d, Counters& c) {
  Morphism f = d.morphism("f");
  const bool factored = shape_of(d) == "factored";
  Morphism g = factored ? compose(d.morphism("h0"), f) : d.morphism("g");
  DominationVerdict v = dominates(f, g);
  require(v.pushout_agrees, "factorization and pushout criteria disagree");
  require(v.dominates == dominates_via_pushout(f, g), "pushout criterion is not reproducible");
  if (factored) require(v.dominates, "a map of the form h∘f is not dominated");
  if (v.dominates) {
    require(v.factor.has_value(), "positive verdict without a factor");
    require(equivalent(compose(*v.factor, f), g), "factor does not satisfy g ≡ h∘f");
    c["dominating"] += 1;
  } else {
    require(!factor_through(f, g).has_value(), "negative verdict but a factor exists");
  }
  c["pairs"] += 1;
}

// ------------------------------------------------------------------ purity

InputDoc gen_purity(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  d.add_module("M", random_rels(rng, r, cfg));
  if (gen::coin(rng, 2)) {
    d.add_module("N", random_rels(rng, r, cfg));
    const std::size_t k = d.module("M").gens() + d.module("N").gens();
    d.add_mat("P", gen::random_unimodular(rng, r, k, cfg.max_entry).mat);
    d.params["shape"] = "split";
  } else {
    add_random_map(rng, d, "f", "M", "T", cfg);
    d.params["shape"] = "random";
  }
  return d;
}

/// Split mode: M -> P·(M ⊕ N), the first inclusion seen through the
/// coordinate change P.
Morphism purity_map(const InputDoc& d) {
  if (shape_of(d) != "split") return d.morphism("f");
  FpModule m = d.module("M"), n = d.module("N");
  const Mat& p = d.mat("P");
  inverse_unimodular(p);
  DirectSum ds = direct_sum(m, n);
  if (p.rows() != ds.sum.gens()) fail(ErrorCode::DimensionMismatch, "coordinate change has the wrong size", "/mats/P");
  FpModule t(d.ring, p * ds.sum.rels());
  return Morphism::make(m, t, p * ds.inj1.mat());
}

void check_purity(const InputDoc& d, Counters& c) {
  Morphism f = purity_map(d);
  PurityVerdict v = is_universally_injective(f);
  if (shape_of(d) == "split") require(v.pure, "a split injection is not certified pure");
  if (v.pure) {
    require(v.retraction.has_value(), "pure verdict without a retraction");
    require(equivalent(compose(*v.retraction, f), Morphism::identity(f.source())), "retraction is not a left inverse");
    for (const TensorProbe& q : probe_family(f))
      require(!probe_kernel_element(f, q.module).has_value(), "split map is not injective after tensoring with " + q.label);
    c["split_certified"] += 1;
  } else {
    require(v.counterexample.has_value(), "impure verdict without a counterexample");
    const PurityCounterexample& ce = *v.counterexample;
    FpModule src = tensor(f.source(), ce.probe.module);
    Morphism fq = tensor_mor(f, Morphism::identity(ce.probe.module));
    require(!equal_elements(src, ce.element, Mat(d.ring, src.gens(), 1)), "counterexample element is zero");
    require(equal_elements(fq.target(), fq.apply(ce.element), Mat(d.ring, fq.target().gens(), 1)),
            "counterexample element survives f ⊗ id");
    c["impure"] += 1;
  }
  if (d.ring.kind() == RingKind::Integers) {
    require(purity_descends(RingMap::make(d.ring, RingDesc::gaussian()), f), "purity does not descend");
    c["descents"] += 1;
  }
}

// ------------------------------------------------------------------ purity_lift

InputDoc gen_purity_lift(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  d.add_module("M", random_rels(rng, r, cfg));
  d.add_module("N", random_rels(rng, r, cfg));
  const std::size_t fr = gens_up_to(rng, 3), gr = gens_up_to(rng, 3);
  d.add_module("F", Mat(r, fr, 0));
  d.add_module("G", Mat(r, gr, 0));
  d.add_morphism("k", "F", "G", gen::random_mat(rng, r, gr, fr, cfg.max_entry));
  d.add_morphism("psi", "G", "M", gen::random_mat(rng, r, d.module("M").gens(), gr, cfg.max_entry));
  return d;
}

void check_purity_lift(const InputDoc& d, Counters& c) {
  DirectSum ds = direct_sum(d.module("M"), d.module("N"));
  Morphism k = d.morphism("k"), psi = d.morphism("psi");
  Morphism g = compose(psi, k), h = compose(ds.inj1, psi);
  Morphism phi = lift_through_univ_injective(ds.inj1, ds.proj1, g, h, k);
  require(equivalent(compose(phi, k), g), "lift does not satisfy φ∘k ≡ g");
  require(equivalent(compose(ds.inj1, phi), h), "lift does not satisfy f∘φ ≡ h");
  c["squares"] += 1;
}

// ------------------------------------------------------------------ ml_towers

InputDoc gen_ml(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  add_uniform_module(rng, d, "M", cfg, 1);
  add_random_endo(rng, d, "s", "M", cfg);
  d.add_module("K", random_rels(rng, r, cfg));
  return d;
}

void check_ml(const InputDoc& d, Counters& c) {
  const std::size_t horizon = horizon_of(d);
  Morphism s = d.morphism("s");
  Tower fwd = Tower::make(s, TowerDirection::Forward);
  MLVerdict v = tower_ml_check(fwd, horizon);
  require(v.status != MLStatus::NotML, "a finite horizon cannot refute the condition");
  std::size_t first = horizon + 1;
  for (std::size_t j = 0; j <= horizon; ++j)
    if (factor_through(power(s, j + 1), power(s, j))) {
      first = j;
      break;
    }
  if (v.status == MLStatus::ML) {
    require(v.level && *v.level == first, "witness level is not the least one");
    require(v.factor && equivalent(power(s, first), compose(*v.factor, power(s, first + 1))), "witness factor fails");
    c["ml"] += 1;
  } else {
    require(first > horizon, "a witness below the horizon was missed");
    c["unknown"] += 1;
  }
  Tower bwd = Tower::make(s, TowerDirection::Backward);
  MLVerdict st = inverse_tower_stabilization(bwd, horizon);
  std::size_t stab = horizon + 1;
  for (std::size_t k = 0; k <= horizon; ++k)
    if (same_submodule(image(power(s, k)), image(power(s, k + 1)))) {
      stab = k;
      break;
    }
  if (st.status == MLStatus::ML) require(st.level && *st.level == stab, "stabilization level is not the least one");
  else require(stab > horizon, "stabilization below the horizon was missed");
  FpModule k = d.module("K");
  MLVerdict id = tower_ml_check(Tower::make(Morphism::identity(k), TowerDirection::Forward), horizon);
  require(id.status == MLStatus::ML && id.level == std::size_t{0}, "identity tower is not ML at level 0");
}

// ------------------------------------------------------------------ tower_lift

bool tower_lift_ring(const RingDesc& r) { return r.kind() == RingKind::Integers || r.kind() == RingKind::IntegersMod; }

InputDoc gen_tower_lift(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  if (r.kind() == RingKind::Integers) {
    const long a = gen::uniform(rng, 2, std::max(2L, cfg.max_entry));
    const long cc = gen::uniform(rng, 2, std::max(2L, cfg.max_entry));
    d.add_module("A", FpModule::cyclic_sum(r, {a}).rels());
    d.add_module("C", FpModule::cyclic_sum(r, {cc}).rels());
    d.add_morphism("sa", "A", "A", Mat::from_ints(r, {{gen::uniform(rng, 0, a - 1)}}));
    d.add_morphism("sc", "C", "C", Mat::from_ints(r, {{gen::uniform(rng, 0, cc - 1)}}));
    const long unit = a / std::gcd(a, cc);
    d.add_mat("X", Mat::from_ints(r, {{unit * gen::uniform(rng, 0, 3)}}), "A", "C");
    d.add_mat("c_top", Mat::from_ints(r, {{gen::uniform(rng, 0, cc - 1)}}), "C");
  } else {
    d.add_module("A", Mat(r, gens_up_to(rng, 2, 1), 0));
    d.add_module("C", Mat(r, gens_up_to(rng, 2, 1), 0));
    add_random_endo(rng, d, "sa", "A", cfg);
    add_random_endo(rng, d, "sc", "C", cfg);
    const std::size_t ka = d.module("A").gens(), kc = d.module("C").gens();
    d.add_mat("X", gen::random_mat(rng, r, ka, kc, cfg.max_entry), "A", "C");
    d.add_mat("c_top", gen::random_mat(rng, r, kc, 1, cfg.max_entry), "C");
  }
  return d;
}

void check_tower_lift(const InputDoc& d, Counters& c) {
  const std::size_t horizon = horizon_of(d);
  Morphism sa = d.morphism("sa"), sc = d.morphism("sc");
  const Mat& x = d.mat("X");
  const RingDesc& r = d.ring;
  DirectSum ds = direct_sum(sa.source(), sc.source());
  Mat sb = vcat(hcat(sa.mat(), x), hcat(Mat(r, sc.mat().rows(), sa.mat().cols()), sc.mat()));
  Tower a = Tower::make(sa, TowerDirection::Backward);
  Tower b = Tower::make(Morphism::make(ds.sum, ds.sum, sb), TowerDirection::Backward);
  Tower cc = Tower::make(sc, TowerDirection::Backward);
  std::vector<Mat> fam(horizon + 1);
  fam[horizon] = d.mat("c_top");
  for (std::size_t i = horizon; i-- > 0;) fam[i] = sc.apply(fam[i + 1]);
  std::vector<Mat> lift;
  try {
    lift = tower_surjective_lift(a, b, cc, ds.inj1, ds.proj2, fam, horizon);
  } catch (const Error& e) {
    // the kernel tower is finite, hence Mittag-Leffler
    require(e.code() != ErrorCode::LiftFailedAtHorizon, "lift failed over a finite kernel tower");
    throw;
  }
  require(lift.size() == horizon + 1, "lift has the wrong length");
  for (std::size_t i = 0; i <= horizon; ++i) {
    require(equal_elements(cc.object, ds.proj2.apply(lift[i]), fam[i]), "lift does not map onto the family");
    if (i < horizon) require(equal_elements(b.object, b.step.apply(lift[i + 1]), lift[i]), "lift is not compatible");
  }
  c["lifts"] += 1;
}

// ------------------------------------------------------------------ colimit

InputDoc gen_colimit(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  d.add_module("M0", random_rels(rng, r, cfg));
  add_random_map(rng, d, "f", "M0", "M1", cfg);
  if (gen::coin(rng, 2)) {
    add_random_map(rng, d, "g", "M1", "M2", cfg);
    d.params["shape"] = "chain";
  } else {
    add_random_map(rng, d, "g", "M0", "M2", cfg);
    d.params["shape"] = "diamond";
  }
  return d;
}

void check_colimit(const InputDoc& d, Counters& c) {
  Morphism f = d.morphism("f"), g = d.morphism("g");
  FiniteDirectedSystem s;
  if (shape_of(d) == "chain") {
    s.objects = {f.source(), f.target(), g.target()};
    s.le = {{true, true, true}, {false, true, true}, {false, false, true}};
    s.maps.emplace(std::pair{std::size_t{0}, std::size_t{1}}, f);
    s.maps.emplace(std::pair{std::size_t{1}, std::size_t{2}}, g);
    s.maps.emplace(std::pair{std::size_t{0}, std::size_t{2}}, compose(g, f));
  } else {
    PushoutData p = pushout(f, g);
    s.objects = {f.source(), f.target(), g.target(), p.object};
    s.le = {{true, true, true, true}, {false, true, false, true}, {false, false, true, true}, {false, false, false, true}};
    s.maps.emplace(std::pair{std::size_t{0}, std::size_t{1}}, f);
    s.maps.emplace(std::pair{std::size_t{0}, std::size_t{2}}, g);
    s.maps.emplace(std::pair{std::size_t{1}, std::size_t{3}}, p.inl);
    s.maps.emplace(std::pair{std::size_t{2}, std::size_t{3}}, p.inr);
    s.maps.emplace(std::pair{std::size_t{0}, std::size_t{3}}, compose(p.inl, f));
  }
  for (std::size_t i = 0; i < s.objects.size(); ++i) s.maps.emplace(std::pair{i, i}, Morphism::identity(s.objects[i]));
  ColimitResult res = finite_system_colimit(s);
  require(res.top == s.objects.size() - 1, "colimit picked the wrong top element");
  require(is_iso(res.colimit, s.objects[res.top]), "colimit differs from the top object");
  for (const auto& [ij, m] : s.maps)
    require(equivalent(compose(res.canonical[ij.second], m), res.canonical[ij.first]), "canonical maps are not compatible");
  c[shape_of(d)] += 1;
}

// ------------------------------------------------------------------ enlarge_free

InputDoc gen_enlarge(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  const std::size_t top = std::max<std::size_t>(cfg.max_gens, 1);
  const std::size_t g = gens_up_to(rng, top, 1), j = gens_up_to(rng, top, 1);
  d.add_module("M", Mat(r, g, 0));
  d.add_module("J", Mat(r, j, 0));
  Mat psi = gen::random_mat(rng, r, g, j, cfg.max_entry);
  Mat ker = kernel(Morphism::make(d.module("J"), d.module("M"), psi)).incl.mat();
  Mat n = ker * small_int_mat(rng, r, ker.cols(), gens_up_to(rng, 3), 3);
  d.add_mat("psi", psi, "M", "J");
  d.add_mat("N", n, "J");
  return d;
}

void check_enlarge(const InputDoc& d, Counters& c) {
  FpModule m = d.module("M"), jm = d.module("J");
  const Mat& psi = d.mat("psi");
  const Mat& n = d.mat("N");
  EnlargeResult e = enlarge_to_free(m, jm.gens(), psi, n);
  require(e.inside_kernel && e.quotient_free && e.contains_input, "reported conditions do not all hold");
  require((psi * e.relations).is_zero(), "enlarged relations leave the kernel");
  require(members(SubmoduleRep{jm, e.relations}, n), "enlarged relations lose the input");
  FpModule quotient(d.ring, e.relations);
  require(quotient.invariants().torsion.empty(), "quotient has torsion");
  for (const RingElem& f : snf(e.relations).invariant_factors)
    require(d.ring.is_unit(f), "quotient Smith form has a nonunit invariant factor");
  c["instances"] += 1;
}

// ------------------------------------------------------------------ devissage_roundtrip

InputDoc gen_roundtrip(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  const std::size_t k = gens_up_to(rng, std::max<std::size_t>(cfg.max_gens, 1), 1);
  std::vector<RingElem> ds;
  for (std::size_t j = 0; j < k; ++j) ds.push_back(gen::random_cyclic_order(rng, r, cfg.max_entry));
  d.add_mat("P", gen::random_unimodular(rng, r, k, cfg.max_entry).mat);
  d.add_mat("orders", Mat::column_vector(r, ds));
  return d;
}

void check_roundtrip(const InputDoc& d, Counters& c) {
  const RingDesc& r = d.ring;
  const Mat& p = d.mat("P");
  const Mat& orders = d.mat("orders");
  inverse_unimodular(p);
  if (orders.rows() != p.rows() || orders.cols() != 1)
    fail(ErrorCode::DimensionMismatch, "one order per part is required", "/mats/orders");
  std::vector<RingElem> ds;
  for (std::size_t j = 0; j < orders.rows(); ++j) ds.push_back(orders(j, 0));
  FpModule m(r, p * Mat::diagonal(r, ds));
  InternalDecomposition dec{m, {}};
  for (std::size_t j = 0; j < p.cols(); ++j) dec.parts.push_back(SubmoduleRep{m, p.col(j)});
  StructureCheck ci = check_internal(dec);
  require(ci.valid, "constructed decomposition is not internal: " + ci.clause);
  KaplanskyFiltration f = decomposition_to_filtration(dec);
  StructureCheck cf = validate_filtration(f);
  require(cf.valid, "filtration is invalid: " + cf.clause);
  InternalDecomposition back = filtration_to_decomposition(f);
  require(back.parts.size() == dec.parts.size(), "round trip changes the number of parts");
  for (std::size_t j = 0; j < dec.parts.size(); ++j) {
    FpModule a = as_module(back.parts[j]).module;
    require(same_invariants(r, a.invariants(), as_module(dec.parts[j]).module.invariants()),
            "round trip changes part " + std::to_string(j));
    require(is_iso(a, FpModule::cyclic_sum(r, {ds[j]})), "part " + std::to_string(j) + " is not the expected cyclic module");
  }
  c["decompositions"] += 1;
}

// ------------------------------------------------------------------ summand_devissage

bool summand_ring(const RingDesc& r) {
  return r.kind() == RingKind::Integers ||
         (r.kind() == RingKind::IntegersMod && (r.modulus() == 6 || r.modulus() == 12));
}

InputDoc gen_summand(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  const std::size_t blocks = gens_up_to(rng, 2, 1);
  std::vector<RingElem> orders;
  std::vector<std::size_t> block_of;
  Mat e(r, 0, 0);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t k = gens_up_to(rng, std::max<std::size_t>(cfg.max_gens, 1) - (blocks > 1 ? 1 : 0), 1);
    const RingElem o = gen::random_cyclic_order(rng, r, cfg.max_entry);
    Mat diag(r, k, k);
    for (std::size_t j = 0; j < k; ++j) {
      if (gen::coin(rng, 2)) diag.set(j, j, r.one());
      orders.push_back(o);
      block_of.push_back(b);
    }
    gen::Unimodular p = gen::random_unimodular(rng, r, k, cfg.max_entry);
    e = block_diag(e, p.mat * diag * p.inverse);
  }
  const std::size_t n = orders.size();
  // cross-block maps R/(a_j) -> R/(a_i) need multiples of a_i / gcd(a_i, a_j)
  const RingDesc base = r.euclidean_base();
  Mat y(r, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (block_of[i] == block_of[j]) {
        y.set(i, j, r.from_int(gen::uniform(rng, -2, 2)));
        continue;
      }
      const RingElem ai = r.lift(orders[i]), aj = r.lift(orders[j]);
      const RingElem g = base.gcd(ai, aj);
      const RingElem step = base.is_zero(g) ? base.one() : *base.exact_div(ai, g);
      y.set(i, j, r.from_integer_elem(base.mul(step, base.from_int(gen::uniform(rng, -2, 2)))));
    }
  const Mat id = Mat::identity(r, n);
  d.add_module("M", FpModule::cyclic_sum(r, orders).rels());
  d.add_mat("E", e + e * y * (id - e), "M", "M");
  return d;
}

void check_summand(const InputDoc& d, Counters& c) {
  FpModule m = d.module("M");
  const RingDesc& r = d.ring;
  Morphism e = Morphism::make(m, m, d.mat("E"));
  InternalDecomposition dec{m, {}};
  for (std::size_t j = 0; j < m.gens(); ++j) dec.parts.push_back(SubmoduleRep{m, Mat::identity(r, m.gens()).col(j)});
  SummandDecomposition s = summand_devissage(dec, e);
  StructureCheck ci = check_internal(s.decomposition);
  require(ci.valid, "image decomposition is not internal: " + ci.clause);
  require(same_submodule(image(s.image.incl), image(e)), "reported image differs from im(e)");
  FpModule total = FpModule::free(r, 0);
  for (const auto& part : s.decomposition.parts) total = direct_sum(total, as_module(part).module).sum;
  require(is_iso(total, s.image.module), "sum of the parts differs from im(e)");
  Morphism comp = subtract(Morphism::identity(m), e);
  for (const DevissageStage& st : s.stages) {
    require(contained(st.in_image, image(e)), "stage image part leaves im(e)");
    require(contained(st.in_kernel, image(comp)), "stage kernel part leaves ker(e)");
    require(contained(st.in_image, st.stage) && contained(st.in_kernel, st.stage), "stage parts leave the stage");
    require(same_submodule(sum(st.in_image, st.in_kernel), st.stage), "stage does not split along e");
    require(is_zero_submodule(intersect(st.in_image, st.in_kernel)), "stage parts overlap");
  }
  if (!s.stages.empty()) require(same_submodule(s.stages.back().stage, full_submodule(m)), "stages do not exhaust M");
  c["idempotents"] += 1;
}

// ------------------------------------------------------------------ descent_projectivity

InputDoc gen_descent(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  d.add_module("M", random_rels(rng, r, cfg));
  return d;
}

void check_descent(const InputDoc& d, Counters& c) {
  FpModule m = d.module("M");
  DescentReport ff = check_projectivity_descent(RingMap::make(d.ring, RingDesc::gaussian()), m);
  require(ff.equivalence_holds, "projectivity differs across a faithfully flat extension");
  DescentReport q = check_projectivity_descent(RingMap::make(d.ring, RingDesc::rationals()), m);
  if (q.verdict_base != q.verdict_extended) {
    require(!q.base_invariants.torsion.empty(), "divergence on a torsion-free module");
    require(q.counterexample_flag.has_value(), "divergence is not flagged");
    c["divergences"] += 1;
  }
  c["modules"] += 1;
}

// ------------------------------------------------------------------ projchar

InputDoc gen_projchar(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  d.add_module("M", random_rels(rng, r, cfg));
  return d;
}

void check_projchar(const InputDoc& d, Counters& c) {
  FpModule m = d.module("M");
  const bool by_inv = projective_by_invariants(m);
  bool by_split = projective_by_splitting(m);
  if (fault_is(d, "projective-decider") && m.gens() >= 2) by_split = !by_split;
  require(by_inv == by_split, "projectivity deciders disagree");
  require(is_flat(m) == by_split, "flatness differs from projectivity");
  ProjCharReport rep = projchar_check(m);
  require(rep.consistent && rep.flat == rep.projective, "characterization report is inconsistent");
  require(rep.mittag_leffler && rep.sum_of_cyclics, "finitely presented module fails ML or cyclic decomposition");
  c[by_inv ? "projective" : "not_projective"] += 1;
}

// ------------------------------------------------------------------ descend_generators

InputDoc gen_descend(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  d.map_target = RingDesc::gaussian();
  Mat rels = random_rels(rng, r, cfg);
  d.add_module("M", rels);
  const RingDesc& t = *d.map_target;
  const std::size_t k = rels.rows();
  std::vector<TensorSum> gens;
  // i ⊗ e_j for every j, plus random sums
  for (std::size_t j = 0; j < k; ++j) gens.push_back({{t.gaussian_elem(0, 1), Mat::identity(r, k).col(j)}});
  const std::size_t extra = gens_up_to(rng, 2);
  for (std::size_t e = 0; e < extra; ++e) {
    TensorSum s;
    for (long p = gen::uniform(rng, 1, 2); p > 0; --p)
      s.push_back({gen::random_elem(rng, t, 3), gen::random_mat(rng, r, k, 1, cfg.max_entry)});
    gens.push_back(std::move(s));
  }
  d.params["ext_gens"] = tensor_sums_to_json(d.ring_map(), gens);
  return d;
}

void check_descend(const InputDoc& d, Counters& c) {
  RingMap phi = d.ring_map();
  FpModule m = d.module("M");
  std::vector<TensorSum> ext = tensor_sums_from_json(phi, m.gens(), d.param("ext_gens"), "/params/ext_gens");
  std::vector<Mat> comps = descend_generators(phi, m, ext);
  Mat span(d.ring, m.gens(), 0);
  for (const Mat& x : comps) span = hcat(span, x);
  require(same_submodule(SubmoduleRep{m, span}, full_submodule(m)), "descended components do not span");
  c["families"] += 1;
}

// ------------------------------------------------------------------ ml_descent

InputDoc gen_ml_descent(Rng& rng, const RingDesc& r, const HarnessConfig& cfg) {
  InputDoc d;
  d.ring = r;
  d.map_target = RingDesc::gaussian();
  add_uniform_module(rng, d, "M", cfg, 1);
  add_random_endo(rng, d, "s", "M", cfg);
  return d;
}

void check_ml_descent(const InputDoc& d, Counters& c) {
  Tower t = Tower::make(d.morphism("s"), TowerDirection::Forward);
  MLDescentReport rep = check_ml_descent(d.ring_map(), t, horizon_of(d));
  require(rep.implication_holds, "ML after base change without ML before");
  c[rep.verdict] += 1;
}

std::vector<Suite> make_suites() {
  auto gaussian_or_z = [](const RingDesc& r) {
    return r.kind() == RingKind::Integers || r.kind() == RingKind::GaussianIntegers;
  };
  return {
      {"snf", gaussian_or_z, gen_snf, check_snf},
      {"module_exactness", any_ring, gen_exactness, check_exactness},
      {"presentation_robustness", any_ring, gen_presentation, check_presentation},
      {"tensor_hom", any_ring, gen_tensor_hom, check_tensor_hom},
      {"basechange_kernels", only_integers, gen_basechange, check_basechange},
      {"pushout_universal", any_ring, gen_pushout, check_pushout},
      {"domination", any_ring, gen_domination, check_domination},
      {"purity", any_ring, gen_purity, check_purity},
      {"purity_lift", any_ring, gen_purity_lift, check_purity_lift},
      {"ml_towers", any_ring, gen_ml, check_ml},
      {"tower_lift", tower_lift_ring, gen_tower_lift, check_tower_lift},
      {"colimit", any_ring, gen_colimit, check_colimit},
      {"enlarge_free", only_integers, gen_enlarge, check_enlarge},
      {"devissage_roundtrip", any_ring, gen_roundtrip, check_roundtrip},
      {"summand_devissage", summand_ring, gen_summand, check_summand},
      {"descent_projectivity", only_integers, gen_descent, check_descent},
      {"projchar", any_ring, gen_projchar, check_projchar},
      {"descend_generators", only_integers, gen_descend, check_descend},
      {"ml_descent", only_integers, gen_ml_descent, check_ml_descent},
  };
}

}  // namespace

const std::vector<Suite>& registered_suites() {
  static const std::vector<Suite> suites = make_suites();
  return suites;
}

}  // namespace fpmod
