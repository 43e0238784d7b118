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

#include "fpmod/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "fpmod/harness.hpp"
#include "fpmod/purity.hpp"

namespace fpmod {

namespace {

// ------------------------------------------------------------------ lookup

/// The module called `preferred`, or the only module of the document.
FpModule pick_module(const InputDoc& d, const std::string& preferred) {
  if (d.has_module(preferred)) return d.module(preferred);
  if (d.modules.size() == 1) return d.module(d.modules.front().name);
  fail(ErrorCode::InvalidInput, "expected a module named \"" + preferred + "\"", "/modules");
}

Tower pick_tower(const InputDoc& d, const std::string& preferred) {
  for (const auto& t : d.towers)
    if (t.name == preferred) return d.tower(preferred);
  if (d.towers.size() == 1) return d.tower(d.towers.front().name);
  fail(ErrorCode::InvalidInput, "expected a tower named \"" + preferred + "\"", "/towers");
}

json elems_to_json(const RingDesc& r, const std::vector<RingElem>& v) {
  json out = json::array();
  for (const auto& a : v) out.push_back(elem_to_json(r, a));
  return out;
}

json check_to_json(const StructureCheck& c) {
  json j{{"valid", c.valid}};
  if (!c.valid) {
    j["clause"] = c.clause;
    j["index"] = c.index;
  }
  j["vacuous"] = c.vacuous;
  return j;
}

json parts_to_json(const std::vector<SubmoduleRep>& parts) {
  json out = json::array();
  for (const auto& p : parts) out.push_back(mat_to_json(p.gens_mat));
  return out;
}

json verdict_to_json(const MLVerdict& v) {
  json j{{"status", ml_status_name(v.status)}, {"horizon", v.horizon}};
  if (v.level) j["level"] = *v.level;
  if (v.factor) j["factor"] = morphism_to_json(*v.factor);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

// ------------------------------------------------------------------ commands

json cmd_snf(const InputDoc& d) {
  Mat a = d.has_mat("A") ? d.mat("A") : !d.mats.empty() ? d.mats.front().mat : pick_module(d, "M").rels();
  SmithForm s = snf(a);
  return json{{"invariant_factors", elems_to_json(a.ring(), s.invariant_factors)},
              {"U", mat_to_json(s.U)},
              {"V", mat_to_json(s.V)},
              {"D", mat_to_json(s.D)}};
}

json cmd_invariants(const InputDoc& d) {
  FpModule m = pick_module(d, "M");
  Simplified s = simplify(m);
  return json{{"invariants", invariants_to_json(m.ring(), m.invariants())},
              {"minimal_presentation", module_to_json(s.module)}};
}

json cmd_hom(const InputDoc& d) {
  HomModule h = hom_module(d.module("M"), d.module("N"));
  json gens = json::array();
  for (std::size_t i = 0; i < h.underlying.gens(); ++i)
    gens.push_back(morphism_to_json(h.decode(Mat::identity(h.underlying.ring(), h.underlying.gens()).col(i))));
  return json{{"hom", module_to_json(h.underlying)}, {"generators", std::move(gens)}};
}

json cmd_tensor(const InputDoc& d) { return json{{"tensor", module_to_json(tensor(d.module("M"), d.module("N")))}}; }

json cmd_basechange(const InputDoc& d) {
  RingMap phi = d.ring_map();
  json j{{"map", phi.name()}, {"flat", phi.flat()}, {"faithfully_flat", phi.faithfully_flat()}};
  if (!d.morphisms.empty()) {
    Morphism f = d.morphism(d.morphisms.front().name);
    Morphism bf = base_change_mor(phi, f);
    j["source"] = module_to_json(bf.source());
    j["target"] = module_to_json(bf.target());
    j["morphism"] = morphism_to_json(bf);
  } else {
    j["module"] = module_to_json(base_change(phi, pick_module(d, "M")));
  }
  return j;
}

json cmd_pushout(const InputDoc& d) {
  PushoutData p = pushout(d.morphism("f"), d.morphism("g"));
  json j{{"object", module_to_json(p.object)}, {"inl", morphism_to_json(p.inl)}, {"inr", morphism_to_json(p.inr)}};
  bool has_u = false, has_v = false;
  for (const auto& m : d.morphisms) {
    has_u = has_u || m.name == "u";
    has_v = has_v || m.name == "v";
  }
  if (has_u && has_v) j["induced"] = morphism_to_json(pushout_induced(p, d.morphism("u"), d.morphism("v")));
  return j;
}

json cmd_univinj(const InputDoc& d) {
  const std::string name = d.morphisms.size() == 1 ? d.morphisms.front().name : "f";
  PurityVerdict v = is_universally_injective(d.morphism(name));
  json j{{"pure", v.pure}};
  if (v.retraction) j["retraction"] = morphism_to_json(*v.retraction);
  if (v.counterexample)
    j["counterexample"] = json{{"probe", v.counterexample->probe.label},
                               {"probe_module", module_to_json(v.counterexample->probe.module)},
                               {"element", mat_to_json(v.counterexample->element)}};
  return j;
}

json cmd_dominates(const InputDoc& d) {
  DominationVerdict v = dominates(d.morphism("f"), d.morphism("g"));
  json j{{"dominates", v.dominates}, {"pushout_agrees", v.pushout_agrees}};
  if (v.factor) j["factor"] = morphism_to_json(*v.factor);
  return j;
}

json cmd_lift(const InputDoc& d) {
  Morphism phi = lift_through_univ_injective(d.morphism("f"), d.morphism("pi"), d.morphism("g"), d.morphism("h"),
                                             d.morphism("k"));
  return json{{"lift", morphism_to_json(phi)}};
}

json cmd_ml_tower(const InputDoc& d, std::size_t horizon) {
  return verdict_to_json(tower_ml_check(pick_tower(d, "T"), horizon));
}

json cmd_inv_stab(const InputDoc& d, std::size_t horizon) {
  return verdict_to_json(inverse_tower_stabilization(pick_tower(d, "T"), horizon));
}

json cmd_tower_lift(const InputDoc& d) {
  const Mat& fam = d.mat("family");
  if (fam.cols() == 0) fail(ErrorCode::InvalidInput, "family needs at least one level", "/mats/family");
  std::vector<Mat> cs;
  for (std::size_t i = 0; i < fam.cols(); ++i) cs.push_back(fam.col(i));
  std::vector<Mat> lift = tower_surjective_lift(d.tower("TA"), d.tower("TB"), d.tower("TC"), d.morphism("f"),
                                                d.morphism("g"), cs, fam.cols() - 1);
  json out = json::array();
  for (const auto& b : lift) out.push_back(mat_to_json(b));
  return json{{"lift", std::move(out)}};
}

json cmd_enlarge_free(const InputDoc& d) {
  const Mat& psi = d.mat("psi");
  EnlargeResult e = enlarge_to_free(pick_module(d, "M"), psi.cols(), psi, d.mat("N"));
  return json{{"relations", mat_to_json(e.relations)},
              {"generators", e.generators},
              {"inside_kernel", e.inside_kernel},
              {"quotient_free", e.quotient_free},
              {"contains_input", e.contains_input},
              {"quotient", invariants_to_json(d.ring, e.quotient)}};
}

json cmd_devissage(const InputDoc& d) {
  FpModule m = pick_module(d, "M");
  InternalDecomposition dec{m, {}};
  if (d.params.contains("parts")) {
    const json& names = d.param("parts");
    if (!names.is_array()) fail(ErrorCode::InvalidInput, "parts must be a list of matrix names", "/params/parts");
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!names[i].is_string()) fail(ErrorCode::InvalidInput, "parts must be a list of matrix names", "/params/parts/" + std::to_string(i));
      const Mat& g = d.mat(names[i].get<std::string>());
      if (g.rows() != m.gens()) fail(ErrorCode::DimensionMismatch, "part generators have the wrong length", "/params/parts/" + std::to_string(i));
      dec.parts.push_back(SubmoduleRep{m, g});
    }
  } else {
    dec = projective_cyclic_decomposition(m);
  }
  json j{{"parts", parts_to_json(dec.parts)}, {"internal", check_to_json(check_internal(dec))}};
  if (!check_internal(dec).valid) return j;
  KaplanskyFiltration f = decomposition_to_filtration(dec);
  j["filtration"] = json{{"stages", parts_to_json(f.stages)}, {"check", check_to_json(validate_filtration(f))}};
  j["round_trip"] = parts_to_json(filtration_to_decomposition(f).parts);
  bool has_e = false;
  for (const auto& e : d.morphisms) has_e = has_e || e.name == "e";
  if (has_e) {
    SummandDecomposition s = summand_devissage(dec, d.morphism("e"));
    json stages = json::array();
    for (const auto& st : s.stages)
      stages.push_back(json{{"parts", st.part_indices},
                            {"stage", mat_to_json(st.stage.gens_mat)},
                            {"in_image", mat_to_json(st.in_image.gens_mat)},
                            {"in_kernel", mat_to_json(st.in_kernel.gens_mat)}});
    j["summand"] = json{{"image", module_to_json(s.image.module)},
                        {"parts", parts_to_json(s.decomposition.parts)},
                        {"stages", std::move(stages)}};
  }
  return j;
}

json cmd_descend(const InputDoc& d, std::size_t horizon) {
  RingMap phi = d.ring_map();
  const std::string mode = d.param_string_opt("mode").value_or("projectivity");
  if (mode == "generators") {
    FpModule m = pick_module(d, "M");
    auto ext = tensor_sums_from_json(phi, m.gens(), d.param("ext_gens"), "/params/ext_gens");
    json comps = json::array();
    for (const auto& x : descend_generators(phi, m, ext)) comps.push_back(mat_to_json(x));
    return json{{"components", std::move(comps)}};
  }
  if (mode == "ml") {
    MLDescentReport r = check_ml_descent(phi, pick_tower(d, "T"), horizon);
    return json{{"base", verdict_to_json(r.base)},
                {"extended", verdict_to_json(r.extended)},
                {"verdict", r.verdict},
                {"implication_holds", r.implication_holds}};
  }
  if (mode != "projectivity") fail(ErrorCode::InvalidInput, "mode must be projectivity, generators or ml", "/params/mode");
  DescentReport r = check_projectivity_descent(phi, pick_module(d, "M"));
  json j{{"map", phi.name()},
         {"base_invariants", invariants_to_json(phi.source(), r.base_invariants)},
         {"extended_invariants", invariants_to_json(phi.target(), r.extended_invariants)},
         {"projective_base", r.verdict_base},
         {"projective_extended", r.verdict_extended},
         {"equivalence_holds", r.equivalence_holds}};
  if (r.counterexample_flag) j["counterexample"] = *r.counterexample_flag;
  return j;
}

json cmd_projtest(const InputDoc& d) {
  FpModule m = pick_module(d, "M");
  return json{{"projective", is_projective(m)},
              {"by_invariants", projective_by_invariants(m)},
              {"by_splitting", projective_by_splitting(m)}};
}

json cmd_flattest(const InputDoc& d) { return json{{"flat", is_flat(pick_module(d, "M"))}}; }

json cmd_projchar(const InputDoc& d) {
  ProjCharReport r = projchar_check(pick_module(d, "M"));
  return json{{"flat", r.flat},
              {"projective", r.projective},
              {"mittag_leffler", r.mittag_leffler},
              {"sum_of_cyclics", r.sum_of_cyclics},
              {"consistent", r.consistent}};
}

// ------------------------------------------------------------------ plumbing

json error_json(const std::string& code, const std::string& clause, const std::string& location) {
  return json{{"error", code}, {"clause", clause}, {"location", location}};
}

json read_input(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidInput, "cannot open input file " + path, path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidInput, "malformed JSON: " + std::string(e.what()), "byte " + std::to_string(e.byte));
  }
}

std::uint64_t parse_seed(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos, 0);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidInput, "seed must be a 64-bit unsigned integer", where);
  }
}

std::vector<RingDesc> parse_rings(const std::string& list) {
  std::vector<RingDesc> out;
  std::string item;
  std::istringstream ss(list);
  // "IntegersMod(6)" contains no comma, so a plain split is enough
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(ring_from_name(item, "--rings"));
  return out;
}

struct Options {
  std::string input;
  std::string output = "json";
  std::string seed;
  std::size_t trials = HarnessConfig{}.trials;
  std::size_t horizon = 8;
  std::string rings;
  std::size_t parallelism = 1;
  std::string suites;
  std::string fault;
  std::size_t max_gens = HarnessConfig{}.max_gens;
  long max_entry = HarnessConfig{}.max_entry;
};

int run_harness_command(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.input.empty()) {
    InputDoc doc = input_from_json(read_input(o.input));
    Outcome r = replay(doc);
    const char* names[] = {"pass", "fail", "invalid"};
    out << json{{"suite", doc.param_string("suite")}, {"verdict", names[static_cast<int>(r.verdict)]}, {"message", r.message}}
               .dump(2)
        << "\n";
    return r.verdict == Verdict::Pass ? 0 : r.verdict == Verdict::Fail ? 1 : 2;
  }
  HarnessConfig cfg;
  if (!o.seed.empty()) cfg.seed = parse_seed(o.seed, "--seed");
  else if (const char* env = std::getenv("FPMOD_SEED")) cfg.seed = parse_seed(env, "FPMOD_SEED");
  cfg.trials = o.trials;
  cfg.horizon = o.horizon;
  cfg.parallelism = o.parallelism;
  cfg.max_gens = o.max_gens;
  cfg.max_entry = o.max_entry;
  cfg.fault = o.fault;
  if (!o.rings.empty()) cfg.rings = parse_rings(o.rings);
  std::string item;
  std::istringstream ss(o.suites);
  while (std::getline(ss, item, ','))
    if (!item.empty()) cfg.suites.push_back(item);
  const auto t0 = std::chrono::steady_clock::now();
  HarnessReport report = run_harness(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out << report.to_json(cfg).dump(2) << "\n";
  err << "wall_clock_seconds " << secs << "\n";
  return report.total_failures == 0 ? 0 : 1;
}

using Handler = std::function<json(const InputDoc&, std::size_t horizon)>;

template <typename F>
Handler plain(F f) {
  return [f](const InputDoc& d, std::size_t) { return f(d); };
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const std::vector<std::tuple<std::string, std::string, Handler>> commands{
      {"snf", "Smith normal form with transforms", plain(cmd_snf)},
      {"invariants", "invariant factors of a module", plain(cmd_invariants)},
      {"hom", "presentation of Hom(M, N)", plain(cmd_hom)},
      {"tensor", "presentation of M tensor N", plain(cmd_tensor)},
      {"basechange", "base change along a ring map", plain(cmd_basechange)},
      {"pushout", "pushout of f and g with the induced map", plain(cmd_pushout)},
      {"univinj", "universal injectivity of a map", plain(cmd_univinj)},
      {"dominates", "whether g factors through f", plain(cmd_dominates)},
      {"lift", "fill a commuting square through a split injection", plain(cmd_lift)},
      {"ml-tower", "Mittag-Leffler witness of a forward tower", cmd_ml_tower},
      {"inv-stab", "image stabilization of a backward tower", cmd_inv_stab},
      {"tower-lift", "lift a compatible family along a surjection of towers", plain(cmd_tower_lift)},
      {"enlarge-free", "enlarge a relation module to a free quotient", plain(cmd_enlarge_free)},
      {"devissage", "filtration and decomposition round trip", plain(cmd_devissage)},
      {"descend", "descent along a faithfully flat map", cmd_descend},
      {"projtest", "projectivity of a module", plain(cmd_projtest)},
      {"flattest", "flatness of a module", plain(cmd_flattest)},
      {"projchar", "projectivity characterization report", plain(cmd_projchar)},
  };

  Options o;
  CLI::App app{"Finitely presented modules over Euclidean rings"};
  app.require_subcommand(1);
  auto common = [&o](CLI::App* sub) {
    sub->add_option("--input", o.input, "input JSON file, - for standard input");
    sub->add_option("--output", o.output, "output format")->check(CLI::IsMember({"json"}));
    sub->add_option("--horizon", o.horizon, "tower horizon");
  };
  for (const auto& [name, help, h] : commands) common(app.add_subcommand(name, help));
  CLI::App* harness = app.add_subcommand("harness", "randomized property suites");
  common(harness);
  harness->add_option("--seed", o.seed, "64-bit seed (falls back to FPMOD_SEED, then 42)");
  harness->add_option("--trials", o.trials, "instances per suite");
  harness->add_option("--rings", o.rings, "comma-separated ring names");
  harness->add_option("--parallelism", o.parallelism, "worker threads")->check(CLI::PositiveNumber);
  harness->add_option("--suites", o.suites, "comma-separated suite names");
  harness->add_option("--fault", o.fault, "corrupt a decider (test fixture)");
  harness->add_option("--max-gens", o.max_gens, "generator bound, at most 4");
  harness->add_option("--max-entry", o.max_entry, "entry bound, at most 10");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    out << error_json("InvalidInput", e.what(), "argv").dump(2) << "\n";
    return 2;
  }

  try {
    if (harness->parsed()) return run_harness_command(o, out, err);
    for (const auto& [name, help, h] : commands) {
      if (!app.got_subcommand(name)) continue;
      InputDoc doc = input_from_json(read_input(o.input));
      out << h(doc, o.horizon).dump(2) << "\n";
      return 0;
    }
    return 2;
  } catch (const Error& e) {
    out << error_json(std::string(error_name(e.code())), e.what(), e.location()).dump(2) << "\n";
    return is_internal(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    out << error_json("InternalInvariant", e.what(), "").dump(2) << "\n";
    return 1;
  }
}

}  // namespace fpmod
