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

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fpmod/cli.hpp"
#include "fpmod/harness.hpp"
#include "test_util.hpp"

using namespace tu;

namespace {

struct Run {
  int code = 0;
  json out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fpmod");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = json::parse(out.str());
  r.err = err.str();
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "cli_test_" + name + ".json";
  std::ofstream(path) << text;
  return path;
}

Run run_on(const std::string& cmd, const std::string& text, std::vector<std::string> extra = {}) {
  std::vector<std::string> args{cmd, "--input", write_temp(cmd, text)};
  args.insert(args.end(), extra.begin(), extra.end());
  return run(args);
}

bool error_code_is(ErrorCode code, const std::function<void()>& fn, const std::string& location = {}) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code && (location.empty() || e.location() == location);
  }
  return false;
}

std::vector<std::string> strings(const json& j) {
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(x.get<std::string>());
  return out;
}

}  // namespace

TEST_SUITE("json") {
  TEST_CASE("elements round trip without precision loss") {
    const std::vector<RingDesc> rings{Z, RingDesc::integers_mod(12), RingDesc::rationals(), RingDesc::prime_field(7),
                                      RingDesc::gaussian()};
    const mpz_class big("123456789012345678901234567890");
    for (const RingDesc& r : rings) {
      std::vector<RingElem> xs{r.zero(), r.one(), r.from_int(-5), r.from_int(big)};
      if (r.kind() == RingKind::Rationals) xs.push_back(r.rational_elem(-7, 3));
      if (r.kind() == RingKind::GaussianIntegers) xs.push_back(r.gaussian_elem(big, -3));
      for (const auto& x : xs) CHECK(elem_from_json(r, elem_to_json(r, x), "") == x);
    }
    CHECK(elem_to_json(Z, Z.from_int(big)) == json(big.get_str()));
    CHECK(elem_from_json(Z, json(17), "") == Z.from_int(17));
    CHECK(ring_from_name("IntegersMod(6)", "") == RingDesc::integers_mod(6));
    CHECK(ring_from_name("PrimeField(5)", "") == RingDesc::prime_field(5));
    CHECK(error_code_is(ErrorCode::InvalidInput, [] { elem_from_json(Z, json("12x"), "/e"); }, "/e"));
  }

  TEST_CASE("documents validate names, references and shapes") {
    auto doc = json::parse(R"J({"ring":"Integers","modules":{"M":{"cyclic":["2"]},"N":[["4"]]},
      "morphisms":{"f":{"source":"M","target":"N","mat":[["2"]]}},
      "towers":{"T":{"step":"f2","direction":"backward"}}})J");
    CHECK(error_code_is(ErrorCode::InvalidInput, [&] { input_from_json(doc); }, "/towers/T/step"));
    doc["morphisms"]["f2"] = json::parse(R"J({"source":"N","target":"N","mat":[["3"]]})J");
    InputDoc d = input_from_json(doc);
    CHECK(d.tower("T").direction == TowerDirection::Backward);
    CHECK(equivalent(d.morphism("f"), Morphism::make(cyc(Z, {2}), cyc(Z, {4}), Mat::from_ints(Z, {{2}}))));

    auto bad_ref = json::parse(R"J({"modules":{"M":[["2"]]},"morphisms":{"f":{"source":"M","target":"X"}}})J");
    CHECK(error_code_is(ErrorCode::InvalidInput, [&] { input_from_json(bad_ref); }, "/morphisms/f/target"));
    auto clash = json::parse(R"J({"modules":{"f":[["2"]]},"morphisms":{"f":{"source":"f","target":"f"}}})J");
    CHECK(error_code_is(ErrorCode::InvalidInput, [&] { input_from_json(clash); }, "/morphisms/f"));
    auto shape = json::parse(R"J({"modules":{"M":[["2"]]},"morphisms":{"f":{"source":"M","target":"M","mat":[["1","1"]]}}})J");
    CHECK(error_code_is(ErrorCode::DimensionMismatch, [&] { input_from_json(shape); }, "/morphisms/f/mat"));
    auto extra = json::parse(R"J({"modules":{},"colour":"red"})J");
    CHECK(error_code_is(ErrorCode::InvalidInput, [&] { input_from_json(extra); }, "/colour"));
    auto ragged = json::parse(R"J({"modules":{"M":[["1","2"],["3"]]}})J");
    CHECK_THROWS_AS(input_from_json(ragged), Error);
    auto ill = json::parse(R"J({"modules":{"M":[["2"]],"N":[["3"]]},"morphisms":{"f":{"source":"M","target":"N","mat":[["1"]]}}})J");
    InputDoc di = input_from_json(ill);
    CHECK(error_code_is(ErrorCode::NotWellDefined, [&] { di.morphism("f"); }, "/morphisms/f"));
  }

  TEST_CASE("documents survive serialization") {
    InputDoc d;
    d.ring = RingDesc::gaussian();
    d.map_target = std::nullopt;
    d.add_module("M", Mat::from_ints(d.ring, {{2, 0}, {0, 0}}));
    d.add_module("F", Mat(d.ring, 2, 0));
    d.add_morphism("f", "M", "M", Mat::identity(d.ring, 2));
    d.add_mat("x", Mat(d.ring, 2, 1), "M");
    d.add_tower("T", "f", TowerDirection::Forward);
    d.params["note"] = "kept";
    const json j = input_to_json(d);
    InputDoc back = input_from_json(j);
    CHECK(input_to_json(back) == j);
    CHECK(back.module("F").gens() == 2);
    CHECK(back.module("F").rels().cols() == 0);
    CHECK(back.mat("x").rows() == 2);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("snf reports invariant factors") {
    Run r = run_on("snf", R"J({"ring":"Integers","mats":{"A":[["2","0"],["0","3"]]}})J");
    CHECK(r.code == 0);
    CHECK(strings(r.out["invariant_factors"]) == std::vector<std::string>{"1", "6"});
    Run g = run_on("snf", R"J({"ring":"GaussianIntegers","mats":{"A":[[{"re":"2","im":"0"}]]}})J");
    CHECK(g.code == 0);
    CHECK(g.out["invariant_factors"][0] == json{{"re", "2"}, {"im", "0"}});
  }

  TEST_CASE("dominates: multiplication by 2 against the identity") {
    Run r = run_on("dominates", R"J({"modules":{"Z":{"gens":1}},
      "morphisms":{"f":{"source":"Z","target":"Z","mat":[["2"]]},"g":{"source":"Z","target":"Z","mat":[["1"]]}}})J");
    CHECK(r.code == 0);
    CHECK(r.out["dominates"] == false);
    CHECK(r.out["pushout_agrees"] == true);
    CHECK_FALSE(r.out.contains("factor"));
    Run back = run_on("dominates", R"J({"modules":{"Z":{"gens":1}},
      "morphisms":{"f":{"source":"Z","target":"Z","mat":[["1"]]},"g":{"source":"Z","target":"Z","mat":[["2"]]}}})J");
    CHECK(back.out["dominates"] == true);
    CHECK(back.out["factor"]["data"][0][0] == "2");
  }

  TEST_CASE("input errors exit 2 with a diagnostic") {
    Run m = run_on("snf", R"J({"ring":"Integers","mats":{"A":[[1,2)J");
    CHECK(m.code == 2);
    CHECK(m.out["error"] == "InvalidInput");
    CHECK(m.out["location"].get<std::string>().rfind("byte ", 0) == 0);
    CHECK(m.out["clause"].get<std::string>().find("malformed JSON") != std::string::npos);

    Run ill = run_on("dominates", R"J({"modules":{"A":[["2"]],"B":[["3"]]},
      "morphisms":{"f":{"source":"A","target":"B","mat":[["1"]]},"g":{"source":"A","target":"A","mat":[["1"]]}}})J");
    CHECK(ill.code == 2);
    CHECK(ill.out["error"] == "NotWellDefined");
    CHECK(ill.out["location"] == "/morphisms/f");

    Run ring = run_on("invariants", R"J({"ring":"IntegersMod(1)","modules":{"M":[]}})J");
    CHECK(ring.code == 2);
    CHECK(ring.out["location"] == "/ring");

    Run sub = run({"frobnicate"});
    CHECK(sub.code == 2);
    Run flag = run({"snf", "--output", "xml"});
    CHECK(flag.code == 2);
  }

  TEST_CASE("module commands") {
    Run inv = run_on("invariants", R"J({"modules":{"M":{"cyclic":["4","2","0"]}}})J");
    CHECK(inv.code == 0);
    CHECK(strings(inv.out["invariants"]["torsion"]) == std::vector<std::string>{"2", "4"});
    CHECK(inv.out["invariants"]["free_rank"] == 1);
    CHECK(inv.out["minimal_presentation"]["gens"] == 3);

    Run hom = run_on("hom", R"J({"modules":{"M":{"cyclic":["4"]},"N":{"cyclic":["6"]}}})J");
    CHECK(hom.code == 0);
    CHECK(strings(hom.out["hom"]["invariants"]["torsion"]) == std::vector<std::string>{"2"});

    Run ten = run_on("tensor", R"J({"ring":"IntegersMod(12)","modules":{"M":{"cyclic":["4"]},"N":{"cyclic":["6"]}}})J");
    CHECK(ten.code == 0);
    CHECK(strings(ten.out["tensor"]["invariants"]["torsion"]) == std::vector<std::string>{"2"});

    Run bc = run_on("basechange", R"J({"map":{"target":"Rationals"},"modules":{"M":{"cyclic":["6","0"]}}})J");
    CHECK(bc.code == 0);
    CHECK(bc.out["flat"] == true);
    CHECK(bc.out["faithfully_flat"] == false);
    CHECK(bc.out["module"]["invariants"]["free_rank"] == 1);
    CHECK(bc.out["module"]["invariants"]["torsion"].empty());

    Run proj = run_on("projtest", R"J({"ring":"IntegersMod(6)","modules":{"M":{"cyclic":["2"]}}})J");
    CHECK(proj.code == 0);
    CHECK(proj.out["projective"] == true);
    Run flat = run_on("flattest", R"J({"ring":"IntegersMod(4)","modules":{"M":{"cyclic":["2"]}}})J");
    CHECK(flat.out["flat"] == false);
    Run pc = run_on("projchar", R"J({"modules":{"M":{"cyclic":["3"]}}})J");
    CHECK(pc.out["flat"] == false);
    CHECK(pc.out["projective"] == false);
    CHECK(pc.out["mittag_leffler"] == true);
    CHECK(pc.out["sum_of_cyclics"] == true);
  }

  TEST_CASE("pushout, purity and lifting commands") {
    Run po = run_on("pushout", R"J({"modules":{"Z":{"gens":1}},
      "morphisms":{"f":{"source":"Z","target":"Z","mat":[["2"]]},"g":{"source":"Z","target":"Z","mat":[["3"]]},
                   "u":{"source":"Z","target":"Z","mat":[["3"]]},"v":{"source":"Z","target":"Z","mat":[["2"]]}}})J");
    CHECK(po.code == 0);
    CHECK(po.out["object"]["invariants"]["free_rank"] == 1);
    CHECK(po.out["object"]["invariants"]["torsion"].empty());
    CHECK(po.out.contains("induced"));

    Run ui = run_on("univinj", R"J({"modules":{"Z":{"gens":1}},"morphisms":{"f":{"source":"Z","target":"Z","mat":[["2"]]}}})J");
    CHECK(ui.code == 0);
    CHECK(ui.out["pure"] == false);
    CHECK(ui.out["counterexample"]["probe_module"]["invariants"]["torsion"][0] == "2");
    Run us = run_on("univinj", R"J({"modules":{"Z":{"gens":1},"Z2":{"gens":2}},
      "morphisms":{"f":{"source":"Z","target":"Z2","mat":[["1"],["0"]]}}})J");
    CHECK(us.out["pure"] == true);
    CHECK(us.out["retraction"]["data"][0][0] == "1");

    Run lift = run_on("lift", R"J({"modules":{"Z":{"gens":1}},
      "morphisms":{"f":{"source":"Z","target":"Z","mat":[["1"]]},"pi":{"source":"Z","target":"Z","mat":[["1"]]},
                   "g":{"source":"Z","target":"Z","mat":[["5"]]},"h":{"source":"Z","target":"Z","mat":[["5"]]},
                   "k":{"source":"Z","target":"Z","mat":[["1"]]}}})J");
    CHECK(lift.code == 0);
    CHECK(lift.out["lift"]["data"][0][0] == "5");
    Run bad = run_on("lift", R"J({"modules":{"Z":{"gens":1}},
      "morphisms":{"f":{"source":"Z","target":"Z","mat":[["2"]]},"pi":{"source":"Z","target":"Z","mat":[["1"]]},
                   "g":{"source":"Z","target":"Z","mat":[["5"]]},"h":{"source":"Z","target":"Z","mat":[["5"]]},
                   "k":{"source":"Z","target":"Z","mat":[["1"]]}}})J");
    CHECK(bad.code == 2);
    CHECK(bad.out["error"] == "NotARetraction");
  }

  TEST_CASE("tower commands") {
    const std::string z4 = R"J({"modules":{"M":{"cyclic":["4"]}},"morphisms":{"s":{"source":"M","target":"M","mat":[["2"]]}},
      "towers":{"T":{"step":"s","direction":"DIR"}}})J";
    auto with = [&](const std::string& dir) {
      std::string t = z4;
      t.replace(t.find("DIR"), 3, dir);
      return t;
    };
    Run ml = run_on("ml-tower", with("forward"));
    CHECK(ml.code == 0);
    CHECK(ml.out["status"] == "ML");
    CHECK(ml.out["level"] == 2);
    Run st = run_on("inv-stab", with("backward"));
    CHECK(st.out["status"] == "ML");
    CHECK(st.out["level"] == 2);
    Run z2 = run_on("ml-tower", R"J({"modules":{"Z":{"gens":1}},"morphisms":{"s":{"source":"Z","target":"Z","mat":[["2"]]}},
      "towers":{"T":{"step":"s"}}})J", {"--horizon", "20"});
    CHECK(z2.out["status"] == "UnknownAtHorizon");
    CHECK(z2.out["horizon"] == 20);

    Run tl = run_on("tower-lift", R"J({"modules":{"A":{"cyclic":["2"]},"B":{"cyclic":["4"]},"C":{"cyclic":["2"]}},
      "morphisms":{"ia":{"source":"A","target":"A","mat":[["1"]]},"sb":{"source":"B","target":"B","mat":[["3"]]},
                   "ic":{"source":"C","target":"C","mat":[["1"]]},
                   "f":{"source":"A","target":"B","mat":[["2"]]},"g":{"source":"B","target":"C","mat":[["1"]]}},
      "towers":{"TA":{"step":"ia","direction":"backward"},"TB":{"step":"sb","direction":"backward"},
                "TC":{"step":"ic","direction":"backward"}},
      "mats":{"family":{"mat":[["1","1","1","1"]],"rows_module":"C"}}})J");
    CHECK(tl.code == 0);
    CHECK(tl.out["lift"].size() == 4);
  }

  TEST_CASE("enlarge, devissage and descent commands") {
    Run en = run_on("enlarge-free", R"J({"modules":{"M":{"gens":1}},"mats":{"psi":[["2","4"]],"N":{"rows":2,"cols":0,"data":[]}}})J");
    CHECK(en.code == 0);
    CHECK(en.out["quotient_free"] == true);
    CHECK(en.out["quotient"]["free_rank"] == 1);

    Run dv = run_on("devissage", R"J({"ring":"IntegersMod(6)","modules":{"M":{"gens":1}},
      "mats":{"p3":[["3"]],"p2":[["2"]]},"morphisms":{"e":{"source":"M","target":"M","mat":[["3"]]}},
      "params":{"parts":["p3","p2"]}})J");
    CHECK(dv.code == 0);
    CHECK(dv.out["internal"]["valid"] == true);
    CHECK(dv.out["filtration"]["check"]["valid"] == true);
    CHECK(dv.out["round_trip"].size() == 2);
    CHECK(dv.out["summand"]["parts"].size() == 1);
    Run cy = run_on("devissage", R"J({"ring":"IntegersMod(6)","modules":{"M":{"cyclic":["2","3","0"]}}})J");
    CHECK(cy.out["parts"].size() == 3);
    Run ni = run_on("devissage", R"J({"ring":"IntegersMod(6)","modules":{"M":{"gens":1}},
      "mats":{"a":[["1"]],"b":[["2"]]},"params":{"parts":["a","b"]}})J");
    CHECK(ni.code == 0);
    CHECK(ni.out["internal"]["valid"] == false);
    CHECK(ni.out["internal"]["clause"] == "independent");

    Run dq = run_on("descend", R"J({"map":{"target":"Rationals"},"modules":{"M":{"cyclic":["2"]}}})J");
    CHECK(dq.code == 0);
    CHECK(dq.out["projective_base"] == false);
    CHECK(dq.out["projective_extended"] == true);
    CHECK(dq.out.contains("counterexample"));
    Run dg = run_on("descend", R"J({"map":{"target":"GaussianIntegers"},"modules":{"M":{"cyclic":["6"]}},
      "params":{"mode":"generators","ext_gens":[[{"scalar":{"re":"0","im":"1"},"element":[["1"]]}]]}})J");
    CHECK(dg.code == 0);
    CHECK(dg.out["components"].size() >= 1);
    Run dm = run_on("descend", R"J({"map":{"target":"GaussianIntegers"},"modules":{"M":{"cyclic":["4"]}},
      "morphisms":{"s":{"source":"M","target":"M","mat":[["2"]]}},"towers":{"T":{"step":"s"}},"params":{"mode":"ml"}})J");
    CHECK(dm.code == 0);
    CHECK(dm.out["implication_holds"] == true);
    Run dz = run_on("descend", R"J({"map":{"target":"Rationals"},"modules":{"M":{"cyclic":["6"]}},
      "params":{"mode":"generators","ext_gens":[]}})J");
    CHECK(dz.code == 2);
    CHECK(dz.out["error"] == "UnsupportedRingMap");
  }

  TEST_CASE("harness command") {
    Run empty = run({"harness", "--trials", "0"});
    CHECK(empty.code == 0);
    CHECK(empty.out["suites"].empty());
    CHECK(empty.out["total_failures"] == 0);
    CHECK_FALSE(empty.out.contains("parallelism"));
    CHECK(empty.err.find("wall_clock_seconds") != std::string::npos);

    Run a = run({"harness", "--trials", "3", "--seed", "7", "--rings", "Integers,IntegersMod(6)"});
    CHECK(a.code == 0);
    CHECK(a.out["seed"] == "7");
    CHECK(a.out["rings"] == json::array({"Integers", "IntegersMod(6)"}));
    setenv("FPMOD_SEED", "7", 1);
    Run b = run({"harness", "--trials", "3", "--rings", "Integers,IntegersMod(6)", "--parallelism", "3"});
    unsetenv("FPMOD_SEED");
    CHECK(a.out == b.out);

    Run bad = run({"harness", "--max-gens", "5"});
    CHECK(bad.code == 2);
    Run unknown = run({"harness", "--suites", "nope"});
    CHECK(unknown.code == 2);
  }

  TEST_CASE("failures replay standalone") {
    Run f = run({"harness", "--trials", "20", "--suites", "projchar", "--fault", "projective-decider"});
    CHECK(f.code == 1);
    REQUIRE(f.out["total_failures"].get<int>() > 0);
    const json& fail0 = f.out["suites"][0]["failures"][0];
    const json& ce = fail0["counterexample"];
    CHECK(ce["modules"]["M"]["gens"] == 2);
    CHECK(ce["modules"]["M"]["rels"]["cols"] == 0);
    Run replay = run({"harness", "--input", write_temp("replay", ce.dump())});
    CHECK(replay.code == 1);
    CHECK(replay.out["verdict"] == "fail");
    json healthy = ce;
    healthy["params"].erase("fault");
    Run ok = run({"harness", "--input", write_temp("healthy", healthy.dump())});
    CHECK(ok.code == 0);
    CHECK(ok.out["verdict"] == "pass");
  }
}

TEST_SUITE("harness") {
  TEST_CASE("seeds are derived per suite and index") {
    CHECK(gen::derive_seed(42, "snf", 0) != gen::derive_seed(42, "snf", 1));
    CHECK(gen::derive_seed(42, "snf", 0) != gen::derive_seed(42, "purity", 0));
    CHECK(gen::derive_seed(42, "snf", 0) != gen::derive_seed(43, "snf", 0));
    CHECK(gen::derive_seed(42, "snf", 5) == gen::derive_seed(42, "snf", 5));
  }

  TEST_CASE("reports do not depend on parallelism") {
    HarnessConfig cfg;
    cfg.trials = 12;
    cfg.parallelism = 1;
    const std::string one = run_harness(cfg).to_json(cfg).dump();
    cfg.parallelism = 5;
    CHECK(run_harness(cfg).to_json(cfg).dump() == one);
    cfg.seed = 43;
    CHECK(run_harness(cfg).to_json(cfg).dump() != one);
  }

  TEST_CASE("corrupted decider is caught and shrunk") {
    HarnessConfig cfg;
    cfg.trials = 30;
    cfg.suites = {"projchar"};
    cfg.fault = "projective-decider";
    cfg.max_gens = 4;
    HarnessReport r = run_harness(cfg);
    REQUIRE(r.suites.size() == 1);
    CHECK(r.total_failures == r.suites[0].failed);
    CHECK(r.suites[0].failed > 0);
    for (const auto& f : r.suites[0].failures) {
      InputDoc d = input_from_json(f["counterexample"]);
      CHECK(d.module("M").gens() == 2);
      CHECK(d.module("M").rels().cols() == 0);
      CHECK(replay(d).verdict == Verdict::Fail);
    }
  }

  TEST_CASE("shrinking keeps only failing candidates") {
    Suite s{"t", [](const RingDesc&) { return true; }, nullptr, [](const InputDoc& d, Counters&) {
              const Mat& m = d.mat("A");
              bool big = false;
              for (const auto& x : m.entries()) big = big || x.integer() >= 3;
              require(!big, "an entry is at least 3");
            }};
    InputDoc d;
    d.add_mat("A", Mat::from_ints(Z, {{9, 1}, {0, 8}}));
    Shrunk sh = shrink(s, d, "start", 100);
    CHECK(sh.steps > 0);
    const Mat& m = sh.doc.mat("A");
    long large = 0;
    for (const auto& x : m.entries()) large += x.integer() >= 3;
    CHECK(large == 1);
    for (const auto& x : m.entries()) CHECK(x.integer() <= 4);
  }

  TEST_CASE("instance outcomes are classified") {
    Suite internal{"i", nullptr, nullptr, [](const InputDoc&, Counters&) { fail(ErrorCode::DeciderDisagreement, "x"); }};
    Suite input{"n", nullptr, nullptr, [](const InputDoc&, Counters&) { fail(ErrorCode::NotWellDefined, "x"); }};
    Suite ok{"o", nullptr, nullptr, [](const InputDoc&, Counters& c) { c["k"] = 1; }};
    CHECK(evaluate(internal, InputDoc{}).verdict == Verdict::Fail);
    CHECK(evaluate(input, InputDoc{}).verdict == Verdict::Invalid);
    Outcome o = evaluate(ok, InputDoc{});
    CHECK(o.verdict == Verdict::Pass);
    CHECK(o.counters.at("k") == 1);
  }

  TEST_CASE("every suite is registered once") {
    std::set<std::string> names;
    for (const auto& s : registered_suites()) CHECK(names.insert(s.name).second);
    CHECK(names.size() == 19);
    CHECK(error_code_is(ErrorCode::InvalidInput, [] { find_suite("missing"); }));
  }
}
