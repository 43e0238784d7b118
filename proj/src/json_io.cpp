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

#include "fpmod/json_io.hpp"

#include <regex>
#include <set>

namespace fpmod {

namespace {

[[noreturn]] void bad(const std::string& what, const std::string& where) {
  fail(ErrorCode::InvalidInput, what, where);
}

mpz_class integer_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<unsigned long>()));
  if (j.is_string()) {
    mpz_class v;
    const std::string s = j.get<std::string>();
    if (s.empty() || v.set_str(s, 10) != 0) bad("not a decimal integer: \"" + s + "\"", where);
    return v;
  }
  bad("expected an integer (decimal string or JSON integer)", where);
}

std::size_t size_from_json(const json& j, const std::string& where) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) bad("expected a non-negative integer", where);
  const long v = j.get<long>();
  if (v < 0) bad("expected a non-negative integer", where);
  return static_cast<std::size_t>(v);
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) bad("expected an object", where);
  auto it = obj.find(key);
  if (it == obj.end()) bad("missing field \"" + key + "\"", where);
  return *it;
}

std::string string_field(const json& obj, const std::string& key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) bad("field \"" + key + "\" must be a string", where + "/" + key);
  return v.get<std::string>();
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) bad("unknown field \"" + k + "\"", where + "/" + k);
}

std::string str(const mpz_class& v) { return v.get_str(); }

}  // namespace

json ring_to_json(const RingDesc& r) {
  json j;
  j["kind"] = std::string(kind_name(r.kind()));
  if (r.kind() == RingKind::IntegersMod) j["n"] = str(r.modulus());
  if (r.kind() == RingKind::PrimeField) j["p"] = str(r.modulus());
  return j;
}

RingDesc ring_from_name(const std::string& name, const std::string& where) {
  static const std::regex param_re(R"((IntegersMod|PrimeField)\((\d+)\))");
  std::smatch m;
  if (name == "Integers") return RingDesc::integers();
  if (name == "Rationals") return RingDesc::rationals();
  if (name == "GaussianIntegers") return RingDesc::gaussian();
  if (std::regex_match(name, m, param_re)) {
    mpz_class n(m[2].str());
    try {
      return m[1] == "IntegersMod" ? RingDesc::integers_mod(n) : RingDesc::prime_field(n);
    } catch (const Error& e) {
      fail(e.code(), e.what(), where);
    }
  }
  fail(ErrorCode::InvalidRing, "unknown ring \"" + name + "\"", where);
}

RingDesc ring_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return ring_from_name(j.get<std::string>(), where);
  const std::string kind = string_field(j, "kind", where);
  try {
    if (kind == "Integers") return RingDesc::integers();
    if (kind == "Rationals") return RingDesc::rationals();
    if (kind == "GaussianIntegers") return RingDesc::gaussian();
    if (kind == "IntegersMod") return RingDesc::integers_mod(integer_from_json(field(j, "n", where), where + "/n"));
    if (kind == "PrimeField") return RingDesc::prime_field(integer_from_json(field(j, "p", where), where + "/p"));
  } catch (const Error& e) {
    if (e.location().empty()) fail(e.code(), e.what(), where);
    throw;
  }
  fail(ErrorCode::InvalidRing, "unknown ring kind \"" + kind + "\"", where + "/kind");
}

json elem_to_json(const RingDesc& r, const RingElem& a) {
  switch (r.kind()) {
    case RingKind::Rationals: {
      const mpq_class& q = a.rational();
      return json{{"num", str(q.get_num())}, {"den", str(q.get_den())}};
    }
    case RingKind::GaussianIntegers: {
      const Gaussian& g = a.gaussian();
      return json{{"re", str(g.re)}, {"im", str(g.im)}};
    }
    default: return str(a.integer());
  }
}

RingElem elem_from_json(const RingDesc& r, const json& j, const std::string& where) {
  if (j.is_object()) {
    if (j.contains("num")) {
      check_keys(j, {"num", "den"}, where);
      mpz_class den = j.contains("den") ? integer_from_json(j["den"], where + "/den") : mpz_class(1);
      try {
        return r.rational_elem(integer_from_json(j["num"], where + "/num"), den);
      } catch (const Error& e) {
        fail(e.code(), e.what(), where);
      }
    }
    if (j.contains("re") || j.contains("im")) {
      check_keys(j, {"re", "im"}, where);
      if (r.kind() != RingKind::GaussianIntegers) bad("Gaussian entry in " + r.name(), where);
      mpz_class re = j.contains("re") ? integer_from_json(j["re"], where + "/re") : mpz_class(0);
      mpz_class im = j.contains("im") ? integer_from_json(j["im"], where + "/im") : mpz_class(0);
      return r.gaussian_elem(re, im);
    }
    bad("unrecognized ring element", where);
  }
  return r.from_int(integer_from_json(j, where));
}

json mat_to_json(const Mat& m) {
  json data = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(elem_to_json(m.ring(), m(i, j)));
    data.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Mat mat_from_json(const RingDesc& r, const json& j, const std::string& where) {
  const json* data = &j;
  std::optional<std::size_t> rows, cols;
  std::string dwhere = where;
  if (j.is_object()) {
    check_keys(j, {"rows", "cols", "data"}, where);
    rows = size_from_json(field(j, "rows", where), where + "/rows");
    cols = size_from_json(field(j, "cols", where), where + "/cols");
    data = j.contains("data") ? &j["data"] : nullptr;
    dwhere = where + "/data";
  }
  std::vector<RingElem> entries;
  std::size_t nr = 0, nc = 0;
  if (data) {
    if (!data->is_array()) bad("matrix data must be a list of rows", dwhere);
    nr = data->size();
    for (std::size_t i = 0; i < nr; ++i) {
      const json& row = (*data)[i];
      const std::string rw = dwhere + "/" + std::to_string(i);
      if (!row.is_array()) bad("matrix row must be a list", rw);
      if (i == 0) nc = row.size();
      if (row.size() != nc) bad("ragged matrix: row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(nc), rw);
      for (std::size_t c = 0; c < nc; ++c) entries.push_back(elem_from_json(r, row[c], rw + "/" + std::to_string(c)));
    }
  }
  if (rows) {
    // empty data with an explicit shape is the zero matrix
    if (nr == 0) return Mat(r, *rows, *cols);
    if (nr != *rows || nc != *cols)
      bad("matrix data is " + std::to_string(nr) + "x" + std::to_string(nc) + ", expected " + std::to_string(*rows) + "x" +
              std::to_string(*cols),
          dwhere);
  }
  return Mat(r, nr, nc, std::move(entries));
}

json invariants_to_json(const RingDesc& r, const ModuleInvariants& inv) {
  json t = json::array();
  for (const auto& x : inv.torsion) t.push_back(elem_to_json(r, x));
  return json{{"free_rank", inv.free_rank}, {"torsion", std::move(t)}};
}

json module_to_json(const FpModule& m) {
  return json{{"gens", m.gens()}, {"rels", mat_to_json(m.rels())}, {"invariants", invariants_to_json(m.ring(), m.invariants())}};
}

json morphism_to_json(const Morphism& f) { return mat_to_json(f.mat()); }

std::vector<TensorSum> tensor_sums_from_json(const RingMap& phi, std::size_t gens, const json& j, const std::string& where) {
  if (!j.is_array()) bad("expected a list of tensor sums", where);
  std::vector<TensorSum> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string wi = where + "/" + std::to_string(i);
    if (!j[i].is_array()) bad("a tensor sum is a list of pure tensors", wi);
    TensorSum s;
    for (std::size_t p = 0; p < j[i].size(); ++p) {
      const std::string w = wi + "/" + std::to_string(p);
      const json& t = j[i][p];
      check_keys(t, {"scalar", "element"}, w);
      Mat x = mat_from_json(phi.source(), field(t, "element", w), w + "/element");
      if (x.rows() != gens || x.cols() != 1)
        fail(ErrorCode::DimensionMismatch, "element must be a column with " + std::to_string(gens) + " entries", w + "/element");
      s.push_back({elem_from_json(phi.target(), field(t, "scalar", w), w + "/scalar"), std::move(x)});
    }
    out.push_back(std::move(s));
  }
  return out;
}

json tensor_sums_to_json(const RingMap& phi, const std::vector<TensorSum>& sums) {
  json out = json::array();
  for (const auto& s : sums) {
    json js = json::array();
    for (const auto& t : s) js.push_back(json{{"scalar", elem_to_json(phi.target(), t.scalar)}, {"element", mat_to_json(t.element)}});
    out.push_back(std::move(js));
  }
  return out;
}

// ------------------------------------------------------------------ InputDoc

bool InputDoc::has_module(const std::string& name) const {
  for (const auto& m : modules)
    if (m.name == name) return true;
  return false;
}

FpModule InputDoc::module(const std::string& name) const {
  for (const auto& m : modules)
    if (m.name == name) return FpModule(ring, m.rels);
  bad("unknown module \"" + name + "\"", "/modules");
}

const NamedMorphism& InputDoc::morphism_entry(const std::string& name) const {
  for (const auto& f : morphisms)
    if (f.name == name) return f;
  bad("unknown morphism \"" + name + "\"", "/morphisms");
}

Morphism InputDoc::morphism(const std::string& name) const {
  const NamedMorphism& f = morphism_entry(name);
  try {
    return Morphism::make(module(f.source), module(f.target), f.mat);
  } catch (const Error& e) {
    if (e.location().empty()) fail(e.code(), e.what(), "/morphisms/" + name);
    throw;
  }
}

bool InputDoc::has_mat(const std::string& name) const {
  for (const auto& m : mats)
    if (m.name == name) return true;
  return false;
}

const Mat& InputDoc::mat(const std::string& name) const {
  for (const auto& m : mats)
    if (m.name == name) return m.mat;
  bad("unknown matrix \"" + name + "\"", "/mats");
}

Tower InputDoc::tower(const std::string& name) const {
  for (const auto& t : towers)
    if (t.name == name) {
      try {
        return Tower::make(morphism(t.step), t.direction);
      } catch (const Error& e) {
        if (e.location().empty()) fail(e.code(), e.what(), "/towers/" + name);
        throw;
      }
    }
  bad("unknown tower \"" + name + "\"", "/towers");
}

RingMap InputDoc::ring_map() const {
  if (!map_target) bad("this command needs a ring map", "/map");
  try {
    return RingMap::make(ring, *map_target);
  } catch (const Error& e) {
    fail(e.code(), e.what(), "/map");
  }
}

void InputDoc::add_module(const std::string& name, Mat rels) { modules.push_back({name, std::move(rels)}); }

void InputDoc::add_morphism(const std::string& name, const std::string& source, const std::string& target, Mat mat) {
  morphisms.push_back({name, source, target, std::move(mat)});
}

void InputDoc::add_mat(const std::string& name, Mat mat, std::string rows_module, std::string cols_module) {
  mats.push_back({name, std::move(mat), std::move(rows_module), std::move(cols_module)});
}

void InputDoc::add_tower(const std::string& name, const std::string& step, TowerDirection direction) {
  towers.push_back({name, step, direction});
}

const json& InputDoc::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) bad("missing parameter \"" + key + "\"", "/params");
  return *it;
}

std::string InputDoc::param_string(const std::string& key) const {
  const json& v = param(key);
  if (!v.is_string()) bad("parameter \"" + key + "\" must be a string", "/params/" + key);
  return v.get<std::string>();
}

std::optional<std::string> InputDoc::param_string_opt(const std::string& key) const {
  if (!params.contains(key)) return std::nullopt;
  return param_string(key);
}

std::size_t InputDoc::param_size(const std::string& key, std::size_t fallback) const {
  if (!params.contains(key)) return fallback;
  return size_from_json(params[key], "/params/" + key);
}

namespace {

NamedModule module_from_json(const RingDesc& r, const std::string& name, const json& j, const std::string& where) {
  if (j.is_object() && (j.contains("cyclic") || j.contains("gens") || j.contains("rels"))) {
    if (j.contains("cyclic")) {
      check_keys(j, {"cyclic"}, where);
      const json& c = j["cyclic"];
      if (!c.is_array()) bad("\"cyclic\" must be a list of ring elements", where + "/cyclic");
      std::vector<RingElem> ds;
      for (std::size_t i = 0; i < c.size(); ++i) ds.push_back(elem_from_json(r, c[i], where + "/cyclic/" + std::to_string(i)));
      return {name, FpModule::cyclic_sum(r, ds).rels()};
    }
    check_keys(j, {"gens", "rels"}, where);
    std::optional<std::size_t> gens;
    if (j.contains("gens")) gens = size_from_json(j["gens"], where + "/gens");
    Mat rels = j.contains("rels") ? mat_from_json(r, j["rels"], where + "/rels") : Mat(r, gens.value_or(0), 0);
    if (gens && rels.rows() != *gens) {
      if (rels.rows() == 0 && rels.cols() == 0) return {name, Mat(r, *gens, 0)};
      fail(ErrorCode::DimensionMismatch, "relation matrix has " + std::to_string(rels.rows()) + " rows but the module has " +
                                             std::to_string(*gens) + " generators", where + "/rels");
    }
    return {name, rels};
  }
  return {name, mat_from_json(r, j, where)};
}

void require_unique(std::set<std::string>& seen, const std::string& name, const std::string& where) {
  if (name.empty()) bad("names must be non-empty", where);
  if (!seen.insert(name).second) bad("duplicate name \"" + name + "\"", where);
}

}  // namespace

InputDoc input_from_json(const json& j) {
  if (!j.is_object()) bad("input must be a JSON object", "");
  check_keys(j, {"ring", "map", "modules", "morphisms", "mats", "towers", "params"}, "");
  InputDoc d;
  if (j.contains("ring")) d.ring = ring_from_json(j["ring"], "/ring");
  if (j.contains("map")) {
    const json& m = j["map"];
    check_keys(m, {"target"}, "/map");
    d.map_target = ring_from_json(field(m, "target", "/map"), "/map/target");
    d.ring_map();
  }
  std::set<std::string> names;
  if (j.contains("modules")) {
    if (!j["modules"].is_object()) bad("\"modules\" must be an object keyed by name", "/modules");
    for (const auto& [k, v] : j["modules"].items()) {
      require_unique(names, k, "/modules/" + k);
      d.modules.push_back(module_from_json(d.ring, k, v, "/modules/" + k));
    }
  }
  if (j.contains("morphisms")) {
    if (!j["morphisms"].is_object()) bad("\"morphisms\" must be an object keyed by name", "/morphisms");
    for (const auto& [k, v] : j["morphisms"].items()) {
      const std::string w = "/morphisms/" + k;
      require_unique(names, k, w);
      check_keys(v, {"source", "target", "mat"}, w);
      NamedMorphism f{k, string_field(v, "source", w), string_field(v, "target", w), {}};
      if (!d.has_module(f.source)) bad("unknown module \"" + f.source + "\"", w + "/source");
      if (!d.has_module(f.target)) bad("unknown module \"" + f.target + "\"", w + "/target");
      const std::size_t rows = d.module(f.target).gens(), cols = d.module(f.source).gens();
      f.mat = v.contains("mat") ? mat_from_json(d.ring, v["mat"], w + "/mat") : Mat(d.ring, rows, cols);
      if (f.mat.rows() == 0 && f.mat.cols() == 0) f.mat = Mat(d.ring, rows, cols);
      if (f.mat.rows() != rows || f.mat.cols() != cols)
        fail(ErrorCode::DimensionMismatch, "matrix is " + std::to_string(f.mat.rows()) + "x" + std::to_string(f.mat.cols()) +
                                               ", expected " + std::to_string(rows) + "x" + std::to_string(cols),
             w + "/mat");
      d.morphisms.push_back(std::move(f));
    }
  }
  if (j.contains("mats")) {
    if (!j["mats"].is_object()) bad("\"mats\" must be an object keyed by name", "/mats");
    for (const auto& [k, v] : j["mats"].items()) {
      const std::string w = "/mats/" + k;
      require_unique(names, k, w);
      NamedMat m{k, {}, {}, {}};
      if (v.is_object() && v.contains("mat")) {
        check_keys(v, {"mat", "rows_module", "cols_module"}, w);
        m.mat = mat_from_json(d.ring, v["mat"], w + "/mat");
        if (v.contains("rows_module")) m.rows_module = string_field(v, "rows_module", w);
        if (v.contains("cols_module")) m.cols_module = string_field(v, "cols_module", w);
      } else {
        m.mat = mat_from_json(d.ring, v, w);
      }
      if (!m.rows_module.empty()) {
        if (!d.has_module(m.rows_module)) bad("unknown module \"" + m.rows_module + "\"", w + "/rows_module");
        if (d.module(m.rows_module).gens() != m.mat.rows())
          fail(ErrorCode::DimensionMismatch, "row count differs from the generators of " + m.rows_module, w);
      }
      if (!m.cols_module.empty()) {
        if (!d.has_module(m.cols_module)) bad("unknown module \"" + m.cols_module + "\"", w + "/cols_module");
        if (d.module(m.cols_module).gens() != m.mat.cols())
          fail(ErrorCode::DimensionMismatch, "column count differs from the generators of " + m.cols_module, w);
      }
      d.mats.push_back(std::move(m));
    }
  }
  if (j.contains("towers")) {
    if (!j["towers"].is_object()) bad("\"towers\" must be an object keyed by name", "/towers");
    for (const auto& [k, v] : j["towers"].items()) {
      const std::string w = "/towers/" + k;
      require_unique(names, k, w);
      check_keys(v, {"step", "direction"}, w);
      NamedTower t{k, string_field(v, "step", w), TowerDirection::Forward};
      const std::string dir = v.contains("direction") ? string_field(v, "direction", w) : "forward";
      if (dir == "backward") t.direction = TowerDirection::Backward;
      else if (dir != "forward") bad("direction must be \"forward\" or \"backward\"", w + "/direction");
      bool known = false;
      for (const auto& f : d.morphisms) known = known || f.name == t.step;
      if (!known) bad("unknown morphism \"" + t.step + "\"", w + "/step");
      const NamedMorphism& s = d.morphism_entry(t.step);
      if (s.source != s.target) bad("tower step must be an endomorphism", w + "/step");
      d.towers.push_back(std::move(t));
    }
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) bad("\"params\" must be an object", "/params");
    d.params = j["params"];
  }
  return d;
}

json input_to_json(const InputDoc& d) {
  json j;
  j["ring"] = ring_to_json(d.ring);
  if (d.map_target) j["map"] = json{{"target", ring_to_json(*d.map_target)}};
  json mods = json::object();
  for (const auto& m : d.modules) mods[m.name] = json{{"gens", m.rels.rows()}, {"rels", mat_to_json(m.rels)}};
  j["modules"] = std::move(mods);
  json mors = json::object();
  for (const auto& f : d.morphisms) mors[f.name] = json{{"source", f.source}, {"target", f.target}, {"mat", mat_to_json(f.mat)}};
  j["morphisms"] = std::move(mors);
  json mats = json::object();
  for (const auto& m : d.mats) {
    json e{{"mat", mat_to_json(m.mat)}};
    if (!m.rows_module.empty()) e["rows_module"] = m.rows_module;
    if (!m.cols_module.empty()) e["cols_module"] = m.cols_module;
    mats[m.name] = std::move(e);
  }
  j["mats"] = std::move(mats);
  json towers = json::object();
  for (const auto& t : d.towers)
    towers[t.name] = json{{"step", t.step}, {"direction", t.direction == TowerDirection::Forward ? "forward" : "backward"}};
  j["towers"] = std::move(towers);
  j["params"] = d.params;
  return j;
}

}  // namespace fpmod
