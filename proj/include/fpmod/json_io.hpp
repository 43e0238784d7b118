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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpmod/descent.hpp"
#include "json.hpp"

namespace fpmod {

using json = nlohmann::ordered_json;

// Integers travel as decimal strings, rationals as {"num","den"}, Gaussian
// integers as {"re","im"}. Decoders also accept plain JSON integers.

json ring_to_json(const RingDesc& r);
RingDesc ring_from_json(const json& j, const std::string& where);
/// "Integers", "IntegersMod(6)", "PrimeField(5)", "Rationals", "GaussianIntegers".
RingDesc ring_from_name(const std::string& name, const std::string& where);

json elem_to_json(const RingDesc& r, const RingElem& a);
RingElem elem_from_json(const RingDesc& r, const json& j, const std::string& where);

/// {"rows","cols","data"} with data a list of rows.
json mat_to_json(const Mat& m);
/// Accepts the object form or a bare list of rows.
Mat mat_from_json(const RingDesc& r, const json& j, const std::string& where);

json invariants_to_json(const RingDesc& r, const ModuleInvariants& inv);
json module_to_json(const FpModule& m);
json morphism_to_json(const Morphism& f);

/// Relations of a named module; the number of generators is rels.rows().
struct NamedModule {
  std::string name;
  Mat rels;
};

struct NamedMorphism {
  std::string name;
  std::string source;
  std::string target;
  Mat mat;
};

/// A matrix whose rows and/or columns are indexed by a module's generators.
struct NamedMat {
  std::string name;
  Mat mat;
  std::string rows_module;
  std::string cols_module;
};

struct NamedTower {
  std::string name;
  std::string step;
  TowerDirection direction = TowerDirection::Forward;
};

/// Parsed command input. Also the serialized form of harness instances.
struct InputDoc {
  RingDesc ring = RingDesc::integers();
  std::optional<RingDesc> map_target;
  std::vector<NamedModule> modules;
  std::vector<NamedMorphism> morphisms;
  std::vector<NamedMat> mats;
  std::vector<NamedTower> towers;
  json params = json::object();

  bool has_module(const std::string& name) const;
  FpModule module(const std::string& name) const;
  /// Builds and checks well-definedness (throws NotWellDefined).
  Morphism morphism(const std::string& name) const;
  const NamedMorphism& morphism_entry(const std::string& name) const;
  const Mat& mat(const std::string& name) const;
  bool has_mat(const std::string& name) const;
  Tower tower(const std::string& name) const;
  RingMap ring_map() const;

  void add_module(const std::string& name, Mat rels);
  void add_morphism(const std::string& name, const std::string& source, const std::string& target, Mat mat);
  void add_mat(const std::string& name, Mat mat, std::string rows_module = {}, std::string cols_module = {});
  void add_tower(const std::string& name, const std::string& step, TowerDirection direction);

  /// Parameter lookup with a typed error on absence.
  const json& param(const std::string& key) const;
  std::string param_string(const std::string& key) const;
  std::optional<std::string> param_string_opt(const std::string& key) const;
  std::size_t param_size(const std::string& key, std::size_t fallback) const;
};

/// [[{"scalar": target elem, "element": column over the source}, ...], ...]
std::vector<TensorSum> tensor_sums_from_json(const RingMap& phi, std::size_t gens, const json& j, const std::string& where);
json tensor_sums_to_json(const RingMap& phi, const std::vector<TensorSum>& sums);

/// Validates names, references and matrix shapes; errors carry a JSON
/// pointer in their location.
InputDoc input_from_json(const json& j);
json input_to_json(const InputDoc& doc);

}  // namespace fpmod
