// Copyright 2026 The uicheck Authors
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

#include "uicheck/model_file.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "uicheck/errors.hpp"
#include "uicheck/expr.hpp"
#include "uicheck/summation.hpp"

namespace uic {

namespace {

using json = nlohmann::json;

constexpr std::uint64_t kValidationHorizon = std::uint64_t{1} << 16;
constexpr std::uint64_t kGrowthSpotCheck = 1024;

[[noreturn]] void fail(ErrorKind kind, const std::string& where, const std::string& msg) {
  throw LocatedError(kind, where, msg);
}

std::string child(const std::string& where, std::string_view key) { return where + "/" + std::string(key); }
std::string child(const std::string& where, std::size_t index) { return where + "/" + std::to_string(index); }

const json& require(const json& obj, std::string_view key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorKind::Schema, where, "missing key '" + std::string(key) + "'");
  return *it;
}

std::string require_string(const json& obj, std::string_view key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) fail(ErrorKind::Schema, child(where, key), "expected a string");
  return v.get<std::string>();
}

double require_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(ErrorKind::Schema, where, "expected a number");
  return v.get<double>();
}

std::uint64_t require_index(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(ErrorKind::Schema, where, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!obj.is_object()) fail(ErrorKind::Schema, where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) fail(ErrorKind::Schema, child(where, key), "unknown key '" + key + "'");
  }
}

ModelExpr parse_expr_at(const json& v, const std::string& where) {
  if (!v.is_string()) fail(ErrorKind::Schema, where, "expected an expression string");
  try {
    return ModelExpr::parse(v.get<std::string>());
  } catch (const LocatedError& e) {
    fail(e.kind(), where + " (" + e.location() + ")", e.what());
  }
}

IndexFn as_fn(ModelExpr e) {
  return [e = std::move(e)](std::uint64_t n) { return e(n); };
}

// Re-throws library errors with the JSON location attached.
template <typename F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const LocatedError&) {
    throw;
  } catch (const Error& e) {
    fail(e.kind(), where, e.what());
  }
}

double tolerance_of(const json& m, const std::string& where) {
  if (!m.contains("tol")) return kDefaultNormalizationTol;
  const double tol = require_number(m["tol"], child(where, "tol"));
  if (!(tol >= 0.0)) fail(ErrorKind::Schema, child(where, "tol"), "tolerance must be nonnegative");
  return tol;
}

// Spot-checks the countable normalization invariant on 0, 1, 2, 4, ... 2^16.
void validate_density(const ModelExpr& weight, const ModelExpr& tail, double tol, const std::string& where) {
  CompensatedSum mass;
  double prev_tail = std::numeric_limits<double>::infinity();
  std::uint64_t next_check = 0;
  for (std::uint64_t i = 0; i <= kValidationHorizon; ++i) {
    const double w = located(child(where, "weight"), [&] { return weight(i); });
    if (w < 0.0) fail(ErrorKind::NegativeWeight, child(where, "weight"), "negative weight at atom " + std::to_string(i));
    mass += w;
    if (i != next_check) continue;
    next_check = next_check == 0 ? 1 : next_check * 2;
    const double t = located(child(where, "tail"), [&] { return tail(i); });
    if (t < 0.0) fail(ErrorKind::TailBound, child(where, "tail"), "negative tail bound at " + std::to_string(i));
    if (t > prev_tail) {
      fail(ErrorKind::TailBound, child(where, "tail"), "tail bound increases at " + std::to_string(i));
    }
    prev_tail = t;
    if (mass.value() > 1.0 + tol) {
      fail(ErrorKind::Normalization, child(where, "weight"),
           "partial mass " + format_double(mass.value()) + " exceeds 1 at atom " + std::to_string(i));
    }
    if (mass.value() + t < 1.0 - tol) {
      fail(ErrorKind::TailBound, child(where, "tail"),
           "tail bound " + format_double(t) + " at " + std::to_string(i) + " does not cover missing mass " +
               format_double(1.0 - mass.value()));
    }
  }
}

struct PluginRegistry {
  std::map<std::string, Counterexample> instances;

  const Counterexample& get(const std::string& name, std::uint64_t n_max, const std::string& where) {
    if (name != kRemarkPluginName) fail(ErrorKind::UnknownPlugin, where, "unknown plugin '" + name + "'");
    auto it = instances.find(name);
    if (it == instances.end()) it = instances.emplace(name, build_counterexample(n_max)).first;
    return it->second;
  }
};

class Loader {
 public:
  ModelFile load(const json& root) {
    check_keys(root, {"space", "measures", "variables", "families", "meta"}, "");
    if (root.contains("meta")) load_meta(root["meta"]);
    load_space(require(root, "space", ""));
    load_array(root, "measures", [&](const json& m, const std::string& w) { load_measure(m, w); });
    load_array(root, "variables", [&](const json& v, const std::string& w) { load_variable(v, w); });
    load_array(root, "families", [&](const json& f, const std::string& w) { load_family(f, w); });
    return std::move(model_);
  }

 private:
  template <typename F>
  void load_array(const json& root, std::string_view key, F&& each) {
    const json& arr = require(root, key, "");
    const std::string where = "/" + std::string(key);
    if (!arr.is_array() || arr.empty()) fail(ErrorKind::Schema, where, "expected a nonempty array");
    for (std::size_t i = 0; i < arr.size(); ++i) each(arr[i], child(where, i));
  }

  void claim(std::set<std::string>& names, const std::string& name, const std::string& where) {
    if (name.empty()) fail(ErrorKind::Schema, child(where, "name"), "name must be nonempty");
    if (!names.insert(name).second) fail(ErrorKind::DuplicateName, child(where, "name"), "duplicate name '" + name + "'");
  }

  void load_meta(const json& meta) {
    check_keys(meta, {"title", "seed"}, "/meta");
    if (meta.contains("title")) {
      if (!meta["title"].is_string()) fail(ErrorKind::Schema, "/meta/title", "expected a string");
      model_.title = meta["title"].get<std::string>();
    }
    if (meta.contains("seed")) model_.seed = require_index(meta["seed"], "/meta/seed");
  }

  void load_space(const json& space) {
    check_keys(space, {"kind", "size"}, "/space");
    const std::string kind = require_string(space, "kind", "/space");
    if (kind == "finite") {
      const std::uint64_t size = require_index(require(space, "size", "/space"), "/space/size");
      if (size == 0) fail(ErrorKind::Schema, "/space/size", "finite space needs at least one atom");
      model_.space = AtomSpace::finite(size);
    } else if (kind == "countable") {
      if (space.contains("size")) fail(ErrorKind::Schema, "/space/size", "countable space has no size");
      model_.space = AtomSpace::countable();
    } else {
      fail(ErrorKind::Schema, "/space/kind", "expected \"finite\" or \"countable\"");
    }
  }

  void load_measure(const json& m, const std::string& where) {
    check_keys(m, {"name", "weights", "atoms", "weight", "tail", "tol", "plugin", "n_max", "indexed"}, where);
    ModelFile::NamedMeasure out;
    out.name = require_string(m, "name", where);
    claim(measure_names_, out.name, where);
    const double tol = tolerance_of(m, where);

    if (m.contains("plugin")) {
      const std::uint64_t n_max = m.contains("n_max") ? require_index(m["n_max"], child(where, "n_max")) : 1000000;
      if (n_max < 3) fail(ErrorKind::Schema, child(where, "n_max"), "n_max must be at least 3");
      const auto& ce = plugins_.get(require_string(m, "plugin", where), n_max, child(where, "plugin"));
      if (!(model_.space == ce.expectation->space())) {
        fail(ErrorKind::SpaceMismatch, child(where, "plugin"), "plugin lives on a countable space");
      }
      out.set = ce.expectation;
    } else if (m.contains("indexed")) {
      out.set = load_indexed(m["indexed"], child(where, "indexed"), tol);
    } else if (m.contains("weights")) {
      const json& w = m["weights"];
      const std::string at = child(where, "weights");
      if (!model_.space.is_finite()) fail(ErrorKind::Schema, at, "weight lists need a finite space");
      if (!w.is_array()) fail(ErrorKind::Schema, at, "expected an array of numbers");
      if (w.size() != model_.space.size()) {
        fail(ErrorKind::SpaceMismatch, at,
             "has " + std::to_string(w.size()) + " weights for " + std::to_string(model_.space.size()) + " atoms");
      }
      std::vector<double> weights;
      for (std::size_t i = 0; i < w.size(); ++i) weights.push_back(require_number(w[i], child(at, i)));
      out.measure = located(at, [&] { return Measure::finite(std::move(weights), tol); });
    } else if (m.contains("atoms")) {
      const json& a = m["atoms"];
      const std::string at = child(where, "atoms");
      if (!a.is_array()) fail(ErrorKind::Schema, at, "expected an array of [atom, weight] pairs");
      std::vector<std::pair<std::uint64_t, double>> atoms;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string ai = child(at, i);
        if (!a[i].is_array() || a[i].size() != 2) fail(ErrorKind::Schema, ai, "expected [atom, weight]");
        atoms.emplace_back(require_index(a[i][0], child(ai, 0)), require_number(a[i][1], child(ai, 1)));
      }
      out.measure = located(at, [&] { return Measure::sparse(model_.space, std::move(atoms), tol); });
    } else if (m.contains("weight")) {
      if (model_.space.is_finite()) fail(ErrorKind::Schema, child(where, "weight"), "use a weight list on a finite space");
      const ModelExpr weight = parse_expr_at(m["weight"], child(where, "weight"));
      if (!m.contains("tail")) {
        fail(ErrorKind::MissingTailBound, where, "countable measure needs a 'tail' bound expression");
      }
      const ModelExpr tail = parse_expr_at(m["tail"], child(where, "tail"));
      validate_density(weight, tail, tol, where);
      out.measure = Measure::countable(as_fn(weight), as_fn(tail), tol);
    } else {
      fail(ErrorKind::Schema, where, "measure needs one of 'weights', 'atoms', 'weight', 'plugin', 'indexed'");
    }
    model_.measures.push_back(std::move(out));
  }

  std::shared_ptr<const SublinearExpectation> load_indexed(const json& ix, const std::string& where, double tol) {
    check_keys(ix, {"first", "k_max", "monotone_tail", "atoms"}, where);
    const std::uint64_t first = ix.contains("first") ? require_index(ix["first"], child(where, "first")) : 0;
    const std::uint64_t k_max = require_index(require(ix, "k_max", where), child(where, "k_max"));
    if (k_max < first) fail(ErrorKind::Schema, child(where, "k_max"), "k_max below the first index");
    bool monotone = false;
    if (ix.contains("monotone_tail")) {
      if (!ix["monotone_tail"].is_boolean()) fail(ErrorKind::Schema, child(where, "monotone_tail"), "expected a boolean");
      monotone = ix["monotone_tail"].get<bool>();
    }
    const json& atoms = require(ix, "atoms", where);
    const std::string at = child(where, "atoms");
    if (!atoms.is_array() || atoms.empty()) fail(ErrorKind::Schema, at, "expected a nonempty array");
    std::vector<std::pair<ModelExpr, ModelExpr>> exprs;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::string ai = child(at, i);
      check_keys(atoms[i], {"atom", "weight"}, ai);
      exprs.emplace_back(parse_expr_at(require(atoms[i], "atom", ai), child(ai, "atom")),
                         parse_expr_at(require(atoms[i], "weight", ai), child(ai, "weight")));
    }
    const AtomSpace space = model_.space;
    auto make = [exprs, space, tol](std::uint64_t k) {
      std::map<std::uint64_t, double> merged;
      for (const auto& [atom, weight] : exprs) {
        const double a = atom(k);
        if (a < 0.0 || std::floor(a) != a) {
          throw Error(ErrorKind::InvalidArgument, "atom expression must give a nonnegative integer");
        }
        merged[static_cast<std::uint64_t>(a)] += weight(k);
      }
      return Measure::sparse(space, {merged.begin(), merged.end()}, tol);
    };
    // Materialize every index once so that invalid members fail at load time.
    for (std::uint64_t k = first; k <= k_max; ++k) located(at, [&] { return make(k); });
    return std::make_shared<const SublinearExpectation>(
        MeasureSet::indexed(space, first, make, MeasureSet::SupStrategy{k_max, monotone}));
  }

  void load_variable(const json& v, const std::string& where) {
    check_keys(v, {"name", "values", "growth", "product_tail", "integer", "plugin"}, where);
    const std::string name = require_string(v, "name", where);
    claim(variable_names_, name, where);
    if (v.contains("plugin")) {
      const auto& ce = plugins_.get(require_string(v, "plugin", where), 1000000, child(where, "plugin"));
      model_.variables.push_back({name, ce.x});
      return;
    }
    const json& values = require(v, "values", where);
    const std::string at = child(where, "values");
    if (model_.space.is_finite()) {
      std::vector<double> xs;
      if (values.is_array()) {
        if (values.size() != model_.space.size()) {
          fail(ErrorKind::SpaceMismatch, at,
               "has " + std::to_string(values.size()) + " values for " + std::to_string(model_.space.size()) + " atoms");
        }
        for (std::size_t i = 0; i < values.size(); ++i) xs.push_back(require_number(values[i], child(at, i)));
      } else {
        const ModelExpr e = parse_expr_at(values, at);
        for (std::uint64_t i = 0; i < model_.space.size(); ++i) xs.push_back(located(at, [&] { return e(i); }));
      }
      model_.variables.push_back({name, located(at, [&] { return RandomVariable::finite(std::move(xs)); })});
      return;
    }
    const ModelExpr value = parse_expr_at(values, at);
    const ModelExpr growth = parse_expr_at(require(v, "growth", where), child(where, "growth"));
    std::optional<IndexFn> product_tail;
    if (v.contains("product_tail")) {
      product_tail = as_fn(parse_expr_at(v["product_tail"], child(where, "product_tail")));
    }
    bool integer = false;
    if (v.contains("integer")) {
      if (!v["integer"].is_boolean()) fail(ErrorKind::Schema, child(where, "integer"), "expected a boolean");
      integer = v["integer"].get<bool>();
    }
    for (std::uint64_t i = 0; i <= kGrowthSpotCheck; ++i) {
      const double x = located(at, [&] { return value(i); });
      const double g = located(child(where, "growth"), [&] { return growth(i); });
      if (std::fabs(x) > g) {
        fail(ErrorKind::TailBound, child(where, "growth"), "growth bound below |X| at atom " + std::to_string(i));
      }
    }
    model_.variables.push_back({name, RandomVariable::countable(as_fn(value), as_fn(growth), product_tail, integer)});
  }

  void load_family(const json& f, const std::string& where) {
    check_keys(f, {"name", "members", "measures"}, where);
    const std::string name = require_string(f, "name", where);
    claim(family_names_, name, where);

    const json& members = require(f, "members", where);
    if (!members.is_array() || members.empty()) {
      fail(ErrorKind::Schema, child(where, "members"), "expected a nonempty array of variable names");
    }
    std::vector<RandomVariable> xs;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const std::string at = child(child(where, "members"), i);
      if (!members[i].is_string()) fail(ErrorKind::Schema, at, "expected a variable name");
      xs.push_back(find_variable(members[i].get<std::string>(), at));
    }

    const json& ms = require(f, "measures", where);
    if (!ms.is_array() || ms.empty()) {
      fail(ErrorKind::Schema, child(where, "measures"), "expected a nonempty array of measure names");
    }
    std::vector<const ModelFile::NamedMeasure*> refs;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string at = child(child(where, "measures"), i);
      if (!ms[i].is_string()) fail(ErrorKind::Schema, at, "expected a measure name");
      refs.push_back(&find_measure(ms[i].get<std::string>(), at));
    }

    std::shared_ptr<const ExpectationOperator> context;
    if (refs.size() == 1 && refs[0]->set) {
      context = refs[0]->set;
    } else if (refs.size() == 1) {
      context = std::make_shared<const LinearExpectation>(*refs[0]->measure);
    } else {
      std::vector<Measure> list;
      for (std::size_t i = 0; i < refs.size(); ++i) {
        if (refs[i]->set) {
          fail(ErrorKind::Schema, child(child(where, "measures"), i),
               "plugin and indexed measure sets cannot be combined with other measures");
        }
        list.push_back(*refs[i]->measure);
      }
      context = std::make_shared<const SublinearExpectation>(MeasureSet::explicit_set(std::move(list)));
    }
    model_.families.push_back({name, located(where, [&] { return Family(std::move(xs), context); })});
  }

  const RandomVariable& find_variable(const std::string& name, const std::string& where) const {
    for (const auto& v : model_.variables) {
      if (v.name == name) return v.variable;
    }
    fail(ErrorKind::UnresolvedName, where, "no variable named '" + name + "'");
  }

  const ModelFile::NamedMeasure& find_measure(const std::string& name, const std::string& where) const {
    for (const auto& m : model_.measures) {
      if (m.name == name) return m;
    }
    fail(ErrorKind::UnresolvedName, where, "no measure named '" + name + "'");
  }

  ModelFile model_;
  PluginRegistry plugins_;
  std::set<std::string> measure_names_, variable_names_, family_names_;
};

}  // namespace

const Family& ModelFile::family(std::string_view name) const {
  if (families.empty()) throw Error(ErrorKind::UnresolvedName, "model defines no family");
  if (name.empty()) return families.front().family;
  for (const auto& f : families) {
    if (f.name == name) return f.family;
  }
  throw Error(ErrorKind::UnresolvedName, "no family named '" + std::string(name) + "'");
}

ModelFile parse_model(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw LocatedError(ErrorKind::JsonSyntax, "byte " + std::to_string(e.byte), e.what());
  }
  return Loader().load(root);
}

ModelFile load_model(const std::filesystem::path& path) {
  std::filesystem::path actual = path;
  if (!std::filesystem::exists(actual) && actual.extension() != ".json") {
    std::filesystem::path with_ext = actual;
    with_ext += ".json";
    if (std::filesystem::exists(with_ext)) actual = with_ext;
  }
  std::ifstream in(actual, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read model file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_model(text.str());
}

ModelFile plugin_model(std::string_view name, std::uint64_t n_max) {
  if (name != kRemarkPluginName) {
    throw Error(ErrorKind::UnknownPlugin, "unknown plugin '" + std::string(name) + "'");
  }
  Counterexample ce = build_counterexample(n_max);
  ModelFile m;
  m.title = "counterexample: UI but not S-UI";
  m.space = ce.expectation->space();
  m.measures.push_back({"E", std::nullopt, ce.expectation});
  m.variables.push_back({"X", ce.x});
  m.families.push_back({"K", Family({ce.x}, ce.expectation)});
  return m;
}

}  // namespace uic
