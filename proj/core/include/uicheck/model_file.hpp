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

#ifndef UICHECK_MODEL_FILE_HPP
#define UICHECK_MODEL_FILE_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uicheck/family.hpp"
#include "uicheck/sublinear.hpp"

namespace uic {

/// A validated model: an atom space, named measures or measure sets,
/// named random variables and named families. See docs/model-format.md.
struct ModelFile {
  struct NamedMeasure {
    std::string name;
    std::optional<Measure> measure;           // plain probability measure
    std::shared_ptr<const SublinearExpectation> set;  // plugin or indexed set
  };
  struct NamedVariable {
    std::string name;
    RandomVariable variable;
  };
  struct NamedFamily {
    std::string name;
    Family family;
  };

  std::string title;
  std::optional<std::uint64_t> seed;
  AtomSpace space = AtomSpace::countable();
  std::vector<NamedMeasure> measures;
  std::vector<NamedVariable> variables;
  std::vector<NamedFamily> families;

  /// The named family, or the first one when `name` is empty.
  const Family& family(std::string_view name = {}) const;
};

/// Parses and validates a model from JSON text. Every violation is reported
/// as a LocatedError whose location is a JSON pointer (or a byte offset for
/// malformed JSON).
ModelFile parse_model(std::string_view json_text);

/// Reads and validates a model file. A missing ".json" suffix is tried too.
ModelFile load_model(const std::filesystem::path& path);

/// The built-in model for a plugin name (`remark-counterexample`).
ModelFile plugin_model(std::string_view name, std::uint64_t n_max = 1000000);

}  // namespace uic

#endif  // UICHECK_MODEL_FILE_HPP
