// Copyright 2026 The scan2sim Authors
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

#include "scan2sim/usd/value.hpp"

namespace scan2sim::usd {

// One node of the prim tree. The document owns a nameless pseudo-root whose
// children are the top-level prims.
struct Prim {
  std::string name;
  std::string type_name;  // "Xform", "Mesh", ... empty for untyped prims
  bool over = false;      // "over" instead of "def"
  std::optional<std::string> references;  // single asset path
  std::map<std::string, TypedValue> attributes;
  std::vector<Prim> children;

  Prim() = default;
  Prim(std::string n, std::string t) : name(std::move(n)), type_name(std::move(t)) {}

  Prim* find_child(const std::string& child_name);
  const Prim* find_child(const std::string& child_name) const;

  const TypedValue* find_attribute(const std::string& attr) const;
  void set_attribute(const std::string& attr, TypedValue v) {
    attributes[attr] = std::move(v);
  }

  bool operator==(const Prim& other) const;
  bool operator!=(const Prim& other) const { return !(*this == other); }
};

// Layer invariants are fixed: upAxis "Z", metersPerUnit 1. Only defaultPrim
// is variable metadata.
struct UsdDocument {
  Prim root;  // pseudo-root: name/type empty, attributes unused
  std::optional<std::string> default_prim;

  Prim* find_path(const std::string& path);
  const Prim* find_path(const std::string& path) const;
  // Throws Error(UnknownPath).
  Prim& at_path(const std::string& path);
  const Prim& at_path(const std::string& path) const;

  bool operator==(const UsdDocument& other) const {
    return root == other.root && default_prim == other.default_prim;
  }
};

// Prim names: [A-Za-z_][A-Za-z0-9_]*
bool is_valid_prim_name(const std::string& name);
// Attribute names add ':' namespacing between identifier segments.
bool is_valid_attribute_name(const std::string& name);
// Absolute prim path: "/" separated valid prim names, e.g. "/a/b".
bool is_valid_prim_path(const std::string& path);
std::vector<std::string> split_prim_path(const std::string& path);

// Deterministic mapping of arbitrary ids to valid prim names: invalid
// characters become '_', a leading digit gains a '_' prefix.
std::string sanitize_prim_name(const std::string& id);

// Depth-first pre-order visit over real prims (skips the pseudo-root).
// Visitor: void(const Prim&, const std::string& path).
template <typename F>
void visit_prims(const Prim& prim, const std::string& base_path, F&& fn) {
  for (const Prim& child : prim.children) {
    std::string path = base_path + "/" + child.name;
    fn(child, path);
    visit_prims(child, path, fn);
  }
}

template <typename F>
void visit_prims(const UsdDocument& doc, F&& fn) {
  visit_prims(doc.root, "", fn);
}

}  // namespace scan2sim::usd
