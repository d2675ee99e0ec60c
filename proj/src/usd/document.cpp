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

#include "scan2sim/usd/document.hpp"

#include <cctype>

#include "scan2sim/errors.hpp"

namespace scan2sim::usd {

const char* value_type_name(ValueType t) {
  switch (t) {
    case ValueType::Bool: return "bool";
    case ValueType::Int: return "int";
    case ValueType::Float: return "float";
    case ValueType::Double: return "double";
    case ValueType::String: return "string";
    case ValueType::Token: return "token";
    case ValueType::Float3: return "float3";
    case ValueType::Double3: return "double3";
    case ValueType::Matrix4d: return "matrix4d";
    case ValueType::IntArray: return "int[]";
    case ValueType::Float3Array: return "float3[]";
    case ValueType::Point3fArray: return "point3f[]";
  }
  return "?";
}

namespace {

bool data_equal(const ValueData& a, const ValueData& b) {
  if (a.index() != b.index()) return false;
  switch (a.index()) {
    case 0: return std::get<bool>(a) == std::get<bool>(b);
    case 1: return std::get<int>(a) == std::get<int>(b);
    case 2: return std::get<float>(a) == std::get<float>(b);
    case 3: return std::get<double>(a) == std::get<double>(b);
    case 4: return std::get<std::string>(a) == std::get<std::string>(b);
    case 5: {
      const auto& x = std::get<Eigen::Vector3f>(a);
      const auto& y = std::get<Eigen::Vector3f>(b);
      return (x.array() == y.array()).all();
    }
    case 6: {
      const auto& x = std::get<Eigen::Vector3d>(a);
      const auto& y = std::get<Eigen::Vector3d>(b);
      return (x.array() == y.array()).all();
    }
    case 7: {
      const auto& x = std::get<Eigen::Matrix4d>(a);
      const auto& y = std::get<Eigen::Matrix4d>(b);
      return (x.array() == y.array()).all();
    }
    case 8: return std::get<std::vector<int>>(a) == std::get<std::vector<int>>(b);
    case 9: {
      const auto& x = std::get<std::vector<Eigen::Vector3f>>(a);
      const auto& y = std::get<std::vector<Eigen::Vector3f>>(b);
      if (x.size() != y.size()) return false;
      for (size_t i = 0; i < x.size(); ++i)
        if (!(x[i].array() == y[i].array()).all()) return false;
      return true;
    }
  }
  return false;
}

}  // namespace

bool TypedValue::operator==(const TypedValue& other) const {
  if (type != other.type) return false;
  if (value.has_value() != other.value.has_value()) return false;
  if (!value) return true;
  return data_equal(*value, *other.value);
}

Prim* Prim::find_child(const std::string& child_name) {
  for (auto& c : children)
    if (c.name == child_name) return &c;
  return nullptr;
}

const Prim* Prim::find_child(const std::string& child_name) const {
  for (const auto& c : children)
    if (c.name == child_name) return &c;
  return nullptr;
}

const TypedValue* Prim::find_attribute(const std::string& attr) const {
  auto it = attributes.find(attr);
  return it == attributes.end() ? nullptr : &it->second;
}

bool Prim::operator==(const Prim& other) const {
  return name == other.name && type_name == other.type_name &&
         over == other.over && references == other.references &&
         attributes == other.attributes && children == other.children;
}

bool is_valid_prim_name(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
    return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

bool is_valid_attribute_name(const std::string& name) {
  if (name.empty()) return false;
  size_t start = 0;
  while (true) {
    size_t colon = name.find(':', start);
    std::string seg = name.substr(start, colon == std::string::npos
                                             ? std::string::npos
                                             : colon - start);
    if (!is_valid_prim_name(seg)) return false;
    if (colon == std::string::npos) return true;
    start = colon + 1;
  }
}

bool is_valid_prim_path(const std::string& path) {
  if (path.size() < 2 || path[0] != '/') return false;
  size_t start = 1;
  while (start <= path.size()) {
    size_t slash = path.find('/', start);
    std::string seg = path.substr(start, slash == std::string::npos
                                             ? std::string::npos
                                             : slash - start);
    if (!is_valid_prim_name(seg)) return false;
    if (slash == std::string::npos) return true;
    start = slash + 1;
  }
  return false;
}

std::vector<std::string> split_prim_path(const std::string& path) {
  if (!is_valid_prim_path(path))
    throw Error(ErrorKind::UnknownPath, "malformed prim path '" + path + "'");
  std::vector<std::string> out;
  size_t start = 1;
  while (start < path.size()) {
    size_t slash = path.find('/', start);
    if (slash == std::string::npos) {
      out.push_back(path.substr(start));
      break;
    }
    out.push_back(path.substr(start, slash - start));
    start = slash + 1;
  }
  return out;
}

std::string sanitize_prim_name(const std::string& id) {
  std::string out;
  out.reserve(id.size() + 1);
  for (char c : id)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_');
  if (out.empty()) out = "_";
  if (std::isdigit(static_cast<unsigned char>(out[0]))) out.insert(out.begin(), '_');
  return out;
}

Prim* UsdDocument::find_path(const std::string& path) {
  if (!is_valid_prim_path(path)) return nullptr;
  Prim* cur = &root;
  for (const auto& seg : split_prim_path(path)) {
    cur = cur->find_child(seg);
    if (!cur) return nullptr;
  }
  return cur;
}

const Prim* UsdDocument::find_path(const std::string& path) const {
  return const_cast<UsdDocument*>(this)->find_path(path);
}

Prim& UsdDocument::at_path(const std::string& path) {
  Prim* p = find_path(path);
  if (!p) throw Error(ErrorKind::UnknownPath, "no prim at '" + path + "'");
  return *p;
}

const Prim& UsdDocument::at_path(const std::string& path) const {
  return const_cast<UsdDocument*>(this)->at_path(path);
}

}  // namespace scan2sim::usd
