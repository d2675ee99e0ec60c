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

#include <string>

#include "scan2sim/detail/format.hpp"
#include "scan2sim/usd/usda.hpp"

namespace scan2sim::usd {

namespace {

using detail::format_double;
using detail::format_float;

void append_quoted(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
}

void append_tuple3d(std::string& out, const Eigen::Vector3d& v) {
  out += "(" + format_double(v.x()) + ", " + format_double(v.y()) + ", " +
         format_double(v.z()) + ")";
}

void append_tuple3f(std::string& out, const Eigen::Vector3f& v) {
  out += "(" + format_float(v.x()) + ", " + format_float(v.y()) + ", " +
         format_float(v.z()) + ")";
}

void append_value(std::string& out, const TypedValue& tv) {
  const ValueData& v = *tv.value;
  switch (tv.type) {
    case ValueType::Bool:
      out += std::get<bool>(v) ? "true" : "false";
      break;
    case ValueType::Int:
      out += std::to_string(std::get<int>(v));
      break;
    case ValueType::Float:
      out += format_float(std::get<float>(v));
      break;
    case ValueType::Double:
      out += format_double(std::get<double>(v));
      break;
    case ValueType::String:
    case ValueType::Token:
      append_quoted(out, std::get<std::string>(v));
      break;
    case ValueType::Float3:
      append_tuple3f(out, std::get<Eigen::Vector3f>(v));
      break;
    case ValueType::Double3:
      append_tuple3d(out, std::get<Eigen::Vector3d>(v));
      break;
    case ValueType::Matrix4d: {
      const auto& m = std::get<Eigen::Matrix4d>(v);
      out += "( ";
      for (int r = 0; r < 4; ++r) {
        if (r > 0) out += ", ";
        out += "(";
        for (int c = 0; c < 4; ++c) {
          if (c > 0) out += ", ";
          out += format_double(m(r, c));
        }
        out += ")";
      }
      out += " )";
      break;
    }
    case ValueType::IntArray: {
      const auto& a = std::get<std::vector<int>>(v);
      out += "[";
      for (size_t i = 0; i < a.size(); ++i) {
        if (i > 0) out += ", ";
        out += std::to_string(a[i]);
      }
      out += "]";
      break;
    }
    case ValueType::Float3Array:
    case ValueType::Point3fArray: {
      const auto& a = std::get<std::vector<Eigen::Vector3f>>(v);
      out += "[";
      for (size_t i = 0; i < a.size(); ++i) {
        if (i > 0) out += ", ";
        append_tuple3f(out, a[i]);
      }
      out += "]";
      break;
    }
  }
}

void emit_prim(std::string& out, const Prim& prim, int depth) {
  const std::string indent(static_cast<size_t>(depth) * 4, ' ');
  const std::string inner(static_cast<size_t>(depth + 1) * 4, ' ');

  out += indent;
  out += prim.over ? "over" : "def";
  if (!prim.type_name.empty()) {
    out.push_back(' ');
    out += prim.type_name;
  }
  out.push_back(' ');
  append_quoted(out, prim.name);
  if (prim.references) {
    out += " (\n" + inner + "references = @" + *prim.references + "@\n" +
           indent + ")";
  }
  out += "\n" + indent + "{\n";

  for (const auto& [name, tv] : prim.attributes) {
    out += inner;
    // array brackets belong to the type name
    const char* tname = value_type_name(tv.type);
    out += tname;
    out.push_back(' ');
    out += name;
    if (tv.value) {
      out += " = ";
      append_value(out, tv);
    }
    out.push_back('\n');
  }

  for (const auto& child : prim.children) {
    out.push_back('\n');
    emit_prim(out, child, depth + 1);
  }

  out += indent + "}\n";
}

}  // namespace

std::string emit_usda(const UsdDocument& doc) {
  std::string out = "#usda 1.0\n(\n    upAxis = \"Z\"\n    metersPerUnit = 1\n";
  if (doc.default_prim) {
    out += "    defaultPrim = ";
    append_quoted(out, *doc.default_prim);
    out.push_back('\n');
  }
  out += ")\n";
  for (const auto& prim : doc.root.children) {
    out.push_back('\n');
    emit_prim(out, prim, 0);
  }
  return out;
}

}  // namespace scan2sim::usd
