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

#include "scan2sim/mesh_io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "scan2sim/detail/format.hpp"
#include "scan2sim/errors.hpp"

namespace scan2sim {

namespace {

std::string lower_ext(const std::string& path) {
  auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return "";
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

[[noreturn]] void parse_fail(const std::string& path, size_t line,
                             const std::string& what) {
  throw Error(ErrorKind::ParseError,
              path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

TriMesh load_mesh(const std::string& path) {
  const std::string ext = lower_ext(path);
  if (ext == "obj") return load_obj(path);
  if (ext == "ply") return load_ply(path);
  throw Error(ErrorKind::ParseError,
              "unsupported mesh format '." + ext + "' for '" + path + "'");
}

TriMesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");

  TriMesh mesh;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Eigen::Vector3d v;
      if (!(ls >> v.x() >> v.y() >> v.z()))
        parse_fail(path, lineno, "malformed vertex");
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) {
        // "i", "i/t", "i//n", "i/t/n" — the vertex index leads.
        auto slash = tok.find('/');
        std::string head = slash == std::string::npos ? tok : tok.substr(0, slash);
        long long raw = 0;
        if (!detail::parse_int(head, raw))
          parse_fail(path, lineno, "malformed face index '" + tok + "'");
        long long resolved =
            raw < 0 ? static_cast<long long>(mesh.vertices.size()) + raw : raw - 1;
        if (resolved < 0 ||
            resolved >= static_cast<long long>(mesh.vertices.size()))
          parse_fail(path, lineno,
                     "face index " + std::to_string(raw) + " out of range");
        idx.push_back(static_cast<int>(resolved));
      }
      if (idx.size() < 3) parse_fail(path, lineno, "face with < 3 vertices");
      for (size_t k = 2; k < idx.size(); ++k)
        mesh.faces.push_back({idx[0], idx[static_cast<int>(k) - 1], idx[k]});
    }
    // vn/vt/o/g/s/usemtl/mtllib/# ignored
  }
  mesh.validate();
  return mesh;
}

namespace {

struct PlyProperty {
  std::string name;
  std::string type;       // scalar type, or element type for lists
  std::string count_type; // nonempty for list properties
};

size_t ply_type_size(const std::string& t, const std::string& path) {
  if (t == "char" || t == "uchar" || t == "int8" || t == "uint8") return 1;
  if (t == "short" || t == "ushort" || t == "int16" || t == "uint16") return 2;
  if (t == "int" || t == "uint" || t == "int32" || t == "uint32" || t == "float" ||
      t == "float32")
    return 4;
  if (t == "double" || t == "float64") return 8;
  throw Error(ErrorKind::ParseError, path + ": unknown ply type '" + t + "'");
}

double read_binary_scalar(std::istream& in, const std::string& type,
                          const std::string& path) {
  unsigned char buf[8];
  const size_t n = ply_type_size(type, path);
  if (!in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n)))
    throw Error(ErrorKind::ParseError, path + ": truncated binary ply");
  auto as = [&]<typename T>() {
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return static_cast<double>(v);
  };
  if (type == "char" || type == "int8") return as.operator()<int8_t>();
  if (type == "uchar" || type == "uint8") return as.operator()<uint8_t>();
  if (type == "short" || type == "int16") return as.operator()<int16_t>();
  if (type == "ushort" || type == "uint16") return as.operator()<uint16_t>();
  if (type == "int" || type == "int32") return as.operator()<int32_t>();
  if (type == "uint" || type == "uint32") return as.operator()<uint32_t>();
  if (type == "float" || type == "float32") return as.operator()<float>();
  return as.operator()<double>();
}

}  // namespace

TriMesh load_ply(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line) || (line != "ply" && line != "ply\r"))
    throw Error(ErrorKind::ParseError, path + ": missing 'ply' magic");

  bool binary = false;
  struct Element {
    std::string name;
    size_t count = 0;
    std::vector<PlyProperty> props;
  };
  std::vector<Element> elements;

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "comment" || tag == "obj_info") continue;
    if (tag == "format") {
      std::string fmt, ver;
      ls >> fmt >> ver;
      if (fmt == "ascii") binary = false;
      else if (fmt == "binary_little_endian") binary = true;
      else
        throw Error(ErrorKind::ParseError,
                    path + ": unsupported ply format '" + fmt + "'");
    } else if (tag == "element") {
      Element e;
      ls >> e.name >> e.count;
      elements.push_back(std::move(e));
    } else if (tag == "property") {
      if (elements.empty())
        throw Error(ErrorKind::ParseError, path + ": property before element");
      PlyProperty p;
      std::string first;
      ls >> first;
      if (first == "list") {
        ls >> p.count_type >> p.type >> p.name;
      } else {
        p.type = first;
        ls >> p.name;
      }
      elements.back().props.push_back(std::move(p));
    } else if (tag == "end_header") {
      break;
    } else if (tag.empty()) {
      continue;
    } else {
      throw Error(ErrorKind::ParseError,
                  path + ": unknown header line '" + line + "'");
    }
  }

  TriMesh mesh;
  auto ascii_tokens = [&](std::vector<std::string>& toks) {
    toks.clear();
    if (!std::getline(in, line))
      throw Error(ErrorKind::ParseError, path + ": truncated ascii ply");
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) toks.push_back(t);
  };

  for (const auto& e : elements) {
    if (e.name == "vertex") {
      mesh.vertices.reserve(e.count);
      std::vector<std::string> toks;
      for (size_t i = 0; i < e.count; ++i) {
        Eigen::Vector3d v = Eigen::Vector3d::Zero();
        if (binary) {
          for (const auto& p : e.props) {
            if (!p.count_type.empty())
              throw Error(ErrorKind::ParseError,
                          path + ": list property on vertex element");
            double val = read_binary_scalar(in, p.type, path);
            if (p.name == "x") v.x() = val;
            else if (p.name == "y") v.y() = val;
            else if (p.name == "z") v.z() = val;
          }
        } else {
          ascii_tokens(toks);
          if (toks.size() < e.props.size())
            throw Error(ErrorKind::ParseError, path + ": short vertex row");
          for (size_t k = 0; k < e.props.size(); ++k) {
            double val = 0;
            if (!detail::parse_double(toks[k], val))
              throw Error(ErrorKind::ParseError,
                          path + ": bad number '" + toks[k] + "'");
            const auto& name = e.props[k].name;
            if (name == "x") v.x() = val;
            else if (name == "y") v.y() = val;
            else if (name == "z") v.z() = val;
          }
        }
        mesh.vertices.push_back(v);
      }
    } else if (e.name == "face") {
      std::vector<std::string> toks;
      for (size_t i = 0; i < e.count; ++i) {
        std::vector<long long> idx;
        if (binary) {
          for (const auto& p : e.props) {
            if (!p.count_type.empty()) {
              size_t n = static_cast<size_t>(read_binary_scalar(in, p.count_type, path));
              bool is_index =
                  p.name == "vertex_indices" || p.name == "vertex_index";
              for (size_t k = 0; k < n; ++k) {
                double val = read_binary_scalar(in, p.type, path);
                if (is_index) idx.push_back(static_cast<long long>(val));
              }
            } else {
              read_binary_scalar(in, p.type, path);
            }
          }
        } else {
          ascii_tokens(toks);
          if (toks.empty())
            throw Error(ErrorKind::ParseError, path + ": empty face row");
          long long n = 0;
          if (!detail::parse_int(toks[0], n) ||
              toks.size() < static_cast<size_t>(n) + 1)
            throw Error(ErrorKind::ParseError, path + ": malformed face row");
          for (long long k = 0; k < n; ++k) {
            long long v = 0;
            if (!detail::parse_int(toks[static_cast<size_t>(k) + 1], v))
              throw Error(ErrorKind::ParseError, path + ": malformed face index");
            idx.push_back(v);
          }
        }
        if (idx.size() < 3)
          throw Error(ErrorKind::ParseError, path + ": face with < 3 vertices");
        for (long long v : idx)
          if (v < 0 || v >= static_cast<long long>(mesh.vertices.size()))
            throw Error(ErrorKind::ReferenceError,
                        path + ": face index " + std::to_string(v) + " out of range");
        for (size_t k = 2; k < idx.size(); ++k)
          mesh.faces.push_back({static_cast<int>(idx[0]),
                                static_cast<int>(idx[k - 1]),
                                static_cast<int>(idx[k])});
      }
    } else {
      // Unknown element: skip its payload.
      if (binary) {
        for (size_t i = 0; i < e.count; ++i)
          for (const auto& p : e.props) {
            if (!p.count_type.empty()) {
              size_t n = static_cast<size_t>(read_binary_scalar(in, p.count_type, path));
              for (size_t k = 0; k < n; ++k) read_binary_scalar(in, p.type, path);
            } else {
              read_binary_scalar(in, p.type, path);
            }
          }
      } else {
        for (size_t i = 0; i < e.count; ++i)
          if (!std::getline(in, line))
            throw Error(ErrorKind::ParseError, path + ": truncated ascii ply");
      }
    }
  }
  mesh.validate();
  return mesh;
}

void save_obj(const TriMesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  for (const auto& v : mesh.vertices)
    out << "v " << detail::format_double(v.x()) << ' '
        << detail::format_double(v.y()) << ' ' << detail::format_double(v.z())
        << '\n';
  for (const auto& f : mesh.faces)
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path + "'");
}

}  // namespace scan2sim
