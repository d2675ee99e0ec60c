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

#include "scan2sim/scene_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "scan2sim/errors.hpp"
#include "scan2sim/mesh_io.hpp"

namespace scan2sim {

using nlohmann::json;

const char* region_kind_name(RegionKind k) {
  switch (k) {
    case RegionKind::Fixed: return "fixed";
    case RegionKind::Movable: return "movable";
    case RegionKind::Graspable: return "graspable";
  }
  return "?";
}

const char* joint_type_name(JointType t) {
  return t == JointType::Revolute ? "revolute" : "prismatic";
}

void TriMesh::validate() const {
  const int nv = vertex_count();
  for (const auto& v : vertices) {
    if (!v.allFinite())
      throw Error(ErrorKind::ParseError, "non-finite vertex coordinate");
  }
  for (size_t i = 0; i < faces.size(); ++i) {
    const auto& f = faces[i];
    for (int k = 0; k < 3; ++k) {
      if (f[k] < 0 || f[k] >= nv)
        throw Error(ErrorKind::ReferenceError,
                    "face " + std::to_string(i) + " cites vertex " +
                        std::to_string(f[k]) + " of " + std::to_string(nv));
    }
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
      throw Error(ErrorKind::ParseError,
                  "degenerate face " + std::to_string(i));
  }
  if (!face_owner.empty() && face_owner.size() != faces.size())
    throw Error(ErrorKind::ReferenceError, "face_owner size mismatch");
}

geom::Aabb TriMesh::bounds() const {
  geom::Aabb box;
  for (const auto& v : vertices) box.extend(v);
  return box;
}

const InstanceNode* AnnotatedScene::find_node(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

const InstanceNode& AnnotatedScene::node(const std::string& id) const {
  const InstanceNode* n = find_node(id);
  if (!n) throw Error(ErrorKind::UnknownId, "no node '" + id + "'");
  return *n;
}

const ArticulationSpec* AnnotatedScene::find_articulation(
    const std::string& part_id) const {
  for (const auto& a : articulations)
    if (a.part_id == part_id) return &a;
  return nullptr;
}

std::vector<std::string> AnnotatedScene::part_ids_of(
    const std::string& object_id) const {
  std::vector<std::string> out;
  for (const auto& n : nodes)
    if (n.kind == NodeKind::Part && n.parent && *n.parent == object_id)
      out.push_back(n.id);
  return out;
}

void AnnotatedScene::validate() const {
  mesh.validate();

  std::unordered_map<std::string, const InstanceNode*> by_id;
  for (const auto& n : nodes) {
    if (n.id.empty())
      throw Error(ErrorKind::SchemaError, "node with empty id");
    if (!by_id.emplace(n.id, &n).second)
      throw Error(ErrorKind::SchemaError, "duplicate node id '" + n.id + "'");
  }

  std::unordered_map<int, const std::string*> owner_of;  // partition check
  for (const auto& n : nodes) {
    if (n.kind == NodeKind::Part) {
      if (!n.parent)
        throw Error(ErrorKind::SchemaError, "part '" + n.id + "' has no parent");
      auto it = by_id.find(*n.parent);
      if (it == by_id.end())
        throw Error(ErrorKind::ReferenceError,
                    "part '" + n.id + "' cites missing parent '" + *n.parent + "'");
      if (it->second->kind != NodeKind::Object)
        throw Error(ErrorKind::SchemaError,
                    "parent of part '" + n.id + "' is not an object");
    } else if (n.parent) {
      throw Error(ErrorKind::SchemaError,
                  "object '" + n.id + "' must not have a parent");
    }

    if (n.faces.empty())
      throw Error(ErrorKind::SchemaError, "node '" + n.id + "' owns no faces");
    int prev = -1;
    for (int f : n.faces) {
      if (f < 0 || f >= mesh.face_count())
        throw Error(ErrorKind::ReferenceError,
                    "node '" + n.id + "' cites missing face " + std::to_string(f));
      if (f <= prev)
        throw Error(ErrorKind::SchemaError,
                    "node '" + n.id + "' face list not sorted unique");
      prev = f;
      auto [it, fresh] = owner_of.emplace(f, &n.id);
      if (!fresh)
        throw Error(ErrorKind::ReferenceError,
                    "face " + std::to_string(f) + " owned by both '" +
                        *it->second + "' and '" + n.id + "'");
    }

    for (const auto& [kind, region] : n.regions) {
      int rprev = -1;
      for (int f : region) {
        if (f <= rprev)
          throw Error(ErrorKind::SchemaError,
                      "region of '" + n.id + "' not sorted unique");
        rprev = f;
        if (!std::binary_search(n.faces.begin(), n.faces.end(), f))
          throw Error(ErrorKind::ReferenceError,
                      "region face " + std::to_string(f) +
                          " outside node '" + n.id + "'");
      }
    }
  }

  for (const auto& a : articulations) {
    auto it = by_id.find(a.part_id);
    if (it == by_id.end())
      throw Error(ErrorKind::ReferenceError,
                  "articulation cites missing part '" + a.part_id + "'");
    if (it->second->kind != NodeKind::Part)
      throw Error(ErrorKind::SchemaError,
                  "articulation target '" + a.part_id + "' is not a part");
    if (std::abs(a.axis.norm() - 1.0) > 1e-6)
      throw Error(ErrorKind::SchemaError,
                  "articulation axis for '" + a.part_id + "' is not unit length");
    if (!(a.range_lo <= a.range_hi))
      throw Error(ErrorKind::SchemaError,
                  "articulation range for '" + a.part_id + "' has lo > hi");
    if (!a.pivot.allFinite() || !a.axis.allFinite())
      throw Error(ErrorKind::SchemaError, "non-finite articulation data");
  }
}

namespace {

std::vector<int> read_face_list(const json& arr, const char* what) {
  if (!arr.is_array())
    throw Error(ErrorKind::SchemaError, std::string(what) + " must be an array");
  std::vector<int> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number_integer())
      throw Error(ErrorKind::SchemaError,
                  std::string(what) + " must hold integer face ids");
    long long id = v.get<long long>();
    if (id < 0 || id > 0x7fffffff)
      throw Error(ErrorKind::ReferenceError,
                  std::string(what) + " cites out-of-range face id " +
                      std::to_string(id));
    out.push_back(static_cast<int>(id));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Eigen::Vector3d read_vec3(const json& arr, const char* what) {
  if (!arr.is_array() || arr.size() != 3)
    throw Error(ErrorKind::SchemaError,
                std::string(what) + " must be a 3-element array");
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) {
    if (!arr[i].is_number())
      throw Error(ErrorKind::SchemaError, std::string(what) + " must be numeric");
    v[i] = arr[i].get<double>();
  }
  return v;
}

void check_fields(const json& obj, std::initializer_list<const char*> allowed,
                  const char* where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) { ok = true; break; }
    if (!ok)
      throw Error(ErrorKind::SchemaError,
                  std::string("unknown field '") + it.key() + "' in " + where);
  }
}

}  // namespace

void parse_annotation(const std::string& json_text,
                      std::vector<InstanceNode>& nodes,
                      std::vector<ArticulationSpec>& articulations) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("annotation JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw Error(ErrorKind::SchemaError, "annotation root must be an object");
  check_fields(doc, {"version", "nodes", "articulations"}, "annotation root");

  if (!doc.contains("version") || !doc["version"].is_string() ||
      doc["version"].get<std::string>() != "1")
    throw Error(ErrorKind::SchemaError, "unknown annotation schema version");

  nodes.clear();
  articulations.clear();

  if (doc.contains("nodes")) {
    if (!doc["nodes"].is_array())
      throw Error(ErrorKind::SchemaError, "'nodes' must be an array");
    for (const auto& jn : doc["nodes"]) {
      if (!jn.is_object())
        throw Error(ErrorKind::SchemaError, "node entry must be an object");
      check_fields(jn, {"id", "label", "kind", "parent", "faces", "regions"},
                   "node");
      InstanceNode n;
      if (!jn.contains("id") || !jn["id"].is_string())
        throw Error(ErrorKind::SchemaError, "node missing string 'id'");
      n.id = jn["id"].get<std::string>();
      if (!jn.contains("label") || !jn["label"].is_string())
        throw Error(ErrorKind::SchemaError, "node missing string 'label'");
      n.label = jn["label"].get<std::string>();
      if (!jn.contains("kind") || !jn["kind"].is_string())
        throw Error(ErrorKind::SchemaError, "node missing string 'kind'");
      const std::string kind = jn["kind"].get<std::string>();
      if (kind == "object") n.kind = NodeKind::Object;
      else if (kind == "part") n.kind = NodeKind::Part;
      else throw Error(ErrorKind::SchemaError, "unknown node kind '" + kind + "'");
      if (jn.contains("parent")) {
        if (!jn["parent"].is_string())
          throw Error(ErrorKind::SchemaError, "'parent' must be a string");
        n.parent = jn["parent"].get<std::string>();
      }
      if (!jn.contains("faces"))
        throw Error(ErrorKind::SchemaError, "node missing 'faces'");
      n.faces = read_face_list(jn["faces"], "faces");
      if (jn.contains("regions")) {
        const auto& jr = jn["regions"];
        if (!jr.is_object())
          throw Error(ErrorKind::SchemaError, "'regions' must be an object");
        check_fields(jr, {"fixed", "movable", "graspable"}, "regions");
        for (auto [name, kindv] :
             std::initializer_list<std::pair<const char*, RegionKind>>{
                 {"fixed", RegionKind::Fixed},
                 {"movable", RegionKind::Movable},
                 {"graspable", RegionKind::Graspable}}) {
          if (jr.contains(name)) {
            auto list = read_face_list(jr[name], name);
            if (!list.empty()) n.regions[kindv] = std::move(list);
          }
        }
      }
      nodes.push_back(std::move(n));
    }
  }

  if (doc.contains("articulations")) {
    if (!doc["articulations"].is_array())
      throw Error(ErrorKind::SchemaError, "'articulations' must be an array");
    for (const auto& ja : doc["articulations"]) {
      if (!ja.is_object())
        throw Error(ErrorKind::SchemaError, "articulation entry must be an object");
      check_fields(ja, {"part_id", "joint_type", "axis", "pivot", "range"},
                   "articulation");
      ArticulationSpec a;
      if (!ja.contains("part_id") || !ja["part_id"].is_string())
        throw Error(ErrorKind::SchemaError, "articulation missing 'part_id'");
      a.part_id = ja["part_id"].get<std::string>();
      if (!ja.contains("joint_type") || !ja["joint_type"].is_string())
        throw Error(ErrorKind::SchemaError, "articulation missing 'joint_type'");
      const std::string jt = ja["joint_type"].get<std::string>();
      if (jt == "revolute") a.joint_type = JointType::Revolute;
      else if (jt == "prismatic") a.joint_type = JointType::Prismatic;
      else throw Error(ErrorKind::SchemaError, "unknown joint_type '" + jt + "'");
      if (!ja.contains("axis"))
        throw Error(ErrorKind::SchemaError, "articulation missing 'axis'");
      a.axis = read_vec3(ja["axis"], "axis");
      if (!ja.contains("pivot"))
        throw Error(ErrorKind::SchemaError, "articulation missing 'pivot'");
      a.pivot = read_vec3(ja["pivot"], "pivot");
      if (!ja.contains("range") || !ja["range"].is_array() ||
          ja["range"].size() != 2 || !ja["range"][0].is_number() ||
          !ja["range"][1].is_number())
        throw Error(ErrorKind::SchemaError,
                    "articulation 'range' must be [lo, hi]");
      a.range_lo = ja["range"][0].get<double>();
      a.range_hi = ja["range"][1].get<double>();
      articulations.push_back(std::move(a));
    }
  }
}

AnnotatedScene make_scene(TriMesh mesh, std::vector<InstanceNode> nodes,
                          std::vector<ArticulationSpec> articulations) {
  AnnotatedScene scene;
  scene.mesh = std::move(mesh);
  scene.nodes = std::move(nodes);
  scene.articulations = std::move(articulations);
  scene.validate();

  // Derived per-face ownership.
  scene.mesh.face_owner.assign(scene.mesh.faces.size(), std::string());
  for (const auto& n : scene.nodes)
    for (int f : n.faces) scene.mesh.face_owner[f] = n.id;
  return scene;
}

AnnotatedScene load_scene(const std::string& mesh_path,
                          const std::string& annotation_path) {
  TriMesh mesh = load_mesh(mesh_path);

  std::ifstream in(annotation_path);
  if (!in)
    throw Error(ErrorKind::IoError, "cannot open '" + annotation_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();

  std::vector<InstanceNode> nodes;
  std::vector<ArticulationSpec> articulations;
  parse_annotation(ss.str(), nodes, articulations);
  return make_scene(std::move(mesh), std::move(nodes), std::move(articulations));
}

std::string save_annotation(const AnnotatedScene& scene) {
  json doc;
  doc["version"] = "1";
  json jnodes = json::array();
  for (const auto& n : scene.nodes) {
    json jn;
    jn["id"] = n.id;
    jn["label"] = n.label;
    jn["kind"] = n.kind == NodeKind::Object ? "object" : "part";
    if (n.parent) jn["parent"] = *n.parent;
    jn["faces"] = n.faces;
    if (!n.regions.empty()) {
      json jr;
      for (const auto& [kind, region] : n.regions)
        jr[region_kind_name(kind)] = region;
      jn["regions"] = jr;
    }
    jnodes.push_back(std::move(jn));
  }
  doc["nodes"] = std::move(jnodes);
  json jarts = json::array();
  for (const auto& a : scene.articulations) {
    json ja;
    ja["part_id"] = a.part_id;
    ja["joint_type"] = joint_type_name(a.joint_type);
    ja["axis"] = {a.axis.x(), a.axis.y(), a.axis.z()};
    ja["pivot"] = {a.pivot.x(), a.pivot.y(), a.pivot.z()};
    ja["range"] = {a.range_lo, a.range_hi};
    jarts.push_back(std::move(ja));
  }
  doc["articulations"] = std::move(jarts);
  return doc.dump(2) + "\n";
}

geom::Aabb node_aabb(const AnnotatedScene& scene, const std::string& id) {
  const InstanceNode& n = scene.node(id);
  geom::Aabb box;
  for (int f : n.faces)
    for (int k = 0; k < 3; ++k) box.extend(scene.mesh.vertices[scene.mesh.faces[f][k]]);
  return box;
}

std::vector<Eigen::Vector3d> node_vertices(const AnnotatedScene& scene,
                                           const InstanceNode& node) {
  std::set<int> used;
  for (int f : node.faces)
    for (int k = 0; k < 3; ++k) used.insert(scene.mesh.faces[f][k]);
  std::vector<Eigen::Vector3d> out;
  out.reserve(used.size());
  for (int i : used) out.push_back(scene.mesh.vertices[i]);
  return out;
}

TriMesh extract_submesh(const AnnotatedScene& scene, const InstanceNode& node) {
  TriMesh out;
  std::unordered_map<int, int> local;
  local.reserve(node.faces.size() * 3);
  for (int f : node.faces) {
    std::array<int, 3> tri;
    for (int k = 0; k < 3; ++k) {
      int global = scene.mesh.faces[f][k];
      auto [it, fresh] = local.emplace(global, static_cast<int>(out.vertices.size()));
      if (fresh) out.vertices.push_back(scene.mesh.vertices[global]);
      tri[k] = it->second;
    }
    out.faces.push_back(tri);
  }
  return out;
}

}  // namespace scan2sim
