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

// Rebuilds an AnnotatedScene from a geometry-focused usda plus the original
// annotation JSON. Works because the flavor builder extracts each node's
// faces in ascending face-id order, so the k-th face of a node prim is the
// k-th entry of the node's sorted face list; regions remap through that
// correspondence.

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "scan2sim/errors.hpp"
#include "scan2sim/scene_model.hpp"
#include "scan2sim/usd/usda.hpp"

namespace scan2sim {

AnnotatedScene load_scene_usda(const std::string& usda_path,
                               const std::string& annotation_path) {
  usd::UsdDocument doc = usd::load_usda_file(usda_path);

  std::ifstream in(annotation_path);
  if (!in)
    throw Error(ErrorKind::IoError, "cannot open '" + annotation_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::vector<InstanceNode> nodes;
  std::vector<ArticulationSpec> articulations;
  parse_annotation(ss.str(), nodes, articulations);

  TriMesh mesh;
  for (auto& node : nodes) {
    const usd::Prim* prim = doc.root.find_child(usd::sanitize_prim_name(node.id));
    if (!prim)
      throw Error(ErrorKind::ReferenceError,
                  "scene usda has no prim for node '" + node.id + "'");
    const usd::TypedValue* points = prim->find_attribute("points");
    const usd::TypedValue* indices = prim->find_attribute("faceVertexIndices");
    const usd::TypedValue* counts = prim->find_attribute("faceVertexCounts");
    if (!points || !points->value || !indices || !indices->value || !counts ||
        !counts->value)
      throw Error(ErrorKind::ReferenceError,
                  "prim '" + node.id +
                      "' carries no mesh; a geometry-focused scene usda is required");

    const auto& pts = std::get<std::vector<Eigen::Vector3f>>(*points->value);
    const auto& idx = std::get<std::vector<int>>(*indices->value);
    const auto& cnt = std::get<std::vector<int>>(*counts->value);

    const int vertex_base = mesh.vertex_count();
    for (const auto& p : pts) mesh.vertices.push_back(p.cast<double>());

    const int face_base = mesh.face_count();
    size_t cursor = 0;
    for (int c : cnt) {
      if (c != 3)
        throw Error(ErrorKind::UnsupportedConstruct,
                    "non-triangle face in prim '" + node.id + "'");
      if (cursor + 3 > idx.size())
        throw Error(ErrorKind::ReferenceError,
                    "faceVertexIndices shorter than faceVertexCounts in '" +
                        node.id + "'");
      mesh.faces.push_back({idx[cursor] + vertex_base, idx[cursor + 1] + vertex_base,
                            idx[cursor + 2] + vertex_base});
      cursor += 3;
    }

    // Remap the node's face ids (original mesh order) onto the rebuilt mesh.
    const std::vector<int> original = node.faces;
    if (static_cast<int>(original.size()) != mesh.face_count() - face_base)
      throw Error(ErrorKind::ReferenceError,
                  "prim '" + node.id + "' face count differs from annotation");
    std::unordered_map<int, int> remap;
    remap.reserve(original.size());
    for (size_t k = 0; k < original.size(); ++k)
      remap[original[k]] = face_base + static_cast<int>(k);

    node.faces.clear();
    for (size_t k = 0; k < original.size(); ++k)
      node.faces.push_back(face_base + static_cast<int>(k));
    for (auto& [kind, region] : node.regions) {
      for (int& f : region) {
        auto it = remap.find(f);
        if (it == remap.end())
          throw Error(ErrorKind::ReferenceError,
                      "region face " + std::to_string(f) + " outside node '" +
                          node.id + "'");
        f = it->second;
      }
      std::sort(region.begin(), region.end());
    }
  }

  return make_scene(std::move(mesh), std::move(nodes), std::move(articulations));
}

}  // namespace scan2sim
