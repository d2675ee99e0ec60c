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

#include <Eigen/Core>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scan2sim/geometry/aabb.hpp"

namespace scan2sim {

// Indexed triangle mesh. Coordinates are meters, z-up, right-handed.
// face_owner, when nonempty, maps each face to the owning instance id.
struct TriMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<std::string> face_owner;  // empty or faces.size()

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }

  // Checks index bounds, degenerate faces and coordinate finiteness.
  // Throws Error(ReferenceError/ParseError) on violation.
  void validate() const;

  geom::Aabb bounds() const;
};

enum class NodeKind { Object, Part };

enum class RegionKind { Fixed, Movable, Graspable };

const char* region_kind_name(RegionKind k);

struct InstanceNode {
  std::string id;
  std::string label;
  NodeKind kind = NodeKind::Object;
  std::optional<std::string> parent;          // set for parts
  std::vector<int> faces;                     // face ids into scene mesh, sorted
  std::map<RegionKind, std::vector<int>> regions;  // face ids, subsets of `faces`
};

enum class JointType { Revolute, Prismatic };

const char* joint_type_name(JointType t);

struct ArticulationSpec {
  std::string part_id;
  JointType joint_type = JointType::Prismatic;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();  // unit length
  Eigen::Vector3d pivot = Eigen::Vector3d::Zero();  // meters
  double range_lo = 0.0;  // radians (revolute) or meters (prismatic)
  double range_hi = 0.0;
};

// An annotated scan: one shared mesh plus the instance hierarchy and the
// articulation records. Immutable after load; every operation that consumes
// it is a pure function.
struct AnnotatedScene {
  TriMesh mesh;
  std::vector<InstanceNode> nodes;
  std::vector<ArticulationSpec> articulations;

  const InstanceNode* find_node(const std::string& id) const;
  const InstanceNode& node(const std::string& id) const;  // throws UnknownId
  const ArticulationSpec* find_articulation(const std::string& part_id) const;

  // Part ids whose parent is `object_id`.
  std::vector<std::string> part_ids_of(const std::string& object_id) const;

  // Cross-checks all scene invariants (unique ids, parent kinds, region
  // subsets, disjoint face ownership, articulation references).
  void validate() const;
};

// Loads an OBJ or PLY mesh plus the schema-v1 annotation JSON and validates
// all scene invariants. Rejects unknown schema versions (SchemaError) and
// dangling face/node ids (ReferenceError).
AnnotatedScene load_scene(const std::string& mesh_path,
                          const std::string& annotation_path);

// Rebuilds a scene from a geometry-focused usda and its annotation JSON
// (mesh data comes from the prim sub-meshes, face ids are remapped).
AnnotatedScene load_scene_usda(const std::string& usda_path,
                               const std::string& annotation_path);

// Builds a scene from already-parsed pieces, running the same validation as
// load_scene. Used by fixtures and by the usda-backed loader.
AnnotatedScene make_scene(TriMesh mesh, std::vector<InstanceNode> nodes,
                          std::vector<ArticulationSpec> articulations);

// Canonical annotation JSON for the scene (schema v1, sorted keys, 2-space
// indent). load_annotation(save_annotation(s)) is bitwise identity.
std::string save_annotation(const AnnotatedScene& scene);

// Parses annotation JSON against schema v1 without a mesh (mesh-dependent
// checks run in make_scene).
void parse_annotation(const std::string& json_text,
                      std::vector<InstanceNode>& nodes,
                      std::vector<ArticulationSpec>& articulations);

// Tight axis-aligned bounds over all vertices used by the node's faces.
// Throws UnknownId for a missing node.
geom::Aabb node_aabb(const AnnotatedScene& scene, const std::string& id);

// Vertices referenced by the node's faces, deduplicated by index, in
// ascending vertex-index order.
std::vector<Eigen::Vector3d> node_vertices(const AnnotatedScene& scene,
                                           const InstanceNode& node);

// Sub-mesh for one node: faces in ascending face-id order, vertices
// re-indexed into a compact local space (no welding).
TriMesh extract_submesh(const AnnotatedScene& scene, const InstanceNode& node);

}  // namespace scan2sim
