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

#include "scan2sim/usd/flavors.hpp"

#include <algorithm>
#include <cmath>

#include "scan2sim/errors.hpp"

namespace scan2sim::usd {

namespace {

constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;

Prim make_descriptive_prim(const AnnotatedScene& scene, const InstanceNode& node) {
  Prim prim(sanitize_prim_name(node.id), "Xform");
  prim.set_attribute("label", TypedValue::string_(node.label));
  geom::Aabb box = node_aabb(scene, node.id);
  prim.set_attribute("bbox_min", TypedValue::double3(box.min()));
  prim.set_attribute("bbox_max", TypedValue::double3(box.max()));
  if (const ArticulationSpec* art = scene.find_articulation(node.id))
    set_articulation_attributes(prim, *art);
  return prim;
}

Prim make_mesh_prim(const AnnotatedScene& scene, const InstanceNode& node) {
  Prim prim(sanitize_prim_name(node.id), "Mesh");
  prim.set_attribute("label", TypedValue::string_(node.label));
  TriMesh sub = extract_submesh(scene, node);
  std::vector<Eigen::Vector3f> points;
  points.reserve(sub.vertices.size());
  for (const auto& v : sub.vertices) points.push_back(v.cast<float>());
  std::vector<int> indices;
  indices.reserve(sub.faces.size() * 3);
  std::vector<int> counts(sub.faces.size(), 3);
  for (const auto& f : sub.faces) {
    indices.push_back(f[0]);
    indices.push_back(f[1]);
    indices.push_back(f[2]);
  }
  prim.set_attribute("points", TypedValue::point3f_array(std::move(points)));
  prim.set_attribute("faceVertexIndices", TypedValue::int_array(std::move(indices)));
  prim.set_attribute("faceVertexCounts", TypedValue::int_array(std::move(counts)));
  return prim;
}

}  // namespace

void set_articulation_attributes(Prim& prim, const ArticulationSpec& art) {
  prim.set_attribute("joint_type", TypedValue::token(joint_type_name(art.joint_type)));
  prim.set_attribute("axis", TypedValue::double3(art.axis));
  prim.set_attribute("pivot", TypedValue::double3(art.pivot));
  const double unit = art.joint_type == JointType::Revolute ? kRadToDeg : 1.0;
  prim.set_attribute("physics:lowerLimit", TypedValue::double_(art.range_lo * unit));
  prim.set_attribute("physics:upperLimit", TypedValue::double_(art.range_hi * unit));
}

std::string joint_prim_name(const std::string& part_id,
                            const std::vector<std::string>& taken) {
  std::string base = sanitize_prim_name(part_id) + "_joint";
  std::string name = base;
  int n = 2;
  while (std::find(taken.begin(), taken.end(), name) != taken.end())
    name = base + "_" + std::to_string(n++);
  return name;
}

UsdDocument build_descriptive(const AnnotatedScene& scene) {
  UsdDocument doc;
  for (const auto& node : scene.nodes) {
    if (node.kind != NodeKind::Object) continue;
    Prim prim = make_descriptive_prim(scene, node);
    for (const auto& part_id : scene.part_ids_of(node.id))
      prim.children.push_back(make_descriptive_prim(scene, scene.node(part_id)));
    doc.root.children.push_back(std::move(prim));
  }
  return doc;
}

UsdDocument build_geometry_focused(const AnnotatedScene& scene) {
  UsdDocument doc;
  for (const auto& node : scene.nodes)
    doc.root.children.push_back(make_mesh_prim(scene, node));

  if (!scene.articulations.empty()) {
    Prim joints("joints", "Scope");
    std::vector<std::string> taken;
    for (const auto& art : scene.articulations) {
      const InstanceNode& part = scene.node(art.part_id);
      if (!part.parent)
        throw Error(ErrorKind::SchemaError,
                    "articulated part '" + part.id + "' has no parent");
      std::string name = joint_prim_name(art.part_id, taken);
      taken.push_back(name);
      Prim joint(name, art.joint_type == JointType::Revolute
                           ? "PhysicsRevoluteJoint"
                           : "PhysicsPrismaticJoint");
      joint.set_attribute(
          "body0", TypedValue::string_("/" + sanitize_prim_name(*part.parent)));
      joint.set_attribute(
          "body1", TypedValue::string_("/" + sanitize_prim_name(part.id)));
      set_articulation_attributes(joint, art);
      joint.attributes.erase("joint_type");  // the prim type already says it
      joints.children.push_back(std::move(joint));
    }
    doc.root.children.push_back(std::move(joints));
  }
  return doc;
}

UsdDocument build_flavor(const AnnotatedScene& scene, FlavorKind kind) {
  return kind == FlavorKind::Descriptive ? build_descriptive(scene)
                                         : build_geometry_focused(scene);
}

}  // namespace scan2sim::usd
