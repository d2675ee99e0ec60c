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

#include "scan2sim/simprep/bundle.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "scan2sim/errors.hpp"
#include "scan2sim/geometry/decimate.hpp"
#include "scan2sim/geometry/plane.hpp"
#include "scan2sim/geometry/weld.hpp"
#include "scan2sim/usd/flavors.hpp"

namespace scan2sim::sim {

using nlohmann::json;

namespace {

constexpr double kClearance = 1e-3;      // snap clearance, 1 mm
constexpr double kWeldEps = 1e-6;        // merge weld tolerance
constexpr double kGraspInflate = 0.05;   // grasp containment slack
constexpr double kRevoluteDefaultThreshold = 0.5;  // radians, non-paper default

std::string normalized_label(const std::string& label) {
  std::string out;
  for (char c : label) out.push_back(static_cast<char>(std::tolower(
      static_cast<unsigned char>(c))));
  // trim
  size_t b = out.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = out.find_last_not_of(" \t");
  return out.substr(b, e - b + 1);
}

usd::Prim mesh_prim(const std::string& name, const std::string& label,
                    const TriMesh& mesh) {
  usd::Prim prim(usd::sanitize_prim_name(name), "Mesh");
  prim.set_attribute("label", usd::TypedValue::string_(label));
  std::vector<Eigen::Vector3f> points;
  points.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices) points.push_back(v.cast<float>());
  std::vector<int> indices;
  indices.reserve(mesh.faces.size() * 3);
  for (const auto& f : mesh.faces) {
    indices.push_back(f[0]);
    indices.push_back(f[1]);
    indices.push_back(f[2]);
  }
  prim.set_attribute("points", usd::TypedValue::point3f_array(std::move(points)));
  prim.set_attribute("faceVertexIndices",
                     usd::TypedValue::int_array(std::move(indices)));
  prim.set_attribute("faceVertexCounts", usd::TypedValue::int_array(
                                             std::vector<int>(mesh.faces.size(), 3)));
  return prim;
}

json vec3_json(const Eigen::Vector3d& v) { return json{v.x(), v.y(), v.z()}; }

}  // namespace

const char* node_class_name(NodeClass c) {
  switch (c) {
    case NodeClass::Structural: return "structural";
    case NodeClass::StaticObj: return "static_obj";
    case NodeClass::Manipulated: return "manipulated";
  }
  return "?";
}

NodeClass classify_structural(const InstanceNode& node,
                              const std::set<std::string>& manipulated_ids,
                              const ClassifyConfig& config) {
  if (manipulated_ids.count(node.id)) return NodeClass::Manipulated;
  if (config.structural_labels.count(normalized_label(node.label)))
    return NodeClass::Structural;
  return NodeClass::StaticObj;
}

Eigen::Vector3d compute_grasp_point(const AnnotatedScene& scene,
                                    const std::string& part_id) {
  const InstanceNode& part = scene.node(part_id);
  auto it = part.regions.find(RegionKind::Graspable);
  if (it == part.regions.end() || it->second.empty())
    throw Error(ErrorKind::NoGraspRegion,
                "part '" + part_id + "' has no graspable region");
  std::set<int> verts;
  for (int f : it->second)
    for (int k = 0; k < 3; ++k)
      verts.insert(scene.mesh.faces[static_cast<size_t>(f)][k]);
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (int v : verts) mean += scene.mesh.vertices[static_cast<size_t>(v)];
  return mean / static_cast<double>(verts.size());
}

usd::UsdDocument fix_to_ground(const usd::UsdDocument& doc,
                               const std::string& prim_path) {
  const usd::Prim* prim = doc.find_path(prim_path);
  if (!prim)
    throw Error(ErrorKind::UnknownPath, "no prim at '" + prim_path + "'");
  if (!prim->find_attribute("points"))
    throw Error(ErrorKind::TypeMismatch,
                "prim '" + prim_path + "' carries no mesh");

  const std::string joint_name =
      usd::split_prim_path(prim_path).back() + "_fixed";

  usd::UsdDocument out = doc;
  usd::Prim* joints = out.root.find_child("joints");
  if (joints && joints->find_child(joint_name))
    throw Error(ErrorKind::PrimExists,
                "joint '" + joint_name + "' already exists");
  if (!joints) {
    out.root.children.emplace_back("joints", "Scope");
    joints = &out.root.children.back();
  }
  usd::Prim joint(joint_name, "PhysicsFixedJoint");
  joint.set_attribute("body0", usd::TypedValue::string_("/"));  // world root
  joint.set_attribute("body1", usd::TypedValue::string_(prim_path));
  joints->children.push_back(std::move(joint));
  return out;
}

Eigen::Vector3d snap_to_surface(const AnnotatedScene& scene,
                                const std::string& object_id,
                                const std::string& support_id) {
  const geom::Aabb object_box = node_aabb(scene, object_id);
  const InstanceNode& support = scene.node(support_id);

  geom::RansacParams params;  // defaults; fixed seed keeps this deterministic
  geom::PlaneSurface plane = geom::ransac_plane(
      node_vertices(scene, support), params, geom::PlaneConstraint::Horizontal);

  const Eigen::Vector3d center = object_box.center();
  const double surface_z =
      (plane.offset - plane.normal.x() * center.x() -
       plane.normal.y() * center.y()) /
      plane.normal.z();
  return {0, 0, surface_z + kClearance - object_box.min().z()};
}

std::string SimTaskConfig::to_json() const {
  json j;
  j["target_part_id"] = target_part_id;
  j["grasp_point"] = vec3_json(grasp_point);
  j["joint"] = {{"type", joint_type_name(articulation.joint_type)},
                {"axis", vec3_json(articulation.axis)},
                {"pivot", vec3_json(articulation.pivot)},
                {"range", json{articulation.range_lo, articulation.range_hi}}};
  j["robot_standoff"] = robot_standoff;
  j["robot_reach"] = robot_reach;
  j["success_threshold"] = success_threshold;
  return j.dump(2) + "\n";
}

std::string SimBundle::report_json() const {
  json j;
  j["merged_structural_faces"] = merged_structural_faces;
  json nodes = json::array();
  for (const auto& r : node_reports) {
    json n;
    n["id"] = r.id;
    n["class"] = node_class_name(r.cls);
    n["faces_before"] = r.faces_before;
    n["faces_after"] = r.faces_after;
    n["collision_pieces"] = r.collision_pieces;
    n["fixes"] = r.fixes;
    nodes.push_back(std::move(n));
  }
  j["nodes"] = nodes;
  j["success_threshold_source"] =
      task.threshold_is_default
          ? (task.articulation.joint_type == JointType::Prismatic
                 ? "default_prismatic_0.2m"
                 : "default_revolute_0.5rad_nonpaper")
          : "configured";
  return j.dump(2) + "\n";
}

SimBundle build_sim_bundle(const AnnotatedScene& scene,
                           const std::string& target_part_id,
                           const DecimationPolicy& policy,
                           const geom::DecomposeParams& decomp_params,
                           const ClassifyConfig& classify) {
  const InstanceNode& target = scene.node(target_part_id);
  if (target.kind != NodeKind::Part || !target.parent)
    throw Error(ErrorKind::UnknownId,
                "target '" + target_part_id + "' is not a part");
  const ArticulationSpec* articulation = scene.find_articulation(target_part_id);
  if (!articulation)
    throw Error(ErrorKind::NoArticulation,
                "part '" + target_part_id + "' has no articulation");
  const Eigen::Vector3d grasp = compute_grasp_point(scene, target_part_id);

  const std::string parent_id = *target.parent;
  const std::set<std::string> manipulated{target_part_id, parent_id};

  SimBundle bundle;
  bundle.task.target_part_id = target_part_id;
  bundle.task.grasp_point = grasp;
  bundle.task.articulation = *articulation;
  bundle.task.success_threshold =
      articulation->joint_type == JointType::Prismatic ? 0.2
                                                       : kRevoluteDefaultThreshold;

  {
    geom::Aabb part_box = node_aabb(scene, target_part_id);
    part_box = geom::aabb_inflated(part_box, kGraspInflate);
    if (!part_box.contains(grasp))
      throw Error(ErrorKind::SchemaError,
                  "grasp point escapes the target part bounds");
  }

  // Per-node processing; merge structural output afterwards so the 10%
  // budget stays per object.
  std::vector<TriMesh> structural_meshes;
  int structural_input_faces = 0;
  std::vector<std::pair<const InstanceNode*, TriMesh>> emitted;  // per-node prims

  for (const auto& node : scene.nodes) {
    NodeReport report;
    report.id = node.id;
    report.cls = classify_structural(node, manipulated, classify);
    TriMesh sub = extract_submesh(scene, node);
    report.faces_before = sub.face_count();

    switch (report.cls) {
      case NodeClass::Structural: {
        geom::DecimateResult dec = geom::decimate_quadric(sub, policy.structural_ratio);
        report.faces_after = dec.mesh.face_count();
        report.fixes.push_back("decimated_structural");
        if (dec.too_small) report.fixes.push_back("decimation_skipped_too_small");
        structural_input_faces += report.faces_before;
        structural_meshes.push_back(std::move(dec.mesh));
        break;
      }
      case NodeClass::StaticObj: {
        geom::DecimateResult dec = geom::decimate_quadric(sub, policy.static_ratio);
        report.faces_after = dec.mesh.face_count();
        report.fixes.push_back("decimated_static");
        if (dec.too_small) report.fixes.push_back("decimation_skipped_too_small");
        emitted.emplace_back(&node, std::move(dec.mesh));
        break;
      }
      case NodeClass::Manipulated: {
        report.faces_after = sub.face_count();
        report.fixes.push_back("full_resolution");
        emitted.emplace_back(&node, std::move(sub));
        break;
      }
    }
    bundle.node_reports.push_back(std::move(report));
  }

  // Assemble the flat document: merged statics first, then per-node prims
  // in scene order, then joints.
  if (!structural_meshes.empty()) {
    geom::MergeResult merged = geom::merge_weld(structural_meshes, kWeldEps);
    bundle.merged_structural_faces = merged.mesh.face_count();
    bundle.usd.root.children.push_back(
        mesh_prim("static_structural", "structural", merged.mesh));
  }
  for (auto& [node, mesh] : emitted)
    bundle.usd.root.children.push_back(mesh_prim(node->id, node->label, mesh));

  std::set<std::string> prim_names;
  for (const auto& prim : bundle.usd.root.children) prim_names.insert(prim.name);

  if (!scene.articulations.empty()) {
    usd::Prim joints("joints", "Scope");
    std::vector<std::string> taken;
    for (const auto& art : scene.articulations) {
      const InstanceNode* part = scene.find_node(art.part_id);
      if (!part || !part->parent) continue;
      const std::string body0 = usd::sanitize_prim_name(*part->parent);
      const std::string body1 = usd::sanitize_prim_name(part->id);
      if (!prim_names.count(body0) || !prim_names.count(body1)) continue;
      std::string name = usd::joint_prim_name(art.part_id, taken);
      taken.push_back(name);
      usd::Prim joint(name, art.joint_type == JointType::Revolute
                                ? "PhysicsRevoluteJoint"
                                : "PhysicsPrismaticJoint");
      joint.set_attribute("body0", usd::TypedValue::string_("/" + body0));
      joint.set_attribute("body1", usd::TypedValue::string_("/" + body1));
      usd::set_articulation_attributes(joint, art);
      joint.attributes.erase("joint_type");
      joints.children.push_back(std::move(joint));
    }
    if (!joints.children.empty())
      bundle.usd.root.children.push_back(std::move(joints));
  }

  // Ground fix for the manipulated object's body.
  bundle.usd = fix_to_ground(bundle.usd, "/" + usd::sanitize_prim_name(parent_id));
  for (auto& report : bundle.node_reports)
    if (report.id == parent_id) report.fixes.push_back("fixed_to_ground");

  // Collision pieces for the dynamic bodies.
  for (const auto& id : {parent_id, target_part_id}) {
    TriMesh sub = extract_submesh(scene, scene.node(id));
    geom::ConvexDecomposition decomp = geom::convex_decompose(sub, decomp_params);
    const std::string prim_name = usd::sanitize_prim_name(id);
    for (auto& report : bundle.node_reports)
      if (report.id == id)
        report.collision_pieces = static_cast<int>(decomp.pieces.size());
    bundle.collision_pieces["/" + prim_name] = std::move(decomp.pieces);
  }

  return bundle;
}

}  // namespace scan2sim::sim
