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
#include <set>
#include <string>

#include "scan2sim/geometry/decompose.hpp"
#include "scan2sim/scene_model.hpp"
#include "scan2sim/usd/document.hpp"

namespace scan2sim::sim {

struct DecimationPolicy {
  double structural_ratio = 0.10;  // walls, floors, ceilings
  double static_ratio = 0.30;      // other static objects
  // Manipulated geometry always stays at full resolution.
};

struct SimTaskConfig {
  std::string target_part_id;
  Eigen::Vector3d grasp_point = Eigen::Vector3d::Zero();
  ArticulationSpec articulation;
  double robot_standoff = 0.55;  // meters
  double robot_reach = 0.85;     // meters
  double success_threshold = 0.2;  // meters (prismatic) or radians (revolute)
  bool threshold_is_default = true;

  std::string to_json() const;
};

enum class NodeClass { Structural, StaticObj, Manipulated };

const char* node_class_name(NodeClass c);

struct ClassifyConfig {
  std::set<std::string> structural_labels = {"wall", "floor", "ceiling",
                                             "door frame"};
};

// Manipulated wins over everything; otherwise structural by label.
NodeClass classify_structural(const InstanceNode& node,
                              const std::set<std::string>& manipulated_ids,
                              const ClassifyConfig& config);

// Mean of the deduplicated vertices of the part's graspable region.
// Throws NoGraspRegion when the region is absent or empty.
Eigen::Vector3d compute_grasp_point(const AnnotatedScene& scene,
                                    const std::string& part_id);

// Adds /joints/<name>_fixed binding the prim to the world root so an
// incomplete scan cannot topple under sim forces while its articulated
// children stay simulable. Throws UnknownPath for a missing prim and
// PrimExists when applied twice; the input document is never modified.
usd::UsdDocument fix_to_ground(const usd::UsdDocument& doc,
                               const std::string& prim_path);

// Vertical translation that rests the object's box bottom on the support's
// horizontal surface with 1 mm clearance. x/y are untouched.
Eigen::Vector3d snap_to_surface(const AnnotatedScene& scene,
                                const std::string& object_id,
                                const std::string& support_id);

struct NodeReport {
  std::string id;
  NodeClass cls = NodeClass::StaticObj;
  int faces_before = 0;
  int faces_after = 0;
  int collision_pieces = 0;
  std::vector<std::string> fixes;
};

struct SimBundle {
  usd::UsdDocument usd;  // flat geometry-focused layout
  std::map<std::string, std::vector<geom::ConvexPiece>> collision_pieces;
  SimTaskConfig task;
  std::vector<NodeReport> node_reports;
  int merged_structural_faces = 0;

  std::string report_json() const;
};

// Compiles the scene for simulation: structural nodes decimated to
// structural_ratio and merged into one static prim, other static objects
// decimated to static_ratio, the target part and its parent kept at full
// resolution with convex collision pieces, the parent fixed to the ground,
// and the task config extracted from the annotations.
SimBundle build_sim_bundle(const AnnotatedScene& scene,
                           const std::string& target_part_id,
                           const DecimationPolicy& policy,
                           const geom::DecomposeParams& decomp_params,
                           const ClassifyConfig& classify = {});

}  // namespace scan2sim::sim
