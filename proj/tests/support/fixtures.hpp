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
#include <string>
#include <vector>

#include "scan2sim/scene_model.hpp"

namespace scan2sim::fixtures {

// Closed axis-aligned box, 8 vertices, 12 outward-wound triangles.
TriMesh box_mesh(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi);

// Box with one face removed. face: 0/1 -x/+x, 2/3 -y/+y, 4/5 -z/+z.
TriMesh open_box_mesh(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
                      int skip_face);

// Box whose +z face is an n x n grid (dense top for stable plane fits).
TriMesh box_mesh_top_subdiv(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
                            int n);

// Single-sided rectangular sheet grid; axis is the constant coordinate
// (0=x, 1=y, 2=z) at value `at`, spanning [u_lo,u_hi] x [v_lo,v_hi] in the
// other two axes (in ascending axis order), subdivided n x n.
TriMesh sheet_mesh(int axis, double at, double u_lo, double u_hi, double v_lo,
                   double v_hi, int n);

// UV sphere; rings * segments * 2 triangles.
TriMesh uv_sphere_mesh(const Eigen::Vector3d& center, double radius, int rings,
                       int segments);

// L-shaped prism (concave): a cube with a quadrant slab removed.
TriMesh l_prism_mesh();

// Concatenates meshes assigning faces to named nodes in order.
class SceneBuilder {
 public:
  // Appends a node owning the faces of `part`. Returns the index of the
  // node's first face in the assembled mesh.
  int add_node(const std::string& id, const std::string& label, NodeKind kind,
               const std::string& parent, const TriMesh& part);
  // Region face ids are local to the node's own mesh (0-based).
  void add_region(const std::string& id, RegionKind kind,
                  std::vector<int> local_faces);
  void add_articulation(const ArticulationSpec& art);
  AnnotatedScene build();

 private:
  TriMesh mesh_;
  std::vector<InstanceNode> nodes_;
  std::vector<ArticulationSpec> articulations_;
};

// The five synthetic scan scenes used across the suite.
AnnotatedScene bedroom_scene();        // floor_1 wall_2 bed_3 nightstand_4
AnnotatedScene desk_scene();           // floor_1 wall_2 desk_3
AnnotatedScene desk_obstacle_scene();  // desk_scene + obstacle_5 on the desk top
AnnotatedScene office_cabinet_scene(); // structural set + cabinet_1/drawer_7
AnnotatedScene livingroom_scene();     // sofa table lamp
AnnotatedScene kitchen_scene();        // counter + fridge with revolute door

// Insertable objects (local frames, pre-oriented z-up).
TriMesh pillow_mesh();  // 0.6 x 0.4 x 0.12, centered
TriMesh bottle_mesh();  // 0.07 x 0.07 x 0.26, centered
TriMesh poster_mesh();  // thin along x, for vertical placement

}  // namespace scan2sim::fixtures
