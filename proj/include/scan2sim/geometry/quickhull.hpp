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
#include <span>
#include <vector>

namespace scan2sim::geom {

// Convex hull piece. hull_faces index hull_vertices and wind outward.
// source_faces lists the input-mesh faces a decomposition piece covers
// (empty for a bare hull).
struct ConvexPiece {
  std::vector<Eigen::Vector3d> hull_vertices;
  std::vector<std::array<int, 3>> hull_faces;
  std::vector<int> source_faces;
};

// 3D quickhull. Requires >= 4 affinely independent points, otherwise throws
// DegenerateInput. Every input point lies on or inside the result within a
// 1e-9 outward tolerance.
ConvexPiece quickhull(std::span<const Eigen::Vector3d> points);

// True when p is on or inside every face plane of the hull, within tol.
bool point_in_hull(const Eigen::Vector3d& p, const ConvexPiece& hull, double tol);

// Largest outward face-plane excess of p over the hull (<= 0 inside).
double hull_outward_distance(const Eigen::Vector3d& p, const ConvexPiece& hull);

// Depth of p below the closest face plane (0 for points on or outside).
double hull_inward_depth(const Eigen::Vector3d& p, const ConvexPiece& hull);

}  // namespace scan2sim::geom
