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
#include <cstdint>
#include <span>
#include <vector>

namespace scan2sim::geom {

enum class PlaneOrientation { Horizontal, Vertical, Oblique };
enum class PlaneConstraint { Horizontal, Vertical, Any };

// Plane normal·x = offset with the consensus point set that produced it.
struct PlaneSurface {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();  // unit length
  double offset = 0.0;
  std::vector<Eigen::Vector3d> inlier_points;
  PlaneOrientation orientation = PlaneOrientation::Horizontal;

  double signed_distance(const Eigen::Vector3d& p) const {
    return normal.dot(p) - offset;
  }
  Eigen::Vector3d centroid() const;
};

struct RansacParams {
  double dist_thresh = 0.01;  // meters
  int iters = 1000;
  std::uint64_t seed = 0;
};

// Orientation bands relative to +z: horizontal within 15 deg, vertical
// within [75, 105] deg (measured between lines, so sign-free).
PlaneOrientation classify_orientation(const Eigen::Vector3d& unit_normal);
bool satisfies_constraint(const Eigen::Vector3d& unit_normal, PlaneConstraint c);

// Sample-consensus plane fit. Picks the hypothesis with the most inliers
// among constraint-satisfying samples, then least-squares refits on its
// inliers. Deterministic for a fixed seed. Throws DegenerateInput for < 3
// or collinear points, NoPlaneFound when no hypothesis reaches
// min(n, max(10, n/100)) inliers under the constraint.
PlaneSurface ransac_plane(std::span<const Eigen::Vector3d> points,
                          const RansacParams& params, PlaneConstraint constraint);

}  // namespace scan2sim::geom
