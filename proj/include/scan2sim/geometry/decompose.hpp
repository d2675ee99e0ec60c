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

#include "scan2sim/geometry/quickhull.hpp"
#include "scan2sim/scene_model.hpp"

namespace scan2sim::geom {

struct DecomposeParams {
  double concavity_thresh = 0.02;  // meters
  int max_pieces = 64;
  int max_depth = 8;
};

struct ConvexDecomposition {
  std::vector<ConvexPiece> pieces;
  bool budget_exhausted = false;  // a piece above threshold hit a limit
};

// Recursive axis-split approximate convex decomposition. A piece's
// concavity is the larger of (a) the deepest source sample point below its
// hull surface and (b) the farthest hull-surface sample from the source
// surface; (b) is what makes open cavities (a scanned drawer without its
// front) split instead of being sealed by one hull. The worst piece is
// split by the axis-aligned plane through its vertex centroid along the
// longest AABB axis until every piece passes the threshold or a budget is
// hit. Deterministic. Planar pieces are thickened slightly so every piece
// has a proper hull; degenerate meshes yield a single piece.
ConvexDecomposition convex_decompose(const TriMesh& mesh,
                                     const DecomposeParams& params);

// Concavity of a bare piece, exposed for tests.
double piece_concavity(const TriMesh& mesh, const std::vector<int>& faces,
                       const ConvexPiece& hull);

// Closest point on triangle abc to p.
Eigen::Vector3d closest_point_on_triangle(const Eigen::Vector3d& p,
                                          const Eigen::Vector3d& a,
                                          const Eigen::Vector3d& b,
                                          const Eigen::Vector3d& c);

}  // namespace scan2sim::geom
