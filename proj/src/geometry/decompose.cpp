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

#include "scan2sim/geometry/decompose.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "scan2sim/errors.hpp"

namespace scan2sim::geom {

namespace {

// Half thickness used to give planar pieces a proper hull.
constexpr double kSlabHalfThickness = 1e-4;

std::vector<Eigen::Vector3d> gather_points(const TriMesh& mesh,
                                           const std::vector<int>& faces,
                                           const std::vector<int>& loose) {
  std::set<int> ids(loose.begin(), loose.end());
  for (int f : faces)
    for (int k = 0; k < 3; ++k) ids.insert(mesh.faces[static_cast<size_t>(f)][k]);
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(ids.size());
  for (int i : ids) pts.push_back(mesh.vertices[static_cast<size_t>(i)]);
  return pts;
}

// Hull of the points, thickening along degenerate principal directions when
// the set is flat, collinear or a single point.
ConvexPiece robust_hull(const std::vector<Eigen::Vector3d>& pts) {
  if (pts.size() >= 4) {
    try {
      return quickhull(pts);
    } catch (const Error&) {
      // fall through to thickening
    }
  }

  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) {
    Eigen::Vector3d d = p - mean;
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  const Eigen::Vector3d evals = eig.eigenvalues().cwiseMax(0.0);
  const double top = std::max(evals(2), 1e-30);

  std::vector<Eigen::Vector3d> expanded = pts;
  for (int k = 0; k < 3; ++k) {
    if (evals(k) > top * 1e-16 && evals(k) > 1e-24) continue;
    Eigen::Vector3d dir = eig.eigenvectors().col(k) * kSlabHalfThickness;
    expanded.reserve(expanded.size() + pts.size() * 2);
    for (const auto& p : pts) {
      expanded.push_back(p + dir);
      expanded.push_back(p - dir);
    }
  }
  return quickhull(expanded);
}

double distance_to_faces(const Eigen::Vector3d& p, const TriMesh& mesh,
                         const std::vector<int>& faces) {
  double best = std::numeric_limits<double>::infinity();
  for (int f : faces) {
    const auto& tri = mesh.faces[static_cast<size_t>(f)];
    Eigen::Vector3d q = closest_point_on_triangle(
        p, mesh.vertices[static_cast<size_t>(tri[0])],
        mesh.vertices[static_cast<size_t>(tri[1])],
        mesh.vertices[static_cast<size_t>(tri[2])]);
    best = std::min(best, (p - q).norm());
  }
  return best;
}

struct WorkPiece {
  std::vector<int> faces;
  std::vector<int> loose;  // unreferenced vertex ids carried along
  int depth = 0;
  int seq = 0;
  double concavity = 0;
  ConvexPiece hull;
};

struct WorseConcavity {
  bool operator()(const WorkPiece& a, const WorkPiece& b) const {
    if (a.concavity != b.concavity) return a.concavity < b.concavity;
    return a.seq > b.seq;
  }
};

}  // namespace

Eigen::Vector3d closest_point_on_triangle(const Eigen::Vector3d& p,
                                          const Eigen::Vector3d& a,
                                          const Eigen::Vector3d& b,
                                          const Eigen::Vector3d& c) {
  // Ericson, Real-Time Collision Detection, 5.1.5.
  const Eigen::Vector3d ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return a;

  const Eigen::Vector3d bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + ab * (d1 / (d1 - d3));

  const Eigen::Vector3d cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + ac * (d2 / (d2 - d6));

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0)
    return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));

  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

double piece_concavity(const TriMesh& mesh, const std::vector<int>& faces,
                       const ConvexPiece& hull) {
  double worst = 0;

  // (a) How far does the source surface sink below the hull?
  for (int f : faces) {
    const auto& tri = mesh.faces[static_cast<size_t>(f)];
    const Eigen::Vector3d& a = mesh.vertices[static_cast<size_t>(tri[0])];
    const Eigen::Vector3d& b = mesh.vertices[static_cast<size_t>(tri[1])];
    const Eigen::Vector3d& c = mesh.vertices[static_cast<size_t>(tri[2])];
    const Eigen::Vector3d samples[] = {a,
                                       b,
                                       c,
                                       (a + b) / 2,
                                       (b + c) / 2,
                                       (a + c) / 2,
                                       (a + b + c) / 3};
    for (const auto& s : samples)
      worst = std::max(worst, hull_inward_depth(s, hull));
  }
  if (faces.empty())
    return worst;

  // (b) How far does the hull bulge away from the source surface? This is
  // the direction that catches open cavities whose rim points all lie on
  // the hull.
  for (const auto& hf : hull.hull_faces) {
    const Eigen::Vector3d& a = hull.hull_vertices[static_cast<size_t>(hf[0])];
    const Eigen::Vector3d& b = hull.hull_vertices[static_cast<size_t>(hf[1])];
    const Eigen::Vector3d& c = hull.hull_vertices[static_cast<size_t>(hf[2])];
    const Eigen::Vector3d mid = (a + b + c) / 3;
    const Eigen::Vector3d samples[] = {(a + b) / 2, (b + c) / 2, (a + c) / 2,
                                       mid,         (a + mid) / 2, (b + mid) / 2,
                                       (c + mid) / 2};
    for (const auto& s : samples)
      worst = std::max(worst, distance_to_faces(s, mesh, faces));
  }
  return worst;
}

ConvexDecomposition convex_decompose(const TriMesh& mesh,
                                     const DecomposeParams& params) {
  if (mesh.vertices.empty())
    throw Error(ErrorKind::DegenerateInput, "empty mesh");

  std::vector<bool> referenced(mesh.vertices.size(), false);
  for (const auto& f : mesh.faces)
    for (int k = 0; k < 3; ++k) referenced[static_cast<size_t>(f[k])] = true;

  WorkPiece root;
  root.faces.resize(mesh.faces.size());
  for (size_t i = 0; i < mesh.faces.size(); ++i) root.faces[i] = static_cast<int>(i);
  for (size_t i = 0; i < mesh.vertices.size(); ++i)
    if (!referenced[i]) root.loose.push_back(static_cast<int>(i));

  int seq_counter = 0;
  auto finish_piece = [&](WorkPiece& piece) {
    piece.hull.source_faces = piece.faces;
  };
  auto prepare = [&](WorkPiece piece) {
    piece.seq = seq_counter++;
    piece.hull = robust_hull(gather_points(mesh, piece.faces, piece.loose));
    piece.concavity = piece_concavity(mesh, piece.faces, piece.hull);
    return piece;
  };

  std::priority_queue<WorkPiece, std::vector<WorkPiece>, WorseConcavity> queue;
  queue.push(prepare(std::move(root)));
  std::vector<WorkPiece> done;
  bool exhausted = false;
  int total_pieces = 1;

  while (!queue.empty()) {
    if (queue.top().concavity <= params.concavity_thresh) break;
    if (total_pieces >= params.max_pieces) {
      exhausted = true;
      break;
    }
    WorkPiece piece = queue.top();
    queue.pop();
    if (piece.depth >= params.max_depth || piece.faces.size() <= 1) {
      exhausted = true;
      finish_piece(piece);
      done.push_back(std::move(piece));
      continue;
    }

    // Split along the longest AABB axis through the centroid.
    auto pts = gather_points(mesh, piece.faces, piece.loose);
    geom::Aabb box;
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& p : pts) {
      box.extend(p);
      centroid += p;
    }
    centroid /= static_cast<double>(pts.size());
    int axis = 0;
    box.sizes().maxCoeff(&axis);
    const double pivot = centroid[axis];

    auto face_mid = [&](int f) {
      const auto& tri = mesh.faces[static_cast<size_t>(f)];
      return (mesh.vertices[static_cast<size_t>(tri[0])][axis] +
              mesh.vertices[static_cast<size_t>(tri[1])][axis] +
              mesh.vertices[static_cast<size_t>(tri[2])][axis]) /
             3.0;
    };

    WorkPiece left, right;
    for (int f : piece.faces)
      (face_mid(f) <= pivot ? left : right).faces.push_back(f);
    for (int v : piece.loose)
      (mesh.vertices[static_cast<size_t>(v)][axis] <= pivot ? left : right)
          .loose.push_back(v);

    if (left.faces.empty() || right.faces.empty()) {
      // All centroids on one side: fall back to a median split so stacked
      // coplanar faces still make progress.
      std::vector<int> sorted = piece.faces;
      std::stable_sort(sorted.begin(), sorted.end(), [&](int fa, int fb) {
        double ma = face_mid(fa), mb = face_mid(fb);
        if (ma != mb) return ma < mb;
        return fa < fb;
      });
      left.faces.assign(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2));
      right.faces.assign(sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
      if (left.faces.empty() || right.faces.empty()) {
        exhausted = true;
        finish_piece(piece);
        done.push_back(std::move(piece));
        continue;
      }
    }

    left.depth = right.depth = piece.depth + 1;
    queue.push(prepare(std::move(left)));
    queue.push(prepare(std::move(right)));
    ++total_pieces;
  }

  while (!queue.empty()) {
    WorkPiece piece = queue.top();
    queue.pop();
    finish_piece(piece);
    done.push_back(std::move(piece));
  }

  std::sort(done.begin(), done.end(),
            [](const WorkPiece& a, const WorkPiece& b) { return a.seq < b.seq; });

  ConvexDecomposition result;
  result.budget_exhausted = exhausted;
  for (auto& piece : done) result.pieces.push_back(std::move(piece.hull));
  return result;
}

}  // namespace scan2sim::geom
