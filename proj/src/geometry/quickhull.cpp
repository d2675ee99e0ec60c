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

#include "scan2sim/geometry/quickhull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "scan2sim/errors.hpp"

namespace scan2sim::geom {

namespace {

struct HullFace {
  std::array<int, 3> v;
  Eigen::Vector3d normal;
  double offset = 0;
  bool alive = true;
  std::vector<int> outside;  // candidate points strictly above this face
};

double face_plane(const std::span<const Eigen::Vector3d>& pts,
                  const std::array<int, 3>& v, Eigen::Vector3d& normal,
                  double& offset) {
  Eigen::Vector3d e1 = pts[v[1]] - pts[v[0]];
  Eigen::Vector3d e2 = pts[v[2]] - pts[v[0]];
  Eigen::Vector3d cross = e1.cross(e2);
  double len = cross.norm();
  if (len < 1e-300) {
    normal = Eigen::Vector3d::Zero();
    offset = 0;
    return 0;
  }
  normal = cross / len;
  offset = normal.dot(pts[v[0]]);
  return len;
}

struct InitialSimplex {
  std::array<int, 4> v;
};

InitialSimplex initial_simplex(std::span<const Eigen::Vector3d> pts,
                               double eps) {
  const int n = static_cast<int>(pts.size());
  // Extreme points along each axis.
  std::array<int, 6> extreme{0, 0, 0, 0, 0, 0};
  for (int i = 1; i < n; ++i)
    for (int a = 0; a < 3; ++a) {
      if (pts[i][a] < pts[extreme[a * 2]][a]) extreme[a * 2] = i;
      if (pts[i][a] > pts[extreme[a * 2 + 1]][a]) extreme[a * 2 + 1] = i;
    }
  // Farthest pair among the extremes.
  int p0 = extreme[0], p1 = extreme[1];
  double best = -1;
  for (int a : extreme)
    for (int b : extreme) {
      double d = (pts[a] - pts[b]).squaredNorm();
      if (d > best) {
        best = d;
        p0 = a;
        p1 = b;
      }
    }
  if (best <= eps * eps)
    throw Error(ErrorKind::DegenerateInput, "all points coincident");

  // Farthest point from the p0-p1 line.
  Eigen::Vector3d dir = (pts[p1] - pts[p0]).normalized();
  int p2 = -1;
  best = eps;
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d d = pts[i] - pts[p0];
    double dist = (d - dir * dir.dot(d)).norm();
    if (dist > best) {
      best = dist;
      p2 = i;
    }
  }
  if (p2 < 0) throw Error(ErrorKind::DegenerateInput, "points are collinear");

  // Farthest point from the p0-p1-p2 plane.
  Eigen::Vector3d normal;
  double offset;
  face_plane(pts, {p0, p1, p2}, normal, offset);
  int p3 = -1;
  best = eps;
  for (int i = 0; i < n; ++i) {
    double dist = std::abs(normal.dot(pts[i]) - offset);
    if (dist > best) {
      best = dist;
      p3 = i;
    }
  }
  if (p3 < 0) throw Error(ErrorKind::DegenerateInput, "points are coplanar");

  // Orient so p3 sits below the (p0,p1,p2) face.
  if (normal.dot(pts[p3]) - offset > 0) std::swap(p1, p2);
  return {{p0, p1, p2, p3}};
}

}  // namespace

ConvexPiece quickhull(std::span<const Eigen::Vector3d> points) {
  const int n = static_cast<int>(points.size());
  if (n < 4)
    throw Error(ErrorKind::DegenerateInput, "hull needs >= 4 points");

  Eigen::Vector3d lo = points[0], hi = points[0];
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double diag = (hi - lo).norm();
  const double eps = std::max(diag * 1e-12, 1e-14);

  InitialSimplex simplex = initial_simplex(points, eps);
  const auto [a, b, c, d] = simplex.v;

  std::vector<HullFace> faces;
  auto add_face = [&](int i, int j, int k) {
    HullFace f;
    f.v = {i, j, k};
    face_plane(points, f.v, f.normal, f.offset);
    faces.push_back(std::move(f));
    return static_cast<int>(faces.size()) - 1;
  };
  add_face(a, b, c);
  add_face(a, c, d);
  add_face(a, d, b);
  add_face(b, d, c);

  // Claim points: each candidate goes to the first face it is above.
  for (int i = 0; i < n; ++i) {
    if (i == a || i == b || i == c || i == d) continue;
    for (auto& f : faces) {
      if (f.normal.dot(points[i]) - f.offset > eps) {
        f.outside.push_back(i);
        break;
      }
    }
  }

  std::vector<int> pending;
  for (int i = 0; i < static_cast<int>(faces.size()); ++i)
    if (!faces[i].outside.empty()) pending.push_back(i);

  while (!pending.empty()) {
    int fi = pending.back();
    pending.pop_back();
    if (!faces[fi].alive || faces[fi].outside.empty()) continue;

    // Farthest unclaimed point of this face.
    int apex = -1;
    double best = -1;
    for (int i : faces[fi].outside) {
      double dist = faces[fi].normal.dot(points[i]) - faces[fi].offset;
      if (dist > best) {
        best = dist;
        apex = i;
      }
    }

    // Visible set: all alive faces the apex is above.
    std::vector<int> visible;
    for (int i = 0; i < static_cast<int>(faces.size()); ++i)
      if (faces[i].alive &&
          faces[i].normal.dot(points[apex]) - faces[i].offset > eps)
        visible.push_back(i);

    // Horizon: directed edges of visible faces whose twin is not visible.
    std::map<std::pair<int, int>, bool> visible_edges;
    for (int i : visible)
      for (int k = 0; k < 3; ++k) {
        int u = faces[i].v[k], w = faces[i].v[(k + 1) % 3];
        visible_edges[{u, w}] = true;
      }
    std::vector<std::pair<int, int>> horizon;
    for (const auto& [edge, _] : visible_edges)
      if (!visible_edges.count({edge.second, edge.first}))
        horizon.push_back(edge);

    // Collect orphaned candidates, retire visible faces.
    std::vector<int> orphans;
    for (int i : visible) {
      faces[i].alive = false;
      for (int p : faces[i].outside)
        if (p != apex) orphans.push_back(p);
      faces[i].outside.clear();
    }

    std::vector<int> fresh;
    for (const auto& [u, w] : horizon) fresh.push_back(add_face(u, w, apex));

    for (int p : orphans)
      for (int i : fresh)
        if (faces[i].normal.dot(points[p]) - faces[i].offset > eps) {
          faces[i].outside.push_back(p);
          break;
        }
    for (int i : fresh)
      if (!faces[i].outside.empty()) pending.push_back(i);
  }

  // Compact to referenced vertices, ascending input order.
  std::unordered_map<int, int> remap;
  ConvexPiece out;
  std::vector<int> used;
  for (const auto& f : faces)
    if (f.alive)
      for (int v : f.v) used.push_back(v);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (int v : used) {
    remap[v] = static_cast<int>(out.hull_vertices.size());
    out.hull_vertices.push_back(points[v]);
  }
  for (const auto& f : faces)
    if (f.alive) out.hull_faces.push_back({remap[f.v[0]], remap[f.v[1]], remap[f.v[2]]});
  return out;
}

double hull_outward_distance(const Eigen::Vector3d& p, const ConvexPiece& hull) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& f : hull.hull_faces) {
    Eigen::Vector3d e1 = hull.hull_vertices[f[1]] - hull.hull_vertices[f[0]];
    Eigen::Vector3d e2 = hull.hull_vertices[f[2]] - hull.hull_vertices[f[0]];
    Eigen::Vector3d nrm = e1.cross(e2);
    double len = nrm.norm();
    if (len < 1e-300) continue;
    nrm /= len;
    worst = std::max(worst, nrm.dot(p - hull.hull_vertices[f[0]]));
  }
  return worst;
}

bool point_in_hull(const Eigen::Vector3d& p, const ConvexPiece& hull, double tol) {
  return hull_outward_distance(p, hull) <= tol;
}

double hull_inward_depth(const Eigen::Vector3d& p, const ConvexPiece& hull) {
  return std::max(0.0, -hull_outward_distance(p, hull));
}

}  // namespace scan2sim::geom
