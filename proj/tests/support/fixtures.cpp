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

#include "fixtures.hpp"

#include <cmath>

#include "scan2sim/errors.hpp"

namespace scan2sim::fixtures {

namespace {

constexpr double kPi = 3.14159265358979323846;

void append(TriMesh& dst, const TriMesh& src) {
  const int base = dst.vertex_count();
  for (const auto& v : src.vertices) dst.vertices.push_back(v);
  for (const auto& f : src.faces)
    dst.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
}

// Adds the two triangles of a quad given its corners in outward CCW order.
void add_quad(TriMesh& m, const Eigen::Vector3d& a, const Eigen::Vector3d& b,
              const Eigen::Vector3d& c, const Eigen::Vector3d& d) {
  const int base = m.vertex_count();
  m.vertices.push_back(a);
  m.vertices.push_back(b);
  m.vertices.push_back(c);
  m.vertices.push_back(d);
  m.faces.push_back({base, base + 1, base + 2});
  m.faces.push_back({base, base + 2, base + 3});
}

// Corner layout shared by the box builders: bit 0 = x, 1 = y, 2 = z.
std::array<Eigen::Vector3d, 8> corners(const Eigen::Vector3d& lo,
                                       const Eigen::Vector3d& hi) {
  std::array<Eigen::Vector3d, 8> c;
  for (int i = 0; i < 8; ++i)
    c[static_cast<size_t>(i)] =
        Eigen::Vector3d(i & 1 ? hi.x() : lo.x(), i & 2 ? hi.y() : lo.y(),
                        i & 4 ? hi.z() : lo.z());
  return c;
}

// Outward CCW corner indices for face k (0..5: -x,+x,-y,+y,-z,+z).
constexpr int kFaceCorner[6][4] = {
    {0, 4, 6, 2},  // -x
    {1, 3, 7, 5},  // +x
    {0, 1, 5, 4},  // -y
    {2, 6, 7, 3},  // +y
    {0, 2, 3, 1},  // -z
    {4, 5, 7, 6},  // +z
};

}  // namespace

TriMesh box_mesh(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi) {
  return open_box_mesh(lo, hi, -1);
}

TriMesh open_box_mesh(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
                      int skip_face) {
  TriMesh m;
  auto c = corners(lo, hi);
  for (auto& v : c) m.vertices.push_back(v);
  for (int face = 0; face < 6; ++face) {
    if (face == skip_face) continue;
    const int* q = kFaceCorner[face];
    m.faces.push_back({q[0], q[1], q[2]});
    m.faces.push_back({q[0], q[2], q[3]});
  }
  return m;
}

TriMesh box_mesh_top_subdiv(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
                            int n) {
  TriMesh m = open_box_mesh(lo, hi, 5);  // everything but +z
  TriMesh top = sheet_mesh(2, hi.z(), lo.x(), hi.x(), lo.y(), hi.y(), n);
  append(m, top);
  return m;
}

TriMesh sheet_mesh(int axis, double at, double u_lo, double u_hi, double v_lo,
                   double v_hi, int n) {
  TriMesh m;
  auto point = [&](double u, double v) {
    Eigen::Vector3d p;
    switch (axis) {
      case 0: p = {at, u, v}; break;
      case 1: p = {u, at, v}; break;
      default: p = {u, v, at}; break;
    }
    return p;
  };
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      double u = u_lo + (u_hi - u_lo) * i / n;
      double v = v_lo + (v_hi - v_lo) * j / n;
      m.vertices.push_back(point(u, v));
    }
  auto vid = [&](int i, int j) { return i * (n + 1) + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      m.faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  return m;
}

TriMesh uv_sphere_mesh(const Eigen::Vector3d& center, double radius, int rings,
                       int segments) {
  TriMesh m;
  // rings+1 latitudes including poles
  for (int r = 0; r <= rings; ++r) {
    double phi = kPi * r / rings;  // 0..pi
    for (int s = 0; s < segments; ++s) {
      double theta = 2 * kPi * s / segments;
      m.vertices.push_back(center +
                           radius * Eigen::Vector3d(std::sin(phi) * std::cos(theta),
                                                    std::sin(phi) * std::sin(theta),
                                                    std::cos(phi)));
    }
  }
  auto vid = [&](int r, int s) { return r * segments + (s % segments); };
  for (int r = 0; r < rings; ++r)
    for (int s = 0; s < segments; ++s) {
      int a = vid(r, s), b = vid(r + 1, s), c = vid(r + 1, s + 1), d = vid(r, s + 1);
      m.faces.push_back({a, b, c});
      m.faces.push_back({a, c, d});
    }
  // Degenerate pole quads become degenerate triangles; weed them out by
  // checking for repeated positions.
  TriMesh clean;
  clean.vertices = m.vertices;
  for (const auto& f : m.faces) {
    const auto& p0 = m.vertices[static_cast<size_t>(f[0])];
    const auto& p1 = m.vertices[static_cast<size_t>(f[1])];
    const auto& p2 = m.vertices[static_cast<size_t>(f[2])];
    if ((p0 - p1).norm() < 1e-12 || (p1 - p2).norm() < 1e-12 ||
        (p0 - p2).norm() < 1e-12)
      continue;
    clean.faces.push_back(f);
  }
  return clean;
}

TriMesh l_prism_mesh() {
  // L cross-section in the xz plane, extruded along y: the unit cube minus
  // its upper-right quadrant.
  TriMesh m;
  const double y0 = 0, y1 = 0.4;
  // cross-section polygon (x, z), CCW
  const std::vector<Eigen::Vector2d> poly = {{0, 0},   {1, 0},   {1, 0.5},
                                             {0.5, 0.5}, {0.5, 1}, {0, 1}};
  auto p3 = [&](const Eigen::Vector2d& p, double y) {
    return Eigen::Vector3d(p.x(), y, p.y());
  };
  // side walls
  for (size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    add_quad(m, p3(a, y0), p3(b, y0), p3(b, y1), p3(a, y1));
  }
  // caps (fan from vertex 0; L is star-shaped from the corner at origin)
  for (size_t i = 1; i + 1 < poly.size(); ++i) {
    const int base = m.vertex_count();
    m.vertices.push_back(p3(poly[0], y0));
    m.vertices.push_back(p3(poly[i], y0));
    m.vertices.push_back(p3(poly[i + 1], y0));
    m.faces.push_back({base, base + 2, base + 1});  // -y cap faces outward
    const int b2 = m.vertex_count();
    m.vertices.push_back(p3(poly[0], y1));
    m.vertices.push_back(p3(poly[i], y1));
    m.vertices.push_back(p3(poly[i + 1], y1));
    m.faces.push_back({b2, b2 + 1, b2 + 2});  // +y cap
  }
  return m;
}

int SceneBuilder::add_node(const std::string& id, const std::string& label,
                           NodeKind kind, const std::string& parent,
                           const TriMesh& part) {
  const int first_face = mesh_.face_count();
  append(mesh_, part);
  InstanceNode n;
  n.id = id;
  n.label = label;
  n.kind = kind;
  if (!parent.empty()) n.parent = parent;
  for (int f = first_face; f < mesh_.face_count(); ++f) n.faces.push_back(f);
  nodes_.push_back(std::move(n));
  return first_face;
}

void SceneBuilder::add_region(const std::string& id, RegionKind kind,
                              std::vector<int> local_faces) {
  for (auto& n : nodes_) {
    if (n.id != id) continue;
    std::vector<int> global;
    for (int lf : local_faces) global.push_back(n.faces[static_cast<size_t>(lf)]);
    std::sort(global.begin(), global.end());
    n.regions[kind] = std::move(global);
    return;
  }
  throw Error(ErrorKind::UnknownId, "fixture node '" + id + "'");
}

void SceneBuilder::add_articulation(const ArticulationSpec& art) {
  articulations_.push_back(art);
}

AnnotatedScene SceneBuilder::build() {
  return make_scene(std::move(mesh_), std::move(nodes_),
                    std::move(articulations_));
}

AnnotatedScene bedroom_scene() {
  SceneBuilder b;
  b.add_node("floor_1", "floor", NodeKind::Object, "",
             sheet_mesh(2, 0.0, 0, 4, 0, 4, 6));
  b.add_node("wall_2", "wall", NodeKind::Object, "",
             sheet_mesh(0, 0.0, 0, 4, 0, 2.5, 6));
  b.add_node("bed_3", "bed", NodeKind::Object, "",
             box_mesh_top_subdiv({1.0, 0.5, 0.0}, {3.0, 2.1, 0.55}, 8));
  b.add_node("nightstand_4", "nightstand", NodeKind::Object, "",
             box_mesh({3.2, 0.5, 0.0}, {3.7, 1.0, 0.45}));
  return b.build();
}

AnnotatedScene desk_scene() {
  SceneBuilder b;
  b.add_node("floor_1", "floor", NodeKind::Object, "",
             sheet_mesh(2, 0.0, 0, 3.2, 0, 3.2, 6));
  b.add_node("wall_2", "wall", NodeKind::Object, "",
             sheet_mesh(0, 0.0, 0, 3.2, 0, 2.5, 6));
  b.add_node("desk_3", "desk", NodeKind::Object, "",
             box_mesh_top_subdiv({1.0, 1.0, 0.0}, {2.2, 1.8, 0.75}, 8));
  return b.build();
}

AnnotatedScene desk_obstacle_scene() {
  SceneBuilder b;
  b.add_node("floor_1", "floor", NodeKind::Object, "",
             sheet_mesh(2, 0.0, 0, 3.2, 0, 3.2, 6));
  b.add_node("wall_2", "wall", NodeKind::Object, "",
             sheet_mesh(0, 0.0, 0, 3.2, 0, 2.5, 6));
  b.add_node("desk_3", "desk", NodeKind::Object, "",
             box_mesh_top_subdiv({1.0, 1.0, 0.0}, {2.2, 1.8, 0.75}, 8));
  // A crate parked over the desk-top centroid so a first centered placement
  // must collide.
  b.add_node("obstacle_5", "crate", NodeKind::Object, "",
             box_mesh({1.40, 1.20, 0.75}, {1.80, 1.60, 1.05}));
  return b.build();
}

AnnotatedScene office_cabinet_scene() {
  SceneBuilder b;
  b.add_node("floor_1", "floor", NodeKind::Object, "",
             sheet_mesh(2, 0.0, 0, 4, 0, 4, 8));
  b.add_node("wall_2", "wall", NodeKind::Object, "",
             sheet_mesh(0, 0.0, 0, 4, 0, 2.5, 8));
  b.add_node("ceiling_9", "ceiling", NodeKind::Object, "",
             sheet_mesh(2, 2.5, 0, 4, 0, 4, 8));
  b.add_node("desk_3", "desk", NodeKind::Object, "",
             box_mesh_top_subdiv({0.8, 2.6, 0.0}, {2.0, 3.4, 0.75}, 6));

  // Cabinet body: open toward -y (the drawer slides out that way).
  b.add_node("cabinet_1", "cabinet", NodeKind::Object, "",
             open_box_mesh({3.0, 1.0, 0.0}, {3.6, 1.5, 0.8}, 2));

  // Drawer: open-top tray nested in the cabinet plus a handle bar on its
  // front face.
  TriMesh drawer = open_box_mesh({3.02, 1.02, 0.05}, {3.58, 1.48, 0.35}, 5);
  const int tray_faces = drawer.face_count();
  TriMesh handle = box_mesh({3.25, 0.98, 0.18}, {3.35, 1.02, 0.22});
  const int handle_first = drawer.face_count();
  {
    const int base = drawer.vertex_count();
    for (const auto& v : handle.vertices) drawer.vertices.push_back(v);
    for (const auto& f : handle.faces)
      drawer.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
  }
  b.add_node("drawer_7", "drawer", NodeKind::Part, "cabinet_1", drawer);

  std::vector<int> handle_faces;
  for (int f = handle_first; f < handle_first + handle.face_count(); ++f)
    handle_faces.push_back(f);
  b.add_region("drawer_7", RegionKind::Graspable, handle_faces);
  std::vector<int> all_drawer;
  for (int f = 0; f < tray_faces + handle.face_count(); ++f)
    all_drawer.push_back(f);
  b.add_region("drawer_7", RegionKind::Movable, all_drawer);

  ArticulationSpec art;
  art.part_id = "drawer_7";
  art.joint_type = JointType::Prismatic;
  art.axis = Eigen::Vector3d(0, -1, 0);
  art.pivot = Eigen::Vector3d(3.3, 1.25, 0.2);
  art.range_lo = 0.0;
  art.range_hi = 0.3;
  b.add_articulation(art);
  return b.build();
}

AnnotatedScene livingroom_scene() {
  SceneBuilder b;
  b.add_node("floor_1", "floor", NodeKind::Object, "",
             sheet_mesh(2, 0.0, 0, 5, 0, 5, 6));
  b.add_node("wall_2", "wall", NodeKind::Object, "",
             sheet_mesh(0, 0.0, 0, 5, 0, 2.6, 6));
  b.add_node("sofa_3", "sofa", NodeKind::Object, "",
             box_mesh_top_subdiv({1.0, 0.6, 0.0}, {3.2, 1.5, 0.42}, 6));
  b.add_node("table_4", "coffee table", NodeKind::Object, "",
             box_mesh_top_subdiv({1.6, 2.2, 0.0}, {2.6, 2.9, 0.45}, 6));
  b.add_node("lamp_5", "lamp", NodeKind::Object, "",
             box_mesh({4.2, 4.2, 0.0}, {4.5, 4.5, 1.5}));
  return b.build();
}

AnnotatedScene kitchen_scene() {
  SceneBuilder b;
  b.add_node("floor_1", "floor", NodeKind::Object, "",
             sheet_mesh(2, 0.0, 0, 4, 0, 4, 6));
  b.add_node("wall_2", "wall", NodeKind::Object, "",
             sheet_mesh(0, 0.0, 0, 4, 0, 2.5, 6));
  b.add_node("counter_3", "counter", NodeKind::Object, "",
             box_mesh_top_subdiv({0.4, 0.4, 0.0}, {2.4, 1.0, 0.9}, 8));
  b.add_node("fridge_4", "fridge", NodeKind::Object, "",
             open_box_mesh({3.0, 0.4, 0.0}, {3.8, 1.1, 1.8}, 2));

  TriMesh door = box_mesh({3.0, 0.36, 0.0}, {3.8, 0.4, 1.8});
  const int door_faces = door.face_count();
  TriMesh handle = box_mesh({3.7, 0.30, 0.8}, {3.76, 0.36, 1.2});
  const int handle_first = door.face_count();
  {
    const int base = door.vertex_count();
    for (const auto& v : handle.vertices) door.vertices.push_back(v);
    for (const auto& f : handle.faces)
      door.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
  }
  b.add_node("fridge_door_8", "fridge door", NodeKind::Part, "fridge_4", door);
  std::vector<int> handle_faces;
  for (int f = handle_first; f < handle_first + handle.face_count(); ++f)
    handle_faces.push_back(f);
  b.add_region("fridge_door_8", RegionKind::Graspable, handle_faces);
  (void)door_faces;

  ArticulationSpec art;
  art.part_id = "fridge_door_8";
  art.joint_type = JointType::Revolute;
  art.axis = Eigen::Vector3d(0, 0, 1);
  art.pivot = Eigen::Vector3d(3.0, 0.38, 0.9);
  art.range_lo = 0.0;
  art.range_hi = 1.5707963267948966;
  b.add_articulation(art);
  return b.build();
}

TriMesh pillow_mesh() {
  return box_mesh({-0.3, -0.2, -0.06}, {0.3, 0.2, 0.06});
}

TriMesh bottle_mesh() {
  return box_mesh({-0.035, -0.035, -0.13}, {0.035, 0.035, 0.13});
}

TriMesh poster_mesh() {
  return box_mesh({-0.01, -0.3, -0.4}, {0.01, 0.3, 0.4});
}

}  // namespace scan2sim::fixtures
