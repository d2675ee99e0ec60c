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

#include "scan2sim/geometry/weld.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <unordered_map>

#include "scan2sim/errors.hpp"

namespace scan2sim::geom {

namespace {

struct CellKey {
  std::int64_t x, y, z;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  size_t operator()(const CellKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : {k.x, k.y, k.z}) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

}  // namespace

MergeResult merge_weld(const std::vector<TriMesh>& meshes, double weld_eps) {
  if (weld_eps < 0)
    throw Error(ErrorKind::ConfigError, "weld_eps must be >= 0");

  MergeResult result;
  bool carry_owner = !meshes.empty();
  for (const auto& m : meshes)
    if (m.face_owner.size() != m.faces.size()) carry_owner = false;

  // cell -> output vertex ids, in first-seen order
  std::unordered_map<CellKey, std::vector<int>, CellHash> grid;
  auto cell_of = [&](const Eigen::Vector3d& p) {
    return CellKey{static_cast<std::int64_t>(std::floor(p.x() / weld_eps)),
                   static_cast<std::int64_t>(std::floor(p.y() / weld_eps)),
                   static_cast<std::int64_t>(std::floor(p.z() / weld_eps))};
  };

  auto weld_vertex = [&](const Eigen::Vector3d& p) {
    if (weld_eps == 0) {
      // exact duplicates only
      CellKey key{static_cast<std::int64_t>(0), 0, 0};
      std::memcpy(&key.x, &p.x(), sizeof(double));
      std::memcpy(&key.y, &p.y(), sizeof(double));
      std::memcpy(&key.z, &p.z(), sizeof(double));
      auto& bucket = grid[key];
      for (int idx : bucket)
        if (result.mesh.vertices[static_cast<size_t>(idx)] == p) {
          ++result.vertices_welded;
          return idx;
        }
      int idx = static_cast<int>(result.mesh.vertices.size());
      result.mesh.vertices.push_back(p);
      bucket.push_back(idx);
      return idx;
    }

    const CellKey center = cell_of(p);
    int best = -1;
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy)
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          auto it = grid.find({center.x + dx, center.y + dy, center.z + dz});
          if (it == grid.end()) continue;
          for (int idx : it->second) {
            if ((result.mesh.vertices[static_cast<size_t>(idx)] - p).norm() <=
                weld_eps)
              if (best < 0 || idx < best) best = idx;  // first-seen wins
          }
        }
    if (best >= 0) {
      ++result.vertices_welded;
      return best;
    }
    int idx = static_cast<int>(result.mesh.vertices.size());
    result.mesh.vertices.push_back(p);
    grid[center].push_back(idx);
    return idx;
  };

  for (const auto& m : meshes) {
    std::vector<int> remap(m.vertices.size());
    for (size_t i = 0; i < m.vertices.size(); ++i)
      remap[i] = weld_vertex(m.vertices[i]);
    for (size_t fi = 0; fi < m.faces.size(); ++fi) {
      const auto& f = m.faces[fi];
      std::array<int, 3> mapped = {remap[static_cast<size_t>(f[0])],
                                   remap[static_cast<size_t>(f[1])],
                                   remap[static_cast<size_t>(f[2])]};
      if (mapped[0] == mapped[1] || mapped[1] == mapped[2] ||
          mapped[0] == mapped[2]) {
        ++result.faces_dropped;
        continue;
      }
      result.mesh.faces.push_back(mapped);
      if (carry_owner) result.mesh.face_owner.push_back(m.face_owner[fi]);
    }
  }
  return result;
}

}  // namespace scan2sim::geom
