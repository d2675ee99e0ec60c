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

#include <Eigen/Geometry>

namespace scan2sim::geom {

using Aabb = Eigen::AlignedBox3d;

// Broad-phase box test: do `a` and `b`, each inflated by `margin`, intersect
// on all three axes? Touching counts as overlap.
inline bool aabb_overlap(const Aabb& a, const Aabb& b, double margin) {
  for (int axis = 0; axis < 3; ++axis) {
    if (a.min()[axis] - margin > b.max()[axis] + margin) return false;
    if (b.min()[axis] - margin > a.max()[axis] + margin) return false;
  }
  return true;
}

inline Aabb aabb_inflated(const Aabb& box, double amount) {
  Aabb out = box;
  out.min().array() -= amount;
  out.max().array() += amount;
  return out;
}

}  // namespace scan2sim::geom
