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

#include <vector>

#include "scan2sim/scene_model.hpp"

namespace scan2sim::geom {

struct MergeResult {
  TriMesh mesh;
  int vertices_welded = 0;
  int faces_dropped = 0;  // faces degenerated by welding
};

// Concatenates meshes, welding vertices within weld_eps (Euclidean) through
// a uniform grid hash of cell size weld_eps. The first-seen vertex is the
// representative, so output is deterministic in input order. weld_eps 0
// merges exact duplicates only. Faces collapsed to fewer than three
// distinct vertices are dropped and counted. face_owner tags are carried
// when every input provides them.
MergeResult merge_weld(const std::vector<TriMesh>& meshes, double weld_eps);

}  // namespace scan2sim::geom
