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

#include "scan2sim/scene_model.hpp"

namespace scan2sim::geom {

struct DecimateResult {
  TriMesh mesh;
  bool too_small = false;  // input under 8 faces, returned unchanged
};

// Quadric-error-metric edge collapse. Stops once the face count is at most
// ceil(keep_ratio * input_faces) (never below 4). keep_ratio 1 returns the
// input unchanged. Inputs under 8 faces are returned unchanged with the
// too_small flag set. Boundary edges carry a weighted constraint quadric so
// open scan borders keep their rims. Fully deterministic: the collapse
// queue breaks cost ties on the smallest (v0, v1) index pair.
DecimateResult decimate_quadric(const TriMesh& mesh, double keep_ratio);

}  // namespace scan2sim::geom
