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

#include <string>

#include "scan2sim/scene_model.hpp"

namespace scan2sim {

// Loads an indexed triangle mesh from .obj or .ply (ASCII or binary
// little-endian). Polygons are fan-triangulated. Any other extension is a
// ParseError naming the extension.
TriMesh load_mesh(const std::string& path);

TriMesh load_obj(const std::string& path);
TriMesh load_ply(const std::string& path);

// Writes ASCII OBJ (v/f lines only), deterministic formatting.
void save_obj(const TriMesh& mesh, const std::string& path);

}  // namespace scan2sim
