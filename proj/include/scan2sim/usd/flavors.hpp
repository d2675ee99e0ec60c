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
#include "scan2sim/usd/document.hpp"

namespace scan2sim::usd {

enum class FlavorKind { Descriptive, GeometryFocused };

// Geometry-free flavor: one Xform prim per object with label and bbox
// attributes, parts nested beneath their parent, articulation parameters on
// the part prim. Carries no mesh data at all.
UsdDocument build_descriptive(const AnnotatedScene& scene);

// Flat flavor for simulators: every node (object or part) becomes a
// top-level Mesh prim with its re-indexed sub-mesh; hierarchy is expressed
// only through joint prims under /joints (body0 = parent object, body1 =
// part).
UsdDocument build_geometry_focused(const AnnotatedScene& scene);

UsdDocument build_flavor(const AnnotatedScene& scene, FlavorKind kind);

// Attribute block shared by both flavors for an articulated part. Limits
// are physics:lowerLimit/physics:upperLimit, meters for prismatic joints
// and degrees for revolute ones.
void set_articulation_attributes(Prim& prim, const ArticulationSpec& art);

// Joint prim name for a part, made unique against `taken`.
std::string joint_prim_name(const std::string& part_id,
                            const std::vector<std::string>& taken);

}  // namespace scan2sim::usd
