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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "scan2sim/geometry/plane.hpp"
#include "scan2sim/llm/queries.hpp"
#include "scan2sim/scene_model.hpp"
#include "scan2sim/script/script.hpp"
#include "scan2sim/usd/usda.hpp"

namespace scan2sim::insertion {

inline constexpr int kMaxAttempts = 100;
inline constexpr double kCollisionMargin = 1e-3;  // meters

struct InsertionJob {
  AnnotatedScene scene;
  std::string scene_usd_path;
  TriMesh object_mesh;   // pre-oriented z-up, local frame
  std::string object_label;
  std::string object_path;  // asset path written into the reference
  std::uint64_t seed = 0;
};

struct AttemptRecord {
  Eigen::Vector3d position;
  std::vector<std::string> collided_ids;
};

struct PlacementResult {
  Eigen::Vector3d position;  // world center of the placed object's box
  double scale = 1.0;
  std::string target_id;
  int attempts = 0;
  std::vector<AttemptRecord> attempt_trace;
};

// Deterministic in-plane frame for a unit normal.
void plane_basis(const Eigen::Vector3d& normal, Eigen::Vector3d& u,
                 Eigen::Vector3d& v);

// Mean of the surface inliers plus half the object's extent along the
// placement direction: z for horizontal surfaces, the surface normal for
// vertical ones (the caller orients the normal toward the room interior).
// object_aabb is the already-scaled object box in its local frame.
Eigen::Vector3d compute_initial_position(const geom::PlaneSurface& surface,
                                         const geom::Aabb& object_aabb,
                                         geom::PlaneConstraint constraint);

// In-plane displacement drawn uniformly from the inlier footprint (bounds
// centered on the inlier centroid). Degenerate footprints yield (0, 0).
Eigen::Vector2d retry_offset(const geom::PlaneSurface& surface,
                             std::mt19937_64& rng);

// Initial position plus random in-plane offsets until the scaled object box
// clears every node except the target and its relatives, margin
// kCollisionMargin. Throws PlacementExhausted after kMaxAttempts, or
// immediately when the footprint cannot fit the surface at all.
PlacementResult place_with_retries(const InsertionJob& job,
                                   const llm::PlacementAnswer& target,
                                   const geom::PlaneSurface& surface,
                                   double scale);

struct InsertionOutcome {
  usd::UsdDocument document;         // input scene + one inserted prim
  PlacementResult placement;
  geom::PlaneSurface surface;        // as used (normal oriented)
  std::string script_text;           // raw model reply (fences stripped)
  script::GuardReport guard_report;
  std::string inserted_prim_path;
};

// The full pipeline: descriptive extraction, target query, surface fit,
// scale query, collision-retried placement, guarded script application, and
// a final structural verification that the script changed nothing but the
// single inserted subtree. Every stage error carries its stage label.
InsertionOutcome run_insertion(const InsertionJob& job, llm::LlmBackend& backend,
                               const llm::PromptTemplates& prompts);

}  // namespace scan2sim::insertion
