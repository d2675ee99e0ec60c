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

#include "scan2sim/insertion/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "scan2sim/errors.hpp"
#include "scan2sim/usd/flavors.hpp"

namespace scan2sim::insertion {

namespace {

[[noreturn]] void stage_fail(const std::string& stage, const Error& e) {
  throw Error(e.kind(), stage, e.message());
}

double projected_extent(const Eigen::Vector3d& dir, const Eigen::Vector3d& ext) {
  return std::abs(dir.x()) * ext.x() + std::abs(dir.y()) * ext.y() +
         std::abs(dir.z()) * ext.z();
}

// Footprint of the inliers in the (u, v) frame, centered on the centroid.
void surface_footprint(const geom::PlaneSurface& surface,
                       const Eigen::Vector3d& u, const Eigen::Vector3d& v,
                       Eigen::Vector2d& lo, Eigen::Vector2d& hi) {
  const Eigen::Vector3d mean = surface.centroid();
  lo = Eigen::Vector2d::Zero();
  hi = Eigen::Vector2d::Zero();
  bool first = true;
  for (const auto& p : surface.inlier_points) {
    Eigen::Vector3d d = p - mean;
    Eigen::Vector2d q(u.dot(d), v.dot(d));
    if (first) {
      lo = hi = q;
      first = false;
    } else {
      lo = lo.cwiseMin(q);
      hi = hi.cwiseMax(q);
    }
  }
}

std::string strip_code_fences(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("```", 0) == 0) continue;
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace

void plane_basis(const Eigen::Vector3d& normal, Eigen::Vector3d& u,
                 Eigen::Vector3d& v) {
  int smallest = 0;
  normal.cwiseAbs().minCoeff(&smallest);
  Eigen::Vector3d seed = Eigen::Vector3d::Zero();
  seed[smallest] = 1.0;
  u = normal.cross(seed).normalized();
  v = normal.cross(u);
}

Eigen::Vector3d compute_initial_position(const geom::PlaneSurface& surface,
                                         const geom::Aabb& object_aabb,
                                         geom::PlaneConstraint constraint) {
  if (surface.inlier_points.size() < 3)
    throw Error(ErrorKind::DegenerateSurface,
                "surface has fewer than 3 inlier points");
  const Eigen::Vector3d mean = surface.centroid();
  const Eigen::Vector3d ext = object_aabb.sizes();
  if (constraint == geom::PlaneConstraint::Vertical) {
    const double depth = projected_extent(surface.normal, ext);
    return mean + surface.normal * (depth / 2.0);
  }
  return mean + Eigen::Vector3d(0, 0, ext.z() / 2.0);
}

Eigen::Vector2d retry_offset(const geom::PlaneSurface& surface,
                             std::mt19937_64& rng) {
  Eigen::Vector3d u, v;
  plane_basis(surface.normal, u, v);
  Eigen::Vector2d lo, hi;
  surface_footprint(surface, u, v, lo, hi);
  auto unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  };
  // Draw both coordinates even for degenerate spans to keep the stream
  // position independent of the surface shape.
  const double ru = unit(), rv = unit();
  return {lo.x() + ru * (hi.x() - lo.x()), lo.y() + rv * (hi.y() - lo.y())};
}

PlacementResult place_with_retries(const InsertionJob& job,
                                   const llm::PlacementAnswer& target,
                                   const geom::PlaneSurface& surface,
                                   double scale) {
  const geom::Aabb local = job.object_mesh.bounds();
  geom::Aabb scaled(local.min() * scale, local.max() * scale);
  const Eigen::Vector3d ext = scaled.sizes();

  Eigen::Vector3d u, v;
  plane_basis(surface.normal, u, v);
  Eigen::Vector2d lo, hi;
  surface_footprint(surface, u, v, lo, hi);
  const double obj_u = projected_extent(u, ext);
  const double obj_v = projected_extent(v, ext);
  if (obj_u > hi.x() - lo.x() && obj_v > hi.y() - lo.y())
    throw Error(ErrorKind::PlacementExhausted,
                "object footprint exceeds the target surface on both axes");

  // The object rests on the target; the target and its relatives are not
  // collision obstacles.
  std::set<std::string> excluded{target.target_id};
  const InstanceNode& target_node = job.scene.node(target.target_id);
  if (target_node.kind == NodeKind::Object) {
    for (const auto& part : job.scene.part_ids_of(target_node.id))
      excluded.insert(part);
  } else if (target_node.parent) {
    excluded.insert(*target_node.parent);
  }

  const Eigen::Vector3d initial = compute_initial_position(
      surface, scaled, surface.orientation == geom::PlaneOrientation::Vertical
                           ? geom::PlaneConstraint::Vertical
                           : geom::PlaneConstraint::Horizontal);

  std::mt19937_64 rng(job.seed + 0x517cc1b727220a95ull);
  PlacementResult result;
  result.scale = scale;
  result.target_id = target.target_id;

  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    Eigen::Vector3d candidate = initial;
    if (attempt > 1) {
      const Eigen::Vector2d off = retry_offset(surface, rng);
      candidate += u * off.x() + v * off.y();
    }
    geom::Aabb box(candidate - ext / 2.0, candidate + ext / 2.0);

    AttemptRecord record;
    record.position = candidate;
    for (const auto& node : job.scene.nodes) {
      if (excluded.count(node.id)) continue;
      if (geom::aabb_overlap(box, node_aabb(job.scene, node.id), kCollisionMargin))
        record.collided_ids.push_back(node.id);
    }
    const bool clear = record.collided_ids.empty();
    result.attempt_trace.push_back(std::move(record));
    result.attempts = attempt;
    if (clear) {
      result.position = candidate;
      return result;
    }
  }
  throw Error(ErrorKind::PlacementExhausted,
              "no collision-free placement in " + std::to_string(kMaxAttempts) +
                  " attempts on '" + target.target_id + "'");
}

InsertionOutcome run_insertion(const InsertionJob& job, llm::LlmBackend& backend,
                               const llm::PromptTemplates& prompts) {
  if (job.object_mesh.faces.empty())
    throw Error(ErrorKind::DegenerateInput, "job", "object mesh is empty");
  if (job.object_label.empty())
    throw Error(ErrorKind::DegenerateInput, "job", "object label is empty");

  usd::UsdDocument scene_doc;
  try {
    scene_doc = usd::load_usda_file(job.scene_usd_path);
  } catch (const Error& e) {
    stage_fail("scene_load", e);
  }

  const std::string descriptive_text =
      usd::emit_usda(usd::build_descriptive(job.scene));

  llm::PlacementAnswer target;
  try {
    target = llm::query_placement(backend, prompts, descriptive_text,
                                  job.object_label);
    if (!job.scene.find_node(target.target_id))
      throw Error(ErrorKind::InvalidAnswer,
                  "target '" + target.target_id + "' is not a scene node");
  } catch (const Error& e) {
    stage_fail("placement_target", e);
  }

  geom::PlaneSurface surface;
  try {
    const std::vector<Eigen::Vector3d> points =
        node_vertices(job.scene, job.scene.node(target.target_id));
    geom::RansacParams params;
    params.seed = job.seed;
    surface = geom::ransac_plane(points, params, target.surface_constraint);
    if (surface.orientation == geom::PlaneOrientation::Vertical) {
      // Posters go on the interior side: orient the normal toward the scene
      // body before offsetting.
      const Eigen::Vector3d room_center = job.scene.mesh.bounds().center();
      if (surface.normal.dot(room_center - surface.centroid()) < 0) {
        surface.normal = -surface.normal;
        surface.offset = -surface.offset;
      }
    }
  } catch (const Error& e) {
    stage_fail("surface_detection", e);
  }

  llm::ScaleAnswer scale;
  try {
    scale = llm::query_scale(backend, prompts, job.object_label,
                             job.object_mesh.bounds().sizes());
  } catch (const Error& e) {
    stage_fail("scale_query", e);
  }

  PlacementResult placement;
  try {
    placement = place_with_retries(job, target, surface, scale.scale);
  } catch (const Error& e) {
    stage_fail("placement", e);
  }

  // The reference prim's translate puts the object's scaled box center at
  // the placement position regardless of where the asset's local origin is.
  const Eigen::Vector3d local_center = job.object_mesh.bounds().center();
  llm::ScriptContext context;
  context.scene_usd_path = job.scene_usd_path;
  context.object_label = job.object_label;
  context.object_path = job.object_path;
  context.position = placement.position - scale.scale * local_center;
  context.scale = scale.scale;

  InsertionOutcome outcome;
  outcome.placement = placement;
  outcome.surface = surface;

  script::GuardConfig guard_config;
  std::string guard_errors;
  bool applied = false;
  for (int attempt = 0; attempt <= llm::kAnswerRetries && !applied; ++attempt) {
    std::string reply;
    try {
      llm::ScriptContext ctx = context;
      if (attempt > 0) ctx.retry_note = guard_errors;
      reply = llm::query_script(backend, prompts, ctx);
    } catch (const Error& e) {
      stage_fail("script_generation", e);
    }
    outcome.script_text = strip_code_fences(reply);
    script::ScriptProgram program = script::parse_script(outcome.script_text);
    script::ValidationResult validation =
        script::validate(std::move(program), guard_config);
    outcome.guard_report = validation.report;
    if (!validation.report.allowed()) {
      guard_errors = validation.report.to_json();
      continue;
    }
    try {
      outcome.document = script::apply_script(scene_doc, *validation.program);
      applied = true;
    } catch (const Error& e) {
      stage_fail("apply", e);
    }
  }
  if (!applied)
    throw Error(ErrorKind::InvalidAnswer, "script_guard",
                "generated script rejected after retries: " + guard_errors);

  // Trust nothing: the applied edit must be exactly one new top-level
  // subtree that references the object file, and nothing else may differ.
  try {
    std::vector<const usd::Prim*> added;
    for (const auto& prim : outcome.document.root.children) {
      const usd::Prim* original = scene_doc.root.find_child(prim.name);
      if (!original)
        added.push_back(&prim);
      else if (!(*original == prim))
        throw Error(ErrorKind::InvalidAnswer,
                    "script modified existing prim '" + prim.name + "'");
    }
    for (const auto& prim : scene_doc.root.children)
      if (!outcome.document.root.find_child(prim.name))
        throw Error(ErrorKind::InvalidAnswer,
                    "script removed prim '" + prim.name + "'");
    if (added.size() != 1)
      throw Error(ErrorKind::InvalidAnswer,
                  "script must add exactly one prim, added " +
                      std::to_string(added.size()));
    const usd::Prim& prim = *added.front();
    if (!prim.references || *prim.references != job.object_path)
      throw Error(ErrorKind::InvalidAnswer,
                  "inserted prim does not reference the object file");
    const usd::TypedValue* translate = prim.find_attribute("xformOp:translate");
    const usd::TypedValue expected_translate =
        usd::TypedValue::double3(context.position);
    if (!translate || !(*translate == expected_translate))
      throw Error(ErrorKind::InvalidAnswer,
                  "inserted prim translate does not match the placement");
    const usd::TypedValue* scale_attr = prim.find_attribute("xformOp:scale");
    const usd::TypedValue expected_scale = usd::TypedValue::double3(
        Eigen::Vector3d::Constant(scale.scale));
    if (!scale_attr || !(*scale_attr == expected_scale))
      throw Error(ErrorKind::InvalidAnswer,
                  "inserted prim scale does not match the answer");
    outcome.inserted_prim_path = "/" + prim.name;
  } catch (const Error& e) {
    if (e.stage().empty()) stage_fail("verify", e);
    throw;
  }

  return outcome;
}

}  // namespace scan2sim::insertion
