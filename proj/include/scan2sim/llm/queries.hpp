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

#include <Eigen/Core>
#include <string>

#include "scan2sim/geometry/plane.hpp"
#include "scan2sim/llm/backend.hpp"

namespace scan2sim::llm {

struct PlacementAnswer {
  std::string target_id;
  geom::PlaneConstraint surface_constraint = geom::PlaneConstraint::Horizontal;
};

struct ScaleAnswer {
  double scale = 1.0;
  bool clamped = false;  // answer fell outside [0.01, 100]
};

// One prompt kind: system instruction, few-shot pairs, user template with
// {placeholder} slots.
struct PromptTemplate {
  std::string system;
  std::vector<std::pair<std::string, std::string>> few_shot;
  std::string user_template;
};

// Prompts live in versioned JSON files, one per query kind, so the corpus
// can evolve without rebuilds.
struct PromptTemplates {
  PromptTemplate placement;
  PromptTemplate scale;
  PromptTemplate script;

  static PromptTemplates load_dir(const std::string& dir);
};

inline constexpr int kAnswerRetries = 2;
inline constexpr double kScaleMin = 0.01;
inline constexpr double kScaleMax = 100.0;

// Asks which prim the object rests on. The reply must name a prim that
// exists in the descriptive document; anything else is reprompted with the
// failure reason up to kAnswerRetries times and then raised as
// InvalidAnswer. Model output is never trusted without this check.
PlacementAnswer query_placement(LlmBackend& backend,
                                const PromptTemplates& prompts,
                                const std::string& descriptive_usda_text,
                                const std::string& object_label);

// Asks for a corrective scale factor given the object's extent in meters.
// The parsed value is clamped into [kScaleMin, kScaleMax].
ScaleAnswer query_scale(LlmBackend& backend, const PromptTemplates& prompts,
                        const std::string& object_label,
                        const Eigen::Vector3d& extent);

struct ScriptContext {
  std::string scene_usd_path;
  std::string object_label;
  std::string object_path;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double scale = 1.0;
  std::string retry_note;  // appended to the prompt on a reprompt
};

// Requests the insertion script. The raw text is returned untouched;
// validating it is the guard's job.
std::string query_script(LlmBackend& backend, const PromptTemplates& prompts,
                         const ScriptContext& context);

}  // namespace scan2sim::llm
