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

#include "scan2sim/llm/queries.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "scan2sim/detail/format.hpp"
#include "scan2sim/errors.hpp"
#include "scan2sim/usd/usda.hpp"

namespace scan2sim::llm {

using nlohmann::json;

namespace {

std::string substitute(std::string text, const std::string& key,
                       const std::string& value) {
  const std::string slot = "{" + key + "}";
  size_t pos = 0;
  while ((pos = text.find(slot, pos)) != std::string::npos) {
    text.replace(pos, slot.size(), value);
    pos += value.size();
  }
  return text;
}

PromptTemplate load_template(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::IoError, "cannot open prompt template '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  json doc;
  try {
    doc = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  PromptTemplate t;
  t.system = doc.at("system").get<std::string>();
  if (doc.contains("few_shot"))
    for (const auto& pair : doc["few_shot"])
      t.few_shot.emplace_back(pair.at(0).get<std::string>(),
                              pair.at(1).get<std::string>());
  t.user_template = doc.at("user_template").get<std::string>();
  return t;
}

// Completion text may wrap JSON in prose or code fences; take the first
// balanced object.
json first_json_object(const std::string& text) {
  auto start = text.find('{');
  if (start == std::string::npos)
    throw Error(ErrorKind::InvalidAnswer, "no JSON object in reply");
  int depth = 0;
  bool in_string = false;
  for (size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{') ++depth;
    else if (c == '}') {
      if (--depth == 0) {
        try {
          return json::parse(text.substr(start, i - start + 1));
        } catch (const json::parse_error& e) {
          throw Error(ErrorKind::InvalidAnswer,
                      std::string("malformed JSON in reply: ") + e.what());
        }
      }
    }
  }
  throw Error(ErrorKind::InvalidAnswer, "unbalanced JSON object in reply");
}

}  // namespace

PromptTemplates PromptTemplates::load_dir(const std::string& dir) {
  PromptTemplates t;
  t.placement = load_template(dir + "/placement_target.json");
  t.scale = load_template(dir + "/scale_factor.json");
  t.script = load_template(dir + "/insertion_script.json");
  return t;
}

PlacementAnswer query_placement(LlmBackend& backend,
                                const PromptTemplates& prompts,
                                const std::string& descriptive_usda_text,
                                const std::string& object_label) {
  if (object_label.empty())
    throw Error(ErrorKind::InvalidAnswer, "empty object label");

  // The model may only name prims the scene actually has.
  usd::UsdDocument doc = usd::parse_usda(descriptive_usda_text);
  std::set<std::string> prim_names;
  usd::visit_prims(doc, [&](const usd::Prim& p, const std::string&) {
    prim_names.insert(p.name);
  });

  json ctx;
  ctx["object_label"] = object_label;

  std::string user = substitute(prompts.placement.user_template, "object_label",
                                object_label);
  user = substitute(user, "descriptive_usd", descriptive_usda_text);

  LlmRequest request;
  request.system_instruction = prompts.placement.system;
  request.few_shot = prompts.placement.few_shot;
  request.user_message = append_context_line(user, ctx.dump());
  request.response_schema = ResponseSchema::PlacementTarget;

  std::string last_error;
  for (int attempt = 0; attempt <= kAnswerRetries; ++attempt) {
    if (attempt > 0)
      request.user_message = append_context_line(
          user + "\n\nYour previous answer was invalid: " + last_error +
              "\nAnswer again with JSON only.",
          ctx.dump());
    const std::string reply = backend.complete(request);
    try {
      json answer = first_json_object(reply);
      if (!answer.contains("target_id") || !answer["target_id"].is_string())
        throw Error(ErrorKind::InvalidAnswer, "missing string 'target_id'");
      if (!answer.contains("surface") || !answer["surface"].is_string())
        throw Error(ErrorKind::InvalidAnswer, "missing string 'surface'");
      PlacementAnswer out;
      out.target_id = answer["target_id"].get<std::string>();
      const std::string surface = answer["surface"].get<std::string>();
      if (surface == "horizontal")
        out.surface_constraint = geom::PlaneConstraint::Horizontal;
      else if (surface == "vertical")
        out.surface_constraint = geom::PlaneConstraint::Vertical;
      else
        throw Error(ErrorKind::InvalidAnswer,
                    "surface must be horizontal or vertical, got '" + surface + "'");
      if (out.target_id.empty())
        throw Error(ErrorKind::InvalidAnswer, "empty target_id");
      if (!prim_names.count(out.target_id))
        throw Error(ErrorKind::InvalidAnswer,
                    "target_id '" + out.target_id + "' is not in the scene");
      return out;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidAnswer) throw;
      last_error = e.message();
    }
  }
  throw Error(ErrorKind::InvalidAnswer,
              "placement query failed after " + std::to_string(kAnswerRetries) +
                  " retries: " + last_error);
}

ScaleAnswer query_scale(LlmBackend& backend, const PromptTemplates& prompts,
                        const std::string& object_label,
                        const Eigen::Vector3d& extent) {
  if (!(extent.minCoeff() > 0))
    throw Error(ErrorKind::InvalidAnswer, "object extent must be positive");

  json ctx;
  ctx["object_label"] = object_label;
  ctx["extent_x"] = extent.x();
  ctx["extent_y"] = extent.y();
  ctx["extent_z"] = extent.z();

  std::string user = substitute(prompts.scale.user_template, "object_label",
                                object_label);
  user = substitute(user, "extent_x", detail::format_double(extent.x()));
  user = substitute(user, "extent_y", detail::format_double(extent.y()));
  user = substitute(user, "extent_z", detail::format_double(extent.z()));

  LlmRequest request;
  request.system_instruction = prompts.scale.system;
  request.few_shot = prompts.scale.few_shot;
  request.user_message = append_context_line(user, ctx.dump());
  request.response_schema = ResponseSchema::ScaleFactor;

  std::string last_error;
  for (int attempt = 0; attempt <= kAnswerRetries; ++attempt) {
    if (attempt > 0)
      request.user_message = append_context_line(
          user + "\n\nYour previous answer was invalid: " + last_error +
              "\nAnswer again with JSON only.",
          ctx.dump());
    const std::string reply = backend.complete(request);
    try {
      double value = 0;
      // Accept {"scale": x} or a bare number.
      if (reply.find('{') != std::string::npos) {
        json answer = first_json_object(reply);
        if (!answer.contains("scale") || !answer["scale"].is_number())
          throw Error(ErrorKind::InvalidAnswer, "missing numeric 'scale'");
        value = answer["scale"].get<double>();
      } else {
        std::string trimmed = reply;
        trimmed.erase(std::remove_if(trimmed.begin(), trimmed.end(),
                                     [](unsigned char c) { return std::isspace(c); }),
                      trimmed.end());
        if (!detail::parse_double(trimmed, value))
          throw Error(ErrorKind::InvalidAnswer, "no number in reply");
      }
      if (!(value > 0) || !std::isfinite(value))
        throw Error(ErrorKind::InvalidAnswer, "scale must be a positive number");
      ScaleAnswer out;
      out.scale = std::clamp(value, kScaleMin, kScaleMax);
      out.clamped = out.scale != value;
      return out;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidAnswer) throw;
      last_error = e.message();
    }
  }
  throw Error(ErrorKind::InvalidAnswer,
              "scale query failed after " + std::to_string(kAnswerRetries) +
                  " retries: " + last_error);
}

std::string query_script(LlmBackend& backend, const PromptTemplates& prompts,
                         const ScriptContext& context) {
  if (context.scene_usd_path.empty())
    throw Error(ErrorKind::InvalidAnswer, "empty scene path");
  if (!context.position.allFinite())
    throw Error(ErrorKind::InvalidAnswer, "non-finite position");
  if (!(context.scale > 0))
    throw Error(ErrorKind::InvalidAnswer, "scale must be positive");

  json ctx;
  ctx["scene_usd_path"] = context.scene_usd_path;
  ctx["object_label"] = context.object_label;
  ctx["object_path"] = context.object_path;
  ctx["position_x"] = context.position.x();
  ctx["position_y"] = context.position.y();
  ctx["position_z"] = context.position.z();
  ctx["scale"] = context.scale;

  std::string user = prompts.script.user_template;
  user = substitute(user, "scene_usd_path", context.scene_usd_path);
  user = substitute(user, "object_label", context.object_label);
  user = substitute(user, "object_path", context.object_path);
  user = substitute(user, "position_x", detail::format_double(context.position.x()));
  user = substitute(user, "position_y", detail::format_double(context.position.y()));
  user = substitute(user, "position_z", detail::format_double(context.position.z()));
  user = substitute(user, "scale", detail::format_double(context.scale));
  if (!context.retry_note.empty())
    user += "\n\nYour previous script was rejected: " + context.retry_note +
            "\nReply with a corrected script only.";

  LlmRequest request;
  request.system_instruction = prompts.script.system;
  request.few_shot = prompts.script.few_shot;
  request.user_message = append_context_line(user, ctx.dump());
  request.response_schema = ResponseSchema::InsertionScript;
  return backend.complete(request);
}

}  // namespace scan2sim::llm
