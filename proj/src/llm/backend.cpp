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

#include "scan2sim/llm/backend.hpp"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "scan2sim/detail/format.hpp"
#include "scan2sim/errors.hpp"

namespace scan2sim::llm {

using nlohmann::json;

const char* response_schema_name(ResponseSchema s) {
  switch (s) {
    case ResponseSchema::PlacementTarget: return "placement_target";
    case ResponseSchema::ScaleFactor: return "scale_factor";
    case ResponseSchema::InsertionScript: return "insertion_script";
  }
  return "?";
}

std::string LlmRequest::canonical_json() const {
  json j;
  j["system_instruction"] = system_instruction;
  json shots = json::array();
  for (const auto& [u, a] : few_shot) shots.push_back({{"user", u}, {"assistant", a}});
  j["few_shot"] = shots;
  j["user_message"] = user_message;
  j["response_schema"] = response_schema_name(response_schema);
  return j.dump();
}

std::string LlmRequest::hash() const {
  const std::string text = canonical_json();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string append_context_line(const std::string& message,
                                const std::string& context_json) {
  return message + "\ncontext: " + context_json;
}

std::string extract_context_line(const std::string& message) {
  const std::string tag = "\ncontext: ";
  auto pos = message.rfind(tag);
  if (pos == std::string::npos) {
    if (message.rfind("context: ", 0) == 0) return message.substr(9);
    return "";
  }
  return message.substr(pos + tag.size());
}

MockBackend MockBackend::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::IoError, "cannot open mock fixtures '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

MockBackend MockBackend::from_json_text(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("mock fixtures: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
    throw Error(ErrorKind::SchemaError, "mock fixtures need an 'entries' array");
  MockBackend backend;
  for (const auto& je : doc["entries"]) {
    Entry e;
    if (je.contains("request_hash")) e.request_hash = je["request_hash"];
    if (je.contains("schema")) e.schema = je["schema"];
    if (je.contains("label")) e.label = je["label"];
    if (je.contains("response")) {
      e.response = je["response"];
    } else if (je.contains("response_template")) {
      e.response_template = je["response_template"];
      e.is_template = true;
    } else {
      throw Error(ErrorKind::SchemaError,
                  "mock entry needs 'response' or 'response_template'");
    }
    backend.entries_.push_back(std::move(e));
  }
  return backend;
}

namespace {

std::string render_template(const std::string& tpl, const json& ctx) {
  std::string out = tpl;
  for (auto it = ctx.begin(); it != ctx.end(); ++it) {
    std::string value;
    if (it.value().is_string())
      value = it.value().get<std::string>();
    else if (it.value().is_number())
      value = detail::format_double(it.value().get<double>());
    else
      continue;
    const std::string key = "{" + it.key() + "}";
    size_t pos = 0;
    while ((pos = out.find(key, pos)) != std::string::npos) {
      out.replace(pos, key.size(), value);
      pos += value.size();
    }
  }
  return out;
}

}  // namespace

std::string MockBackend::complete(const LlmRequest& request) {
  const std::string req_hash = request.hash();
  const std::string schema = response_schema_name(request.response_schema);
  const std::string ctx_text = extract_context_line(request.user_message);
  json ctx = json::object();
  if (!ctx_text.empty()) {
    try {
      ctx = json::parse(ctx_text);
    } catch (const json::parse_error&) {
      ctx = json::object();
    }
  }
  std::string label;
  if (ctx.contains("object_label") && ctx["object_label"].is_string())
    label = ctx["object_label"].get<std::string>();

  for (const auto& e : entries_) {
    if (!e.request_hash.empty()) {
      if (e.request_hash != req_hash) continue;
    } else {
      if (!e.schema.empty() && e.schema != schema) continue;
      if (!e.label.empty() && e.label != label) continue;
      if (e.schema.empty() && e.label.empty()) continue;  // inert entry
    }
    return e.is_template ? render_template(e.response_template, ctx) : e.response;
  }
  throw Error(ErrorKind::BackendError,
              "mock: no fixture for schema '" + schema + "', label '" + label +
                  "', hash " + req_hash);
}

HttpBackend::HttpBackend(std::string endpoint, std::string model,
                         std::string key_env)
    : endpoint_(std::move(endpoint)),
      model_(std::move(model)),
      key_env_(std::move(key_env)) {}

std::string HttpBackend::complete(const LlmRequest& request) {
  // endpoint = scheme://host[:port][/path]
  auto scheme_end = endpoint_.find("://");
  if (scheme_end == std::string::npos)
    throw Error(ErrorKind::ConfigError, "http endpoint needs scheme://host");
  auto path_start = endpoint_.find('/', scheme_end + 3);
  std::string base = path_start == std::string::npos
                         ? endpoint_
                         : endpoint_.substr(0, path_start);
  std::string path =
      path_start == std::string::npos ? "/" : endpoint_.substr(path_start);

  json body;
  body["model"] = model_;
  json messages = json::array();
  messages.push_back({{"role", "system"}, {"content", request.system_instruction}});
  for (const auto& [u, a] : request.few_shot) {
    messages.push_back({{"role", "user"}, {"content", u}});
    messages.push_back({{"role", "assistant"}, {"content", a}});
  }
  messages.push_back({{"role", "user"}, {"content", request.user_message}});
  body["messages"] = messages;

  httplib::Client client(base);
  client.set_connection_timeout(30);
  client.set_read_timeout(120);
  httplib::Headers headers;
  if (!key_env_.empty()) {
    if (const char* key = std::getenv(key_env_.c_str()))
      headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res)
    throw Error(ErrorKind::BackendError,
                "http: transport failure to " + endpoint_ + " (" +
                    httplib::to_string(res.error()) + ")");
  if (res->status != 200)
    throw Error(ErrorKind::BackendError,
                "http: status " + std::to_string(res->status) + ": " + res->body);
  try {
    json reply = json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BackendError,
                std::string("http: malformed reply: ") + e.what());
  }
}

TranscriptRecorder::TranscriptRecorder(LlmBackend& inner,
                                       std::string transcript_path)
    : inner_(inner), path_(std::move(transcript_path)) {}

std::string TranscriptRecorder::complete(const LlmRequest& request) {
  const std::string response = inner_.complete(request);
  json line;
  line["request_hash"] = request.hash();
  line["request"] = json::parse(request.canonical_json());
  line["response"] = response;
  const auto now = std::chrono::system_clock::now();
  const auto secs =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
  line["timestamp"] = static_cast<std::int64_t>(secs.count());
  lines_.push_back(line.dump());
  if (!path_.empty()) {
    std::ofstream out(path_, std::ios::app);
    if (out) out << lines_.back() << '\n';
  }
  return response;
}

}  // namespace scan2sim::llm
