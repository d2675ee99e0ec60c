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

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace scan2sim::llm {

enum class ResponseSchema { PlacementTarget, ScaleFactor, InsertionScript };

const char* response_schema_name(ResponseSchema s);

struct LlmRequest {
  std::string system_instruction;
  std::vector<std::pair<std::string, std::string>> few_shot;  // user, assistant
  std::string user_message;
  ResponseSchema response_schema = ResponseSchema::PlacementTarget;

  // Stable JSON serialization of the full request; the transcript key.
  std::string canonical_json() const;
  // FNV-1a 64 of canonical_json, hex.
  std::string hash() const;
};

class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  // Raw completion text. Throws Error(BackendError) on transport failure.
  virtual std::string complete(const LlmRequest& request) = 0;
  virtual std::string name() const = 0;
};

// Deterministic fixture-driven backend. A fixture file holds an entry list;
// the first entry matching the request answers it:
//   {"request_hash": "..."} — exact replay of a recorded request
//   {"schema": "...", "label": "..."} — matches the request's schema and the
//     object_label of its machine-readable context line
// An entry carries either "response" (verbatim) or "response_template"
// ({key} placeholders filled from the context line). Pure function of the
// request; needs no network.
class MockBackend : public LlmBackend {
 public:
  static MockBackend from_file(const std::string& path);
  static MockBackend from_json_text(const std::string& json_text);

  std::string complete(const LlmRequest& request) override;
  std::string name() const override { return "mock"; }

 private:
  struct Entry {
    std::string request_hash;  // optional
    std::string schema;        // optional
    std::string label;         // optional
    std::string response;
    std::string response_template;
    bool is_template = false;
  };
  std::vector<Entry> entries_;
};

// Single-endpoint JSON chat backend. Request body:
//   {"model": ..., "messages": [{"role": ..., "content": ...}, ...]}
// Response: {"choices": [{"message": {"content": "..."}}]}.
// The API key is read from the named environment variable and sent as a
// bearer token when present.
class HttpBackend : public LlmBackend {
 public:
  HttpBackend(std::string endpoint, std::string model, std::string key_env);

  std::string complete(const LlmRequest& request) override;
  std::string name() const override { return "http"; }

 private:
  std::string endpoint_;
  std::string model_;
  std::string key_env_;
};

// Wraps a backend and appends one JSON line per call to the transcript:
// {"request_hash", "request", "response", "timestamp"}.
class TranscriptRecorder : public LlmBackend {
 public:
  TranscriptRecorder(LlmBackend& inner, std::string transcript_path);

  std::string complete(const LlmRequest& request) override;
  std::string name() const override { return inner_.name(); }

  // Lines recorded in this process, usable without re-reading the file.
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  LlmBackend& inner_;
  std::string path_;
  std::vector<std::string> lines_;
};

// Appends "\ncontext: {json}" to a prompt; the machine-readable tail the
// mock keys on and templates substitute from.
std::string append_context_line(const std::string& message,
                                const std::string& context_json);

// Extracts the context JSON from a user message (empty when absent).
std::string extract_context_line(const std::string& message);

}  // namespace scan2sim::llm
