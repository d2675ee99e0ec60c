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

#include <stdexcept>
#include <string>

namespace scan2sim {

enum class ErrorKind {
  // file/format ingestion
  ParseError,
  SchemaError,
  ReferenceError,
  // lookups
  UnknownId,
  // usda parsing
  LexError,
  SyntaxError,
  UnsupportedConstruct,
  // geometry
  DegenerateInput,
  NoPlaneFound,
  // llm
  BackendError,
  InvalidAnswer,
  // insertion
  DegenerateSurface,
  PlacementExhausted,
  // script interpreter
  PrimExists,
  UnknownPath,
  TypeMismatch,
  // simprep
  NoGraspRegion,
  NoArticulation,
  // cli / io
  IoError,
  ConfigError,
};

const char* error_kind_name(ErrorKind k);

// Single exception type carrying a kind tag. Pipeline stages add a stage
// label so CLI diagnostics can say where a run failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind),
        message_(message) {}

  Error(ErrorKind kind, const std::string& stage, const std::string& message)
      : std::runtime_error("[" + stage + "] " + error_kind_name(kind) + ": " + message),
        kind_(kind),
        stage_(stage),
        message_(message) {}

  ErrorKind kind() const { return kind_; }
  const std::string& stage() const { return stage_; }
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  std::string stage_;
  std::string message_;
};

}  // namespace scan2sim
