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

#include "scan2sim/errors.hpp"

namespace scan2sim {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ReferenceError: return "ReferenceError";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::LexError: return "LexError";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NoPlaneFound: return "NoPlaneFound";
    case ErrorKind::BackendError: return "BackendError";
    case ErrorKind::InvalidAnswer: return "InvalidAnswer";
    case ErrorKind::DegenerateSurface: return "DegenerateSurface";
    case ErrorKind::PlacementExhausted: return "PlacementExhausted";
    case ErrorKind::PrimExists: return "PrimExists";
    case ErrorKind::UnknownPath: return "UnknownPath";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NoGraspRegion: return "NoGraspRegion";
    case ErrorKind::NoArticulation: return "NoArticulation";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Error";
}

}  // namespace scan2sim
