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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scan2sim/usd/document.hpp"

namespace scan2sim::script {

// Model-generated scripts are constrained to a call-statement mini-language:
// one call per line, literal arguments only, at most one import line. A
// general-purpose language cannot be guarded by an allowlist alone, so
// anything outside this grammar is rejected at parse time.

struct Arg {
  enum class Kind { String, Number, Tuple3, NonLiteral };
  Kind kind = Kind::NonLiteral;
  std::string text;  // String value, or raw source for NonLiteral
  double number = 0;
  Eigen::Vector3d tuple = Eigen::Vector3d::Zero();
};

struct Call {
  int line = 0;
  std::string callee;  // possibly dotted
  std::vector<Arg> args;
};

enum class ViolationReason { NotAllowlisted, BadImport, NonLiteralArg, ParseError };

const char* violation_reason_name(ViolationReason r);

struct Violation {
  int line = 0;
  std::string callee;
  ViolationReason reason = ViolationReason::ParseError;
  std::string detail;
};

struct ScriptProgram {
  std::vector<Call> statements;
  std::vector<std::pair<int, std::string>> imports;  // line, raw line text
  std::vector<Violation> parse_violations;
};

// Never throws: malformed lines become parse_error violations for the
// guard to consume.
ScriptProgram parse_script(const std::string& text);

struct GuardConfig {
  std::set<std::string> allowlist = {"define_prim", "add_reference",
                                     "set_translate", "set_scale",
                                     "set_attribute"};
  std::string sanctioned_module = "usd_core";
};

struct GuardReport {
  enum class Verdict { Allowed, Rejected };
  Verdict verdict = Verdict::Rejected;
  std::vector<Violation> violations;

  bool allowed() const { return verdict == Verdict::Allowed; }
  std::string to_json() const;
};

// Witness that a program passed validation; apply_script refuses anything
// else at the type level.
class ValidatedProgram {
 public:
  const ScriptProgram& program() const { return program_; }

 private:
  explicit ValidatedProgram(ScriptProgram p) : program_(std::move(p)) {}
  ScriptProgram program_;
  friend struct ValidationResult;
  friend ValidationResult validate(ScriptProgram program,
                                   const GuardConfig& config);
};

struct ValidationResult {
  GuardReport report;
  std::optional<ValidatedProgram> program;  // engaged iff report.allowed()
};

// verdict = allowed iff every callee is allowlisted (bare or qualified by
// the sanctioned module), the only import (if any) is exactly the
// sanctioned module, and every argument is a literal.
ValidationResult validate(ScriptProgram program, const GuardConfig& config);

// Interprets a validated program against a copy of the document. Exactly
// five effects exist: define_prim, add_reference, set_translate, set_scale,
// set_attribute. Any error (PrimExists, UnknownPath, TypeMismatch) throws
// before anything is returned, so the caller's document is never left
// half-edited.
usd::UsdDocument apply_script(const usd::UsdDocument& doc,
                              const ValidatedProgram& validated);

}  // namespace scan2sim::script
