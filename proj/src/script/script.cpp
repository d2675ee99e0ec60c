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

#include "scan2sim/script/script.hpp"

#include <cctype>
#include <sstream>

#include <json.hpp>

#include "scan2sim/detail/format.hpp"
#include "scan2sim/errors.hpp"

namespace scan2sim::script {

using nlohmann::json;

const char* violation_reason_name(ViolationReason r) {
  switch (r) {
    case ViolationReason::NotAllowlisted: return "not_allowlisted";
    case ViolationReason::BadImport: return "bad_import";
    case ViolationReason::NonLiteralArg: return "non_literal_arg";
    case ViolationReason::ParseError: return "parse_error";
  }
  return "?";
}

namespace {

struct LineParser {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  bool peek_is(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool take(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  // identifier with optional dots: a, a.b, a.b.c
  std::string dotted_ident() {
    skip_ws();
    std::string out;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' ||
            s[pos] == '.'))
      out.push_back(s[pos++]);
    return out;
  }

  bool string_literal(std::string& out) {
    if (!take('"')) return false;
    out.clear();
    while (pos < s.size() && s[pos] != '"') {
      if (s[pos] == '\\') {
        ++pos;
        if (pos >= s.size()) return false;
        switch (s[pos]) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          default: return false;
        }
        ++pos;
      } else {
        out.push_back(s[pos++]);
      }
    }
    if (pos >= s.size()) return false;
    ++pos;  // closing quote
    return true;
  }

  bool number_literal(double& out) {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    bool digits = false;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                              s[pos] == '.' || s[pos] == 'e' || s[pos] == 'E' ||
                              ((s[pos] == '-' || s[pos] == '+') && pos > start &&
                               (s[pos - 1] == 'e' || s[pos - 1] == 'E')))) {
      if (std::isdigit(static_cast<unsigned char>(s[pos]))) digits = true;
      ++pos;
    }
    if (!digits || !detail::parse_double(s.substr(start, pos - start), out)) {
      pos = start;
      return false;
    }
    return true;
  }

  // raw text until ',' or ')' at depth 0 — preserved for the report
  std::string raw_until_arg_end() {
    skip_ws();
    size_t start = pos;
    int depth = 0;
    while (pos < s.size()) {
      char c = s[pos];
      if (c == '(' || c == '[') ++depth;
      else if (c == ']') --depth;
      else if (c == ')') {
        if (depth == 0) break;
        --depth;
      } else if (c == ',' && depth == 0) {
        break;
      }
      ++pos;
    }
    std::string out = s.substr(start, pos - start);
    while (!out.empty() && (out.back() == ' ' || out.back() == '\t'))
      out.pop_back();
    return out;
  }
};

bool parse_arg(LineParser& p, Arg& arg) {
  p.skip_ws();
  if (p.peek_is('"')) {
    std::string text;
    if (!p.string_literal(text)) return false;
    arg.kind = Arg::Kind::String;
    arg.text = std::move(text);
    return true;
  }
  if (p.peek_is('(')) {
    p.take('(');
    Eigen::Vector3d t;
    if (!p.number_literal(t.x()) || !p.take(',') || !p.number_literal(t.y()) ||
        !p.take(',') || !p.number_literal(t.z()) || !p.take(')'))
      return false;
    arg.kind = Arg::Kind::Tuple3;
    arg.tuple = t;
    return true;
  }
  double num;
  if (p.number_literal(num)) {
    arg.kind = Arg::Kind::Number;
    arg.number = num;
    return true;
  }
  return false;
}

}  // namespace

ScriptProgram parse_script(const std::string& text) {
  ScriptProgram program;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    // trim
    size_t b = raw.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    size_t e = raw.find_last_not_of(" \t");
    std::string line = raw.substr(b, e - b + 1);
    if (line.empty() || line[0] == '#') continue;

    if (line.rfind("import", 0) == 0 || line.rfind("from", 0) == 0) {
      program.imports.emplace_back(lineno, line);
      continue;
    }

    LineParser p{line};
    std::string callee = p.dotted_ident();
    if (callee.empty() || !p.take('(')) {
      program.parse_violations.push_back(
          {lineno, "", ViolationReason::ParseError,
           "expected `callee(args)`, got '" + line + "'"});
      continue;
    }

    Call call;
    call.line = lineno;
    call.callee = callee;
    bool bad_line = false;
    if (!p.peek_is(')')) {
      while (true) {
        Arg arg;
        if (!parse_arg(p, arg)) {
          // not a literal: capture the raw token so validate can flag it
          arg.kind = Arg::Kind::NonLiteral;
          arg.text = p.raw_until_arg_end();
          if (arg.text.empty()) {
            program.parse_violations.push_back(
                {lineno, callee, ViolationReason::ParseError, "malformed argument"});
            bad_line = true;
            break;
          }
        }
        call.args.push_back(std::move(arg));
        if (p.take(',')) continue;
        break;
      }
    }
    if (bad_line) continue;
    if (!p.take(')') || !p.done()) {
      program.parse_violations.push_back(
          {lineno, callee, ViolationReason::ParseError,
           "trailing input after call"});
      continue;
    }
    program.statements.push_back(std::move(call));
  }
  return program;
}

ValidationResult validate(ScriptProgram program, const GuardConfig& config) {
  GuardReport report;
  report.violations = program.parse_violations;

  // At most one import; it must match the sanctioned module exactly.
  const std::string sanctioned = "import " + config.sanctioned_module;
  for (size_t i = 0; i < program.imports.size(); ++i) {
    const auto& [line, text] = program.imports[i];
    if (i > 0)
      report.violations.push_back({line, "", ViolationReason::BadImport,
                                   "more than one import statement"});
    else if (text != sanctioned)
      report.violations.push_back(
          {line, "", ViolationReason::BadImport,
           "only '" + sanctioned + "' is permitted, got '" + text + "'"});
  }

  for (const auto& call : program.statements) {
    std::string base = call.callee;
    const std::string prefix = config.sanctioned_module + ".";
    if (base.rfind(prefix, 0) == 0) base = base.substr(prefix.size());
    if (base.find('.') != std::string::npos || !config.allowlist.count(base)) {
      report.violations.push_back({call.line, call.callee,
                                   ViolationReason::NotAllowlisted,
                                   "operation is not allowlisted"});
    }
    for (const auto& arg : call.args)
      if (arg.kind == Arg::Kind::NonLiteral)
        report.violations.push_back({call.line, call.callee,
                                     ViolationReason::NonLiteralArg,
                                     "argument '" + arg.text + "' is not a literal"});
  }

  ValidationResult result;
  result.report = std::move(report);
  result.report.verdict = result.report.violations.empty()
                              ? GuardReport::Verdict::Allowed
                              : GuardReport::Verdict::Rejected;
  if (result.report.allowed())
    result.program = ValidatedProgram(std::move(program));
  return result;
}

std::string GuardReport::to_json() const {
  json j;
  j["verdict"] = allowed() ? "allowed" : "rejected";
  json v = json::array();
  for (const auto& viol : violations)
    v.push_back({{"line", viol.line},
                 {"callee", viol.callee},
                 {"reason", violation_reason_name(viol.reason)},
                 {"detail", viol.detail}});
  j["violations"] = v;
  return j.dump(2);
}

namespace {

[[noreturn]] void apply_fail(ErrorKind kind, const Call& call,
                             const std::string& msg) {
  throw Error(kind, "line " + std::to_string(call.line) + " (" + call.callee +
                        "): " + msg);
}

const std::string& string_arg(const Call& call, size_t i) {
  if (i >= call.args.size() || call.args[i].kind != Arg::Kind::String)
    apply_fail(ErrorKind::TypeMismatch, call,
               "argument " + std::to_string(i + 1) + " must be a string");
  return call.args[i].text;
}

Eigen::Vector3d tuple_arg(const Call& call, size_t i) {
  if (i >= call.args.size() || call.args[i].kind != Arg::Kind::Tuple3)
    apply_fail(ErrorKind::TypeMismatch, call,
               "argument " + std::to_string(i + 1) + " must be (x, y, z)");
  return call.args[i].tuple;
}

void expect_arity(const Call& call, size_t n) {
  if (call.args.size() != n)
    apply_fail(ErrorKind::TypeMismatch, call,
               "expected " + std::to_string(n) + " arguments, got " +
                   std::to_string(call.args.size()));
}

// Target prim paths must be well-formed absolute paths; the path grammar
// itself excludes traversal tricks like '..'.
std::string checked_path(const Call& call, size_t i) {
  const std::string& path = string_arg(call, i);
  if (!usd::is_valid_prim_path(path))
    apply_fail(ErrorKind::UnknownPath, call,
               "'" + path + "' is not a valid prim path");
  return path;
}

}  // namespace

usd::UsdDocument apply_script(const usd::UsdDocument& doc,
                              const ValidatedProgram& validated) {
  usd::UsdDocument out = doc;  // edits land on the copy only

  for (const auto& call : validated.program().statements) {
    std::string op = call.callee;
    auto dot = op.rfind('.');
    if (dot != std::string::npos) op = op.substr(dot + 1);

    if (op == "define_prim") {
      expect_arity(call, 2);
      const std::string path = checked_path(call, 0);
      const std::string& type = string_arg(call, 1);
      auto segments = usd::split_prim_path(path);
      usd::Prim* parent = &out.root;
      for (size_t s = 0; s + 1 < segments.size(); ++s) {
        parent = parent->find_child(segments[s]);
        if (!parent)
          apply_fail(ErrorKind::UnknownPath, call,
                     "missing ancestor '" + segments[s] + "' of '" + path + "'");
      }
      if (parent->find_child(segments.back()))
        apply_fail(ErrorKind::PrimExists, call, "'" + path + "' already exists");
      parent->children.emplace_back(segments.back(), type);
    } else if (op == "add_reference") {
      expect_arity(call, 2);
      const std::string path = checked_path(call, 0);
      const std::string& asset = string_arg(call, 1);
      if (asset.find("..") != std::string::npos)
        apply_fail(ErrorKind::UnknownPath, call,
                   "reference asset path must not contain '..'");
      usd::Prim* prim = out.find_path(path);
      if (!prim) apply_fail(ErrorKind::UnknownPath, call, "no prim at '" + path + "'");
      prim->references = asset;
    } else if (op == "set_translate" || op == "set_scale") {
      expect_arity(call, 2);
      const std::string path = checked_path(call, 0);
      const Eigen::Vector3d value = tuple_arg(call, 1);
      usd::Prim* prim = out.find_path(path);
      if (!prim) apply_fail(ErrorKind::UnknownPath, call, "no prim at '" + path + "'");
      prim->set_attribute(op == "set_translate" ? "xformOp:translate"
                                                : "xformOp:scale",
                          usd::TypedValue::double3(value));
    } else if (op == "set_attribute") {
      expect_arity(call, 3);
      const std::string path = checked_path(call, 0);
      const std::string& name = string_arg(call, 1);
      if (!usd::is_valid_attribute_name(name))
        apply_fail(ErrorKind::TypeMismatch, call,
                   "'" + name + "' is not a valid attribute name");
      usd::Prim* prim = out.find_path(path);
      if (!prim) apply_fail(ErrorKind::UnknownPath, call, "no prim at '" + path + "'");
      const Arg& value = call.args[2];
      switch (value.kind) {
        case Arg::Kind::String:
          prim->set_attribute(name, usd::TypedValue::string_(value.text));
          break;
        case Arg::Kind::Number:
          prim->set_attribute(name, usd::TypedValue::double_(value.number));
          break;
        case Arg::Kind::Tuple3:
          prim->set_attribute(name, usd::TypedValue::double3(value.tuple));
          break;
        default:
          apply_fail(ErrorKind::TypeMismatch, call, "unsupported value");
      }
    } else {
      // Allowlist configuration may name operations the interpreter does
      // not have; they must not silently do something else.
      apply_fail(ErrorKind::UnknownPath, call,
                 "operation '" + op + "' is not implemented");
    }
  }
  return out;
}

}  // namespace scan2sim::script
