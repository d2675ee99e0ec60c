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

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "scan2sim/detail/format.hpp"
#include "scan2sim/errors.hpp"
#include "scan2sim/usd/usda.hpp"

namespace scan2sim::usd {

namespace {

struct Token {
  enum Kind { Ident, Str, Asset, Number, Punct, End };
  Kind kind = End;
  std::string text;
  int line = 0;
  int col = 0;
};

[[noreturn]] void fail(ErrorKind kind, int line, int col, const std::string& msg) {
  throw Error(kind, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      const int line = line_, col = col_;
      const char c = text_[pos_];
      if (c == '"') {
        out.push_back({Token::Str, lex_string(), line, col});
      } else if (c == '@') {
        out.push_back({Token::Asset, lex_asset(), line, col});
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back({Token::Ident, lex_ident(), line, col});
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
                 c == '+' || c == '.') {
        out.push_back({Token::Number, lex_number(), line, col});
      } else if (c == '(' || c == ')' || c == '{' || c == '}' || c == '[' ||
                 c == ']' || c == '=' || c == ',') {
        advance();
        out.push_back({Token::Punct, std::string(1, c), line, col});
      } else {
        fail(ErrorKind::LexError, line, col,
             std::string("unexpected character '") + c + "'");
      }
    }
    out.push_back({Token::End, "", line_, col_});
    return out;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      advance();
  }

  std::string lex_string() {
    const int line = line_, col = col_;
    advance();  // opening quote
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      char c = text_[pos_];
      if (c == '\n') fail(ErrorKind::LexError, line, col, "unterminated string");
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size())
          fail(ErrorKind::LexError, line, col, "unterminated string");
        char e = text_[pos_];
        switch (e) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          default:
            fail(ErrorKind::LexError, line_, col_,
                 std::string("unknown escape '\\") + e + "'");
        }
        advance();
      } else {
        out.push_back(c);
        advance();
      }
    }
    if (pos_ >= text_.size())
      fail(ErrorKind::LexError, line, col, "unterminated string");
    advance();  // closing quote
    return out;
  }

  std::string lex_asset() {
    const int line = line_, col = col_;
    advance();  // opening @
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '@') {
      if (text_[pos_] == '\n')
        fail(ErrorKind::LexError, line, col, "unterminated asset path");
      out.push_back(text_[pos_]);
      advance();
    }
    if (pos_ >= text_.size())
      fail(ErrorKind::LexError, line, col, "unterminated asset path");
    advance();  // closing @
    return out;
  }

  std::string lex_ident() {
    std::string out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':') {
        out.push_back(c);
        advance();
      } else {
        break;
      }
    }
    return out;
  }

  std::string lex_number() {
    std::string out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' ||
          c == '.' || c == 'e' || c == 'E') {
        out.push_back(c);
        advance();
      } else {
        break;
      }
    }
    return out;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 2;  // header line consumed before lexing
  int col_ = 1;
};

const std::unordered_set<std::string>& known_unsupported() {
  static const std::unordered_set<std::string> set = {
      "variantSet", "variantSets", "payload",  "inherits", "specializes",
      "rel",        "uniform",     "custom",   "class",    "add",
      "delete",     "prepend",     "append",   "reorder",  "subLayers",
      "clips",      "kind",        "variants", "doc",      "customLayerData",
      "instanceable"};
  return set;
}

bool type_from_name(const std::string& name, bool is_array, ValueType& out) {
  if (!is_array) {
    if (name == "bool") out = ValueType::Bool;
    else if (name == "int") out = ValueType::Int;
    else if (name == "float") out = ValueType::Float;
    else if (name == "double") out = ValueType::Double;
    else if (name == "string") out = ValueType::String;
    else if (name == "token") out = ValueType::Token;
    else if (name == "float3") out = ValueType::Float3;
    else if (name == "double3") out = ValueType::Double3;
    else if (name == "matrix4d") out = ValueType::Matrix4d;
    else return false;
    return true;
  }
  if (name == "int") out = ValueType::IntArray;
  else if (name == "float3") out = ValueType::Float3Array;
  else if (name == "point3f") out = ValueType::Point3fArray;
  else return false;
  return true;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  UsdDocument run() {
    UsdDocument doc;
    if (check_punct("(")) parse_layer_metadata(doc);
    while (!at_end()) {
      doc.root.children.push_back(parse_prim());
    }
    check_sibling_names(doc.root);
    return doc;
  }

 private:
  const Token& peek(int ahead = 0) const {
    size_t i = pos_ + static_cast<size_t>(ahead);
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Token::End; }

  bool check_punct(const char* p) const {
    return peek().kind == Token::Punct && peek().text == p;
  }
  void expect_punct(const char* p) {
    if (!check_punct(p))
      fail(ErrorKind::SyntaxError, peek().line, peek().col,
           std::string("expected '") + p + "', got '" + peek().text + "'");
    next();
  }

  [[noreturn]] void unsupported(const Token& t, const std::string& what) {
    fail(ErrorKind::UnsupportedConstruct, t.line, t.col, what);
  }

  double number(const Token& t) {
    double v = 0;
    if (t.kind != Token::Number || !detail::parse_double(t.text, v))
      fail(ErrorKind::SyntaxError, t.line, t.col,
           "expected a number, got '" + t.text + "'");
    return v;
  }

  int integer(const Token& t) {
    long long v = 0;
    if (t.kind != Token::Number || !detail::parse_int(t.text, v) ||
        v < -0x80000000LL || v > 0x7fffffffLL)
      fail(ErrorKind::SyntaxError, t.line, t.col,
           "expected an integer, got '" + t.text + "'");
    return static_cast<int>(v);
  }

  void parse_layer_metadata(UsdDocument& doc) {
    expect_punct("(");
    bool saw_up = false, saw_mpu = false;
    while (!check_punct(")")) {
      const Token& key = next();
      if (key.kind != Token::Ident)
        fail(ErrorKind::SyntaxError, key.line, key.col,
             "expected layer metadata key");
      expect_punct("=");
      if (key.text == "upAxis") {
        const Token& v = next();
        if (v.kind != Token::Str)
          fail(ErrorKind::SyntaxError, v.line, v.col, "upAxis must be a string");
        if (v.text != "Z")
          unsupported(v, "upAxis \"" + v.text + "\" (only Z supported)");
        saw_up = true;
      } else if (key.text == "metersPerUnit") {
        const Token& v = next();
        if (number(v) != 1.0)
          unsupported(v, "metersPerUnit " + v.text + " (only 1 supported)");
        saw_mpu = true;
      } else if (key.text == "defaultPrim") {
        const Token& v = next();
        if (v.kind != Token::Str)
          fail(ErrorKind::SyntaxError, v.line, v.col,
               "defaultPrim must be a string");
        doc.default_prim = v.text;
      } else {
        unsupported(key, "layer metadata '" + key.text + "'");
      }
    }
    expect_punct(")");
    (void)saw_up;
    (void)saw_mpu;
  }

  Prim parse_prim() {
    const Token& spec = next();
    if (spec.kind != Token::Ident ||
        (spec.text != "def" && spec.text != "over")) {
      if (spec.kind == Token::Ident && known_unsupported().count(spec.text))
        unsupported(spec, spec.text);
      fail(ErrorKind::SyntaxError, spec.line, spec.col,
           "expected 'def' or 'over', got '" + spec.text + "'");
    }
    Prim prim;
    prim.over = spec.text == "over";

    if (peek().kind == Token::Ident) prim.type_name = next().text;

    const Token& nm = next();
    if (nm.kind != Token::Str)
      fail(ErrorKind::SyntaxError, nm.line, nm.col, "expected prim name string");
    if (!is_valid_prim_name(nm.text))
      fail(ErrorKind::SyntaxError, nm.line, nm.col,
           "invalid prim name '" + nm.text + "'");
    prim.name = nm.text;

    if (check_punct("(")) parse_prim_metadata(prim);

    expect_punct("{");
    while (!check_punct("}")) {
      if (at_end())
        fail(ErrorKind::SyntaxError, peek().line, peek().col,
             "unterminated prim body");
      const Token& head = peek();
      if (head.kind == Token::Ident && (head.text == "def" || head.text == "over")) {
        prim.children.push_back(parse_prim());
        continue;
      }
      parse_attribute(prim);
    }
    expect_punct("}");
    check_sibling_names(prim);
    return prim;
  }

  void parse_prim_metadata(Prim& prim) {
    expect_punct("(");
    while (!check_punct(")")) {
      const Token& key = next();
      if (key.kind != Token::Ident)
        fail(ErrorKind::SyntaxError, key.line, key.col,
             "expected prim metadata key");
      if (key.text != "references")
        unsupported(key, "prim metadata '" + key.text + "'");
      expect_punct("=");
      const Token& v = next();
      if (v.kind != Token::Asset)
        unsupported(v, "references value that is not a single asset path");
      prim.references = v.text;
    }
    expect_punct(")");
  }

  void parse_attribute(Prim& prim) {
    const Token& type_tok = next();
    if (type_tok.kind != Token::Ident)
      fail(ErrorKind::SyntaxError, type_tok.line, type_tok.col,
           "expected attribute type or prim");
    bool is_array = false;
    if (check_punct("[")) {
      // only immediately-closed brackets form an array type
      next();
      expect_punct("]");
      is_array = true;
    }
    ValueType type;
    if (!type_from_name(type_tok.text, is_array, type))
      unsupported(type_tok,
                  type_tok.text + (is_array ? std::string("[]") : std::string()));

    const Token& name_tok = next();
    if (name_tok.kind != Token::Ident)
      fail(ErrorKind::SyntaxError, name_tok.line, name_tok.col,
           "expected attribute name");
    if (!is_valid_attribute_name(name_tok.text))
      fail(ErrorKind::SyntaxError, name_tok.line, name_tok.col,
           "invalid attribute name '" + name_tok.text + "'");

    TypedValue tv;
    tv.type = type;
    if (check_punct("=")) {
      next();
      tv.value = parse_value(type);
    }
    if (!prim.attributes.emplace(name_tok.text, std::move(tv)).second)
      fail(ErrorKind::SyntaxError, name_tok.line, name_tok.col,
           "duplicate attribute '" + name_tok.text + "'");
  }

  Eigen::Vector3d parse_tuple3() {
    expect_punct("(");
    Eigen::Vector3d v;
    v.x() = number(next());
    expect_punct(",");
    v.y() = number(next());
    expect_punct(",");
    v.z() = number(next());
    expect_punct(")");
    return v;
  }

  ValueData parse_value(ValueType type) {
    switch (type) {
      case ValueType::Bool: {
        const Token& t = next();
        if (t.kind == Token::Ident && t.text == "true") return ValueData(true);
        if (t.kind == Token::Ident && t.text == "false") return ValueData(false);
        fail(ErrorKind::SyntaxError, t.line, t.col, "expected true or false");
      }
      case ValueType::Int:
        return ValueData(integer(next()));
      case ValueType::Float:
        return ValueData(static_cast<float>(number(next())));
      case ValueType::Double:
        return ValueData(number(next()));
      case ValueType::String:
      case ValueType::Token: {
        const Token& t = next();
        if (t.kind != Token::Str)
          fail(ErrorKind::SyntaxError, t.line, t.col, "expected quoted value");
        return ValueData(t.text);
      }
      case ValueType::Float3:
        return ValueData(Eigen::Vector3f(parse_tuple3().cast<float>()));
      case ValueType::Double3:
        return ValueData(parse_tuple3());
      case ValueType::Matrix4d: {
        expect_punct("(");
        Eigen::Matrix4d m;
        for (int r = 0; r < 4; ++r) {
          if (r > 0) expect_punct(",");
          expect_punct("(");
          for (int c = 0; c < 4; ++c) {
            if (c > 0) expect_punct(",");
            m(r, c) = number(next());
          }
          expect_punct(")");
        }
        expect_punct(")");
        return ValueData(m);
      }
      case ValueType::IntArray: {
        expect_punct("[");
        std::vector<int> out;
        while (!check_punct("]")) {
          if (!out.empty()) expect_punct(",");
          out.push_back(integer(next()));
        }
        expect_punct("]");
        return ValueData(std::move(out));
      }
      case ValueType::Float3Array:
      case ValueType::Point3fArray: {
        expect_punct("[");
        std::vector<Eigen::Vector3f> out;
        while (!check_punct("]")) {
          if (!out.empty()) expect_punct(",");
          out.push_back(parse_tuple3().cast<float>());
        }
        expect_punct("]");
        return ValueData(std::move(out));
      }
    }
    fail(ErrorKind::SyntaxError, peek().line, peek().col, "unhandled value type");
  }

  void check_sibling_names(const Prim& prim) {
    std::unordered_set<std::string> seen;
    for (const auto& c : prim.children)
      if (!seen.insert(c.name).second)
        throw Error(ErrorKind::SyntaxError,
                    "duplicate sibling prim name '" + c.name + "'");
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

}  // namespace

UsdDocument parse_usda(const std::string& text) {
  // Header line must match exactly.
  size_t eol = text.find('\n');
  std::string header = eol == std::string::npos ? text : text.substr(0, eol);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header != "#usda 1.0")
    throw Error(ErrorKind::SyntaxError, "1:1: missing '#usda 1.0' header");
  std::string body = eol == std::string::npos ? "" : text.substr(eol + 1);

  Lexer lexer(body);
  Parser parser(lexer.run());
  return parser.run();
}

UsdDocument load_usda_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_usda(ss.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ":" + e.message());
  }
}

void save_usda_file(const UsdDocument& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  out << emit_usda(doc);
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path + "'");
}

}  // namespace scan2sim::usd
