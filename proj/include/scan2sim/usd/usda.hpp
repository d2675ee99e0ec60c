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

#include <string>

#include "scan2sim/usd/document.hpp"

namespace scan2sim::usd {

// Parses the text-USD subset. Every construct outside the subset raises
// UnsupportedConstruct naming it; malformed input raises LexError or
// SyntaxError with line:column. Nothing is silently dropped.
UsdDocument parse_usda(const std::string& text);

// Canonical serialization: fixed header, layer metadata in fixed order,
// attributes sorted by name, children in stored order, 4-space indent,
// shortest round-trip number formatting. parse_usda(emit_usda(d)) is
// structurally equal to d.
std::string emit_usda(const UsdDocument& doc);

UsdDocument load_usda_file(const std::string& path);
void save_usda_file(const UsdDocument& doc, const std::string& path);

}  // namespace scan2sim::usd
