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

#include <map>
#include <string>

namespace scan2sim {

// Flat `key = value` configuration with '#' comments and dotted keys
// (e.g. http.endpoint). Values are uninterpreted strings.
struct Config {
  std::map<std::string, std::string> values;

  static Config load_file(const std::string& path);
  static Config parse(const std::string& text);

  bool has(const std::string& key) const { return values.count(key) > 0; }
  std::string get_or(const std::string& key, const std::string& fallback) const;
};

}  // namespace scan2sim
