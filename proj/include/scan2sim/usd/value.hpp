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
#include <string>
#include <variant>
#include <vector>

namespace scan2sim::usd {

enum class ValueType {
  Bool,
  Int,
  Float,
  Double,
  String,
  Token,
  Float3,
  Double3,
  Matrix4d,
  IntArray,
  Float3Array,
  Point3fArray,
};

// Text form of the type as it appears in a usda attribute declaration.
const char* value_type_name(ValueType t);

// Storage for an attribute value. Token/String share std::string and the
// two float3-vector array flavors share their element type; the ValueType
// tag is what distinguishes them.
using ValueData = std::variant<bool, int, float, double, std::string,
                               Eigen::Vector3f, Eigen::Vector3d, Eigen::Matrix4d,
                               std::vector<int>, std::vector<Eigen::Vector3f>>;

struct TypedValue {
  ValueType type = ValueType::Token;
  std::optional<ValueData> value;  // nullopt: declared but unauthored

  static TypedValue boolean(bool v) { return {ValueType::Bool, ValueData(v)}; }
  static TypedValue int_(int v) { return {ValueType::Int, ValueData(v)}; }
  static TypedValue float_(float v) { return {ValueType::Float, ValueData(v)}; }
  static TypedValue double_(double v) { return {ValueType::Double, ValueData(v)}; }
  static TypedValue string_(std::string v) {
    return {ValueType::String, ValueData(std::move(v))};
  }
  static TypedValue token(std::string v) {
    return {ValueType::Token, ValueData(std::move(v))};
  }
  static TypedValue float3(const Eigen::Vector3f& v) {
    return {ValueType::Float3, ValueData(v)};
  }
  static TypedValue double3(const Eigen::Vector3d& v) {
    return {ValueType::Double3, ValueData(v)};
  }
  static TypedValue matrix4d(const Eigen::Matrix4d& m) {
    return {ValueType::Matrix4d, ValueData(m)};
  }
  static TypedValue int_array(std::vector<int> v) {
    return {ValueType::IntArray, ValueData(std::move(v))};
  }
  static TypedValue float3_array(std::vector<Eigen::Vector3f> v) {
    return {ValueType::Float3Array, ValueData(std::move(v))};
  }
  static TypedValue point3f_array(std::vector<Eigen::Vector3f> v) {
    return {ValueType::Point3fArray, ValueData(std::move(v))};
  }

  bool operator==(const TypedValue& other) const;
  bool operator!=(const TypedValue& other) const { return !(*this == other); }
};

}  // namespace scan2sim::usd
