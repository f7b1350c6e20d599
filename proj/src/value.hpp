// Copyright 2026 The Apimorph Authors.
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

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace apimorph {

using Json = nlohmann::json;

/// Absolute tolerance used for every floating point comparison of Values.
inline constexpr double kValueTolerance = 1e-6;

using IntTuple = std::vector<std::int64_t>;

/// A literal that may appear as a call argument or as a hole value.
using Literal = std::variant<std::int64_t, double, bool, std::string, IntTuple>;

std::string literal_to_string(const Literal& lit);
bool literal_equal(const Literal& a, const Literal& b);
/// Total order used for pool sorting: ints/floats numerically, then bools,
/// strings, tuples.
bool literal_less(const Literal& a, const Literal& b);
Json literal_to_json(const Literal& lit);
Literal literal_from_json(const Json& j);

enum class DType { kFloat, kInt };

const char* to_string(DType d);

struct Tensor {
  DType dtype = DType::kFloat;
  std::vector<std::int64_t> shape;
  std::vector<double> data;

  std::int64_t rank() const { return static_cast<std::int64_t>(shape.size()); }
  std::int64_t element_count() const;
  bool well_formed() const;
};

enum class ColumnType { kFloat, kInt, kString };

const char* to_string(ColumnType t);

struct Column {
  std::string name;
  ColumnType type = ColumnType::kFloat;
  std::vector<double> numbers;       // kFloat, kInt
  std::vector<std::string> strings;  // kString

  std::size_t size() const {
    return type == ColumnType::kString ? strings.size() : numbers.size();
  }
};

struct Table {
  std::vector<Column> columns;

  std::size_t row_count() const {
    return columns.empty() ? 0 : columns.front().size();
  }
  const Column* find(const std::string& name) const;
  bool well_formed() const;
};

/// Carrier for test inputs and outputs: scalars, dense tensors, or tables.
struct Value {
  std::variant<std::int64_t, double, bool, std::string, Tensor, Table> data;

  Value() : data(std::int64_t{0}) {}
  template <typename T>
  Value(T v) : data(std::move(v)) {}

  bool is_tensor() const { return std::holds_alternative<Tensor>(data); }
  bool is_table() const { return std::holds_alternative<Table>(data); }
  const Tensor& tensor() const { return std::get<Tensor>(data); }
  const Table& table() const { return std::get<Table>(data); }

  /// Shape of a tensor, {rows, columns} for a table, {} for scalars.
  std::vector<std::int64_t> shape() const;
};

/// Numeric equality under kValueTolerance for floats; exact for ints, bools,
/// strings, dtypes, shapes and column names.
bool values_equal(const Value& a, const Value& b, double tol = kValueTolerance);

/// Equality of everything except the float payload: kind, dtype, shape,
/// column layout.
bool same_structure(const Value& a, const Value& b);

Json value_to_json(const Value& v);
Value value_from_json(const Json& j);
std::string value_summary(const Value& v);

}  // namespace apimorph
