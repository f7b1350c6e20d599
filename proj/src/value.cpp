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

#include "value.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace apimorph {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "io error";
    case ErrorKind::kSchema: return "schema error";
    case ErrorKind::kValidation: return "validation error";
    case ErrorKind::kResolution: return "resolution error";
    case ErrorKind::kScoping: return "scoping error";
    case ErrorKind::kConsistency: return "consistency error";
    case ErrorKind::kLookup: return "lookup error";
    case ErrorKind::kPrecondition: return "precondition error";
    case ErrorKind::kRuntime: return "runtime error";
    case ErrorKind::kUsage: return "usage error";
  }
  return "error";
}

namespace {

std::string format_double(double d) {
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), d);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

int literal_rank(const Literal& l) {
  switch (l.index()) {
    case 0:
    case 1: return 0;
    case 2: return 1;
    case 3: return 2;
    default: return 3;
  }
}

double numeric(const Literal& l) {
  if (auto* i = std::get_if<std::int64_t>(&l)) return static_cast<double>(*i);
  return std::get<double>(l);
}

bool near(double a, double b, double tol) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::fabs(a - b) <= tol;
}

}  // namespace

std::string literal_to_string(const Literal& lit) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "True" : "False";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return quote(v);
        } else {
          std::string out = "(";
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(v[i]);
          }
          out += ')';
          return out;
        }
      },
      lit);
}

bool literal_equal(const Literal& a, const Literal& b) { return a == b; }

bool literal_less(const Literal& a, const Literal& b) {
  int ra = literal_rank(a), rb = literal_rank(b);
  if (ra != rb) return ra < rb;
  if (ra == 0) {
    double da = numeric(a), db = numeric(b);
    if (da != db) return da < db;
    return a.index() < b.index();  // 1 before 1.0
  }
  return a < b;
}

Json literal_to_json(const Literal& lit) {
  return std::visit([](const auto& v) -> Json { return Json(v); }, lit);
}

Literal literal_from_json(const Json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    IntTuple t;
    for (const auto& e : j) {
      if (!e.is_number_integer())
        throw Error(ErrorKind::kSchema, "tuple literal must contain integers");
      t.push_back(e.get<std::int64_t>());
    }
    return t;
  }
  throw Error(ErrorKind::kSchema, "unsupported literal: " + j.dump());
}

const char* to_string(DType d) { return d == DType::kInt ? "int" : "float"; }

const char* to_string(ColumnType t) {
  switch (t) {
    case ColumnType::kFloat: return "float";
    case ColumnType::kInt: return "int";
    case ColumnType::kString: return "string";
  }
  return "float";
}

std::int64_t Tensor::element_count() const {
  std::int64_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

bool Tensor::well_formed() const {
  for (auto d : shape)
    if (d < 0) return false;
  return element_count() == static_cast<std::int64_t>(data.size());
}

const Column* Table::find(const std::string& name) const {
  for (const auto& c : columns)
    if (c.name == name) return &c;
  return nullptr;
}

bool Table::well_formed() const {
  for (const auto& c : columns)
    if (c.size() != row_count()) return false;
  return true;
}

std::vector<std::int64_t> Value::shape() const {
  if (is_tensor()) return tensor().shape;
  if (is_table())
    return {static_cast<std::int64_t>(table().row_count()),
            static_cast<std::int64_t>(table().columns.size())};
  return {};
}

bool same_structure(const Value& a, const Value& b) {
  if (a.data.index() != b.data.index()) return false;
  if (a.is_tensor()) {
    return a.tensor().dtype == b.tensor().dtype &&
           a.tensor().shape == b.tensor().shape;
  }
  if (a.is_table()) {
    const auto& ta = a.table();
    const auto& tb = b.table();
    if (ta.columns.size() != tb.columns.size()) return false;
    for (std::size_t i = 0; i < ta.columns.size(); ++i) {
      if (ta.columns[i].name != tb.columns[i].name ||
          ta.columns[i].type != tb.columns[i].type ||
          ta.columns[i].size() != tb.columns[i].size())
        return false;
    }
  }
  return true;
}

bool values_equal(const Value& a, const Value& b, double tol) {
  if (!same_structure(a, b)) return false;
  switch (a.data.index()) {
    case 0: return std::get<std::int64_t>(a.data) == std::get<std::int64_t>(b.data);
    case 1: return near(std::get<double>(a.data), std::get<double>(b.data), tol);
    case 2: return std::get<bool>(a.data) == std::get<bool>(b.data);
    case 3: return std::get<std::string>(a.data) == std::get<std::string>(b.data);
    case 4: {
      const auto& ta = a.tensor();
      const auto& tb = b.tensor();
      for (std::size_t i = 0; i < ta.data.size(); ++i) {
        if (ta.dtype == DType::kInt ? ta.data[i] != tb.data[i]
                                    : !near(ta.data[i], tb.data[i], tol))
          return false;
      }
      return true;
    }
    default: {
      const auto& ta = a.table();
      const auto& tb = b.table();
      for (std::size_t c = 0; c < ta.columns.size(); ++c) {
        const auto& ca = ta.columns[c];
        const auto& cb = tb.columns[c];
        if (ca.type == ColumnType::kString) {
          if (ca.strings != cb.strings) return false;
        } else {
          for (std::size_t i = 0; i < ca.numbers.size(); ++i) {
            if (ca.type == ColumnType::kInt ? ca.numbers[i] != cb.numbers[i]
                                            : !near(ca.numbers[i], cb.numbers[i], tol))
              return false;
          }
        }
      }
      return true;
    }
  }
}

Json value_to_json(const Value& v) {
  switch (v.data.index()) {
    case 0: return std::get<std::int64_t>(v.data);
    case 1: return std::get<double>(v.data);
    case 2: return std::get<bool>(v.data);
    case 3: return std::get<std::string>(v.data);
    case 4: {
      const auto& t = v.tensor();
      Json data = Json::array();
      for (double d : t.data) {
        if (t.dtype == DType::kInt)
          data.push_back(static_cast<std::int64_t>(d));
        else
          data.push_back(d);
      }
      return Json{{"tensor", {{"dtype", to_string(t.dtype)}, {"shape", t.shape}, {"data", data}}}};
    }
    default: {
      Json cols = Json::array();
      for (const auto& c : v.table().columns) {
        Json values = Json::array();
        if (c.type == ColumnType::kString) {
          values = c.strings;
        } else {
          for (double d : c.numbers) {
            if (c.type == ColumnType::kInt)
              values.push_back(static_cast<std::int64_t>(d));
            else
              values.push_back(d);
          }
        }
        cols.push_back({{"name", c.name}, {"type", to_string(c.type)}, {"values", values}});
      }
      return Json{{"table", {{"columns", cols}}}};
    }
  }
}

namespace {

Tensor tensor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("shape") || !j.contains("data"))
    throw Error(ErrorKind::kSchema, "tensor literal needs shape and data");
  Tensor t;
  std::string dtype = j.value("dtype", "float");
  if (dtype == "int")
    t.dtype = DType::kInt;
  else if (dtype == "float")
    t.dtype = DType::kFloat;
  else
    throw Error(ErrorKind::kSchema, "unknown tensor dtype '" + dtype + "'");
  for (const auto& d : j.at("shape")) t.shape.push_back(d.get<std::int64_t>());
  for (const auto& d : j.at("data")) {
    if (!d.is_number()) throw Error(ErrorKind::kSchema, "tensor data must be numeric");
    t.data.push_back(d.get<double>());
  }
  if (!t.well_formed())
    throw Error(ErrorKind::kSchema, "tensor shape product does not match element count");
  return t;
}

Table table_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("columns"))
    throw Error(ErrorKind::kSchema, "table literal needs columns");
  Table t;
  for (const auto& cj : j.at("columns")) {
    Column c;
    c.name = cj.at("name").get<std::string>();
    std::string type = cj.value("type", "float");
    if (type == "float") {
      c.type = ColumnType::kFloat;
    } else if (type == "int") {
      c.type = ColumnType::kInt;
    } else if (type == "string") {
      c.type = ColumnType::kString;
    } else {
      throw Error(ErrorKind::kSchema, "unknown column type '" + type + "'");
    }
    for (const auto& e : cj.at("values")) {
      if (c.type == ColumnType::kString)
        c.strings.push_back(e.get<std::string>());
      else
        c.numbers.push_back(e.get<double>());
    }
    t.columns.push_back(std::move(c));
  }
  if (!t.well_formed()) throw Error(ErrorKind::kSchema, "table columns differ in length");
  return t;
}

}  // namespace

Value value_from_json(const Json& j) {
  if (j.is_boolean()) return Value(j.get<bool>());
  if (j.is_number_integer()) return Value(j.get<std::int64_t>());
  if (j.is_number_float()) return Value(j.get<double>());
  if (j.is_string()) return Value(j.get<std::string>());
  if (j.is_object() && j.contains("tensor")) return Value(tensor_from_json(j.at("tensor")));
  if (j.is_object() && j.contains("table")) return Value(table_from_json(j.at("table")));
  throw Error(ErrorKind::kSchema, "unrecognised value literal: " + j.dump());
}

std::string value_summary(const Value& v) {
  std::ostringstream os;
  if (v.is_tensor()) {
    os << to_string(v.tensor().dtype) << " tensor [";
    for (std::size_t i = 0; i < v.tensor().shape.size(); ++i)
      os << (i ? ", " : "") << v.tensor().shape[i];
    os << "]";
  } else if (v.is_table()) {
    os << "table " << v.table().row_count() << "x" << v.table().columns.size();
  } else {
    os << value_to_json(v).dump();
  }
  return os.str();
}

}  // namespace apimorph
