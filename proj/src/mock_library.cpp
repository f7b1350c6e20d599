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

#include "mock_library.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <set>

#include "error.hpp"
#include "relation.hpp"

namespace apimorph {

double mock_conv_weight(std::int64_t o, std::int64_t i, std::int64_t a, std::int64_t b) {
  return static_cast<double>(((o * 7 + i * 5 + a * 3 + b * 2) % 11) - 5) / 8.0;
}
double mock_conv_bias(std::int64_t o) { return static_cast<double>((o % 3) - 1) / 4.0; }
double mock_dense_weight(std::int64_t u, std::int64_t f) {
  return static_cast<double>(((u * 5 + f * 3) % 7) - 3) / 4.0;
}
double mock_dense_bias(std::int64_t u) { return static_cast<double>((u % 3) - 1) / 2.0; }

namespace {

struct MockError {
  std::string message;
};

[[noreturn]] void fail(std::string msg) { throw MockError{std::move(msg)}; }

std::string shape_str(const std::vector<std::int64_t>& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + std::to_string(s[i]);
  return out + "]";
}

struct ParamDecl {
  std::string name;
  std::optional<Literal> default_value;
};

class Args {
 public:
  Args(std::string op, const std::vector<ParamDecl>& decl, const CallSite& call) : op_(std::move(op)) {
    if (call.positional_args.size() > decl.size())
      fail(op_ + "(): extra positional arguments are not supported");
    for (std::size_t i = 0; i < call.positional_args.size(); ++i) values_[decl[i].name] = call.positional_args[i];
    for (const auto& [k, v] : call.keyword_args) {
      auto it = std::find_if(decl.begin(), decl.end(), [&](const ParamDecl& d) { return d.name == k; });
      if (it == decl.end()) fail(op_ + "(): keyword argument '" + k + "' is not supported");
      values_[k] = v;
    }
    for (const auto& d : decl) {
      if (values_.count(d.name)) continue;
      if (!d.default_value) fail(op_ + "(): argument '" + d.name + "' is not given");
      values_[d.name] = *d.default_value;
    }
  }

  std::int64_t integer(const std::string& name) const {
    const Literal& l = values_.at(name);
    if (auto* i = std::get_if<std::int64_t>(&l)) return *i;
    wrong(name, "integer");
  }
  double number(const std::string& name) const {
    const Literal& l = values_.at(name);
    if (auto* i = std::get_if<std::int64_t>(&l)) return static_cast<double>(*i);
    if (auto* d = std::get_if<double>(&l)) return *d;
    wrong(name, "number");
  }
  bool boolean(const std::string& name) const {
    const Literal& l = values_.at(name);
    if (auto* b = std::get_if<bool>(&l)) return *b;
    wrong(name, "boolean");
  }
  std::string text(const std::string& name) const {
    const Literal& l = values_.at(name);
    if (auto* s = std::get_if<std::string>(&l)) return *s;
    wrong(name, "string");
  }
  std::pair<std::int64_t, std::int64_t> pair(const std::string& name) const {
    const Literal& l = values_.at(name);
    if (auto* i = std::get_if<std::int64_t>(&l)) return {*i, *i};
    if (auto* t = std::get_if<IntTuple>(&l); t && t->size() == 2) return {(*t)[0], (*t)[1]};
    wrong(name, "integer pair");
  }

 private:
  [[noreturn]] void wrong(const std::string& name, const std::string& what) const {
    fail(op_ + "(): argument '" + name + "' holding " + literal_to_string(values_.at(name)) + " as " + what +
         " is not allowed");
  }

  std::string op_;
  std::map<std::string, Literal> values_;
};

const char* kind_name(const Value& v) {
  if (v.is_tensor()) return v.tensor().dtype == DType::kInt ? "LongTensor" : "FloatTensor";
  if (v.is_table()) return "DataFrame";
  switch (v.data.index()) {
    case 0: return "int";
    case 1: return "float";
    case 2: return "bool";
    default: return "str";
  }
}

const Tensor& need_tensor(const std::string& op, const Value& v) {
  if (!v.is_tensor()) fail(op + "(): argument input (position 1) must be Tensor, not " + kind_name(v));
  return v.tensor();
}

const Table& need_table(const std::string& op, const Value& v) {
  if (!v.is_table()) fail(op + "(): argument self (position 1) must be DataFrame, not " + kind_name(v));
  return v.table();
}

void negative_dimension(const std::vector<std::int64_t>& dims, const char* what = "tensor") {
  for (auto d : dims)
    if (d < 0) fail(std::string("Trying to create ") + what + " with negative dimension " + std::to_string(d) + ": " + shape_str(dims));
}

Tensor map_tensor(const Tensor& t, const std::function<double(double)>& f, DType dtype) {
  Tensor out{dtype, t.shape, {}};
  out.data.reserve(t.data.size());
  for (double v : t.data) out.data.push_back(dtype == DType::kInt ? std::trunc(f(v)) : f(v));
  return out;
}

bool integral(double v) { return std::floor(v) == v; }

Tensor scale_by(const Tensor& t, double factor) {
  DType d = t.dtype == DType::kInt && integral(factor) ? DType::kInt : DType::kFloat;
  return map_tensor(t, [&](double v) { return v * factor; }, d);
}

Tensor shift_by(const Tensor& t, double offset) {
  DType d = t.dtype == DType::kInt && integral(offset) ? DType::kInt : DType::kFloat;
  return map_tensor(t, [&](double v) { return v + offset; }, d);
}

Tensor clamp_to(const Tensor& t, double lo, double hi) {
  DType d = t.dtype == DType::kInt && integral(lo) && integral(hi) ? DType::kInt : DType::kFloat;
  return map_tensor(t, [&](double v) { return std::min(std::max(v, lo), hi); }, d);
}

Tensor relu(const Tensor& t) {
  return map_tensor(t, [](double v) { return v > 0 ? v : 0.0; }, t.dtype);
}

// NCHW convolution with zero padding; shapes already validated.
Tensor conv2d(const Tensor& x, std::int64_t out_ch, std::int64_t kh, std::int64_t kw, std::int64_t sh,
              std::int64_t sw, std::int64_t ph, std::int64_t pw, std::int64_t oh, std::int64_t ow) {
  const std::int64_t n = x.shape[0], c = x.shape[1], h = x.shape[2], w = x.shape[3];
  Tensor out{DType::kFloat, {n, out_ch, oh, ow}, {}};
  out.data.assign(static_cast<std::size_t>(n * out_ch * oh * ow), 0.0);
  for (std::int64_t b = 0; b < n; ++b)
    for (std::int64_t o = 0; o < out_ch; ++o)
      for (std::int64_t y = 0; y < oh; ++y)
        for (std::int64_t z = 0; z < ow; ++z) {
          double acc = mock_conv_bias(o);
          for (std::int64_t i = 0; i < c; ++i)
            for (std::int64_t a = 0; a < kh; ++a) {
              std::int64_t yy = y * sh + a - ph;
              if (yy < 0 || yy >= h) continue;
              for (std::int64_t e = 0; e < kw; ++e) {
                std::int64_t zz = z * sw + e - pw;
                if (zz < 0 || zz >= w) continue;
                acc += mock_conv_weight(o, i, a, e) * x.data[((b * c + i) * h + yy) * w + zz];
              }
            }
          out.data[((b * out_ch + o) * oh + y) * ow + z] = acc;
        }
  return out;
}

Tensor dense(const Tensor& x, std::int64_t units, bool bias) {
  const std::int64_t f = x.shape.back();
  const std::int64_t rows = f == 0 ? 0 : static_cast<std::int64_t>(x.data.size()) / f;
  Tensor out{DType::kFloat, x.shape, {}};
  out.shape.back() = units;
  out.data.assign(static_cast<std::size_t>(rows * units), 0.0);
  for (std::int64_t r = 0; r < rows; ++r)
    for (std::int64_t u = 0; u < units; ++u) {
      double acc = bias ? mock_dense_bias(u) : 0.0;
      for (std::int64_t k = 0; k < f; ++k) acc += x.data[r * f + k] * mock_dense_weight(u, k);
      out.data[r * units + u] = acc;
    }
  return out;
}

// Reduces a 4-D tensor over two spatial axes. `channels_last` selects NHWC.
Tensor global_pool(const Tensor& x, bool channels_last, bool use_max) {
  const std::int64_t n = x.shape[0];
  const std::int64_t c = channels_last ? x.shape[3] : x.shape[1];
  const std::int64_t h = channels_last ? x.shape[1] : x.shape[2];
  const std::int64_t w = channels_last ? x.shape[2] : x.shape[3];
  Tensor out{x.dtype == DType::kInt && use_max ? DType::kInt : DType::kFloat, {n, c}, {}};
  for (std::int64_t b = 0; b < n; ++b)
    for (std::int64_t k = 0; k < c; ++k) {
      double acc = use_max ? -INFINITY : 0.0;
      for (std::int64_t y = 0; y < h; ++y)
        for (std::int64_t z = 0; z < w; ++z) {
          std::int64_t idx = channels_last ? ((b * h + y) * w + z) * c + k : ((b * c + k) * h + y) * w + z;
          acc = use_max ? std::max(acc, x.data[idx]) : acc + x.data[idx];
        }
      if (!use_max) acc = h * w == 0 ? 0.0 : acc / static_cast<double>(h * w);
      out.data.push_back(acc);
    }
  return out;
}

std::int64_t normalize_dim(std::int64_t d, std::int64_t rank) {
  std::int64_t lo = -std::max<std::int64_t>(rank, 1), hi = std::max<std::int64_t>(rank, 1) - 1;
  if (d < lo || d > hi)
    fail("Expected dim in range [" + std::to_string(lo) + ", " + std::to_string(hi) +
         "], but got out-of-range dim (" + std::to_string(d) + ") instead");
  return d < 0 ? d + rank : d;
}

Tensor reduce_sum(const Tensor& x, std::int64_t axis) {
  if (x.rank() == 0) fail("Expected 1-dimensional input for reduction, but got 0-dimensional input of size [] instead");
  std::int64_t ax = normalize_dim(axis, x.rank());
  std::int64_t outer = 1, inner = 1, len = x.shape[ax];
  for (std::int64_t i = 0; i < ax; ++i) outer *= x.shape[i];
  for (std::int64_t i = ax + 1; i < x.rank(); ++i) inner *= x.shape[i];
  Tensor out{x.dtype, {}, {}};
  for (std::int64_t i = 0; i < x.rank(); ++i)
    if (i != ax) out.shape.push_back(x.shape[i]);
  out.data.assign(static_cast<std::size_t>(outer * inner), 0.0);
  for (std::int64_t o = 0; o < outer; ++o)
    for (std::int64_t l = 0; l < len; ++l)
      for (std::int64_t i = 0; i < inner; ++i) out.data[o * inner + i] += x.data[(o * len + l) * inner + i];
  return out;
}

Tensor one_hot(const Tensor& x, std::int64_t depth) {
  Tensor out{DType::kInt, x.shape, {}};
  out.shape.push_back(depth);
  out.data.assign(x.data.size() * static_cast<std::size_t>(depth), 0.0);
  for (std::size_t i = 0; i < x.data.size(); ++i) {
    auto k = static_cast<std::int64_t>(std::trunc(x.data[i]));
    if (k >= 0 && k < depth) out.data[i * depth + k] = 1.0;
  }
  return out;
}

Tensor drop_last(const Tensor& x) {
  if (x.rank() == 0 || x.shape[0] == 0) fail("zero-size input dimension is not supported");
  Tensor out = x;
  out.shape[0] -= 1;
  out.data.resize(static_cast<std::size_t>(out.element_count()));
  return out;
}

Tensor flatten_range(const Tensor& x, std::int64_t start, std::int64_t end) {
  Tensor out{x.dtype, {}, x.data};
  std::int64_t merged = 1;
  for (std::int64_t i = 0; i < x.rank(); ++i) {
    if (i < start || i > end) {
      out.shape.push_back(x.shape[i]);
    } else {
      merged *= x.shape[i];
      if (i == end) out.shape.push_back(merged);
    }
  }
  return out;
}

Tensor permute(const Tensor& x, const std::vector<std::int64_t>& dims) {
  if (x.rank() != 4)
    fail("Expected 4-dimensional input for permute, but got " + std::to_string(x.rank()) +
         "-dimensional input of size " + shape_str(x.shape) + " instead");
  for (auto d : dims) {
    if (d < 0) fail("Expected dims in range [0, 3], but got negative dim " + std::to_string(d) + " instead");
    if (d > 3) fail("Expected dims in range [0, 3], but got out-of-range dim (" + std::to_string(d) + ") instead");
  }
  if (std::set<std::int64_t>(dims.begin(), dims.end()).size() != dims.size())
    fail("Expected distinct dims for permute, but got duplicate dims " + shape_str(dims) + " instead");
  Tensor out{x.dtype, {}, {}};
  for (auto d : dims) out.shape.push_back(x.shape[d]);
  out.data.resize(x.data.size());
  std::vector<std::int64_t> in_stride(4, 1);
  for (int i = 2; i >= 0; --i) in_stride[i] = in_stride[i + 1] * x.shape[i + 1];
  std::size_t k = 0;
  for (std::int64_t a = 0; a < out.shape[0]; ++a)
    for (std::int64_t b = 0; b < out.shape[1]; ++b)
      for (std::int64_t c = 0; c < out.shape[2]; ++c)
        for (std::int64_t e = 0; e < out.shape[3]; ++e) {
          std::int64_t idx[4] = {a, b, c, e};
          std::int64_t src = 0;
          for (int j = 0; j < 4; ++j) src += idx[j] * in_stride[dims[j]];
          out.data[k++] = x.data[src];
        }
  return out;
}

const Column& numeric_column(const Table& t, const std::string& name) {
  const Column* c = t.find(name);
  if (!c) fail("column '" + name + "' is not defined");
  if (c->type == ColumnType::kString) fail("comparison on string column '" + name + "' is not supported");
  return *c;
}

Table select_rows(const Table& t, const std::vector<std::size_t>& rows) {
  Table out;
  for (const auto& c : t.columns) {
    Column n{c.name, c.type, {}, {}};
    for (auto r : rows) {
      if (c.type == ColumnType::kString)
        n.strings.push_back(c.strings[r]);
      else
        n.numbers.push_back(c.numbers[r]);
    }
    out.columns.push_back(std::move(n));
  }
  return out;
}

Table filter(const Table& t, const std::string& column, const std::function<bool(double)>& keep) {
  const Column& c = numeric_column(t, column);
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < c.numbers.size(); ++r)
    if (keep(c.numbers[r])) rows.push_back(r);
  return select_rows(t, rows);
}

Table sort_by(const Table& t, const std::string& column, bool descending) {
  const Column* c = t.find(column);
  if (!c) fail("column '" + column + "' is not defined");
  std::vector<std::size_t> rows(t.row_count());
  std::iota(rows.begin(), rows.end(), 0);
  std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
    if (c->type == ColumnType::kString) return descending ? c->strings[a] > c->strings[b] : c->strings[a] < c->strings[b];
    return descending ? c->numbers[a] > c->numbers[b] : c->numbers[a] < c->numbers[b];
  });
  return select_rows(t, rows);
}

Table head(const Table& t, std::int64_t n) {
  if (n < 0) fail("Trying to create table with negative length " + std::to_string(n));
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < t.row_count() && static_cast<std::int64_t>(r) < n; ++r) rows.push_back(r);
  return select_rows(t, rows);
}

struct OpDef {
  std::vector<ParamDecl> params;
  std::function<Value(const Value&, const Args&, const std::string&)> fn;
};

ParamDecl req(std::string n) { return {std::move(n), std::nullopt}; }
ParamDecl opt(std::string n, Literal d) { return {std::move(n), std::move(d)}; }

void check_conv_params(std::int64_t in_ch, std::int64_t out_ch, std::int64_t kh, std::int64_t kw,
                       std::int64_t sh, std::int64_t sw, std::int64_t ph, std::int64_t pw) {
  std::vector<std::int64_t> weight{out_ch, in_ch, kh, kw};
  negative_dimension(weight);
  for (auto d : weight)
    if (d == 0) fail("zero-size weight dimension is not supported");
  if (sh <= 0 || sw <= 0) fail("non-positive stride is not supported");
  if (ph < 0 || pw < 0) fail("negative padding is not supported");
}

Value run_conv(const Tensor& x, std::int64_t in_ch, std::int64_t out_ch, std::int64_t kh, std::int64_t kw,
               std::int64_t sh, std::int64_t sw, std::int64_t ph, std::int64_t pw) {
  std::string weight = shape_str({out_ch, in_ch, kh, kw});
  if (x.rank() != 4)
    fail("Expected 4-dimensional input for 4-dimensional weight " + weight + ", but got " +
         std::to_string(x.rank()) + "-dimensional input of size " + shape_str(x.shape) + " instead");
  if (x.shape[1] != in_ch)
    fail("Expected " + std::to_string(in_ch) + "-channel input for " + std::to_string(in_ch) + "-channel weight " +
         weight + ", but got " + std::to_string(x.shape[1]) + "-channel input of size " + shape_str(x.shape) +
         " instead");
  std::int64_t oh = floor_div(x.shape[2] + 2 * ph - kh, sh) + 1;
  std::int64_t ow = floor_div(x.shape[3] + 2 * pw - kw, sw) + 1;
  std::vector<std::int64_t> out_shape{x.shape[0], out_ch, oh, ow};
  negative_dimension(out_shape);
  if (oh == 0 || ow == 0) fail("zero-size output dimension is not supported");
  return conv2d(x, out_ch, kh, kw, sh, sw, ph, pw, oh, ow);
}

Value run_linear(const Tensor& x, std::int64_t in_f, std::int64_t out_f, bool bias) {
  negative_dimension({out_f, in_f});
  if (in_f == 0 || out_f == 0) fail("zero-size weight dimension is not supported");
  std::string weight = shape_str({out_f, in_f});
  if (x.rank() == 0)
    fail("Expected 2-dimensional input for 2-dimensional weight " + weight +
         ", but got 0-dimensional input of size [] instead");
  if (x.shape.back() != in_f)
    fail("Expected " + std::to_string(in_f) + "-feature input for " + std::to_string(in_f) + "-feature weight " +
         weight + ", but got " + std::to_string(x.shape.back()) + "-feature input of size " + shape_str(x.shape) +
         " instead");
  return dense(x, out_f, bias);
}

Value run_pool(const Tensor& x, bool channels_last, bool use_max) {
  if (x.rank() != 4)
    fail("Expected 4-dimensional input for pooling, but got " + std::to_string(x.rank()) +
         "-dimensional input of size " + shape_str(x.shape) + " instead");
  return global_pool(x, channels_last, use_max);
}

const std::map<std::string, OpDef>& registry() {
  static const std::map<std::string, OpDef> ops = [] {
    std::map<std::string, OpDef> m;
    // ---- flow (source) ----
    m["flow.math.scale"] = {{req("factor")}, [](const Value& v, const Args& a, const std::string& op) {
                              return Value(scale_by(need_tensor(op, v), a.number("factor")));
                            }};
    m["flow.math.shift"] = {{req("offset")}, [](const Value& v, const Args& a, const std::string& op) {
                              return Value(shift_by(need_tensor(op, v), a.number("offset")));
                            }};
    m["flow.math.clip"] = {{req("clip_value_min"), req("clip_value_max")},
                           [](const Value& v, const Args& a, const std::string& op) {
                             double lo = a.number("clip_value_min"), hi = a.number("clip_value_max");
                             if (lo > hi) fail("clip_value_min greater than clip_value_max is not supported");
                             return Value(clamp_to(need_tensor(op, v), lo, hi));
                           }};
    m["flow.layers.ReLU"] = {{}, [](const Value& v, const Args&, const std::string& op) {
                               return Value(relu(need_tensor(op, v)));
                             }};
    m["flow.layers.Conv2D"] = {
        {req("filters"), req("kernel_size"), opt("strides", IntTuple{1, 1}), opt("padding", std::string("valid"))},
        [](const Value& v, const Args& a, const std::string& op) {
          const Tensor& x = need_tensor(op, v);
          std::int64_t f = a.integer("filters"), k = a.integer("kernel_size");
          auto [sh, sw] = a.pair("strides");
          std::string pad = a.text("padding");
          if (pad != "valid" && pad != "same") fail("padding mode '" + pad + "' is not supported");
          std::int64_t p = pad == "same" ? floor_div(k - 1, 2) : 0;
          std::int64_t in_ch = x.rank() == 4 ? x.shape[1] : 1;
          check_conv_params(in_ch, f, k, k, sh, sw, p, p);
          return run_conv(x, in_ch, f, k, k, sh, sw, p, p);
        }};
    m["flow.layers.Dense"] = {{req("units"), opt("use_bias", true)},
                              [](const Value& v, const Args& a, const std::string& op) {
                                const Tensor& x = need_tensor(op, v);
                                std::int64_t f = x.rank() == 0 ? 1 : x.shape.back();
                                return run_linear(x, f, a.integer("units"), a.boolean("use_bias"));
                              }};
    m["flow.layers.Flatten"] = {{}, [](const Value& v, const Args&, const std::string& op) {
                                  const Tensor& x = need_tensor(op, v);
                                  if (x.rank() < 2) return Value(x);
                                  return Value(flatten_range(x, 1, x.rank() - 1));
                                }};
    m["flow.layers.GlobalAveragePooling2D"] = {{}, [](const Value& v, const Args&, const std::string& op) {
                                                 return run_pool(need_tensor(op, v), true, false);
                                               }};
    m["flow.layers.GlobalMaxPooling2D"] = {{}, [](const Value& v, const Args&, const std::string& op) {
                                             return run_pool(need_tensor(op, v), true, true);
                                           }};
    m["flow.math.reduce_sum"] = {{req("axis")}, [](const Value& v, const Args& a, const std::string& op) {
                                   return Value(reduce_sum(need_tensor(op, v), a.integer("axis")));
                                 }};
    m["flow.ops.one_hot"] = {{req("depth")}, [](const Value& v, const Args& a, const std::string& op) {
                               std::int64_t d = a.integer("depth");
                               const Tensor& x = need_tensor(op, v);
                               std::vector<std::int64_t> shape = x.shape;
                               shape.push_back(d);
                               negative_dimension(shape);
                               return Value(one_hot(x, d));
                             }};
    m["flow.array.drop_last"] = {{}, [](const Value& v, const Args&, const std::string& op) {
                                   return Value(drop_last(need_tensor(op, v)));
                                 }};
    m["flow.frame.filter_rows"] = {{req("column"), req("threshold")},
                                   [](const Value& v, const Args& a, const std::string& op) {
                                     double th = a.number("threshold");
                                     return Value(filter(need_table(op, v), a.text("column"),
                                                         [th](double x) { return x > th; }));
                                   }};
    m["flow.frame.arrange"] = {{req("column"), opt("descending", false)},
                               [](const Value& v, const Args& a, const std::string& op) {
                                 return Value(sort_by(need_table(op, v), a.text("column"), a.boolean("descending")));
                               }};
    m["flow.frame.head"] = {{opt("n", std::int64_t{5})}, [](const Value& v, const Args& a, const std::string& op) {
                              return Value(head(need_table(op, v), a.integer("n")));
                            }};

    // ---- torchlet (target) ----
    m["torchlet.mul"] = {{req("other")}, [](const Value& v, const Args& a, const std::string& op) {
                           return Value(scale_by(need_tensor(op, v), a.number("other")));
                         }};
    m["torchlet.add"] = {{req("other"), opt("alpha", 1.0)}, [](const Value& v, const Args& a, const std::string& op) {
                           return Value(shift_by(need_tensor(op, v), a.number("alpha") * a.number("other")));
                         }};
    m["torchlet.clamp"] = {{req("min"), req("max")}, [](const Value& v, const Args& a, const std::string& op) {
                             double lo = a.number("min"), hi = a.number("max");
                             const Tensor& x = need_tensor(op, v);
                             if (lo > hi) fail("min value greater than max value is not supported");
                             return Value(clamp_to(x, lo, hi));
                           }};
    m["torchlet.nn.ReLU"] = {{}, [](const Value& v, const Args&, const std::string& op) {
                               return Value(relu(need_tensor(op, v)));
                             }};
    m["torchlet.nn.Conv2d"] = {{req("in_channels"), req("out_channels"), req("kernel_size"),
                                opt("stride", IntTuple{1, 1}), opt("padding", IntTuple{0, 0})},
                               [](const Value& v, const Args& a, const std::string& op) {
                                 const Tensor& x = need_tensor(op, v);
                                 auto [kh, kw] = a.pair("kernel_size");
                                 auto [sh, sw] = a.pair("stride");
                                 auto [ph, pw] = a.pair("padding");
                                 std::int64_t in_ch = a.integer("in_channels"), out_ch = a.integer("out_channels");
                                 check_conv_params(in_ch, out_ch, kh, kw, sh, sw, ph, pw);
                                 return run_conv(x, in_ch, out_ch, kh, kw, sh, sw, ph, pw);
                               }};
    m["torchlet.nn.Linear"] = {{req("in_features"), req("out_features"), opt("bias", true)},
                               [](const Value& v, const Args& a, const std::string& op) {
                                 return run_linear(need_tensor(op, v), a.integer("in_features"),
                                                   a.integer("out_features"), a.boolean("bias"));
                               }};
    m["torchlet.nn.Flatten"] = {{opt("start_dim", std::int64_t{1}), opt("end_dim", std::int64_t{-1})},
                                [](const Value& v, const Args& a, const std::string& op) {
                                  const Tensor& x = need_tensor(op, v);
                                  std::int64_t s = normalize_dim(a.integer("start_dim"), x.rank());
                                  std::int64_t e = normalize_dim(a.integer("end_dim"), x.rank());
                                  if (s > e) fail("start_dim after end_dim is not supported");
                                  if (x.rank() == 0) return Value(x);
                                  return Value(flatten_range(x, s, e));
                                }};
    m["torchlet.nn.GlobalAvgPool2d"] = {{}, [](const Value& v, const Args&, const std::string& op) {
                                          return run_pool(need_tensor(op, v), false, false);
                                        }};
    m["torchlet.nn.GlobalMaxPool2d"] = {{}, [](const Value& v, const Args&, const std::string& op) {
                                          return run_pool(need_tensor(op, v), false, true);
                                        }};
    m["torchlet.sum"] = {{req("dim")}, [](const Value& v, const Args& a, const std::string& op) {
                           return Value(reduce_sum(need_tensor(op, v), a.integer("dim")));
                         }};
    m["torchlet.nn.functional.one_hot"] = {
        {req("num_classes")}, [](const Value& v, const Args& a, const std::string& op) {
          const Tensor& x = need_tensor(op, v);
          if (x.dtype != DType::kInt)
            fail(op + "(): argument tensor (position 1) must be LongTensor, not FloatTensor");
          std::int64_t d = a.integer("num_classes");
          std::vector<std::int64_t> shape = x.shape;
          shape.push_back(d);
          negative_dimension(shape);
          if (d == 0) fail("zero-size class dimension is not supported");
          return Value(one_hot(x, d));
        }};
    m["torchlet.Tensor.trim_end"] = {{}, [](const Value& v, const Args&, const std::string& op) {
                                       return Value(drop_last(need_tensor(op, v)));
                                     }};
    m["torchlet.frame.DataFrame.query"] = {
        {req("column"), req("op"), req("value")}, [](const Value& v, const Args& a, const std::string& op) {
          const Table& t = need_table(op, v);
          std::string cmp = a.text("op");
          double th = a.number("value");
          std::function<bool(double)> keep;
          if (cmp == "gt") keep = [th](double x) { return x > th; };
          else if (cmp == "ge") keep = [th](double x) { return x >= th; };
          else if (cmp == "lt") keep = [th](double x) { return x < th; };
          else if (cmp == "le") keep = [th](double x) { return x <= th; };
          else if (cmp == "eq") keep = [th](double x) { return x == th; };
          else fail("comparison operator '" + cmp + "' is not supported");
          return Value(filter(t, a.text("column"), keep));
        }};
    m["torchlet.frame.DataFrame.sort_values"] = {
        {req("by"), opt("ascending", true)}, [](const Value& v, const Args& a, const std::string& op) {
          return Value(sort_by(need_table(op, v), a.text("by"), !a.boolean("ascending")));
        }};
    m["torchlet.frame.DataFrame.head"] = {{opt("n", std::int64_t{5})},
                                          [](const Value& v, const Args& a, const std::string& op) {
                                            return Value(head(need_table(op, v), a.integer("n")));
                                          }};
    m["torchlet.Tensor.permute"] = {{req("d0"), req("d1"), req("d2"), req("d3")},
                                    [](const Value& v, const Args& a, const std::string& op) {
                                      const Tensor& x = need_tensor(op, v);
                                      return Value(permute(x, {a.integer("d0"), a.integer("d1"),
                                                               a.integer("d2"), a.integer("d3")}));
                                    }};
    m["torchlet.Tensor.long"] = {{}, [](const Value& v, const Args&, const std::string& op) {
                                   const Tensor& x = need_tensor(op, v);
                                   return Value(map_tensor(x, [](double d) { return d; }, DType::kInt));
                                 }};
    m["torchlet.Tensor.flatten"] = {{}, [](const Value& v, const Args&, const std::string& op) {
                                      const Tensor& x = need_tensor(op, v);
                                      return Value(Tensor{x.dtype, {x.element_count()}, x.data});
                                    }};
    return m;
  }();
  return ops;
}

}  // namespace

std::vector<std::string> MockRuntime::op_names() {
  std::vector<std::string> names;
  for (const auto& kv : registry()) names.push_back(kv.first);
  return names;
}

std::vector<ReshapingOp> MockRuntime::reshaping_vocabulary() const {
  return {{"torchlet.Tensor.permute", 4, false},
          {"torchlet.Tensor.long", 0, true},
          {"torchlet.Tensor.flatten", 0, false}};
}

RunOutcome MockRuntime::run(const std::string& code, const std::map<std::string, Value>& inputs) {
  Program program;
  try {
    program = parse_program_syntax(code);
  } catch (const Error&) {
    return RunOutcome::failure("program text is not recognized");
  }
  std::map<std::string, Value> env;
  for (const auto& var : program.input_vars) {
    auto it = inputs.find(var);
    if (it == inputs.end()) return RunOutcome::failure("input '" + var + "' is not given");
    env[var] = it->second;
  }
  if (program.lines.empty()) {
    if (program.input_vars.empty()) return RunOutcome::failure("program output is not defined");
    return RunOutcome::success(env.at(program.input_vars.front()));
  }
  const auto& ops = registry();
  try {
    for (const auto& line : program.lines) {
      auto it = ops.find(line.callee);
      if (it == ops.end()) fail("API '" + line.callee + "' is not defined");
      std::string short_name = line.callee.substr(line.callee.rfind('.') + 1);
      Args args(short_name, it->second.params, line);
      env[line.binds] = it->second.fn(env.at(line.data_input), args, short_name);
    }
  } catch (const MockError& e) {
    return RunOutcome::failure(e.message);
  }
  return RunOutcome::success(env.at(program.lines.back().binds));
}

}  // namespace apimorph
