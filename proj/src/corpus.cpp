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

#include "corpus.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "error.hpp"

namespace apimorph {

const char* to_string(TypeTag t) {
  switch (t) {
    case TypeTag::kInt: return "int";
    case TypeTag::kFloat: return "float";
    case TypeTag::kBool: return "bool";
    case TypeTag::kString: return "string";
    case TypeTag::kIntPair: return "int_pair";
    case TypeTag::kEnum: return "enum";
  }
  return "int";
}

std::string ParamSpec::type_string() const {
  if (type != TypeTag::kEnum) return to_string(type);
  std::string s = "enum(";
  for (std::size_t i = 0; i < enum_values.size(); ++i) {
    if (i) s += ',';
    s += enum_values[i];
  }
  return s + ")";
}

bool ParamSpec::accepts(const Literal& lit) const {
  switch (type) {
    case TypeTag::kInt: return std::holds_alternative<std::int64_t>(lit);
    case TypeTag::kFloat:
      return std::holds_alternative<double>(lit) || std::holds_alternative<std::int64_t>(lit);
    case TypeTag::kBool: return std::holds_alternative<bool>(lit);
    case TypeTag::kString: return std::holds_alternative<std::string>(lit);
    case TypeTag::kIntPair:
      if (auto* t = std::get_if<IntTuple>(&lit)) return t->size() == 2;
      return std::holds_alternative<std::int64_t>(lit);
    case TypeTag::kEnum:
      if (auto* s = std::get_if<std::string>(&lit))
        return std::find(enum_values.begin(), enum_values.end(), *s) != enum_values.end();
      return false;
  }
  return false;
}

const ParamSpec* ApiEntry::find_param(const std::string& name) const {
  for (const auto& p : params)
    if (p.name == name) return &p;
  return nullptr;
}

int ApiEntry::param_index(const std::string& name) const {
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i].name == name) return static_cast<int>(i);
  return -1;
}

const ApiEntry* DocCorpus::find(const std::string& qualified_name) const {
  for (const auto& e : entries)
    if (e.qualified_name == qualified_name) return &e;
  return nullptr;
}

const ApiEntry& DocCorpus::at(const std::string& qualified_name) const {
  if (const auto* e = find(qualified_name)) return *e;
  throw Error(ErrorKind::kLookup, "no API named '" + qualified_name + "' in " + library_id);
}

namespace {

ParamSpec parse_param(const Json& pj, const std::string& where) {
  if (!pj.is_object()) throw Error(ErrorKind::kSchema, where + ": parameter must be an object");
  for (const char* key : {"name", "type", "required"}) {
    if (!pj.contains(key)) throw Error(ErrorKind::kSchema, where + ": missing field '" + key + "'");
  }
  ParamSpec p;
  p.name = pj.at("name").get<std::string>();
  std::string type = pj.at("type").get<std::string>();
  static const std::regex kEnum(R"(enum\((.*)\))");
  std::smatch m;
  if (type == "int") {
    p.type = TypeTag::kInt;
  } else if (type == "float") {
    p.type = TypeTag::kFloat;
  } else if (type == "bool") {
    p.type = TypeTag::kBool;
  } else if (type == "string") {
    p.type = TypeTag::kString;
  } else if (type == "int_pair") {
    p.type = TypeTag::kIntPair;
  } else if (std::regex_match(type, m, kEnum)) {
    p.type = TypeTag::kEnum;
    std::stringstream ss(m[1].str());
    std::string item;
    while (std::getline(ss, item, ',')) {
      item.erase(0, item.find_first_not_of(' '));
      item.erase(item.find_last_not_of(' ') + 1);
      if (!item.empty()) p.enum_values.push_back(item);
    }
  } else {
    throw Error(ErrorKind::kSchema, where + ": unknown type '" + type + "'");
  }
  p.required = pj.at("required").get<bool>();
  if (pj.contains("default") && !pj.at("default").is_null())
    p.default_value = literal_from_json(pj.at("default"));
  p.description = pj.value("description", "");
  return p;
}

bool symbol_known(const ApiEntry& entry, const std::string& sym) {
  static const std::regex kShape(R"((in|out)\.shape\[-?\d+\])");
  if (std::regex_match(sym, kShape)) return true;
  static const std::regex kIndexed(R"(([A-Za-z_][A-Za-z0-9_]*)\[(\d+)\])");
  std::smatch m;
  if (std::regex_match(sym, m, kIndexed)) {
    const auto* p = entry.find_param(m[1].str());
    return p && p->type == TypeTag::kIntPair && std::stoi(m[2].str()) < 2;
  }
  const auto* p = entry.find_param(sym);
  return p && p->type != TypeTag::kIntPair;
}

}  // namespace

void validate_corpus(const DocCorpus& corpus) {
  if (corpus.entries.empty())
    throw Error(ErrorKind::kValidation, "corpus '" + corpus.library_id + "' has no entries");
  std::set<std::string> names;
  for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
    const auto& e = corpus.entries[i];
    std::string where = "entries[" + std::to_string(i) + "] (" + e.qualified_name + ")";
    if (e.qualified_name.empty()) throw Error(ErrorKind::kValidation, where + ": empty name");
    if (!names.insert(e.qualified_name).second)
      throw Error(ErrorKind::kValidation, where + ": duplicate API name");
    std::set<std::string> pnames;
    for (const auto& p : e.params) {
      if (!pnames.insert(p.name).second)
        throw Error(ErrorKind::kValidation, where + ": duplicate parameter '" + p.name + "'");
      if (p.required && p.default_value)
        throw Error(ErrorKind::kValidation,
                    where + ": required parameter '" + p.name + "' must not carry a default");
      if (p.type == TypeTag::kEnum && p.enum_values.empty())
        throw Error(ErrorKind::kValidation, where + ": enum parameter '" + p.name + "' has no values");
      if (p.default_value && !p.accepts(*p.default_value))
        throw Error(ErrorKind::kValidation,
                    where + ": default of '" + p.name + "' does not match type " + p.type_string());
    }
    for (std::size_t r = 0; r < e.relations.size(); ++r) {
      std::set<std::string> syms;
      e.relations[r].collect_symbols(syms);
      for (const auto& s : syms) {
        if (!symbol_known(e, s))
          throw Error(ErrorKind::kValidation,
                      where + ": relation '" + e.relation_texts[r] + "' references unknown symbol '" + s + "'");
      }
    }
  }
}

DocCorpus corpus_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::kSchema, "corpus must be a JSON object");
  for (const char* key : {"library", "language", "entries"}) {
    if (!j.contains(key)) throw Error(ErrorKind::kSchema, std::string("corpus missing field '") + key + "'");
  }
  DocCorpus c;
  c.library_id = j.at("library").get<std::string>();
  c.language_id = j.at("language").get<std::string>();
  const auto& entries = j.at("entries");
  if (!entries.is_array()) throw Error(ErrorKind::kSchema, "'entries' must be an array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& ej = entries[i];
    std::string where = "entries[" + std::to_string(i) + "]";
    try {
      if (!ej.is_object()) throw Error(ErrorKind::kSchema, where + ": entry must be an object");
      for (const char* key : {"name", "description", "params"}) {
        if (!ej.contains(key))
          throw Error(ErrorKind::kSchema, where + ": missing field '" + key + "'");
      }
      ApiEntry e;
      e.qualified_name = ej.at("name").get<std::string>();
      e.description = ej.at("description").get<std::string>();
      const auto& params = ej.at("params");
      for (std::size_t k = 0; k < params.size(); ++k)
        e.params.push_back(parse_param(params[k], where + ".params[" + std::to_string(k) + "]"));
      if (ej.contains("relations")) {
        for (const auto& rj : ej.at("relations")) {
          e.relation_texts.push_back(rj.get<std::string>());
          e.relations.push_back(parse_relation(e.relation_texts.back()));
        }
      }
      c.entries.push_back(std::move(e));
    } catch (const Json::exception& ex) {
      throw Error(ErrorKind::kSchema, where + ": " + ex.what());
    } catch (const Error& ex) {
      if (ex.kind() != ErrorKind::kValidation) throw;
      throw Error(ErrorKind::kValidation, where + ": " + ex.what());
    }
  }
  validate_corpus(c);
  return c;
}

Json corpus_to_json(const DocCorpus& corpus) {
  Json entries = Json::array();
  for (const auto& e : corpus.entries) {
    Json params = Json::array();
    for (const auto& p : e.params) {
      Json pj = {{"name", p.name},
                 {"type", p.type_string()},
                 {"required", p.required}};
      if (p.default_value) pj["default"] = literal_to_json(*p.default_value);
      pj["description"] = p.description;
      params.push_back(pj);
    }
    Json ej = {{"name", e.qualified_name}, {"description", e.description}, {"params", params}};
    if (!e.relation_texts.empty()) ej["relations"] = e.relation_texts;
    entries.push_back(ej);
  }
  return {{"library", corpus.library_id}, {"language", corpus.language_id}, {"entries", entries}};
}

DocCorpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open corpus file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& ex) {
    throw Error(ErrorKind::kSchema, path + ": " + ex.what());
  }
  return corpus_from_json(j);
}

std::vector<std::int64_t> default_int_seed_pool() { return {-1, 0, 1, 2, 3}; }

std::map<std::string, std::vector<Literal>> default_value_pool(
    const ApiEntry& entry, const std::vector<std::int64_t>& int_seed) {
  std::map<std::string, std::vector<Literal>> pool;
  auto& ints = pool["int"];
  for (auto v : int_seed) ints.emplace_back(v);
  pool["bool"] = {Literal{false}, Literal{true}};
  pool["float"];
  pool["string"];

  for (const auto& p : entry.params) {
    if (!p.default_value) continue;
    const Literal& d = *p.default_value;
    switch (p.type) {
      case TypeTag::kInt: ints.push_back(d); break;
      case TypeTag::kIntPair:
        if (auto* t = std::get_if<IntTuple>(&d)) {
          for (auto v : *t) ints.emplace_back(v);
        } else {
          ints.push_back(d);
        }
        break;
      case TypeTag::kFloat:
        if (auto* i = std::get_if<std::int64_t>(&d))
          pool["float"].emplace_back(static_cast<double>(*i));
        else
          pool["float"].push_back(d);
        break;
      case TypeTag::kBool: break;  // already the full two-element domain
      case TypeTag::kString:
      case TypeTag::kEnum: pool["string"].push_back(d); break;
    }
  }
  for (auto& [tag, values] : pool) {
    std::sort(values.begin(), values.end(), literal_less);
    values.erase(std::unique(values.begin(), values.end()), values.end());
  }
  return pool;
}

}  // namespace apimorph
