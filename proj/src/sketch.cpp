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

#include "sketch.hpp"

#include <algorithm>
#include <functional>

namespace apimorph {

std::string Hole::symbol() const {
  return component < 0 ? param : param + "[" + std::to_string(component) + "]";
}

bool Sketch::reshapes_layout() const {
  for (const auto& c : chain)
    if (c.reshaping && !c.preserves_shape) return true;
  return false;
}

std::string Sketch::to_string() const {
  std::string out;
  for (std::size_t c = 0; c < chain.size(); ++c) {
    if (c) out += "; ";
    out += chain[c].api + "(";
    for (std::size_t s = 0; s < chain[c].slots.size(); ++s) {
      const auto& slot = chain[c].slots[s];
      if (s) out += ',';
      if (slot.keyword) out += slot.param + "=";
      if (slot.holes.size() == 1) {
        out += "#" + std::to_string(slot.holes[0]);
      } else {
        out += "(";
        for (std::size_t h = 0; h < slot.holes.size(); ++h) out += (h ? ",#" : "#") + std::to_string(slot.holes[h]);
        out += ")";
      }
    }
    out += ")";
  }
  return out;
}

namespace {

struct Builder {
  Sketch sketch;

  int new_hole(TypeTag type, int call, const std::string& param, int component, bool reshaping) {
    Hole h;
    h.id = static_cast<int>(sketch.holes.size()) + 1;
    h.type = type;
    h.call_index = call;
    h.param = param;
    h.component = component;
    h.reshaping = reshaping;
    sketch.holes.push_back(h);
    return h.id;
  }

  void fill_target(CallTemplate& tmpl, const ApiEntry& api, int call) {
    bool keyword = false;
    for (const auto& p : api.params) {
      keyword = keyword || !p.required;
      Slot slot{p.name, keyword, {}};
      if (p.type == TypeTag::kIntPair) {
        slot.holes.push_back(new_hole(TypeTag::kInt, call, p.name, 0, false));
        slot.holes.push_back(new_hole(TypeTag::kInt, call, p.name, 1, false));
      } else {
        slot.holes.push_back(new_hole(p.type, call, p.name, -1, false));
      }
      tmpl.slots.push_back(std::move(slot));
    }
  }
};

CallTemplate reshaping_template(const ReshapingOp& op) {
  CallTemplate t;
  t.api = op.name;
  t.reshaping = true;
  t.preserves_shape = op.preserves_shape;
  return t;
}

}  // namespace

std::vector<Sketch> generate_sketches(const ApiEntry& api, int max_size, const std::vector<ReshapingOp>& vocab,
                                      const DocCorpus* target) {
  std::vector<Sketch> out;
  if (max_size < 1) return out;

  // Every ordered selection of distinct vocabulary indices, grouped by length.
  std::vector<std::vector<std::size_t>> sequences{{}};
  for (int len = 1; len < max_size && len <= static_cast<int>(vocab.size()); ++len) {
    std::vector<std::size_t> cur;
    std::vector<bool> used(vocab.size(), false);
    std::function<void()> rec = [&] {
      if (static_cast<int>(cur.size()) == len) {
        sequences.push_back(cur);
        return;
      }
      for (std::size_t i = 0; i < vocab.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        cur.push_back(i);
        rec();
        cur.pop_back();
        used[i] = false;
      }
    };
    rec();
  }

  for (const auto& seq : sequences) {
    Builder b;
    const int target_call = static_cast<int>(seq.size());
    b.sketch.chain.resize(seq.size() + 1);
    CallTemplate& tgt = b.sketch.chain.back();
    tgt.api = api.qualified_name;
    b.fill_target(tgt, api, target_call);
    for (std::size_t c = 0; c < seq.size(); ++c) {
      const ReshapingOp& op = vocab[seq[c]];
      CallTemplate t = reshaping_template(op);
      const ApiEntry* doc = target ? target->find(op.name) : nullptr;
      for (int k = 0; k < op.arity; ++k) {
        std::string slot = doc && k < static_cast<int>(doc->params.size()) ? doc->params[k].name
                                                                            : "d" + std::to_string(k);
        t.slots.push_back({slot, false, {b.new_hole(TypeTag::kInt, static_cast<int>(c), slot, -1, true)}});
      }
      b.sketch.chain[c] = std::move(t);
    }
    out.push_back(std::move(b.sketch));
  }
  return out;
}

namespace {

void push_unique(std::vector<Literal>& dst, const Literal& v) {
  for (const auto& d : dst)
    if (literal_equal(d, v)) return;
  dst.push_back(v);
}

}  // namespace

bool populate_domains(Sketch& sketch, const CallSite& source_call, const ApiEntry& target_entry,
                      const std::vector<std::int64_t>& int_seed) {
  const auto literals = source_call.flat_literals();
  auto pool = default_value_pool(target_entry, int_seed);
  const ParamSpec* spec = nullptr;
  for (auto& h : sketch.holes) {
    h.domain.clear();
    switch (h.type) {
      case TypeTag::kInt:
      case TypeTag::kIntPair:
        for (const auto& l : literals)
          if (std::holds_alternative<std::int64_t>(l)) push_unique(h.domain, l);
        for (const auto& l : pool["int"]) push_unique(h.domain, l);
        break;
      case TypeTag::kFloat:
        for (const auto& l : literals) {
          if (auto* d = std::get_if<double>(&l)) push_unique(h.domain, *d);
          if (auto* i = std::get_if<std::int64_t>(&l)) push_unique(h.domain, static_cast<double>(*i));
        }
        for (const auto& l : pool["float"]) push_unique(h.domain, l);
        break;
      case TypeTag::kBool:
        h.domain = {Literal{false}, Literal{true}};
        break;
      case TypeTag::kString:
      case TypeTag::kEnum:
        for (const auto& l : literals)
          if (std::holds_alternative<std::string>(l)) push_unique(h.domain, l);
        for (const auto& l : pool["string"]) push_unique(h.domain, l);
        if (h.type == TypeTag::kEnum && !h.reshaping && (spec = target_entry.find_param(h.param)))
          for (const auto& e : spec->enum_values) push_unique(h.domain, Literal{e});
        break;
    }
    if (h.domain.empty()) sketch.infeasible = true;
  }
  return !sketch.infeasible;
}

}  // namespace apimorph
