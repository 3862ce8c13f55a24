// Copyright 2026 The Spectral Authors.
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

#include "spectral/aig.hpp"

#include <algorithm>
#include <ostream>
#include <random>

namespace spectral {

Aig::Aig() { nodes_.push_back(Node{}); }

AigEdge Aig::add_pi(const std::string& name) {
  uint32_t id = size();
  Node n;
  n.is_pi = true;
  nodes_.push_back(n);
  pis_.push_back(id);
  pi_names_.push_back(name.empty() ? "i" + std::to_string(pis_.size() - 1) : name);
  pi_index_.emplace(pi_names_.back(), id);
  return AigEdge(id, false);
}

void Aig::add_po(AigEdge e, const std::string& name) {
  pos_.emplace_back(e, name.empty() ? "o" + std::to_string(pos_.size()) : name);
}

AigEdge Aig::land(AigEdge a, AigEdge b) {
  if (b < a) std::swap(a, b);
  if (a == constant(false)) return constant(false);
  if (a == constant(true)) return b;
  if (a == b) return a;
  if (a == !b) return constant(false);

  uint64_t key = (static_cast<uint64_t>(a.lit) << 32) | b.lit;
  auto it = strash_.find(key);
  if (it != strash_.end()) return AigEdge(it->second, false);

  uint32_t id = size();
  Node n;
  n.f0 = a;
  n.f1 = b;
  nodes_.push_back(n);
  strash_.emplace(key, id);
  return AigEdge(id, false);
}

const std::string& Aig::pi_name(uint32_t id) const {
  for (size_t i = 0; i < pis_.size(); ++i)
    if (pis_[i] == id) return pi_names_[i];
  throw Error("not a primary input: node " + std::to_string(id));
}

std::string Aig::node_name(uint32_t id) const {
  if (id == 0) return "0";
  if (is_pi(id)) return pi_name(id);
  return "n" + std::to_string(id);
}

uint32_t Aig::pi_by_name(const std::string& name) const {
  auto it = pi_index_.find(name);
  return it == pi_index_.end() ? 0 : it->second;
}

size_t Aig::po_by_name(const std::string& name) const {
  for (size_t i = 0; i < pos_.size(); ++i)
    if (pos_[i].second == name) return i;
  return static_cast<size_t>(-1);
}

std::vector<uint32_t> Aig::topo_order() const {
  std::vector<uint32_t> order;
  order.reserve(size() - 1);
  for (uint32_t id : pis_) order.push_back(id);
  for (uint32_t id = 1; id < size(); ++id)
    if (is_and(id)) order.push_back(id);
  return order;
}

std::vector<uint32_t> Aig::cone(uint32_t root, const std::vector<uint32_t>& leaves,
                                size_t node_limit) const {
  std::vector<uint32_t> result;
  if (!is_and(root)) return result;
  std::vector<uint32_t> stack{root};
  std::vector<uint32_t> seen;
  auto is_leaf = [&](uint32_t id) {
    return std::find(leaves.begin(), leaves.end(), id) != leaves.end();
  };
  while (!stack.empty()) {
    uint32_t id = stack.back();
    stack.pop_back();
    if (std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
    seen.push_back(id);
    result.push_back(id);
    if (result.size() > node_limit) return result;
    for (AigEdge e : {fanin0(id), fanin1(id)}) {
      uint32_t f = e.node();
      if (f != 0 && is_and(f) && !is_leaf(f)) stack.push_back(f);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<std::vector<uint64_t>> Aig::simulate_nodes(
    const std::vector<std::vector<uint64_t>>& pi_patterns) const {
  if (pi_patterns.size() != pis_.size())
    throw Error("simulate: expected " + std::to_string(pis_.size()) + " input patterns, got " +
                std::to_string(pi_patterns.size()));
  size_t words = pi_patterns.empty() ? 1 : pi_patterns.front().size();
  for (const auto& p : pi_patterns)
    if (p.size() != words) throw Error("simulate: pattern length mismatch");

  std::vector<std::vector<uint64_t>> val(size(), std::vector<uint64_t>(words, 0));
  for (size_t i = 0; i < pis_.size(); ++i) val[pis_[i]] = pi_patterns[i];
  for (uint32_t id = 1; id < size(); ++id) {
    if (!is_and(id)) continue;
    const auto& a = val[fanin0(id).node()];
    const auto& b = val[fanin1(id).node()];
    const uint64_t ca = fanin0(id).complemented() ? ~0ull : 0ull;
    const uint64_t cb = fanin1(id).complemented() ? ~0ull : 0ull;
    auto& o = val[id];
    for (size_t w = 0; w < words; ++w) o[w] = (a[w] ^ ca) & (b[w] ^ cb);
  }
  return val;
}

std::vector<std::vector<uint64_t>> Aig::simulate(
    const std::vector<std::vector<uint64_t>>& pi_patterns) const {
  auto val = simulate_nodes(pi_patterns);
  size_t words = pi_patterns.empty() ? 1 : pi_patterns.front().size();
  std::vector<std::vector<uint64_t>> out;
  out.reserve(pos_.size());
  for (const auto& [e, name] : pos_) {
    std::vector<uint64_t> v = val[e.node()];
    if (e.complemented())
      for (auto& w : v) w = ~w;
    v.resize(words);
    out.push_back(std::move(v));
  }
  return out;
}

Aig from_netlist(const Netlist& n) {
  n.validate();
  Aig g;
  std::unordered_map<std::string, AigEdge> env;
  for (const std::string& pi : n.inputs) {
    AigEdge e = g.add_pi(pi);
    env.emplace(pi, e);
    g.map_signal(pi, e);
  }
  for (size_t gi : n.topo_order()) {
    const Gate& gt = n.gates[gi];
    AigEdge a, b;
    if (gt.fanins.size() > 0) a = env.at(gt.fanins[0]);
    if (gt.fanins.size() > 1) b = env.at(gt.fanins[1]);
    AigEdge r;
    switch (gt.func) {
      case GateFunc::And: r = g.land(a, b); break;
      case GateFunc::Nand: r = !g.land(a, b); break;
      case GateFunc::Or: r = g.lor(a, b); break;
      case GateFunc::Nor: r = !g.lor(a, b); break;
      case GateFunc::Xor: r = g.lxor(a, b); break;
      case GateFunc::Xnor: r = !g.lxor(a, b); break;
      case GateFunc::Not: r = !a; break;
      case GateFunc::Buf: r = a; break;
      case GateFunc::Const0: r = Aig::constant(false); break;
      case GateFunc::Const1: r = Aig::constant(true); break;
    }
    env.emplace(gt.output, r);
    g.map_signal(gt.output, r);
  }
  for (const std::string& po : n.outputs) g.add_po(env.at(po), po);
  return g;
}

Netlist to_netlist(const Aig& g) {
  Netlist n;
  n.name = "aig";
  std::unordered_map<uint32_t, std::string> name_of;
  for (uint32_t id : g.pis()) {
    name_of[id] = g.pi_name(id);
    n.inputs.push_back(name_of[id]);
  }
  bool need_const0 = false;

  std::unordered_map<uint32_t, std::string> not_of;
  auto ensure_not = [&](uint32_t id) -> std::string {
    auto it = not_of.find(id);
    if (it != not_of.end()) return it->second;
    std::string nm = "n" + std::to_string(2 * id + 1);
    n.gates.push_back(Gate{nm, GateFunc::Not, {name_of.at(id)}});
    not_of.emplace(id, nm);
    return nm;
  };
  auto lit_name = [&](AigEdge e) -> std::string {
    if (e.node() == 0) {
      need_const0 = true;
      return e.complemented() ? "const1" : "const0";
    }
    return e.complemented() ? ensure_not(e.node()) : name_of.at(e.node());
  };

  for (uint32_t id = 1; id < g.size(); ++id) {
    if (!g.is_and(id)) continue;
    std::string a = lit_name(g.fanin0(id));
    std::string b = lit_name(g.fanin1(id));
    name_of[id] = "n" + std::to_string(2 * id);
    n.gates.push_back(Gate{name_of[id], GateFunc::And, {a, b}});
  }
  for (const auto& [e, name] : g.pos()) {
    if (e.node() == 0) {
      need_const0 = true;
      n.gates.push_back(Gate{name, e.complemented() ? GateFunc::Const1 : GateFunc::Const0, {}});
    } else if (e.complemented()) {
      n.gates.push_back(Gate{name, GateFunc::Not, {name_of.at(e.node())}});
    } else if (name != name_of.at(e.node())) {
      n.gates.push_back(Gate{name, GateFunc::Buf, {name_of.at(e.node())}});
    }
    n.outputs.push_back(name);
  }
  if (need_const0) {
    n.gates.insert(n.gates.begin(), Gate{"const0", GateFunc::Const0, {}});
    n.gates.insert(n.gates.begin() + 1, Gate{"const1", GateFunc::Const1, {}});
  }
  n.words = {};
  n.validate();
  return n;
}

void write_dot(const Aig& g, std::ostream& out,
               const std::unordered_map<uint32_t, std::string>& highlight) {
  out << "digraph aig {\n  rankdir=BT;\n";
  for (uint32_t id : g.pis())
    out << "  n" << id << " [shape=triangle,label=\"" << g.pi_name(id) << "\"];\n";
  for (uint32_t id = 1; id < g.size(); ++id) {
    if (!g.is_and(id)) continue;
    out << "  n" << id << " [shape=circle,label=\"" << id << "\"";
    if (auto it = highlight.find(id); it != highlight.end())
      out << ",style=filled,fillcolor=\"" << (it->second == "sum" ? "lightblue" : "lightsalmon")
          << "\",tooltip=\"" << it->second << "\"";
    out << "];\n";
    for (AigEdge e : {g.fanin0(id), g.fanin1(id)}) {
      out << "  n" << e.node() << " -> n" << id;
      if (e.complemented()) out << " [style=dashed]";
      out << ";\n";
    }
  }
  unsigned k = 0;
  for (const auto& [e, name] : g.pos()) {
    out << "  po" << k << " [shape=invtriangle,label=\"" << name << "\"];\n";
    out << "  n" << e.node() << " -> po" << k;
    if (e.complemented()) out << " [style=dashed]";
    out << ";\n";
    ++k;
  }
  out << "}\n";
}

std::vector<std::vector<uint64_t>> exhaustive_patterns(unsigned num_pis) {
  if (num_pis > 20) throw Error("exhaustive_patterns: too many inputs");
  size_t patterns = size_t(1) << num_pis;
  size_t words = (patterns + 63) / 64;
  std::vector<std::vector<uint64_t>> v(num_pis, std::vector<uint64_t>(words, 0));
  for (unsigned i = 0; i < num_pis; ++i)
    for (size_t p = 0; p < patterns; ++p)
      if ((p >> i) & 1) v[i][p / 64] |= uint64_t(1) << (p % 64);
  return v;
}

std::vector<std::vector<uint64_t>> random_patterns(unsigned num_pis, size_t words, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<uint64_t>> v(num_pis, std::vector<uint64_t>(words));
  for (auto& row : v)
    for (auto& w : row) w = rng();
  return v;
}

}  // namespace spectral
