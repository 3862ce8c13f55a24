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

#include "spectral/netlist.hpp"

#include <algorithm>
#include <unordered_set>

namespace spectral {

std::string ParseError::format(const std::string& what, unsigned line, unsigned col) {
  if (line == 0) return what;
  std::string s = "line " + std::to_string(line);
  if (col != 0) s += ", col " + std::to_string(col);
  return s + ": " + what;
}

const char* to_string(GateFunc f) {
  switch (f) {
    case GateFunc::And: return "AND";
    case GateFunc::Or: return "OR";
    case GateFunc::Xor: return "XOR";
    case GateFunc::Xnor: return "XNOR";
    case GateFunc::Nand: return "NAND";
    case GateFunc::Nor: return "NOR";
    case GateFunc::Not: return "NOT";
    case GateFunc::Buf: return "BUF";
    case GateFunc::Const0: return "CONST0";
    case GateFunc::Const1: return "CONST1";
  }
  return "?";
}

unsigned arity(GateFunc f) {
  switch (f) {
    case GateFunc::Const0:
    case GateFunc::Const1: return 0;
    case GateFunc::Not:
    case GateFunc::Buf: return 1;
    default: return 2;
  }
}

bool eval_gate(GateFunc f, bool a, bool b) {
  switch (f) {
    case GateFunc::And: return a && b;
    case GateFunc::Or: return a || b;
    case GateFunc::Xor: return a != b;
    case GateFunc::Xnor: return a == b;
    case GateFunc::Nand: return !(a && b);
    case GateFunc::Nor: return !(a || b);
    case GateFunc::Not: return !a;
    case GateFunc::Buf: return a;
    case GateFunc::Const0: return false;
    case GateFunc::Const1: return true;
  }
  return false;
}

size_t Netlist::driver_of(const std::string& signal) const {
  for (size_t i = 0; i < gates.size(); ++i)
    if (gates[i].output == signal) return i;
  return npos;
}

bool Netlist::is_input(const std::string& signal) const {
  return std::find(inputs.begin(), inputs.end(), signal) != inputs.end();
}

void Netlist::validate() const {
  std::unordered_set<std::string> pi_set(inputs.begin(), inputs.end());
  if (pi_set.size() != inputs.size()) throw ValidationError("duplicate primary input name");

  std::unordered_map<std::string, size_t> driver;
  for (size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    if (g.fanins.size() != arity(g.func))
      throw ValidationError("gate '" + g.output + "': " + to_string(g.func) + " expects " +
                            std::to_string(arity(g.func)) + " fanins, got " +
                            std::to_string(g.fanins.size()));
    if (pi_set.count(g.output))
      throw ValidationError("signal '" + g.output + "' is both a primary input and a gate output");
    if (!driver.emplace(g.output, i).second)
      throw ValidationError("multiply-driven signal '" + g.output + "'");
  }
  for (const Gate& g : gates)
    for (const std::string& f : g.fanins)
      if (!pi_set.count(f) && !driver.count(f))
        throw ValidationError("undriven signal '" + f + "' (fanin of '" + g.output + "')");
  {
    std::unordered_set<std::string> po_set;
    for (const std::string& o : outputs) {
      if (!po_set.insert(o).second) throw ValidationError("duplicate primary output '" + o + "'");
      if (!pi_set.count(o) && !driver.count(o))
        throw ValidationError("undriven signal '" + o + "' (primary output)");
    }
  }
  topo_order();  // throws on a combinational cycle
}

std::vector<size_t> Netlist::topo_order() const {
  std::unordered_map<std::string, size_t> driver;
  for (size_t i = 0; i < gates.size(); ++i) driver.emplace(gates[i].output, i);

  std::vector<uint8_t> state(gates.size(), 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<size_t> order;
  order.reserve(gates.size());

  // Iterative DFS; keeps deterministic order over the declared gate list.
  std::vector<std::pair<size_t, size_t>> stack;
  for (size_t root = 0; root < gates.size(); ++root) {
    if (state[root] == 2) continue;
    stack.emplace_back(root, 0);
    state[root] = 1;
    while (!stack.empty()) {
      auto& [gi, fi] = stack.back();
      if (fi < gates[gi].fanins.size()) {
        auto it = driver.find(gates[gi].fanins[fi]);
        ++fi;
        if (it == driver.end()) continue;  // PI
        size_t child = it->second;
        if (state[child] == 1)
          throw ValidationError("combinational cycle through signal '" + gates[child].output + "'");
        if (state[child] == 0) {
          state[child] = 1;
          stack.emplace_back(child, 0);
        }
      } else {
        state[gi] = 2;
        order.push_back(gi);
        stack.pop_back();
      }
    }
  }
  return order;
}

}  // namespace spectral
