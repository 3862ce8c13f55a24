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

#include "spectral/aiger.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace spectral {

namespace {

struct AigerData {
  uint64_t maxvar = 0;
  std::vector<uint64_t> inputs;           // literals
  std::vector<uint64_t> outputs;          // literals
  std::vector<std::array<uint64_t, 3>> ands;  // lhs rhs0 rhs1
  std::vector<std::string> input_names;
  std::vector<std::string> output_names;
};

std::string read_header_line(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("malformed header: empty input", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::vector<uint64_t> parse_numbers(const std::string& s, unsigned lineno) {
  std::istringstream ss(s);
  std::vector<uint64_t> v;
  uint64_t x;
  while (ss >> x) v.push_back(x);
  std::string rest;
  if (ss.clear(), ss >> rest) throw ParseError("unexpected token '" + rest + "'", lineno);
  return v;
}

uint64_t decode_delta(std::istream& in) {
  uint64_t x = 0;
  unsigned shift = 0;
  while (true) {
    int ch = in.get();
    if (ch == EOF) throw ParseError("truncated delta encoding");
    x |= static_cast<uint64_t>(ch & 0x7f) << shift;
    if (!(ch & 0x80)) break;
    shift += 7;
    if (shift > 63) throw ParseError("delta encoding overflow");
  }
  return x;
}

void encode_delta(uint64_t x, std::ostream& out) {
  while (x >= 0x80) {
    out.put(static_cast<char>((x & 0x7f) | 0x80));
    x >>= 7;
  }
  out.put(static_cast<char>(x));
}

void read_symbols_and_comments(std::istream& in, AigerData& d) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == 'c') break;  // comment section, ignore the rest
    std::istringstream ss(line);
    std::string tag, name;
    ss >> tag;
    std::getline(ss, name);
    if (!name.empty() && name.front() == ' ') name.erase(0, 1);
    if (tag.size() < 2) throw ParseError("bad symbol entry '" + line + "'");
    size_t idx = std::stoul(tag.substr(1));
    if (tag[0] == 'i' && idx < d.input_names.size()) d.input_names[idx] = name;
    else if (tag[0] == 'o' && idx < d.output_names.size()) d.output_names[idx] = name;
    else throw ParseError("bad symbol entry '" + line + "'");
  }
}

Netlist to_netlist(const AigerData& d) {
  Netlist n;
  n.name = "aiger";
  std::unordered_map<uint64_t, std::string> name_of;  // even literal -> signal
  name_of[0] = "const0";
  bool const_used = false;

  for (size_t i = 0; i < d.inputs.size(); ++i) {
    uint64_t lit = d.inputs[i];
    if (lit & 1 || lit == 0) throw ParseError("invalid input literal " + std::to_string(lit));
    std::string nm = d.input_names[i].empty() ? "i" + std::to_string(i) : d.input_names[i];
    if (!name_of.emplace(lit, nm).second)
      throw ParseError("duplicate input literal " + std::to_string(lit));
    n.inputs.push_back(nm);
  }

  std::unordered_map<uint64_t, std::string> not_of;  // odd literal -> NOT gate output
  auto signal_for = [&](uint64_t lit) -> std::string {
    if (lit == 0) {
      const_used = true;
      return "const0";
    }
    if (lit == 1) {
      const_used = true;
      return "const1";
    }
    if ((lit & 1) == 0) {
      auto it = name_of.find(lit);
      if (it == name_of.end())
        throw ParseError("literal " + std::to_string(lit) + " used before definition");
      return it->second;
    }
    auto it = not_of.find(lit);
    if (it != not_of.end()) return it->second;
    auto base = name_of.find(lit - 1);
    if (base == name_of.end())
      throw ParseError("literal " + std::to_string(lit) + " used before definition");
    std::string nm = "n" + std::to_string(lit);
    n.gates.push_back(Gate{nm, GateFunc::Not, {base->second}});
    not_of.emplace(lit, nm);
    return nm;
  };

  for (const auto& [lhs, rhs0, rhs1] : d.ands) {
    if (lhs & 1 || lhs == 0) throw ParseError("invalid and literal " + std::to_string(lhs));
    std::string a = signal_for(rhs0);
    std::string b = signal_for(rhs1);
    std::string nm = "n" + std::to_string(lhs);
    if (!name_of.emplace(lhs, nm).second)
      throw ParseError("literal " + std::to_string(lhs) + " defined twice");
    n.gates.push_back(Gate{nm, GateFunc::And, {a, b}});
  }

  for (size_t i = 0; i < d.outputs.size(); ++i) {
    uint64_t lit = d.outputs[i];
    std::string nm = d.output_names[i].empty() ? "o" + std::to_string(i) : d.output_names[i];
    if (lit == 0 || lit == 1) {
      n.gates.push_back(Gate{nm, lit ? GateFunc::Const1 : GateFunc::Const0, {}});
    } else if (lit & 1) {
      n.gates.push_back(Gate{nm, GateFunc::Not, {signal_for(lit - 1)}});
    } else {
      n.gates.push_back(Gate{nm, GateFunc::Buf, {signal_for(lit)}});
    }
    n.outputs.push_back(nm);
  }

  if (const_used)
    n.gates.insert(n.gates.begin(),
                   {Gate{"const0", GateFunc::Const0, {}}, Gate{"const1", GateFunc::Const1, {}}});
  n.validate();
  return n;
}

}  // namespace

Netlist parse_aiger(std::istream& in) {
  std::string header = read_header_line(in);
  std::istringstream hs(header);
  std::string magic;
  hs >> magic;
  if (magic != "aag" && magic != "aig") throw ParseError("malformed header '" + header + "'", 1);
  std::vector<uint64_t> f;
  uint64_t x;
  while (hs >> x) f.push_back(x);
  if (f.size() < 5) throw ParseError("malformed header: expected M I L O A", 1);
  for (size_t i = 5; i < f.size(); ++i)
    if (f[i] != 0) throw ParseError("AIGER extension sections unsupported", 1);
  uint64_t M = f[0], I = f[1], L = f[2], O = f[3], A = f[4];
  if (L > 0) throw ParseError("sequential circuits unsupported (latch count > 0)", 1);
  if (M < I + A) throw ParseError("malformed header: M < I + A", 1);

  AigerData d;
  d.maxvar = M;
  d.input_names.resize(I);
  d.output_names.resize(O);
  unsigned lineno = 1;

  if (magic == "aag") {
    auto next_line = [&]() {
      std::string line;
      if (!std::getline(in, line)) throw ParseError("unexpected end of file", lineno);
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    };
    for (uint64_t i = 0; i < I; ++i) {
      auto v = parse_numbers(next_line(), lineno);
      if (v.size() != 1) throw ParseError("bad input line", lineno);
      d.inputs.push_back(v[0]);
    }
    for (uint64_t i = 0; i < O; ++i) {
      auto v = parse_numbers(next_line(), lineno);
      if (v.size() != 1) throw ParseError("bad output line", lineno);
      d.outputs.push_back(v[0]);
    }
    for (uint64_t i = 0; i < A; ++i) {
      auto v = parse_numbers(next_line(), lineno);
      if (v.size() != 3) throw ParseError("bad and line", lineno);
      d.ands.push_back({v[0], v[1], v[2]});
    }
  } else {
    for (uint64_t i = 0; i < I; ++i) d.inputs.push_back(2 * (i + 1));
    std::string line;
    for (uint64_t i = 0; i < O; ++i) {
      if (!std::getline(in, line)) throw ParseError("unexpected end of file");
      auto v = parse_numbers(line, 0);
      if (v.size() != 1) throw ParseError("bad output line");
      d.outputs.push_back(v[0]);
    }
    for (uint64_t i = 0; i < A; ++i) {
      uint64_t lhs = 2 * (I + L + i + 1);
      uint64_t delta0 = decode_delta(in);
      if (delta0 == 0 || delta0 > lhs) throw ParseError("invalid delta0 in binary and section");
      uint64_t rhs0 = lhs - delta0;
      uint64_t delta1 = decode_delta(in);
      if (delta1 > rhs0) throw ParseError("invalid delta1 in binary and section");
      uint64_t rhs1 = rhs0 - delta1;
      d.ands.push_back({lhs, rhs0, rhs1});
    }
  }
  read_symbols_and_comments(in, d);
  return to_netlist(d);
}

Netlist parse_aiger(const std::string& bytes) {
  std::istringstream ss(bytes);
  return parse_aiger(ss);
}

Netlist read_aiger_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_aiger(in);
}

namespace {

struct LitMap {
  std::vector<uint64_t> remap;  // node id -> aiger variable
  uint64_t lit(AigEdge e) const { return 2 * remap[e.node()] + (e.complemented() ? 1 : 0); }
};

LitMap build_litmap(const Aig& g) {
  LitMap m;
  m.remap.assign(g.size(), 0);
  uint64_t var = 0;
  for (uint32_t id : g.pis()) m.remap[id] = ++var;
  for (uint32_t id = 1; id < g.size(); ++id)
    if (g.is_and(id)) m.remap[id] = ++var;
  return m;
}

void write_symbols(const Aig& g, std::ostream& out) {
  for (size_t i = 0; i < g.pis().size(); ++i)
    out << 'i' << i << ' ' << g.pi_name(g.pis()[i]) << '\n';
  for (size_t i = 0; i < g.pos().size(); ++i)
    out << 'o' << i << ' ' << g.pos()[i].second << '\n';
}

}  // namespace

void write_aiger_ascii(const Aig& g, std::ostream& out) {
  LitMap m = build_litmap(g);
  uint64_t I = g.pis().size(), A = g.num_ands();
  out << "aag " << (I + A) << ' ' << I << " 0 " << g.pos().size() << ' ' << A << '\n';
  for (uint32_t id : g.pis()) out << m.lit(AigEdge(id, false)) << '\n';
  for (const auto& [e, name] : g.pos()) out << m.lit(e) << '\n';
  for (uint32_t id = 1; id < g.size(); ++id) {
    if (!g.is_and(id)) continue;
    uint64_t lhs = m.lit(AigEdge(id, false));
    uint64_t r0 = m.lit(g.fanin0(id));
    uint64_t r1 = m.lit(g.fanin1(id));
    if (r0 < r1) std::swap(r0, r1);
    out << lhs << ' ' << r0 << ' ' << r1 << '\n';
  }
  write_symbols(g, out);
}

void write_aiger_binary(const Aig& g, std::ostream& out) {
  LitMap m = build_litmap(g);
  uint64_t I = g.pis().size(), A = g.num_ands();
  out << "aig " << (I + A) << ' ' << I << " 0 " << g.pos().size() << ' ' << A << '\n';
  for (const auto& [e, name] : g.pos()) out << m.lit(e) << '\n';
  for (uint32_t id = 1; id < g.size(); ++id) {
    if (!g.is_and(id)) continue;
    uint64_t lhs = m.lit(AigEdge(id, false));
    uint64_t r0 = m.lit(g.fanin0(id));
    uint64_t r1 = m.lit(g.fanin1(id));
    if (r0 < r1) std::swap(r0, r1);
    encode_delta(lhs - r0, out);
    encode_delta(r0 - r1, out);
  }
  write_symbols(g, out);
}

std::string to_aiger_ascii(const Aig& g) {
  std::ostringstream ss;
  write_aiger_ascii(g, ss);
  return ss.str();
}

std::string to_aiger_binary(const Aig& g) {
  std::ostringstream ss(std::ios::out | std::ios::binary);
  write_aiger_binary(g, ss);
  return ss.str();
}

}  // namespace spectral
