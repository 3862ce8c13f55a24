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

#include "spectral/blif.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace spectral {

namespace {

struct Line {
  std::vector<std::string> tokens;
  unsigned number = 0;
};

// Reads logical lines: strips comments, joins '\' continuations.
std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  unsigned lineno = 0;
  std::string pending;
  unsigned pending_line = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
    while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t'))
      raw.pop_back();
    bool cont = !raw.empty() && raw.back() == '\\';
    if (cont) raw.pop_back();
    if (pending.empty()) pending_line = lineno;
    pending += raw;
    if (cont) {
      pending += ' ';
      continue;
    }
    std::istringstream ss(pending);
    Line l;
    l.number = pending_line;
    std::string tok;
    while (ss >> tok) l.tokens.push_back(tok);
    if (!l.tokens.empty()) lines.push_back(std::move(l));
    pending.clear();
  }
  if (!pending.empty()) {
    std::istringstream ss(pending);
    Line l;
    l.number = pending_line;
    std::string tok;
    while (ss >> tok) l.tokens.push_back(tok);
    if (!l.tokens.empty()) lines.push_back(std::move(l));
  }
  return lines;
}

struct Cover {
  std::vector<std::string> inputs;
  std::string output;
  std::vector<std::pair<std::string, char>> rows;  // (input plane, output bit)
  unsigned line = 0;
};

uint32_t cover_truth_table(const Cover& c) {
  const unsigned k = static_cast<unsigned>(c.inputs.size());
  if (k > 4)
    throw ParseError("cover for '" + c.output + "' has " + std::to_string(k) +
                         " inputs; at most 4 supported",
                     c.line);
  const uint32_t full = (k == 0) ? 1u : ((1u << (1u << k)) - 1u);
  if (c.rows.empty()) return 0;  // empty cover = constant 0

  char out_bit = c.rows.front().second;
  uint32_t cubes = 0;
  for (const auto& [plane, out] : c.rows) {
    if (out != out_bit)
      throw ParseError("cover for '" + c.output + "' mixes on-set and off-set rows", c.line);
    if (plane.size() != k)
      throw ParseError("cube width mismatch in cover for '" + c.output + "'", c.line);
    for (uint32_t m = 0; m < (1u << k); ++m) {
      bool match = true;
      for (unsigned i = 0; i < k && match; ++i) {
        char ch = plane[i];
        bool bit = (m >> i) & 1;
        if (ch == '1' && !bit) match = false;
        else if (ch == '0' && bit) match = false;
        else if (ch != '0' && ch != '1' && ch != '-')
          throw ParseError(std::string("bad cube character '") + ch + "'", c.line);
      }
      if (match) cubes |= 1u << m;
    }
  }
  return out_bit == '1' ? cubes : (full & ~cubes);
}

// Emits the cover as gates, recognizing the primitive functions directly
// and decomposing everything else into an AND/OR/NOT tree.
void emit_cover(const Cover& c, Netlist& out) {
  const unsigned k = static_cast<unsigned>(c.inputs.size());
  uint32_t tt = cover_truth_table(c);

  auto gate = [&](const std::string& o, GateFunc f, std::vector<std::string> fi) {
    out.gates.push_back(Gate{o, f, std::move(fi)});
  };

  if (k == 0) {
    gate(c.output, tt ? GateFunc::Const1 : GateFunc::Const0, {});
    return;
  }
  if (tt == 0) {
    gate(c.output, GateFunc::Const0, {});
    return;
  }
  const uint32_t full = (1u << (1u << k)) - 1u;
  if (tt == full) {
    gate(c.output, GateFunc::Const1, {});
    return;
  }
  if (k == 1) {
    gate(c.output, tt == 0x2 ? GateFunc::Buf : GateFunc::Not, {c.inputs[0]});
    return;
  }
  if (k == 2) {
    switch (tt) {
      case 0x8: gate(c.output, GateFunc::And, {c.inputs[0], c.inputs[1]}); return;
      case 0xE: gate(c.output, GateFunc::Or, {c.inputs[0], c.inputs[1]}); return;
      case 0x6: gate(c.output, GateFunc::Xor, {c.inputs[0], c.inputs[1]}); return;
      case 0x9: gate(c.output, GateFunc::Xnor, {c.inputs[0], c.inputs[1]}); return;
      case 0x7: gate(c.output, GateFunc::Nand, {c.inputs[0], c.inputs[1]}); return;
      case 0x1: gate(c.output, GateFunc::Nor, {c.inputs[0], c.inputs[1]}); return;
      default: break;
    }
  }

  // General case: sum of products over the on-set minterms.
  unsigned fresh = 0;
  auto tmp = [&] { return c.output + "$" + std::to_string(fresh++); };
  std::vector<std::string> inv(k);  // lazily created inverters

  auto literal = [&](unsigned i, bool pos) -> std::string {
    if (pos) return c.inputs[i];
    if (inv[i].empty()) {
      inv[i] = tmp();
      gate(inv[i], GateFunc::Not, {c.inputs[i]});
    }
    return inv[i];
  };

  std::vector<uint32_t> minterms;
  for (uint32_t m = 0; m < (1u << k); ++m)
    if ((tt >> m) & 1) minterms.push_back(m);

  auto build_product = [&](uint32_t m, const std::string& target) -> std::string {
    std::string term = literal(0, (m >> 0) & 1);
    for (unsigned i = 1; i < k; ++i) {
      std::string o = (i + 1 == k && !target.empty()) ? target : tmp();
      gate(o, GateFunc::And, {term, literal(i, (m >> i) & 1)});
      term = o;
    }
    return term;
  };

  if (minterms.size() == 1) {
    build_product(minterms[0], c.output);
    return;
  }
  std::vector<std::string> products;
  for (uint32_t m : minterms) products.push_back(build_product(m, ""));
  std::string acc = products[0];
  for (size_t i = 1; i < products.size(); ++i) {
    std::string o = (i + 1 == products.size()) ? c.output : tmp();
    gate(o, GateFunc::Or, {acc, products[i]});
    acc = o;
  }
}

}  // namespace

Netlist parse_blif(std::istream& in) {
  Netlist n;
  bool saw_model = false, saw_end = false;
  std::vector<Cover> covers;
  Cover* current = nullptr;

  for (const Line& l : read_lines(in)) {
    const std::string& head = l.tokens[0];
    if (head[0] == '.') {
      current = nullptr;
      if (head == ".model") {
        if (saw_model) throw ParseError("multiple .model sections", l.number);
        saw_model = true;
        if (l.tokens.size() > 1) n.name = l.tokens[1];
      } else if (head == ".inputs") {
        n.inputs.insert(n.inputs.end(), l.tokens.begin() + 1, l.tokens.end());
      } else if (head == ".outputs") {
        n.outputs.insert(n.outputs.end(), l.tokens.begin() + 1, l.tokens.end());
      } else if (head == ".names") {
        if (l.tokens.size() < 2) throw ParseError(".names needs an output", l.number);
        Cover c;
        c.output = l.tokens.back();
        c.inputs.assign(l.tokens.begin() + 1, l.tokens.end() - 1);
        c.line = l.number;
        covers.push_back(std::move(c));
        current = &covers.back();
      } else if (head == ".end") {
        saw_end = true;
        break;
      } else if (head == ".latch") {
        throw ParseError("sequential circuits unsupported (.latch)", l.number);
      } else if (head == ".subckt" || head == ".gate") {
        throw ParseError("hierarchical circuits unsupported (" + head + ")", l.number);
      } else {
        throw ParseError("unknown directive '" + head + "'", l.number);
      }
    } else {
      if (!current) throw ParseError("cover row outside .names", l.number);
      if (current->inputs.empty()) {
        if (l.tokens.size() != 1 || (head != "0" && head != "1"))
          throw ParseError("bad constant cover row", l.number);
        current->rows.emplace_back("", head[0]);
      } else {
        if (l.tokens.size() != 2) throw ParseError("bad cover row", l.number);
        current->rows.emplace_back(l.tokens[0], l.tokens[1][0]);
      }
    }
  }
  if (!saw_model) throw ParseError("missing .model");
  if (!saw_end) throw ParseError("missing .end");

  for (const Cover& c : covers) emit_cover(c, n);
  n.validate();
  return n;
}

Netlist parse_blif(const std::string& text) {
  std::istringstream ss(text);
  return parse_blif(ss);
}

Netlist read_blif_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_blif(in);
}

namespace {

void write_cover(const Gate& g, std::ostream& out) {
  out << ".names";
  for (const auto& f : g.fanins) out << ' ' << f;
  out << ' ' << g.output << '\n';
  switch (g.func) {
    case GateFunc::And: out << "11 1\n"; break;
    case GateFunc::Or: out << "1- 1\n-1 1\n"; break;
    case GateFunc::Xor: out << "10 1\n01 1\n"; break;
    case GateFunc::Xnor: out << "11 1\n00 1\n"; break;
    case GateFunc::Nand: out << "0- 1\n-0 1\n"; break;
    case GateFunc::Nor: out << "00 1\n"; break;
    case GateFunc::Not: out << "0 1\n"; break;
    case GateFunc::Buf: out << "1 1\n"; break;
    case GateFunc::Const0: break;  // empty cover
    case GateFunc::Const1: out << "1\n"; break;
  }
}

}  // namespace

void write_blif(const Netlist& n, std::ostream& out) {
  out << ".model " << (n.name.empty() ? "top" : n.name) << '\n';
  out << ".inputs";
  for (const auto& s : n.inputs) out << ' ' << s;
  out << '\n';
  out << ".outputs";
  for (const auto& s : n.outputs) out << ' ' << s;
  out << '\n';
  for (const Gate& g : n.gates) write_cover(g, out);
  out << ".end\n";
}

std::string to_blif(const Netlist& n) {
  std::ostringstream ss;
  write_blif(n, ss);
  return ss.str();
}

}  // namespace spectral
