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

#include "spectral/genbench.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <deque>
#include <map>
#include <random>

#include "spectral/adder_tree.hpp"
#include "spectral/aig.hpp"

namespace spectral {

const char* to_string(Family f) {
  switch (f) {
    case Family::CsaMult: return "csa_mult";
    case Family::ArrayMult: return "array_mult";
    case Family::BoothRadix4Mult: return "booth_radix4_mult";
    case Family::RippleAdder: return "ripple_adder";
    case Family::Mac: return "mac";
    case Family::Mult3: return "mult3";
    case Family::MultPlusDistrib: return "mult_plus_distrib";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  for (Family f : {Family::CsaMult, Family::ArrayMult, Family::BoothRadix4Mult,
                   Family::RippleAdder, Family::Mac, Family::Mult3, Family::MultPlusDistrib})
    if (s == to_string(f)) return f;
  throw Error("unknown family '" + s + "'");
}

std::string default_spec_text(Family f) {
  switch (f) {
    case Family::CsaMult:
    case Family::ArrayMult:
    case Family::BoothRadix4Mult: return "F = A * B";
    case Family::RippleAdder: return "F = A + B";
    case Family::Mac: return "F = A * B + C";
    case Family::Mult3: return "F = A * B * C";
    case Family::MultPlusDistrib: return "F = A * (B + C)";
  }
  return "";
}

namespace {

// Signal handle with constant folding so out-of-range operand bits and
// degenerate recode terms never materialize as gates.
struct Sig {
  std::string name;
  int konst = -1;  // 0 or 1 for constants

  bool is_const() const { return konst >= 0; }
  static Sig zero() { return Sig{"", 0}; }
  static Sig one() { return Sig{"", 1}; }
  static Sig wire(std::string n) { return Sig{std::move(n), -1}; }
};

class Builder {
public:
  Netlist n;

  Sig pi(const std::string& name) {
    n.inputs.push_back(name);
    return Sig::wire(name);
  }

  Sig emit(GateFunc f, const Sig& a, const Sig& b, std::string name = {}) {
    Sig folded = fold(f, a, b);
    if (folded.konst != -2) return materialize(folded, std::move(name));
    if (name.empty()) name = fresh();
    n.gates.push_back(Gate{name, f, {a.name, b.name}});
    return Sig::wire(name);
  }

  Sig gnot(const Sig& a, std::string name = {}) {
    if (a.is_const()) return materialize(a.konst ? Sig::zero() : Sig::one(), std::move(name));
    if (name.empty()) name = fresh();
    n.gates.push_back(Gate{name, GateFunc::Not, {a.name}});
    return Sig::wire(name);
  }

  void po(const Sig& s, const std::string& name) {
    if (s.is_const()) {
      n.gates.push_back(Gate{name, s.konst ? GateFunc::Const1 : GateFunc::Const0, {}});
    } else if (s.name != name) {
      n.gates.push_back(Gate{name, GateFunc::Buf, {s.name}});
    }
    n.outputs.push_back(name);
  }

private:
  unsigned counter_ = 0;
  std::string fresh() { return "t" + std::to_string(counter_++); }

  // Returns the simplified signal, or konst == -2 when a real gate is needed.
  static Sig fold(GateFunc f, const Sig& a, const Sig& b) {
    Sig need;
    need.konst = -2;
    if (!a.is_const() && !b.is_const()) return need;
    if (a.is_const() && b.is_const())
      return eval_gate(f, a.konst, b.konst) ? Sig::one() : Sig::zero();
    const Sig& x = a.is_const() ? b : a;
    int c = a.is_const() ? a.konst : b.konst;
    switch (f) {
      case GateFunc::And: return c ? x : Sig::zero();
      case GateFunc::Or: return c ? Sig::one() : x;
      case GateFunc::Xor: return c ? flip(x) : x;
      case GateFunc::Xnor: return c ? x : flip(x);
      case GateFunc::Nand: return c ? flip(x) : Sig::one();
      case GateFunc::Nor: return c ? Sig::zero() : flip(x);
      default: return need;
    }
  }

  static Sig flip(const Sig& x) {
    Sig s = x;
    s.konst = -3;  // marker: needs a NOT of x
    return s;
  }

  Sig materialize(const Sig& s, std::string name) {
    if (s.konst == -3) {
      Sig base = Sig::wire(s.name);
      return gnot(base, std::move(name));
    }
    if (name.empty()) return s;
    // caller insists on a name for a folded signal
    if (s.is_const()) {
      n.gates.push_back(Gate{name, s.konst ? GateFunc::Const1 : GateFunc::Const0, {}});
      return Sig::wire(name);
    }
    if (s.name == name) return s;
    n.gates.push_back(Gate{name, GateFunc::Buf, {s.name}});
    return Sig::wire(name);
  }
};

struct AdderBits {
  Sig sum, carry;
};

AdderBits half_adder(Builder& b, const Sig& x, const Sig& y, const std::string& sum_name = {},
                     const std::string& carry_name = {}) {
  return AdderBits{b.emit(GateFunc::Xor, x, y, sum_name),
                   b.emit(GateFunc::And, x, y, carry_name)};
}

AdderBits full_adder(Builder& b, const Sig& x, const Sig& y, const Sig& cin,
                     const std::string& sum_name = {}, const std::string& carry_name = {}) {
  Sig t = b.emit(GateFunc::Xor, x, y);
  Sig s = b.emit(GateFunc::Xor, t, cin, sum_name);
  Sig g1 = b.emit(GateFunc::And, x, y);
  Sig g2 = b.emit(GateFunc::And, t, cin);
  Sig c = b.emit(GateFunc::Or, g1, g2, carry_name);
  return AdderBits{s, c};
}

// FA with an implicit constant-one input: x + y + 1 = 2*(x|y) + !(x^y).
AdderBits carry_one_adder(Builder& b, const Sig& x, const Sig& y,
                          const std::string& sum_name = {},
                          const std::string& carry_name = {}) {
  return AdderBits{b.emit(GateFunc::Xnor, x, y, sum_name),
                   b.emit(GateFunc::Or, x, y, carry_name)};
}

std::vector<Sig> make_inputs(Builder& b, const std::string& prefix, unsigned n) {
  std::vector<Sig> v;
  for (unsigned i = 0; i < n; ++i) v.push_back(b.pi(prefix + std::to_string(i)));
  return v;
}

// Ripple addition of two bit vectors (any widths); returns max(w)+1 bits.
std::vector<Sig> ripple_add(Builder& b, const std::vector<Sig>& x, const std::vector<Sig>& y,
                            const std::string& prefix) {
  size_t w = std::max(x.size(), y.size());
  std::vector<Sig> out;
  Sig carry = Sig::zero();
  for (size_t i = 0; i < w; ++i) {
    Sig xi = i < x.size() ? x[i] : Sig::zero();
    Sig yi = i < y.size() ? y[i] : Sig::zero();
    // fold constants through the cell
    std::vector<Sig> ins;
    for (const Sig& s : {xi, yi, carry})
      if (!s.is_const()) ins.push_back(s);
    int cval = (xi.is_const() ? xi.konst : 0) + (yi.is_const() ? yi.konst : 0) +
               (carry.is_const() ? carry.konst : 0);
    std::string nm = prefix + std::to_string(i);
    if (ins.size() == 3) {
      AdderBits ab = full_adder(b, ins[0], ins[1], ins[2], nm);
      out.push_back(ab.sum);
      carry = ab.carry;
    } else if (ins.size() == 2) {
      AdderBits ab = cval ? carry_one_adder(b, ins[0], ins[1], nm)
                          : half_adder(b, ins[0], ins[1], nm);
      out.push_back(ab.sum);
      carry = ab.carry;
    } else if (ins.size() == 1) {
      if (cval) {
        out.push_back(b.gnot(ins[0], nm));
        carry = ins[0];
      } else {
        out.push_back(ins[0]);
        carry = Sig::zero();
      }
    } else {
      out.push_back(cval & 1 ? Sig::one() : Sig::zero());
      carry = cval >= 2 ? Sig::one() : Sig::zero();
    }
  }
  out.push_back(carry);
  return out;
}

// Carry-save array multiplier: AND-array partial products, one carry-save
// row per multiplier bit, final ripple adder. Product width |x| + |y|.
std::vector<Sig> csa_mult_bits(Builder& b, const std::vector<Sig>& x, const std::vector<Sig>& y,
                               const std::string& prefix) {
  const size_t u = x.size(), v = y.size();
  auto pp = [&](size_t j, size_t k) {
    return b.emit(GateFunc::And, x[k], y[j], prefix + "pp" + std::to_string(j) + "_" +
                                                 std::to_string(k));
  };
  std::vector<Sig> out(u + v);
  std::vector<Sig> srow(u), crow;
  for (size_t k = 0; k < u; ++k) srow[k] = pp(0, k);
  out[0] = srow[0];
  for (size_t j = 1; j < v; ++j) {
    std::vector<Sig> ns(u), nc(u >= 1 ? u - 1 : 0);
    for (size_t k = 0; k + 1 < u; ++k) {
      Sig p = pp(j, k);
      std::string sn = prefix + "s" + std::to_string(j) + "_" + std::to_string(k);
      std::string cn = prefix + "c" + std::to_string(j) + "_" + std::to_string(k);
      AdderBits ab = (j == 1) ? half_adder(b, p, srow[k + 1], sn, cn)
                              : full_adder(b, p, srow[k + 1], crow[k], sn, cn);
      ns[k] = ab.sum;
      nc[k] = ab.carry;
    }
    ns[u - 1] = pp(j, u - 1);
    srow = std::move(ns);
    crow = std::move(nc);
    out[j] = srow[0];
  }
  if (v == 1) {
    for (size_t k = 1; k < u; ++k) out[k] = srow[k];
    out[u] = Sig::zero();
    return out;
  }
  // final ripple over positions v .. u+v-1
  Sig carry;
  for (size_t t = 0; t + 1 < u; ++t) {
    std::string nm = prefix + "r" + std::to_string(t);
    AdderBits ab = (t == 0) ? half_adder(b, srow[1], crow[0], nm)
                            : full_adder(b, srow[t + 1], crow[t], carry, nm);
    out[v + t] = ab.sum;
    carry = ab.carry;
  }
  out[u + v - 1] = (u == 1) ? Sig::zero() : carry;
  return out;
}

// Row-ripple array multiplier: each partial-product row is added with a full
// ripple adder into the running accumulator.
std::vector<Sig> array_mult_bits(Builder& b, const std::vector<Sig>& x,
                                 const std::vector<Sig>& y, const std::string& prefix) {
  const size_t u = x.size(), v = y.size();
  auto pp_row = [&](size_t j) {
    std::vector<Sig> row(u);
    for (size_t k = 0; k < u; ++k)
      row[k] = b.emit(GateFunc::And, x[k], y[j],
                      prefix + "pp" + std::to_string(j) + "_" + std::to_string(k));
    return row;
  };
  std::vector<Sig> out(u + v);
  std::vector<Sig> acc = pp_row(0);  // covers positions 0 .. u-1
  out[0] = acc[0];
  for (size_t j = 1; j < v; ++j) {
    std::vector<Sig> shifted(acc.begin() + 1, acc.end());
    std::vector<Sig> sum =
        ripple_add(b, pp_row(j), shifted, prefix + "a" + std::to_string(j) + "_");
    out[j] = sum[0];
    acc = std::move(sum);  // covers positions j .. j+u
  }
  for (size_t k = 1; k < acc.size() && v - 1 + k < u + v; ++k) out[v - 1 + k] = acc[k];
  if (v == 1) out[u] = Sig::zero();
  return out;
}

// Unsigned radix-4 Booth multiplier, product width exactly 2n. Row digits
// d_j = b(2j-1) + b(2j) - 2*b(2j+1) select {0, A, 2A, -A, -2A}; a negative
// row contributes complemented partial products, a +1 correction bit and a
// complemented sign bit, with the constant bias folded modulo 2^(2n) into
// per-column constant ones. Compressor carries leaving the top column wrap
// around zero and are dropped, as in any fixed-width datapath.
std::vector<Sig> booth_mult_bits(Builder& b, const std::vector<Sig>& x,
                                 const std::vector<Sig>& y, const std::string& prefix) {
  const unsigned n = static_cast<unsigned>(x.size());
  const unsigned w_out = 2 * n;
  const unsigned rows = n / 2 + 1;
  auto ybit = [&](int i) { return (i < 0 || i >= static_cast<int>(y.size())) ? Sig::zero() : y[i]; };
  auto xbit = [&](int i) { return (i < 0 || i >= static_cast<int>(n)) ? Sig::zero() : x[i]; };

  std::map<unsigned, std::deque<Sig>> col;
  mpz_class bias = 0;  // constant folded in from the two's-complement rows

  for (unsigned j = 0; j < rows; ++j) {
    std::string rj = prefix + "r" + std::to_string(j) + "_";
    Sig bm1 = ybit(2 * static_cast<int>(j) - 1);
    Sig b0 = ybit(2 * j);
    Sig bp1 = ybit(2 * j + 1);

    Sig one = b.emit(GateFunc::Xor, b0, bm1, bm1.is_const() || b0.is_const() ? "" : rj + "one");
    Sig both = b.emit(GateFunc::And, b0, bm1);
    Sig neg = b.emit(GateFunc::And, bp1, b.gnot(both));
    Sig t1 = b.emit(GateFunc::And, bp1, b.emit(GateFunc::Nor, b0, bm1));
    Sig t2 = b.emit(GateFunc::And, both, b.gnot(bp1));
    Sig two = b.emit(GateFunc::Or, t1, t2);

    for (unsigned i = 0; i <= n; ++i) {
      unsigned pos = 2 * j + i;
      if (pos >= w_out) continue;
      Sig m1 = b.emit(GateFunc::And, one, xbit(i));
      Sig m2 = b.emit(GateFunc::And, two, xbit(static_cast<int>(i) - 1));
      Sig mux = b.emit(GateFunc::Or, m1, m2);
      Sig ppb = b.emit(GateFunc::Xor, neg, mux,
                       neg.is_const() || mux.is_const()
                           ? ""
                           : rj + "pp" + std::to_string(i));
      if (!ppb.is_const()) col[pos].push_back(ppb);
      else if (ppb.konst == 1) bias += mpz_class(1) << pos;
    }
    if (!neg.is_const()) {
      col[2 * j].push_back(neg);  // +1 correction of the complemented row
      unsigned ext = 2 * j + n + 1;
      if (ext < w_out) {
        // negb * 2^ext stands in for -neg * 2^ext and over-counts by 2^ext
        col[ext].push_back(b.gnot(neg, rj + "negb"));
        bias -= mpz_class(1) << ext;
      }
      // a sign weight at or above 2^w_out wraps to zero and needs nothing
    }
  }

  // bias as constant column bits, modulo the product width
  mpz_class mod = mpz_class(1) << w_out;
  mpz_class kc = ((bias % mod) + mod) % mod;
  std::vector<unsigned> const_ones(w_out + 1, 0);
  for (unsigned i = 0; i < w_out; ++i)
    if (mpz_tstbit(kc.get_mpz_t(), i)) const_ones[i] = 1;

  std::vector<Sig> out(w_out);
  for (unsigned pos = 0; pos < w_out; ++pos) {
    std::deque<Sig>& q = col[pos];
    unsigned ones = const_ones[pos];
    unsigned cell = 0;
    auto next_name = [&](const char* kind) {
      return prefix + kind + std::to_string(pos) + "_" + std::to_string(cell++);
    };
    auto push_carry = [&](const Sig& c) {
      if (pos + 1 < w_out) col[pos + 1].push_back(c);
    };
    while (q.size() + ones > 1) {
      if (ones > 0 && q.size() >= 2) {
        Sig a = q.front(); q.pop_front();
        Sig c = q.front(); q.pop_front();
        AdderBits ab = carry_one_adder(b, a, c, next_name("u"), next_name("v"));
        q.push_back(ab.sum);
        push_carry(ab.carry);
        --ones;
      } else if (q.size() >= 3) {
        Sig a = q.front(); q.pop_front();
        Sig c = q.front(); q.pop_front();
        Sig d = q.front(); q.pop_front();
        AdderBits ab = full_adder(b, a, c, d, next_name("u"), next_name("v"));
        q.push_back(ab.sum);
        push_carry(ab.carry);
      } else if (q.size() == 2) {
        Sig a = q.front(); q.pop_front();
        Sig c = q.front(); q.pop_front();
        AdderBits ab = half_adder(b, a, c, next_name("u"), next_name("v"));
        q.push_back(ab.sum);
        push_carry(ab.carry);
      } else if (ones >= 2) {
        ones -= 2;
        if (pos + 1 < w_out) ++const_ones[pos + 1];
      } else {
        // lone constant one beside a single signal: x + 1 = 2x + !x
        Sig a = q.front(); q.pop_front();
        q.push_back(b.gnot(a, next_name("u")));
        push_carry(a);
        --ones;
      }
    }
    out[pos] = q.empty() ? (ones ? Sig::one() : Sig::zero()) : q.front();
  }
  return out;
}

void bind_words(Netlist& n, std::initializer_list<std::pair<const char*, unsigned>> words) {
  for (const auto& [name, width] : words) {
    WordBinding wb;
    wb.name = name;
    std::string prefix(1, static_cast<char>(std::tolower(name[0])));
    for (unsigned i = 0; i < width; ++i) wb.bits.push_back(prefix + std::to_string(i));
    n.words.push_back(std::move(wb));
  }
}

Netlist generate_clean(const GenSpec& spec) {
  if (spec.width == 0) throw Error("generate: width must be at least 1");
  const unsigned n = spec.width;
  Builder b;
  b.n.name = std::string(to_string(spec.family)) + std::to_string(n);

  switch (spec.family) {
    case Family::RippleAdder: {
      auto a = make_inputs(b, "a", n);
      auto y = make_inputs(b, "b", n);
      auto s = ripple_add(b, a, y, "f");
      for (size_t i = 0; i < s.size(); ++i) b.po(s[i], "f" + std::to_string(i));
      bind_words(b.n, {{"A", n}, {"B", n}, {"F", n + 1}});
      break;
    }
    case Family::CsaMult:
    case Family::ArrayMult:
    case Family::BoothRadix4Mult: {
      auto a = make_inputs(b, "a", n);
      auto y = make_inputs(b, "b", n);
      std::vector<Sig> p = spec.family == Family::CsaMult ? csa_mult_bits(b, a, y, "")
                           : spec.family == Family::ArrayMult ? array_mult_bits(b, a, y, "")
                                                              : booth_mult_bits(b, a, y, "");
      for (size_t i = 0; i < p.size(); ++i) b.po(p[i], "f" + std::to_string(i));
      bind_words(b.n, {{"A", n}, {"B", n}, {"F", static_cast<unsigned>(p.size())}});
      break;
    }
    case Family::Mac: {
      auto a = make_inputs(b, "a", n);
      auto y = make_inputs(b, "b", n);
      auto c = make_inputs(b, "c", n);
      auto p = csa_mult_bits(b, a, y, "m");
      auto s = ripple_add(b, p, c, "f");
      for (size_t i = 0; i < s.size(); ++i) b.po(s[i], "f" + std::to_string(i));
      bind_words(b.n, {{"A", n}, {"B", n}, {"C", n}, {"F", 2 * n + 1}});
      break;
    }
    case Family::Mult3: {
      auto a = make_inputs(b, "a", n);
      auto y = make_inputs(b, "b", n);
      auto c = make_inputs(b, "c", n);
      auto p = csa_mult_bits(b, a, y, "m");
      auto q = csa_mult_bits(b, p, c, "q");
      for (size_t i = 0; i < q.size(); ++i) b.po(q[i], "f" + std::to_string(i));
      bind_words(b.n, {{"A", n}, {"B", n}, {"C", n}, {"F", 3 * n}});
      break;
    }
    case Family::MultPlusDistrib: {
      auto a = make_inputs(b, "a", n);
      auto y = make_inputs(b, "b", n);
      auto c = make_inputs(b, "c", n);
      auto s = ripple_add(b, y, c, "s");
      auto p = csa_mult_bits(b, a, s, "m");
      for (size_t i = 0; i < p.size(); ++i) b.po(p[i], "f" + std::to_string(i));
      bind_words(b.n, {{"A", n}, {"B", n}, {"C", n}, {"F", 2 * n + 1}});
      break;
    }
  }
  b.n.validate();
  return b.n;
}

}  // namespace

Netlist generate(const GenSpec& spec) {
  Netlist n = generate_clean(spec);
  if (spec.bugs > 0) n = inject_bugs(n, spec.bugs, spec.seed).first;
  return n;
}

namespace {

// Gates whose output lands inside a detected HA/FA (roots and their cut
// cones); mutation candidates for bug injection.
std::vector<size_t> adder_region_gates(const Netlist& n) {
  Aig g = from_netlist(n);
  CutSet cuts = enumerate_cuts(g);
  std::vector<AdderInstance> adders = detect_adders(g, cuts);
  std::set<uint32_t> region;
  for (const AdderInstance& a : adders) {
    region.insert(a.sum);
    region.insert(a.carry);
    for (uint32_t id : g.cone(a.sum, a.inputs)) region.insert(id);
    for (uint32_t id : g.cone(a.carry, a.inputs)) region.insert(id);
  }
  std::vector<size_t> gates;
  for (size_t i = 0; i < n.gates.size(); ++i) {
    const Gate& gt = n.gates[i];
    if (gt.func != GateFunc::And && gt.func != GateFunc::Or && gt.func != GateFunc::Xor &&
        gt.func != GateFunc::Xnor)
      continue;
    auto it = g.signal_map().find(gt.output);
    if (it == g.signal_map().end()) continue;
    if (region.count(it->second.node())) gates.push_back(i);
  }
  return gates;
}

bool circuits_differ(const Netlist& a, const Netlist& b, uint64_t seed) {
  Aig ga = from_netlist(a);
  Aig gb = from_netlist(b);
  unsigned pis = static_cast<unsigned>(ga.pis().size());
  std::vector<std::vector<uint64_t>> patterns =
      pis <= 14 ? exhaustive_patterns(pis) : random_patterns(pis, 64, seed);
  auto va = ga.simulate(patterns);
  auto vb = gb.simulate(patterns);
  size_t words = patterns.empty() ? 1 : patterns[0].size();
  uint64_t tail_mask = ~0ull;
  if (pis <= 14) {
    size_t bits = size_t(1) << pis;
    if (bits % 64) tail_mask = (uint64_t(1) << (bits % 64)) - 1;
  }
  for (size_t o = 0; o < va.size(); ++o)
    for (size_t w = 0; w < words; ++w) {
      uint64_t diff = va[o][w] ^ vb[o][w];
      if (w + 1 == words) diff &= tail_mask;
      if (diff) return true;
    }
  return false;
}

}  // namespace

std::pair<Netlist, std::vector<BugLocation>> inject_bugs(const Netlist& n, unsigned count,
                                                         uint64_t seed) {
  if (count == 0) throw Error("inject_bugs: count must be at least 1");
  std::vector<size_t> region = adder_region_gates(n);
  if (region.empty()) throw Error("inject_bugs: circuit too small to mutate (no adder region)");

  std::mt19937_64 rng(seed);
  for (unsigned attempt = 0; attempt < 200; ++attempt) {
    Netlist m = n;
    std::vector<BugLocation> bugs;
    for (unsigned k = 0; k < count; ++k) {
      size_t gi = region[rng() % region.size()];
      Gate& g = m.gates[gi];
      if (rng() % 4 != 0) {
        GateFunc swapped = g.func == GateFunc::And   ? GateFunc::Or
                           : g.func == GateFunc::Or  ? GateFunc::And
                           : g.func == GateFunc::Xor ? GateFunc::Xnor
                                                     : GateFunc::Xor;
        bugs.push_back({g.output, std::string(to_string(g.func)) + "->" + to_string(swapped)});
        g.func = swapped;
      } else {
        // harmless on symmetric gates; the observability retry replaces it
        std::swap(g.fanins[0], g.fanins[1]);
        bugs.push_back({g.output, "fanin-swap"});
      }
    }
    if (bugs.size() == count && circuits_differ(n, m, seed + attempt)) {
      m.validate();
      return {std::move(m), std::move(bugs)};
    }
  }
  throw Error("inject_bugs: could not find an observable mutation");
}

}  // namespace spectral
