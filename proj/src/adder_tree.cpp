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

#include "spectral/adder_tree.hpp"

#include <algorithm>
#include <deque>
#include <ostream>

namespace spectral {

namespace {

uint8_t tt_mask(unsigned nvars) { return static_cast<uint8_t>((1u << (1u << nvars)) - 1u); }

// Expands `tt` over `from` onto the superset `to` (both ascending).
uint8_t expand_tt(uint8_t tt, const std::vector<uint32_t>& from, const std::vector<uint32_t>& to) {
  std::array<int, 3> pos{};
  for (size_t i = 0; i < from.size(); ++i) {
    auto it = std::find(to.begin(), to.end(), from[i]);
    pos[i] = static_cast<int>(it - to.begin());
  }
  uint8_t out = 0;
  for (unsigned m = 0; m < (1u << to.size()); ++m) {
    unsigned idx = 0;
    for (size_t i = 0; i < from.size(); ++i)
      if ((m >> pos[i]) & 1) idx |= 1u << i;
    if ((tt >> idx) & 1) out |= static_cast<uint8_t>(1u << m);
  }
  return out;
}

// Drops leaves the function does not depend on and compacts the table.
void minimize_support(Cut& c) {
  for (size_t i = 0; i < c.leaves.size();) {
    unsigned n = static_cast<unsigned>(c.leaves.size());
    bool depends = false;
    for (unsigned m = 0; m < (1u << n); ++m) {
      if ((m >> i) & 1) continue;
      unsigned m1 = m | (1u << i);
      if (((c.tt >> m) & 1) != ((c.tt >> m1) & 1)) {
        depends = true;
        break;
      }
    }
    if (!depends) {
      uint8_t compact = 0;
      unsigned out_bit = 0;
      for (unsigned m = 0; m < (1u << n); ++m) {
        if ((m >> i) & 1) continue;
        if ((c.tt >> m) & 1) compact |= static_cast<uint8_t>(1u << out_bit);
        ++out_bit;
      }
      c.tt = compact;
      c.leaves.erase(c.leaves.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
}

}  // namespace

CutSet enumerate_cuts(const Aig& g) {
  constexpr size_t kCutLimit = 24;
  CutSet cuts(g.size());
  for (uint32_t id : g.pis()) cuts[id].push_back(Cut{{id}, 0x2});

  for (uint32_t id = 1; id < g.size(); ++id) {
    if (!g.is_and(id)) continue;
    const AigEdge e0 = g.fanin0(id), e1 = g.fanin1(id);

    auto child_cuts = [&](AigEdge e) -> std::vector<Cut> {
      if (e.node() == 0) return {Cut{{}, static_cast<uint8_t>(e.complemented() ? 0x1 : 0x0)}};
      std::vector<Cut> v = cuts[e.node()];
      if (e.complemented())
        for (Cut& c : v) c.tt = static_cast<uint8_t>(~c.tt) & tt_mask(static_cast<unsigned>(c.leaves.size()));
      return v;
    };

    std::vector<Cut> merged;
    for (const Cut& c0 : child_cuts(e0)) {
      for (const Cut& c1 : child_cuts(e1)) {
        std::vector<uint32_t> leaves;
        std::set_union(c0.leaves.begin(), c0.leaves.end(), c1.leaves.begin(), c1.leaves.end(),
                       std::back_inserter(leaves));
        if (leaves.size() > 3) continue;
        uint8_t t0 = expand_tt(c0.tt, c0.leaves, leaves);
        uint8_t t1 = expand_tt(c1.tt, c1.leaves, leaves);
        Cut c{std::move(leaves), static_cast<uint8_t>(t0 & t1)};
        c.tt &= tt_mask(static_cast<unsigned>(c.leaves.size()));
        minimize_support(c);
        merged.push_back(std::move(c));
      }
    }
    // dedupe by leaf set, filter dominated cuts
    std::sort(merged.begin(), merged.end(), [](const Cut& a, const Cut& b) {
      if (a.leaves.size() != b.leaves.size()) return a.leaves.size() < b.leaves.size();
      return a.leaves < b.leaves;
    });
    merged.erase(std::unique(merged.begin(), merged.end(),
                             [](const Cut& a, const Cut& b) { return a.leaves == b.leaves; }),
                 merged.end());
    std::vector<Cut> kept;
    for (const Cut& c : merged) {
      bool dominated = false;
      for (const Cut& k : kept) {
        if (k.leaves.size() >= c.leaves.size()) continue;
        if (std::includes(c.leaves.begin(), c.leaves.end(), k.leaves.begin(), k.leaves.end())) {
          dominated = true;
          break;
        }
      }
      if (!dominated) kept.push_back(c);
      if (kept.size() >= kCutLimit) break;
    }
    kept.push_back(Cut{{id}, 0x2});  // trivial cut
    cuts[id] = std::move(kept);
  }
  return cuts;
}

uint8_t npn_canon(uint8_t tt, unsigned nvars) {
  static const int perms2[2][3] = {{0, 1, 2}, {1, 0, 2}};
  static const int perms3[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const uint8_t mask = tt_mask(nvars);
  tt &= mask;
  uint8_t best = 0xFF;
  unsigned nperm = nvars == 3 ? 6 : 2;
  for (unsigned pi = 0; pi < nperm; ++pi) {
    const int* p = nvars == 3 ? perms3[pi] : perms2[pi];
    for (unsigned neg = 0; neg < (1u << nvars); ++neg) {
      for (unsigned out_neg = 0; out_neg < 2; ++out_neg) {
        uint8_t t = 0;
        for (unsigned m = 0; m < (1u << nvars); ++m) {
          unsigned src = 0;
          for (unsigned j = 0; j < nvars; ++j) {
            unsigned bit = ((m >> p[j]) & 1) ^ ((neg >> j) & 1);
            src |= bit << j;
          }
          unsigned bit = ((tt >> src) & 1) ^ out_neg;
          if (bit) t |= static_cast<uint8_t>(1u << m);
        }
        best = std::min(best, static_cast<uint8_t>(t & mask));
      }
    }
  }
  return best;
}

namespace {

constexpr uint8_t kXor3 = 0x96, kXnor3 = 0x69, kXor2 = 0x6, kXnor2 = 0x9;

bool is_xor_class(uint8_t tt, unsigned nvars) {
  tt &= tt_mask(nvars);
  return nvars == 3 ? (tt == kXor3 || tt == kXnor3) : (tt == kXor2 || tt == kXnor2);
}

bool is_carry_class(uint8_t tt, unsigned nvars) {
  static const uint8_t maj_canon = npn_canon(0xE8, 3);
  static const uint8_t and_canon = npn_canon(0x8, 2);
  return nvars == 3 ? npn_canon(tt, 3) == maj_canon : npn_canon(tt, 2) == and_canon;
}

// Solutions (input negations, carry negation) such that
// carry_tt == MAJ(inputs ^ neg) ^ carry_neg (AND for two inputs); the sum
// negation follows from the XOR parity.
std::vector<PinPolarity> solve_polarities(uint8_t sum_tt, uint8_t carry_tt, unsigned nvars) {
  std::vector<PinPolarity> sols;
  if (!is_xor_class(sum_tt, nvars)) return sols;
  bool sum_parity = (sum_tt & tt_mask(nvars)) == (nvars == 3 ? kXnor3 : kXnor2);
  for (unsigned neg = 0; neg < (1u << nvars); ++neg) {
    for (unsigned cneg = 0; cneg < 2; ++cneg) {
      uint8_t expect = 0;
      for (unsigned m = 0; m < (1u << nvars); ++m) {
        unsigned l0 = ((m >> 0) & 1) ^ (neg & 1);
        unsigned l1 = ((m >> 1) & 1) ^ ((neg >> 1) & 1);
        unsigned val;
        if (nvars == 3) {
          unsigned l2 = ((m >> 2) & 1) ^ ((neg >> 2) & 1);
          val = (l0 & l1) | (l0 & l2) | (l1 & l2);
        } else {
          val = l0 & l1;
        }
        val ^= cneg;
        if (val) expect |= static_cast<uint8_t>(1u << m);
      }
      if ((expect & tt_mask(nvars)) == (carry_tt & tt_mask(nvars))) {
        PinPolarity p;
        for (unsigned j = 0; j < nvars; ++j) p.input_neg[j] = (neg >> j) & 1;
        bool eps_parity = false;
        for (unsigned j = 0; j < nvars; ++j) eps_parity ^= p.input_neg[j];
        p.sum_neg = sum_parity ^ eps_parity;
        p.carry_neg = cneg;
        sols.push_back(p);
      }
    }
  }
  return sols;
}

std::vector<uint32_t> po_depths(const Aig& g) {
  const uint32_t inf = ~0u;
  std::vector<uint32_t> depth(g.size(), inf);
  std::deque<uint32_t> queue;
  for (const auto& [e, name] : g.pos()) {
    if (depth[e.node()] != 0) {
      depth[e.node()] = 0;
      queue.push_back(e.node());
    }
  }
  while (!queue.empty()) {
    uint32_t id = queue.front();
    queue.pop_front();
    if (!g.is_and(id)) continue;
    for (AigEdge e : {g.fanin0(id), g.fanin1(id)}) {
      uint32_t f = e.node();
      if (f != 0 && depth[f] > depth[id] + 1) {
        depth[f] = depth[id] + 1;
        queue.push_back(f);
      }
    }
  }
  return depth;
}

}  // namespace

std::vector<AdderInstance> detect_adders(const Aig& g, const CutSet& cuts) {
  // hash nontrivial cuts by leaf set, split into sum and carry candidates
  std::map<std::vector<uint32_t>, std::vector<std::pair<uint32_t, uint8_t>>> xors, carries;
  for (uint32_t id = 1; id < g.size(); ++id) {
    if (!g.is_and(id)) continue;
    for (const Cut& c : cuts[id]) {
      unsigned sz = static_cast<unsigned>(c.leaves.size());
      if (sz < 2 || (sz == 1 && c.leaves[0] == id)) continue;
      if (is_xor_class(c.tt, sz)) xors[c.leaves].emplace_back(id, c.tt);
      else if (is_carry_class(c.tt, sz)) carries[c.leaves].emplace_back(id, c.tt);
    }
  }

  struct Candidate {
    AdderInstance inst;
    uint32_t depth_key;   // min over both roots of the PO distance
    uint32_t depth_key2;  // max over both roots, breaking root-sharing ties
  };
  std::vector<Candidate> candidates;
  auto depth = po_depths(g);

  // fanout lists and PO flags, to tell shared signals from private cone
  // internals (structural hashing may pull a real carry into the sum's cone)
  std::vector<std::vector<uint32_t>> consumers(g.size());
  std::vector<bool> is_po(g.size(), false);
  for (uint32_t id = 1; id < g.size(); ++id) {
    if (!g.is_and(id)) continue;
    consumers[g.fanin0(id).node()].push_back(id);
    consumers[g.fanin1(id).node()].push_back(id);
  }
  for (const auto& [e, name] : g.pos()) is_po[e.node()] = true;

  // `other` may sit inside `root`'s cut cone only if it is also visible
  // outside of it; a node used solely to build the root is no adder output
  auto visible = [&](uint32_t other, const std::vector<uint32_t>& cone) {
    if (!std::binary_search(cone.begin(), cone.end(), other)) return true;
    if (is_po[other]) return true;
    for (uint32_t f : consumers[other])
      if (!std::binary_search(cone.begin(), cone.end(), f)) return true;
    return false;
  };

  // An adder output is an output, drives several gates, or dangles entirely
  // (a compressor carry wrapping past the top output bit). A node with
  // exactly one consumer is private to that consumer's gate macro.
  auto real_signal = [&](uint32_t x) { return is_po[x] || consumers[x].size() != 1; };

  for (const auto& [leaves, sum_list] : xors) {
    auto it = carries.find(leaves);
    if (it == carries.end()) continue;
    for (const auto& [s, tts] : sum_list) {
      if (!real_signal(s)) continue;
      for (const auto& [c, ttc] : it->second) {
        if (s == c || !real_signal(c)) continue;
        auto sols = solve_polarities(tts, ttc, static_cast<unsigned>(leaves.size()));
        if (sols.empty()) continue;
        auto cone_s = g.cone(s, leaves);
        if (!visible(c, cone_s)) continue;
        auto cone_c = g.cone(c, leaves);
        if (!visible(s, cone_c)) continue;
        AdderInstance inst;
        inst.kind = leaves.size() == 3 ? AdderInstance::Kind::FullAdder
                                       : AdderInstance::Kind::HalfAdder;
        inst.inputs = leaves;
        inst.sum = s;
        inst.carry = c;
        inst.polarities = std::move(sols);
        candidates.push_back(Candidate{std::move(inst), std::min(depth[s], depth[c]),
                                       std::max(depth[s], depth[c])});
      }
    }
  }

  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.depth_key != b.depth_key) return a.depth_key < b.depth_key;
    if (a.depth_key2 != b.depth_key2) return a.depth_key2 < b.depth_key2;
    if (a.inst.sum != b.inst.sum) return a.inst.sum < b.inst.sum;
    return a.inst.carry < b.inst.carry;
  });

  std::vector<AdderInstance> selected;
  std::set<uint32_t> used_roots;
  for (Candidate& c : candidates) {
    if (used_roots.count(c.inst.sum) || used_roots.count(c.inst.carry)) continue;
    used_roots.insert(c.inst.sum);
    used_roots.insert(c.inst.carry);
    selected.push_back(std::move(c.inst));
  }

  // Drop constituent pairs living entirely inside another instance's cut
  // cone (the half adder every full adder is built around).
  std::vector<std::set<uint32_t>> zones;
  zones.reserve(selected.size());
  for (const AdderInstance& a : selected) {
    std::set<uint32_t> zone;
    for (uint32_t id : g.cone(a.sum, a.inputs)) zone.insert(id);
    for (uint32_t id : g.cone(a.carry, a.inputs)) zone.insert(id);
    zone.erase(a.sum);
    zone.erase(a.carry);
    zones.push_back(std::move(zone));
  }
  std::vector<AdderInstance> kept;
  for (size_t i = 0; i < selected.size(); ++i) {
    bool shadowed = false;
    for (size_t j = 0; j < selected.size() && !shadowed; ++j)
      if (j != i && zones[j].count(selected[i].sum) && zones[j].count(selected[i].carry))
        shadowed = true;
    if (!shadowed) kept.push_back(std::move(selected[i]));
  }
  return kept;
}

std::vector<std::pair<AigEdge, mpz_class>> signature_weights(const Aig& g,
                                                             const WordBinding& out_word) {
  std::vector<std::pair<AigEdge, mpz_class>> w;
  mpz_class p = 1;
  for (const std::string& bit : out_word.bits) {
    size_t idx = g.po_by_name(bit);
    if (idx == static_cast<size_t>(-1))
      throw Error("output word bit '" + bit + "' is not a primary output");
    w.emplace_back(g.pos()[idx].first, p);
    p <<= 1;
  }
  return w;
}

WeightMap propagate_weights(const Aig& g, const std::vector<AdderInstance>& adders,
                            const std::vector<std::pair<AigEdge, mpz_class>>& po_weights,
                            const mpz_class& modulus) {
  WeightMap wm;
  // An adder output normally receives exactly one weight; a second
  // contribution (recorded here) is legitimate for shared complement edges,
  // so it only becomes a conflict when the pair later fails its ratio check.
  std::map<uint32_t, mpz_class> first_contribution;
  std::set<uint32_t> multi_contributed;
  std::set<uint32_t> instance_outputs;
  for (const AdderInstance& a : adders) {
    instance_outputs.insert(a.sum);
    instance_outputs.insert(a.carry);
  }

  auto contribute = [&](uint32_t node, const mpz_class& w) {
    if (w == 0) return;
    if (instance_outputs.count(node)) {
      auto [it, fresh] = first_contribution.emplace(node, w);
      if (!fresh) multi_contributed.insert(node);
    }
    auto& slot = wm.weights[node];
    slot += w;
    if (slot == 0) wm.weights.erase(node);
  };

  for (const auto& [e, w] : po_weights) {
    if (e.node() == 0) {
      if (e.complemented()) wm.constant += w;
    } else if (e.complemented()) {
      wm.constant += w;
      contribute(e.node(), -w);
    } else {
      contribute(e.node(), w);
    }
  }

  // Fire each pair when the sweep reaches min(sum, carry): all contributions
  // into its roots come from pairs whose roots lie strictly above.
  std::vector<size_t> order(adders.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::min(adders[a].sum, adders[a].carry) > std::min(adders[b].sum, adders[b].carry);
  });

  for (size_t idx : order) {
    const AdderInstance& a = adders[idx];
    auto ws = wm.weights.find(a.sum);
    auto wc = wm.weights.find(a.carry);
    mpz_class us = ws == wm.weights.end() ? mpz_class(0) : ws->second;
    mpz_class uc = wc == wm.weights.end() ? mpz_class(0) : wc->second;
    if (us == 0 && uc == 0) continue;  // dead pair, never reached

    const PinPolarity* chosen = nullptr;
    mpz_class w;
    for (const PinPolarity& p : a.polarities) {
      mpz_class cand_w = p.sum_neg ? mpz_class(-us) : us;
      mpz_class cand_wc = p.carry_neg ? mpz_class(-uc) : uc;
      bool exact = cand_wc == 2 * cand_w;
      bool wrapped = modulus != 0 && (cand_wc - 2 * cand_w) % modulus == 0;
      if ((exact || wrapped) && cand_w != 0) {
        chosen = &p;
        w = cand_w;
        break;
      }
    }
    if (!chosen) {
      // By the sweep order both root weights are final here, so a pair with
      // exactly one weighted root means the chain feeding its partner broke:
      // the adder tree is unstructured. Same for a failed ratio.
      for (uint32_t node : {a.sum, a.carry})
        if (multi_contributed.count(node))
          throw WeightConflictError(node, first_contribution[node],
                                    wm.weights.count(node) ? wm.weights[node] : mpz_class(0));
      throw RatioViolationError(a.sum, a.carry, us, uc);
    }

    wm.weights.erase(a.sum);
    wm.weights.erase(a.carry);
    if (chosen->sum_neg) wm.constant += us;
    if (chosen->carry_neg) wm.constant += uc;
    for (size_t i = 0; i < a.inputs.size(); ++i) {
      bool neg = chosen->input_neg[i];
      contribute(a.inputs[i], neg ? mpz_class(-w) : w);
      if (neg) wm.constant += w;
    }
    wm.fired.push_back(idx);
  }

  for (const auto& [node, w] : wm.weights) wm.frontier.insert(node);
  return wm;
}

WeightedCut to_weighted_cut(const WeightMap& wm) {
  WeightedCut c;
  c.weights = wm.weights;
  c.constant = wm.constant;
  return c;
}

void write_adder_report(const Aig& g, const std::vector<AdderInstance>& adders,
                        const WeightMap& wm, std::ostream& out) {
  out << "{\"schema\":1,\"adders\":[";
  for (size_t i = 0; i < adders.size(); ++i) {
    const AdderInstance& a = adders[i];
    if (i) out << ',';
    out << "{\"kind\":\"" << (a.kind == AdderInstance::Kind::HalfAdder ? "HA" : "FA")
        << "\",\"inputs\":[";
    for (size_t j = 0; j < a.inputs.size(); ++j) {
      if (j) out << ',';
      out << a.inputs[j];
    }
    out << "],\"sum\":" << a.sum << ",\"carry\":" << a.carry << '}';
  }
  out << "],\"constant\":\"" << wm.constant.get_str() << "\",\"weights\":{";
  bool first = true;
  for (const auto& [node, w] : wm.weights) {
    if (!first) out << ',';
    first = false;
    out << '"' << g.node_name(node) << "\":\"" << w.get_str() << '"';
  }
  out << "},\"frontier\":[";
  bool f = true;
  for (uint32_t node : wm.frontier) {
    if (!f) out << ',';
    f = false;
    out << node;
  }
  out << "]}\n";
}

void write_adder_dot(const Aig& g, const std::vector<AdderInstance>& adders, std::ostream& out) {
  std::unordered_map<uint32_t, std::string> highlight;
  for (const AdderInstance& a : adders) {
    highlight[a.sum] = "sum";
    highlight[a.carry] = "carry";
  }
  write_dot(g, out, highlight);
}

}  // namespace spectral
