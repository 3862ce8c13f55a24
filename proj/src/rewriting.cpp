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

#include "spectral/rewriting.hpp"

#include <chrono>
#include <ostream>
#include <set>

namespace spectral {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
  Clock::time_point end;
  explicit Deadline(int64_t budget_ms) : end(Clock::now() + std::chrono::milliseconds(budget_ms)) {}
  void check() const {
    if (Clock::now() > end) throw BudgetError("rewriting time budget exceeded");
  }
};

Polynomial and_model(const Aig& g, uint32_t id, size_t max_terms) {
  Polynomial a = Polynomial::literal(g.fanin0(id).node(), g.fanin0(id).complemented());
  Polynomial b = Polynomial::literal(g.fanin1(id).node(), g.fanin1(id).complemented());
  // fanins of the constant node fold to 0/1
  if (g.fanin0(id).node() == 0)
    a = Polynomial::constant(g.fanin0(id).complemented() ? 1 : 0);
  if (g.fanin1(id).node() == 0)
    b = Polynomial::constant(g.fanin1(id).complemented() ? 1 : 0);
  return mul(a, b, max_terms);
}

size_t snapshot_stride(const Aig& g) {
  return g.size() <= 200 ? 1 : g.size() / 100;
}

void record(RewriteTrace* trace, std::optional<uint32_t> var, const Polynomial& p) {
  if (!trace) return;
  trace->records.push_back(TraceRecord{var, compute_spectrum(p), p.num_terms()});
}

}  // namespace

Polynomial output_signature(const Aig& g, const WordBinding& out_word) {
  Polynomial p;
  mpz_class w = 1;
  for (const std::string& bit : out_word.bits) {
    size_t idx = g.po_by_name(bit);
    if (idx == static_cast<size_t>(-1))
      throw Error("output word bit '" + bit + "' is not a primary output");
    AigEdge e = g.pos()[idx].first;
    if (e.node() == 0) {
      if (e.complemented()) p.add_term(Monomial::unit(), w);
    } else if (e.complemented()) {
      p.add_term(Monomial::unit(), w);
      p.add_term(Monomial(e.node()), -w);
    } else {
      p.add_term(Monomial(e.node()), w);
    }
    w <<= 1;
  }
  return p;
}

Polynomial rewrite_to_pis(const Aig& g, const Polynomial& start, RewriteTrace* trace,
                          const RewriteLimits& limits) {
  Deadline deadline(limits.time_budget_ms);
  Polynomial p = start;

  std::set<uint32_t, std::greater<uint32_t>> pending;  // AND-node vars still present
  for (VarId v : p.vars()) {
    if (v >= g.size()) throw Error("rewrite_to_pis: variable " + std::to_string(v) + " is not a node");
    if (g.is_and(v)) pending.insert(v);
  }
  record(trace, std::nullopt, p);

  const size_t stride = snapshot_stride(g);
  size_t eliminated_count = 0;
  std::set<uint32_t> eliminated;

  while (!pending.empty()) {
    deadline.check();
    uint32_t v = *pending.begin();
    pending.erase(pending.begin());

    Polynomial model;
    try {
      model = and_model(g, v, limits.max_terms);
      p = substitute(p, v, model, limits.max_terms);
      if (limits.modulus != 0) p = reduce_coeffs_mod(p, limits.modulus);
    } catch (const TermLimitError& e) {
      throw TermLimitError(e.limit(), v);
    }
    eliminated.insert(v);
    for (AigEdge e : {g.fanin0(v), g.fanin1(v)}) {
      uint32_t f = e.node();
      if (f != 0 && g.is_and(f) && !eliminated.count(f) && p.contains_var(f)) pending.insert(f);
    }
    ++eliminated_count;
    if (trace && eliminated_count % stride == 0) record(trace, v, p);
  }
  if (trace && (trace->records.empty() || trace->records.back().term_count != p.num_terms() ||
                !(trace->records.back().spectrum == compute_spectrum(p))))
    record(trace, std::nullopt, p);
  return p;
}

namespace {

constexpr size_t kShallowConeLimit = 64;
constexpr size_t kTruthTableSupportLimit = 10;

// Exact multilinear polynomial of a shallow cone, computed from its truth
// table by a Moebius transform over the support. Avoids the intermediate
// blowup of expanding XOR structures as symbolic products.
Polynomial expand_cone(const Aig& g, uint32_t root, size_t max_terms) {
  if (root == 0) return Polynomial::zero();
  if (g.is_pi(root)) return Polynomial::variable(root);

  std::vector<uint32_t> cone = g.cone(root, {});
  std::vector<uint32_t> support;
  for (uint32_t id : cone)
    for (AigEdge e : {g.fanin0(id), g.fanin1(id)})
      if (g.is_pi(e.node())) support.push_back(e.node());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  if (support.size() > kTruthTableSupportLimit)
    throw Error("expand_cone: support too large");

  const size_t points = size_t(1) << support.size();
  std::map<uint32_t, std::vector<uint64_t>> value;
  const size_t words = (points + 63) / 64;
  for (size_t i = 0; i < support.size(); ++i) {
    std::vector<uint64_t> v(words, 0);
    for (size_t m = 0; m < points; ++m)
      if ((m >> i) & 1) v[m / 64] |= uint64_t(1) << (m % 64);
    value[support[i]] = std::move(v);
  }
  value[0] = std::vector<uint64_t>(words, 0);
  for (uint32_t id : cone) {  // cone() is sorted, fanins come first
    AigEdge e0 = g.fanin0(id), e1 = g.fanin1(id);
    const auto& a = value.at(e0.node());
    const auto& b = value.at(e1.node());
    std::vector<uint64_t> v(words);
    uint64_t ca = e0.complemented() ? ~0ull : 0ull;
    uint64_t cb = e1.complemented() ? ~0ull : 0ull;
    for (size_t w = 0; w < words; ++w) v[w] = (a[w] ^ ca) & (b[w] ^ cb);
    value[id] = std::move(v);
  }

  // Moebius transform: f(x) = sum over subsets S of coeff(S) * prod S
  std::vector<int64_t> coeff(points);
  const auto& tt = value.at(root);
  for (size_t m = 0; m < points; ++m) coeff[m] = (tt[m / 64] >> (m % 64)) & 1;
  for (size_t i = 0; i < support.size(); ++i)
    for (size_t m = 0; m < points; ++m)
      if ((m >> i) & 1) coeff[m] -= coeff[m ^ (size_t(1) << i)];

  Polynomial p;
  for (size_t m = 0; m < points; ++m) {
    if (coeff[m] == 0) continue;
    std::vector<VarId> vars;
    for (size_t i = 0; i < support.size(); ++i)
      if ((m >> i) & 1) vars.push_back(support[i]);
    p.add_term(Monomial(std::move(vars)), coeff[m]);
  }
  if (p.num_terms() > max_terms) throw TermLimitError(max_terms);
  return p;
}

// Symbolic bottom-up expansion with memoization, for cones whose support is
// too wide for the truth-table route.
const Polynomial& expand_node(const Aig& g, uint32_t id,
                              std::map<uint32_t, Polynomial>& memo, size_t max_terms) {
  auto it = memo.find(id);
  if (it != memo.end()) return it->second;
  Polynomial p;
  if (id == 0) {
    p = Polynomial::zero();
  } else if (g.is_pi(id)) {
    p = Polynomial::variable(id);
  } else {
    auto lit = [&](AigEdge e) {
      const Polynomial& f = expand_node(g, e.node(), memo, max_terms);
      return e.complemented() ? sub(Polynomial::constant(1), f, max_terms) : f;
    };
    p = mul(lit(g.fanin0(id)), lit(g.fanin1(id)), max_terms);
  }
  return memo.emplace(id, std::move(p)).first->second;
}

}  // namespace

Polynomial rewrite_frontier(const Aig& g, const WeightedCut& cut, const RewriteLimits& limits) {
  bool all_shallow = true;
  for (const auto& [node, w] : cut.weights) {
    if (w == 0 || !g.is_and(node)) continue;
    if (g.cone(node, {}, kShallowConeLimit).size() > kShallowConeLimit) {
      all_shallow = false;
      break;
    }
  }

  Polynomial result = Polynomial::constant(cut.constant);
  if (all_shallow) {
    std::map<uint32_t, Polynomial> memo;
    std::map<uint32_t, Polynomial> tt_cache;
    for (const auto& [node, w] : cut.weights) {
      if (w == 0) continue;
      const Polynomial* e;
      auto hit = tt_cache.find(node);
      if (hit != tt_cache.end()) {
        e = &hit->second;
      } else {
        try {
          e = &tt_cache.emplace(node, expand_cone(g, node, limits.max_terms)).first->second;
        } catch (const TermLimitError&) {
          throw;
        } catch (const Error&) {  // support too large: symbolic route
          e = &expand_node(g, node, memo, limits.max_terms);
        }
      }
      for (const auto& [m, c] : e->terms()) result.add_term(m, c * w);
      if (result.num_terms() > limits.max_terms) throw TermLimitError(limits.max_terms, node);
    }
    return result;
  }
  for (const auto& [node, w] : cut.weights)
    if (w != 0) result.add_term(Monomial(node), w);
  return rewrite_to_pis(g, result, nullptr, limits);
}

void write_trace_jsonl(const RewriteTrace& t, const Aig& g, std::ostream& out) {
  for (const TraceRecord& r : t.records) {
    out << "{\"eliminated\":";
    if (r.eliminated) out << '"' << g.node_name(*r.eliminated) << '"';
    else out << "null";
    out << ",\"terms\":" << r.term_count << ",\"spectrum\":{";
    bool first_k = true;
    for (const auto& [k, comp] : r.spectrum.components()) {
      if (!first_k) out << ',';
      first_k = false;
      out << '"' << k << "\":[";
      for (size_t i = 0; i < comp.size(); ++i) {
        if (i) out << ',';
        out << '[' << comp[i].count << ",\"" << comp[i].coeff.get_str() << "\"]";
      }
      out << ']';
    }
    out << "}}\n";
  }
}

}  // namespace spectral
