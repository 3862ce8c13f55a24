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

#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "spectral/aig.hpp"
#include "spectral/blif.hpp"
#include "spectral/genbench.hpp"
#include "spectral/rewriting.hpp"
#include "test_util.hpp"

using namespace spectral;

namespace {

Polynomial product_reference(const Aig& g, unsigned n) {
  Polynomial p;
  for (unsigned j = 0; j < n; ++j)
    for (unsigned k = 0; k < n; ++k) {
      Monomial m({g.pi_by_name("a" + std::to_string(j)), g.pi_by_name("b" + std::to_string(k))});
      p.add_term(m, mpz_class(1) << (j + k));
    }
  return p;
}

WordBinding output_word(const Netlist& n) {
  for (const WordBinding& w : n.words)
    if (w.name == "F") return w;
  WordBinding all;
  all.name = "F";
  all.bits = n.outputs;
  return all;
}

}  // namespace

TEST_CASE("output signature: weights, width, complemented edges") {
  GenSpec gs{Family::CsaMult, 3, 1, 0};
  Netlist n = generate(gs);
  Aig g = from_netlist(n);
  WordBinding w = output_word(n);
  Polynomial sig = output_signature(g, w);
  CHECK(sig.degree() == 1);
  // evaluates to the output word value under any simulated assignment
  auto vals = g.simulate_nodes(exhaustive_patterns(6));
  std::vector<size_t> po_idx;
  for (const std::string& bit : w.bits) po_idx.push_back(g.po_by_name(bit));
  for (uint64_t pat = 0; pat < 64; pat += 7) {
    mpz_class expect = 0;
    for (size_t i = 0; i < po_idx.size(); ++i) {
      AigEdge e = g.pos()[po_idx[i]].first;
      bool bit = (vals[e.node()][pat / 64] >> (pat % 64)) & 1;
      if (bit != e.complemented()) expect |= mpz_class(1) << i;
    }
    mpz_class got = evaluate(
        sig, [&](VarId v) { return int((vals[v][pat / 64] >> (pat % 64)) & 1); });
    CHECK(got == expect);
  }

  Aig tiny;
  AigEdge x = tiny.add_pi("x");
  tiny.add_po(x, "f0");
  tiny.add_po(!x, "g0");
  WordBinding one_bit{"F", {"f0"}};
  CHECK(output_signature(tiny, one_bit) == Polynomial::variable(x.node()));
  WordBinding compl_bit{"G", {"g0"}};
  Polynomial pc = output_signature(tiny, compl_bit);
  CHECK(pc.coeff(Monomial()) == 1);
  CHECK(pc.coeff(Monomial(x.node())) == -1);

  WordBinding missing{"H", {"nope"}};
  CHECK_THROWS_AS(output_signature(tiny, missing), Error);
}

TEST_CASE("rewrite_to_pis: two-bit multiplier reaches the product polynomial") {
  Netlist n = parse_blif(test::kTwoBitMultBlif);
  Aig g = from_netlist(n);
  WordBinding w{"F", {"f0", "f1", "f2", "f3"}};
  RewriteTrace trace;
  Polynomial sig_in = rewrite_to_pis(g, output_signature(g, w), &trace);
  CHECK(sig_in == product_reference(g, 2));
  auto namer = [&g](VarId v) { return g.node_name(v); };
  CHECK(sig_in.to_string(namer) == "1*a0*b0 + 2*a0*b1 + 2*a1*b0 + 4*a1*b1");
  CHECK(trace.records.size() >= 2);
  CHECK(!trace.records.front().eliminated.has_value());
}

TEST_CASE("rewrite_to_pis: polynomials over PIs are fixed points") {
  Aig g;
  AigEdge a = g.add_pi("a");
  AigEdge b = g.add_pi("b");
  g.add_po(g.land(a, b), "f");
  Polynomial start = add(Polynomial::variable(a.node()), Polynomial::variable(b.node()));
  RewriteTrace trace;
  CHECK(rewrite_to_pis(g, start, &trace) == start);
  CHECK(trace.records.size() == 1);  // initial record only
}

TEST_CASE("rewrite_to_pis: trace vars are unique and descending") {
  GenSpec gs{Family::CsaMult, 3, 1, 0};
  Netlist n = generate(gs);
  Aig g = from_netlist(n);
  RewriteTrace trace;
  rewrite_to_pis(g, output_signature(g, output_word(n)), &trace);
  std::set<uint32_t> seen;
  uint32_t last = ~0u;
  for (const TraceRecord& r : trace.records) {
    if (!r.eliminated) continue;
    CHECK(seen.insert(*r.eliminated).second);
    CHECK(*r.eliminated < last);
    last = *r.eliminated;
  }
}

TEST_CASE("rewrite_frontier: fixture weights reach the canonical product") {
  Netlist n = parse_blif(test::kTwoBitMultBlif);
  Aig g = from_netlist(n);
  WeightedCut cut;
  auto node_of = [&](const std::string& s) { return g.signal_map().at(s).node(); };
  cut.weights[node_of("f0")] = 1;
  cut.weights[node_of("g10")] = 2;
  cut.weights[node_of("g11")] = 2;
  cut.weights[node_of("g15")] = 4;
  Polynomial sig_in = rewrite_frontier(g, cut);
  CHECK(sig_in == product_reference(g, 2));
}

TEST_CASE("rewrite_frontier: primary inputs with adder weights") {
  GenSpec gs{Family::RippleAdder, 4, 1, 0};
  Netlist n = generate(gs);
  Aig g = from_netlist(n);
  WeightedCut cut;
  Polynomial expect;
  for (unsigned i = 0; i < 4; ++i) {
    uint32_t ai = g.pi_by_name("a" + std::to_string(i));
    uint32_t bi = g.pi_by_name("b" + std::to_string(i));
    cut.weights[ai] = mpz_class(1) << i;
    cut.weights[bi] = mpz_class(1) << i;
    expect.add_term(Monomial(ai), mpz_class(1) << i);
    expect.add_term(Monomial(bi), mpz_class(1) << i);
  }
  CHECK(rewrite_frontier(g, cut) == expect);

  WeightedCut zero;
  zero.weights[g.pi_by_name("a0")] = 0;
  CHECK(rewrite_frontier(g, zero).is_zero());
}

TEST_CASE("rewrite_to_pis: booth multiplier cancels its cubic terms") {
  GenSpec gs{Family::BoothRadix4Mult, 3, 1, 0};
  Netlist n = generate(gs);
  Aig g = from_netlist(n);
  RewriteTrace trace;
  Polynomial sig_in = rewrite_to_pis(g, output_signature(g, output_word(n)), &trace);
  CHECK(sig_in == product_reference(g, 3));
  CHECK(sig_in.num_terms() == 9);
  CHECK(sig_in.degree() == 2);
  bool saw_cubic = false;
  for (const TraceRecord& r : trace.records)
    if (!r.spectrum.component(3).empty()) saw_cubic = true;
  CHECK(saw_cubic);
}

TEST_CASE("blowup reports the offending node") {
  // a chain of XOR gates blows up once the ceiling is tiny
  GenSpec gs{Family::CsaMult, 4, 1, 0};
  Netlist n = generate(gs);
  Aig g = from_netlist(n);
  RewriteLimits limits;
  limits.max_terms = 5;
  try {
    rewrite_to_pis(g, output_signature(g, output_word(n)), nullptr, limits);
    FAIL("expected TermLimitError");
  } catch (const TermLimitError& e) {
    CHECK(e.limit() == 5);
    CHECK(e.at_var() != TermLimitError::kNoVar);
  }
}

TEST_CASE("trace export is one JSON object per line") {
  Netlist n = parse_blif(test::kTwoBitMultBlif);
  Aig g = from_netlist(n);
  RewriteTrace trace;
  WordBinding w{"F", {"f0", "f1", "f2", "f3"}};
  rewrite_to_pis(g, output_signature(g, w), &trace);
  std::ostringstream ss;
  write_trace_jsonl(trace, g, ss);
  size_t lines = 0;
  for (char c : ss.str()) lines += c == '\n';
  CHECK(lines == trace.records.size());
  CHECK(ss.str().find("\"spectrum\"") != std::string::npos);
}

TEST_CASE("property: every rewriting step preserves the signature value") {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 40; ++iter) {
    // random 6-PI AIG
    Aig g;
    std::vector<AigEdge> pool;
    for (int i = 0; i < 6; ++i) pool.push_back(g.add_pi("x" + std::to_string(i)));
    for (int i = 0; i < 25; ++i) {
      AigEdge a = pool[rng() % pool.size()] ^ bool(rng() & 1);
      AigEdge b = pool[rng() % pool.size()] ^ bool(rng() & 1);
      pool.push_back(g.land(a, b));
    }
    for (int o = 0; o < 4; ++o)
      g.add_po(pool[pool.size() - 1 - rng() % 4] ^ bool(rng() & 1), "f" + std::to_string(o));

    WordBinding w{"F", {"f0", "f1", "f2", "f3"}};
    Polynomial sig_out = output_signature(g, w);

    auto node_vals = g.simulate_nodes(exhaustive_patterns(6));
    auto value_at = [&](const Polynomial& p, uint64_t pattern) {
      return evaluate(
          p, [&](VarId v) { return int((node_vals[v][pattern / 64] >> (pattern % 64)) & 1); });
    };
    std::vector<mpz_class> expect(64);
    for (uint64_t pat = 0; pat < 64; ++pat) expect[pat] = value_at(sig_out, pat);

    // drive the elimination by hand, checking invariance after each step
    Polynomial p = sig_out;
    for (uint32_t id = g.size(); id-- > 1;) {
      if (!g.is_and(id) || !p.contains_var(id)) continue;
      Polynomial model =
          mul(Polynomial::literal(g.fanin0(id).node(), g.fanin0(id).complemented()),
              Polynomial::literal(g.fanin1(id).node(), g.fanin1(id).complemented()));
      p = substitute(p, id, model);
      CHECK(!p.contains_var(id));
      for (int s = 0; s < 4; ++s) {
        uint64_t pattern = rng() % 64;
        CHECK(value_at(p, pattern) == expect[pattern]);
      }
    }
    for (VarId v : p.vars()) CHECK(g.is_pi(v));
    CHECK(p == rewrite_to_pis(g, sig_out));
  }
}
