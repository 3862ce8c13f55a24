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

#include "spectral/adder_tree.hpp"
#include "spectral/aig.hpp"
#include "spectral/blif.hpp"
#include "spectral/genbench.hpp"
#include "spectral/speclang.hpp"
#include "test_util.hpp"

using namespace spectral;

namespace {

// Integer function oracle per family.
mpz_class family_value(Family f, unsigned n, uint64_t a, uint64_t b, uint64_t c) {
  mpz_class A(static_cast<unsigned long>(a)), B(static_cast<unsigned long>(b)),
      C(static_cast<unsigned long>(c));
  (void)n;
  switch (f) {
    case Family::RippleAdder: return A + B;
    case Family::CsaMult:
    case Family::ArrayMult:
    case Family::BoothRadix4Mult: return A * B;
    case Family::Mac: return A * B + C;
    case Family::Mult3: return A * B * C;
    case Family::MultPlusDistrib: return A * (B + C);
  }
  return 0;
}

bool has_c_operand(Family f) {
  return f == Family::Mac || f == Family::Mult3 || f == Family::MultPlusDistrib;
}

void check_family(Family f, unsigned n, bool exhaustive) {
  GenSpec gs{f, n, 1, 0};
  Netlist nl = generate(gs);
  nl.validate();
  Aig g = from_netlist(nl);

  WordBinding fw;
  for (const WordBinding& w : nl.words)
    if (w.name == "F") fw = w;
  REQUIRE(!fw.bits.empty());

  std::vector<size_t> po_idx;
  for (const std::string& bit : fw.bits) po_idx.push_back(g.po_by_name(bit));

  unsigned pis = static_cast<unsigned>(g.pis().size());
  std::mt19937_64 rng(n * 31 + unsigned(f));
  size_t samples = exhaustive ? (size_t(1) << pis) : 4000;
  std::vector<std::vector<uint64_t>> patterns(pis, std::vector<uint64_t>((samples + 63) / 64, 0));
  std::vector<std::array<uint64_t, 3>> operands(samples);
  for (size_t s = 0; s < samples; ++s) {
    uint64_t bits = exhaustive ? s : rng();
    operands[s] = {bits & ((1ull << n) - 1), (bits >> n) & ((1ull << n) - 1),
                   has_c_operand(f) ? (bits >> (2 * n)) & ((1ull << n) - 1) : 0};
    for (unsigned i = 0; i < pis; ++i)
      if ((bits >> i) & 1) patterns[i][s / 64] |= uint64_t(1) << (s % 64);
  }
  auto po_vals = g.simulate(patterns);
  for (size_t s = 0; s < samples; ++s) {
    mpz_class got = 0;
    for (size_t i = 0; i < po_idx.size(); ++i)
      if ((po_vals[po_idx[i]][s / 64] >> (s % 64)) & 1) got |= mpz_class(1) << i;
    mpz_class expect = family_value(f, n, operands[s][0], operands[s][1], operands[s][2]);
    if (got != expect) {
      CAPTURE(int(f));
      CAPTURE(n);
      CAPTURE(operands[s][0]);
      CAPTURE(operands[s][1]);
      CAPTURE(operands[s][2]);
      REQUIRE(got == expect);
    }
  }
}

}  // namespace

TEST_CASE("generator: all families compute their functions (exhaustive small widths)") {
  for (Family f : {Family::RippleAdder, Family::CsaMult, Family::ArrayMult,
                   Family::BoothRadix4Mult, Family::Mac, Family::Mult3, Family::MultPlusDistrib}) {
    unsigned max_n = has_c_operand(f) ? 4 : 6;
    for (unsigned n = 1; n <= max_n; ++n) check_family(f, n, /*exhaustive=*/true);
  }
}

TEST_CASE("generator: larger widths by random sampling") {
  for (Family f : {Family::CsaMult, Family::ArrayMult, Family::BoothRadix4Mult, Family::Mac,
                   Family::Mult3, Family::MultPlusDistrib, Family::RippleAdder}) {
    check_family(f, 8, /*exhaustive=*/false);
    check_family(f, 11, /*exhaustive=*/false);
  }
}

TEST_CASE("generator: two-bit csa multiplier has the textbook structure") {
  GenSpec gs{Family::CsaMult, 2, 1, 0};
  Netlist n = generate(gs);
  Aig g = from_netlist(n);
  CutSet cuts = enumerate_cuts(g);
  auto adders = detect_adders(g, cuts);
  CHECK(adders.size() == 2);
  for (const AdderInstance& a : adders) CHECK(a.kind == AdderInstance::Kind::HalfAdder);

  // functionally identical to the mapped fixture
  Aig fixture = from_netlist(parse_blif(test::kTwoBitMultBlif));
  auto patterns = exhaustive_patterns(4);
  CHECK(g.simulate(patterns) == fixture.simulate(patterns));
}

TEST_CASE("generator: ripple adder shape") {
  GenSpec gs{Family::RippleAdder, 4, 1, 0};
  Netlist n = generate(gs);
  CHECK(n.outputs.size() == 5);
  CHECK(n.inputs.size() == 8);
}

TEST_CASE("generator: deterministic output") {
  GenSpec gs{Family::BoothRadix4Mult, 5, 9, 0};
  CHECK(to_blif(generate(gs)) == to_blif(generate(gs)));
}

TEST_CASE("words: bindings cover inputs and outputs") {
  GenSpec gs{Family::Mac, 3, 1, 0};
  Netlist n = generate(gs);
  REQUIRE(n.words.size() == 4);
  std::set<std::string> names;
  for (const WordBinding& w : n.words) names.insert(w.name);
  CHECK(names == std::set<std::string>{"A", "B", "C", "F"});
  for (const WordBinding& w : n.words) {
    if (w.name == "F") {
      CHECK(w.bits.size() == 7);
      for (const std::string& b : w.bits)
        CHECK(std::find(n.outputs.begin(), n.outputs.end(), b) != n.outputs.end());
    } else {
      CHECK(w.bits.size() == 3);
    }
  }
}

TEST_CASE("inject: bugs are observable and deterministic") {
  GenSpec gs{Family::CsaMult, 4, 1, 0};
  Netlist clean = generate(gs);

  auto [buggy1, locs1] = inject_bugs(clean, 1, 42);
  auto [buggy2, locs2] = inject_bugs(clean, 1, 42);
  CHECK(to_blif(buggy1) == to_blif(buggy2));
  REQUIRE(locs1.size() == 1);
  CHECK(locs1[0].gate == locs2[0].gate);

  Aig gc = from_netlist(clean);
  Aig gb = from_netlist(buggy1);
  auto patterns = exhaustive_patterns(8);
  CHECK(gc.simulate(patterns) != gb.simulate(patterns));

  CHECK_THROWS_AS(inject_bugs(clean, 0, 1), Error);
}

TEST_CASE("inject: xor swap in a half adder flips the product at a=1,b=1") {
  // hand-made: force the known mutation on the fixture's first sum gate
  Netlist n = parse_blif(test::kTwoBitMultBlif);
  for (Gate& g : n.gates)
    if (g.output == "f1") g.func = GateFunc::Xnor;
  auto val = test::eval_netlist(n, test::word_assignment({{"a", 1}, {"b", 1}}, 2));
  CHECK(test::word_value(val, {"f0", "f1", "f2", "f3"}) != 1);
}

TEST_CASE("inject: mutations stay inside the adder region") {
  GenSpec gs{Family::CsaMult, 6, 1, 0};
  Netlist clean = generate(gs);
  // partial products are named pp<j>_<k>; adder cells use s/c/r prefixes
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    auto [buggy, locs] = inject_bugs(clean, 1, seed);
    REQUIRE(locs.size() == 1);
    CHECK(locs[0].gate.rfind("pp", 0) != 0);
  }
}

TEST_CASE("booth: partial products carry cubic monomials that cancel") {
  GenSpec gs{Family::BoothRadix4Mult, 3, 1, 0};
  Netlist nl = generate(gs);
  Aig g = from_netlist(nl);
  CutSet cuts = enumerate_cuts(g);
  auto adders = detect_adders(g, cuts);
  WordBinding fw;
  for (const WordBinding& w : nl.words)
    if (w.name == "F") fw = w;
  WeightMap wm = propagate_weights(g, adders, signature_weights(g, fw));

  // some frontier node expands to a polynomial with a 3-variable monomial
  bool cubic_on_frontier = false;
  for (uint32_t node : wm.frontier) {
    WeightedCut one;
    one.weights[node] = 1;
    Polynomial p = rewrite_frontier(g, one);
    if (p.degree() >= 3) cubic_on_frontier = true;
  }
  CHECK(cubic_on_frontier);

  // yet the weighted sum has only two-variable monomials
  Polynomial sig_in = rewrite_frontier(g, to_weighted_cut(wm));
  Spectrum s = compute_spectrum(sig_in);
  CHECK(s.sizes() == std::vector<size_t>{2});
}
