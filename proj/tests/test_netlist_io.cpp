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

#include "spectral/aig.hpp"
#include "spectral/aiger.hpp"
#include "spectral/blif.hpp"
#include "spectral/speclang.hpp"
#include "test_util.hpp"

using namespace spectral;

TEST_CASE("blif: two-bit multiplier fixture") {
  Netlist n = parse_blif(test::kTwoBitMultBlif);
  CHECK(n.gates.size() == 8);
  CHECK(n.inputs == std::vector<std::string>{"a0", "a1", "b0", "b1"});
  CHECK(n.outputs == std::vector<std::string>{"f0", "f1", "f2", "f3"});

  // functional check against integer multiplication
  for (unsigned a = 0; a < 4; ++a) {
    for (unsigned b = 0; b < 4; ++b) {
      auto val = test::eval_netlist(n, test::word_assignment({{"a", a}, {"b", b}}, 2));
      CHECK(test::word_value(val, {"f0", "f1", "f2", "f3"}) == a * b);
    }
  }
}

TEST_CASE("blif: single AND cover") {
  Netlist n = parse_blif(".model t\n.inputs a b\n.outputs f\n.names a b f\n11 1\n.end\n");
  REQUIRE(n.gates.size() == 1);
  CHECK(n.gates[0].func == GateFunc::And);
  CHECK(n.gates[0].fanins == std::vector<std::string>{"a", "b"});
}

TEST_CASE("blif: undriven signal") {
  CHECK_THROWS_WITH_AS(
      parse_blif(".model t\n.inputs a\n.outputs f\n.names a ghost f\n11 1\n.end\n"),
      doctest::Contains("undriven signal 'ghost'"), ValidationError);
}

TEST_CASE("blif: multiply-driven signal") {
  CHECK_THROWS_AS(
      parse_blif(".model t\n.inputs a b\n.outputs f\n.names a f\n1 1\n.names b f\n1 1\n.end\n"),
      ValidationError);
}

TEST_CASE("blif: combinational cycle") {
  CHECK_THROWS_WITH_AS(parse_blif(".model t\n.inputs a\n.outputs f\n.names a g f\n11 1\n"
                                  ".names f g\n1 1\n.end\n"),
                       doctest::Contains("cycle"), ValidationError);
}

TEST_CASE("blif: latches rejected") {
  CHECK_THROWS_AS(parse_blif(".model t\n.inputs a\n.outputs q\n.latch a q 0\n.end\n"), ParseError);
}

TEST_CASE("blif: general covers become gate trees") {
  // 3-input majority as a cover
  Netlist n = parse_blif(
      ".model t\n.inputs a b c\n.outputs f\n.names a b c f\n11- 1\n1-1 1\n-11 1\n.end\n");
  for (unsigned m = 0; m < 8; ++m) {
    auto val = test::eval_netlist(
        n, {{"a", bool(m & 1)}, {"b", bool(m & 2)}, {"c", bool(m & 4)}});
    bool expect = ((m & 3) == 3) || ((m & 5) == 5) || ((m & 6) == 6);
    CHECK(val.at("f") == expect);
  }

  // off-set cover of an AND
  Netlist n2 = parse_blif(".model t\n.inputs a b\n.outputs f\n.names a b f\n0- 0\n-0 0\n.end\n");
  for (unsigned m = 0; m < 4; ++m) {
    auto val = test::eval_netlist(n2, {{"a", bool(m & 1)}, {"b", bool(m & 2)}});
    CHECK(val.at("f") == (m == 3));
  }
}

TEST_CASE("blif: cover with more than four inputs is rejected") {
  CHECK_THROWS_AS(parse_blif(".model t\n.inputs a b c d e\n.outputs f\n"
                             ".names a b c d e f\n11111 1\n.end\n"),
                  ParseError);
}

TEST_CASE("blif: round trip is a fixed point") {
  for (const char* src : {test::kTwoBitMultBlif,
                          ".model t\n.inputs a b c\n.outputs f g\n.names a b c f\n101 1\n"
                          "011 1\n.names a g\n0 1\n.end\n"}) {
    Netlist n1 = parse_blif(src);
    std::string text1 = to_blif(n1);
    Netlist n2 = parse_blif(text1);
    std::string text2 = to_blif(n2);
    CHECK(text1 == text2);
  }
}

TEST_CASE("aiger: identity circuit") {
  Netlist n = parse_aiger("aag 1 1 0 1 0\n2\n2\n");
  REQUIRE(n.inputs.size() == 1);
  REQUIRE(n.outputs.size() == 1);
  auto val = test::eval_netlist(n, {{n.inputs[0], true}});
  CHECK(val.at(n.outputs[0]) == true);
  auto val0 = test::eval_netlist(n, {{n.inputs[0], false}});
  CHECK(val0.at(n.outputs[0]) == false);
}

TEST_CASE("aiger: binary single AND") {
  // aig 3 2 0 1 1; output 6; and: lhs 6 = rhs0 4, rhs1 2 -> deltas 2, 2
  std::string bytes = "aig 3 2 0 1 1\n6\n";
  bytes.push_back(2);
  bytes.push_back(2);
  Netlist n = parse_aiger(bytes);
  unsigned and_count = 0;
  for (const Gate& g : n.gates) and_count += g.func == GateFunc::And;
  CHECK(and_count == 1);
  CHECK(n.inputs.size() == 2);
  for (unsigned m = 0; m < 4; ++m) {
    auto val = test::eval_netlist(n, {{"i0", bool(m & 1)}, {"i1", bool(m & 2)}});
    CHECK(val.at(n.outputs[0]) == (m == 3));
  }
}

TEST_CASE("aiger: latches rejected") {
  CHECK_THROWS_WITH_AS(parse_aiger("aag 2 1 1 1 0\n2\n4 2\n4\n"),
                       doctest::Contains("sequential circuits unsupported"), ParseError);
}

TEST_CASE("aiger: truncated binary and section") {
  std::string bytes = "aig 3 2 0 1 1\n6\n";
  bytes.push_back(2);  // missing the second delta
  CHECK_THROWS_WITH_AS(parse_aiger(bytes), doctest::Contains("truncated"), ParseError);
}

TEST_CASE("aiger: ascii and binary round trips are fixed points") {
  Netlist n = parse_blif(test::kTwoBitMultBlif);
  Aig g = from_netlist(n);

  std::string a1 = to_aiger_ascii(g);
  std::string a2 = to_aiger_ascii(from_netlist(parse_aiger(a1)));
  std::string a3 = to_aiger_ascii(from_netlist(parse_aiger(a2)));
  CHECK(a2 == a3);

  std::string b1 = to_aiger_binary(g);
  std::string b2 = to_aiger_binary(from_netlist(parse_aiger(b1)));
  std::string b3 = to_aiger_binary(from_netlist(parse_aiger(b2)));
  CHECK(b2 == b3);

  // binary encoding of the known single-AND case is bit-exact
  Aig tiny;
  AigEdge x = tiny.add_pi("x");
  AigEdge y = tiny.add_pi("y");
  tiny.add_po(tiny.land(x, y), "o");
  std::string expect = "aig 3 2 0 1 1\n6\n";
  expect.push_back(2);
  expect.push_back(2);
  expect += "i0 x\ni1 y\no0 o\n";
  CHECK(to_aiger_binary(tiny) == expect);
}

TEST_CASE("speclang: simple product") {
  SpecFile f = parse_spec("F = A*B");
  CHECK(f.output_word == "F");
  CHECK(f.expr.kind == SpecExpr::Kind::Mul);
  CHECK(f.expr.words() == std::vector<std::string>{"A", "B"});
}

TEST_CASE("speclang: multiply-accumulate with declarations") {
  SpecFile f = parse_spec(
      "word A = a0..a3 unsigned;\n"
      "word B = b0 b1 b2 b3 unsigned;\n"
      "word C = c0..c3 unsigned;\n"
      "word F = f0..f8 unsigned;\n"
      "F = A*B + C;\n");
  CHECK(f.decls.size() == 4);
  CHECK(f.decls[0].bits == std::vector<std::string>{"a0", "a1", "a2", "a3"});
  CHECK(f.expr.kind == SpecExpr::Kind::Add);
  CHECK(f.expr.to_string() == "A*B + C");
}

TEST_CASE("speclang: division is unsupported") {
  CHECK_THROWS_WITH_AS(parse_spec("F = A / B"), doctest::Contains("unsupported operator"),
                       ParseError);
}

TEST_CASE("speclang: bit collisions rejected") {
  CHECK_THROWS_AS(parse_spec("word A = x0 x1 unsigned; word B = x1 x2 unsigned; F = A+B;"),
                  ParseError);
}

TEST_CASE("speclang: expansion and integer evaluation") {
  SpecFile f = parse_spec("F = A*B + 3");
  std::map<std::string, std::vector<VarId>> bits{{"A", {1, 2}}, {"B", {3, 4}}};
  Polynomial p = expand_spec(f.expr, bits);
  // (a0 + 2 a1)(b0 + 2 b1) + 3
  CHECK(p.num_terms() == 5);
  CHECK(p.coeff(Monomial({1, 3})) == 1);
  CHECK(p.coeff(Monomial({2, 4})) == 4);
  CHECK(p.coeff(Monomial()) == 3);
  CHECK(evaluate_spec(f.expr, {{"A", 3}, {"B", 3}}) == 12);
}
