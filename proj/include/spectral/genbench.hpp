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

/*!
  \file genbench.hpp
  \brief Parametric arithmetic benchmark generators and seeded bug injection.

  Families:
    - ripple_adder:       F = A + B, carry-select-free ripple chain
    - csa_mult:           F = A * B, AND-array partial products, carry-save
                          rows, final ripple adder
    - array_mult:         F = A * B, row-by-row ripple accumulation
    - booth_radix4_mult:  F = A * B, unsigned radix-4 recoded partial
                          products; the sign/correction bias is folded into
                          constant column bits
    - mac:                F = A * B + C
    - mult3:              F = A * B * C
    - mult_plus_distrib:  F = A * (B + C)

  All circuits use PIs a0.., b0.., c0.. and POs f0.. (LSB first) and carry
  word bindings for A, B, C, F.
*/

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spectral/netlist.hpp"

namespace spectral {

enum class Family {
  CsaMult,
  ArrayMult,
  BoothRadix4Mult,
  RippleAdder,
  Mac,
  Mult3,
  MultPlusDistrib
};

const char* to_string(Family f);
Family family_from_string(const std::string& s);

struct GenSpec {
  Family family = Family::CsaMult;
  unsigned width = 4;   // operand bits n
  uint64_t seed = 1;    // bug-injection seed
  unsigned bugs = 0;
};

/*! \brief Generates the family at the given width; with bugs > 0 the clean
    circuit is mutated via inject_bugs. */
Netlist generate(const GenSpec& spec);

/*! \brief Spec-language text matching the family's arithmetic function. */
std::string default_spec_text(Family f);

struct BugLocation {
  std::string gate;
  std::string mutation;
};

/*! \brief Applies `count` seeded mutations (gate-type swap or fanin rewire)
    restricted to detected adder regions; retries until the mutated circuit
    observably differs from the original. */
std::pair<Netlist, std::vector<BugLocation>> inject_bugs(const Netlist& n, unsigned count,
                                                         uint64_t seed);

}  // namespace spectral
