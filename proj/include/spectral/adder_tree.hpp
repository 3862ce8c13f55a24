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
  \file adder_tree.hpp
  \brief Half/full adder extraction on the AIG and backward coefficient
  propagation.

  Adders are found as pairs of 3-feasible cuts with identical leaves whose
  root functions fall in the NPN classes of XOR3 and MAJ3 (XOR2/AND2 for a
  half adder, the carry-in folded away as a constant). Each detected pair
  obeys a + b + cin = 2*carry + sum over some literal polarity of its pins,
  which lets output-signature weights flow through the tree: carry weight is
  twice the input weight, sum weight equals it. Propagation stops at the
  partial-product frontier.
*/

#pragma once

#include <gmpxx.h>

#include <array>
#include <iosfwd>
#include <map>
#include <set>
#include <vector>

#include "spectral/aig.hpp"
#include "spectral/polynomial.hpp"
#include "spectral/rewriting.hpp"

namespace spectral {

/*! \brief Unstructured adder tree: the weight sweep found no consistent
    assignment. */
class UatError : public Error {
public:
  using Error::Error;
};

class WeightConflictError : public UatError {
public:
  WeightConflictError(uint32_t node, const mpz_class& w1, const mpz_class& w2)
      : UatError("weight conflict at node " + std::to_string(node) + ": " + w1.get_str() +
                 " vs " + w2.get_str()),
        node_(node), w1_(w1), w2_(w2) {}
  uint32_t node() const { return node_; }
  const mpz_class& existing() const { return w1_; }
  const mpz_class& incoming() const { return w2_; }

private:
  uint32_t node_;
  mpz_class w1_, w2_;
};

class RatioViolationError : public UatError {
public:
  RatioViolationError(uint32_t sum, uint32_t carry, const mpz_class& ws, const mpz_class& wc)
      : UatError("carry/sum weight ratio violation at pair (sum n" + std::to_string(sum) +
                 ", carry n" + std::to_string(carry) + "): " + ws.get_str() + " / " +
                 wc.get_str()),
        sum_(sum), carry_(carry) {}
  uint32_t sum() const { return sum_; }
  uint32_t carry() const { return carry_; }

private:
  uint32_t sum_, carry_;
};

struct Cut {
  std::vector<uint32_t> leaves;  // ascending node ids, support-minimal
  uint8_t tt = 0;                // truth table over the leaves (masked to 2^size bits)
};

class CutSet {
public:
  explicit CutSet(size_t num_nodes) : cuts_(num_nodes) {}
  std::vector<Cut>& operator[](uint32_t id) { return cuts_[id]; }
  const std::vector<Cut>& operator[](uint32_t id) const { return cuts_[id]; }
  size_t size() const { return cuts_.size(); }

private:
  std::vector<std::vector<Cut>> cuts_;
};

/*! \brief All irredundant, support-minimal cuts of size <= 3 per node,
    with truth tables; includes the trivial cut. */
CutSet enumerate_cuts(const Aig& g);

/*! \brief Minimum NPN representative over input permutation, input negation
    and output negation; nvars is 2 or 3. */
uint8_t npn_canon(uint8_t tt, unsigned nvars);

/*! \brief Pin polarities under which a cut pair satisfies the adder relation. */
struct PinPolarity {
  std::array<bool, 3> input_neg{false, false, false};
  bool sum_neg = false;
  bool carry_neg = false;
};

struct AdderInstance {
  enum class Kind { HalfAdder, FullAdder };
  Kind kind = Kind::HalfAdder;
  std::vector<uint32_t> inputs;  // leaf node ids, ascending
  uint32_t sum = 0;
  uint32_t carry = 0;
  std::vector<PinPolarity> polarities;
};

/*! \brief Maximal set of HA/FA pairs, non-overlapping on sum/carry roots;
    overlaps are resolved preferring roots closer to the primary outputs. */
std::vector<AdderInstance> detect_adders(const Aig& g, const CutSet& cuts);

struct WeightMap {
  std::map<uint32_t, mpz_class> weights;  // nonzero entries only
  std::set<uint32_t> frontier;            // weighted nodes not consumed by an adder
  mpz_class constant = 0;
  std::vector<size_t> fired;              // indices of applied instances
};

/*! \brief Sweeps the tree from the output signature down to the frontier.
    With a nonzero `modulus` (2^width of the output word) the carry/sum ratio
    is checked modulo it, which lets carries that wrap past the top output
    bit fire with weight zero, as in any fixed-width datapath. Throws
    WeightConflictError / RatioViolationError on unstructured trees. */
WeightMap propagate_weights(const Aig& g, const std::vector<AdderInstance>& adders,
                            const std::vector<std::pair<AigEdge, mpz_class>>& po_weights,
                            const mpz_class& modulus = 0);

/*! \brief PO weights 2^i for the bits of `out_word` (LSB first). */
std::vector<std::pair<AigEdge, mpz_class>> signature_weights(const Aig& g,
                                                             const WordBinding& out_word);

WeightedCut to_weighted_cut(const WeightMap& wm);

void write_adder_report(const Aig& g, const std::vector<AdderInstance>& adders,
                        const WeightMap& wm, std::ostream& out);

/*! \brief DOT dump with sum/carry roots highlighted. */
void write_adder_dot(const Aig& g, const std::vector<AdderInstance>& adders, std::ostream& out);

}  // namespace spectral
