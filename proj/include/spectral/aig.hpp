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
  \file aig.hpp
  \brief Structurally hashed And-Inverter Graph.

  Node 0 is the constant FALSE; TRUE is its complemented edge. Node ids are
  topologically indexed (fanins always have smaller ids), fanin pairs are
  ordered, and no two AND nodes share the same ordered fanin pair.
*/

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "spectral/netlist.hpp"

namespace spectral {

struct AigEdge {
  uint32_t lit = 0;  // 2*node + complemented

  AigEdge() = default;
  AigEdge(uint32_t node, bool complemented) : lit(2 * node + (complemented ? 1 : 0)) {}

  uint32_t node() const { return lit >> 1; }
  bool complemented() const { return lit & 1; }

  AigEdge operator!() const {
    AigEdge e;
    e.lit = lit ^ 1;
    return e;
  }
  AigEdge operator^(bool c) const {
    AigEdge e;
    e.lit = lit ^ (c ? 1 : 0);
    return e;
  }
  bool operator==(const AigEdge&) const = default;
  bool operator<(const AigEdge& o) const { return lit < o.lit; }
};

class Aig {
public:
  Aig();

  static AigEdge constant(bool value) { return AigEdge(0, value); }

  AigEdge add_pi(const std::string& name);
  void add_po(AigEdge e, const std::string& name);

  /*! \brief Hashed AND with constant/idempotence simplification. */
  AigEdge land(AigEdge a, AigEdge b);
  AigEdge lor(AigEdge a, AigEdge b) { return !land(!a, !b); }
  /*! \brief XOR via the 3-AND DeMorgan form (no dedicated XOR node type). */
  AigEdge lxor(AigEdge a, AigEdge b) { return !land(!land(a, !b), !land(!a, b)); }

  uint32_t size() const { return static_cast<uint32_t>(nodes_.size()); }
  uint32_t num_ands() const { return size() - 1 - static_cast<uint32_t>(pis_.size()); }
  bool is_const(uint32_t id) const { return id == 0; }
  bool is_pi(uint32_t id) const { return id != 0 && nodes_[id].is_pi; }
  bool is_and(uint32_t id) const { return id != 0 && !nodes_[id].is_pi; }

  AigEdge fanin0(uint32_t id) const { return nodes_[id].f0; }
  AigEdge fanin1(uint32_t id) const { return nodes_[id].f1; }

  const std::vector<uint32_t>& pis() const { return pis_; }
  const std::vector<std::pair<AigEdge, std::string>>& pos() const { return pos_; }

  const std::string& pi_name(uint32_t id) const;
  /*! \brief Display name: PI name, "0" for the constant, else "n<id>". */
  std::string node_name(uint32_t id) const;
  /*! \brief PI id by name, or 0 if unknown. */
  uint32_t pi_by_name(const std::string& name) const;
  /*! \brief PO index by name, or npos. */
  size_t po_by_name(const std::string& name) const;

  /*! \brief Node ids in topological order (PIs first, then ANDs ascending). */
  std::vector<uint32_t> topo_order() const;

  /*! \brief Ids of all AND nodes on paths between the leaf set and `root`
      (leaves excluded, root included). */
  std::vector<uint32_t> cone(uint32_t root, const std::vector<uint32_t>& leaves,
                             size_t node_limit = SIZE_MAX) const;

  /*! \brief Bit-parallel simulation; `pi_patterns[i]` holds the 64-bit
      pattern words of the i-th PI, all of equal length. Returns one vector
      per PO. */
  std::vector<std::vector<uint64_t>> simulate(
      const std::vector<std::vector<uint64_t>>& pi_patterns) const;

  /*! \brief As simulate(), but returns the values of every node. */
  std::vector<std::vector<uint64_t>> simulate_nodes(
      const std::vector<std::vector<uint64_t>>& pi_patterns) const;

  /*! \brief Signals recorded by from_netlist: netlist signal name -> edge. */
  const std::unordered_map<std::string, AigEdge>& signal_map() const { return signals_; }
  void map_signal(const std::string& name, AigEdge e) { signals_[name] = e; }

private:
  struct Node {
    AigEdge f0, f1;
    bool is_pi = false;
  };
  std::vector<Node> nodes_;
  std::vector<uint32_t> pis_;
  std::vector<std::pair<AigEdge, std::string>> pos_;
  std::vector<std::string> pi_names_;  // parallel to pis_
  std::unordered_map<std::string, uint32_t> pi_index_;
  std::unordered_map<uint64_t, uint32_t> strash_;
  std::unordered_map<std::string, AigEdge> signals_;
};

/*! \brief DeMorgan conversion of a validated netlist; signal names are
    retained in the signal map, word bindings are carried over by name. */
Aig from_netlist(const Netlist& n);

/*! \brief Rebuilds a netlist of AND/NOT gates from the graph ("synthesized"
    view); names are n<literal>. */
Netlist to_netlist(const Aig& g);

/*! \brief Graphviz dump; `highlight` maps node id -> cluster tag. */
void write_dot(const Aig& g, std::ostream& out,
               const std::unordered_map<uint32_t, std::string>& highlight = {});

/*! \brief Patterns enumerating all 2^num_pis assignments (num_pis <= 20). */
std::vector<std::vector<uint64_t>> exhaustive_patterns(unsigned num_pis);

/*! \brief Seeded random pattern blocks. */
std::vector<std::vector<uint64_t>> random_patterns(unsigned num_pis, size_t words, uint64_t seed);

}  // namespace spectral
