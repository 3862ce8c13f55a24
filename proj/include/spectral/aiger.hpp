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
  \file aiger.hpp
  \brief AIGER 1.9 reader/writer, ASCII `aag` and binary `aig` (combinational
  subset; latches are rejected).
*/

#pragma once

#include <iosfwd>
#include <string>

#include "spectral/aig.hpp"
#include "spectral/netlist.hpp"

namespace spectral {

/*! \brief Parses either format (dispatch on the header word). Complemented
    edges surface as NOT gates in the returned netlist. */
Netlist parse_aiger(std::istream& in);
Netlist parse_aiger(const std::string& bytes);
Netlist read_aiger_file(const std::string& path);

void write_aiger_ascii(const Aig& g, std::ostream& out);
void write_aiger_binary(const Aig& g, std::ostream& out);
std::string to_aiger_ascii(const Aig& g);
std::string to_aiger_binary(const Aig& g);

}  // namespace spectral
