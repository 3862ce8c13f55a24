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
  \file blif.hpp
  \brief BLIF reader/writer for the combinational single-output subset.

  `.names` covers of up to 4 inputs are accepted; a cover that is not one of
  the primitive gate functions is decomposed into an AND/OR/NOT tree.
  `.latch` and `.subckt` are rejected.
*/

#pragma once

#include <iosfwd>
#include <string>

#include "spectral/netlist.hpp"

namespace spectral {

Netlist parse_blif(std::istream& in);
Netlist parse_blif(const std::string& text);
Netlist read_blif_file(const std::string& path);

void write_blif(const Netlist& n, std::ostream& out);
std::string to_blif(const Netlist& n);

}  // namespace spectral
