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
  \file netlist.hpp
  \brief Gate-level netlist: named gates over a small Boolean function set.
*/

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace spectral {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/*! \brief Syntax error with source position; line/col are 1-based, 0 = unknown. */
class ParseError : public Error {
public:
  ParseError(const std::string& what, unsigned line = 0, unsigned col = 0)
      : Error(format(what, line, col)), line_(line), col_(col) {}
  unsigned line() const { return line_; }
  unsigned col() const { return col_; }

private:
  static std::string format(const std::string& what, unsigned line, unsigned col);
  unsigned line_, col_;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

enum class GateFunc : uint8_t {
  And,
  Or,
  Xor,
  Xnor,
  Nand,
  Nor,
  Not,
  Buf,
  Const0,
  Const1
};

const char* to_string(GateFunc f);
unsigned arity(GateFunc f);
bool eval_gate(GateFunc f, bool a, bool b);

struct Gate {
  std::string output;
  GateFunc func;
  std::vector<std::string> fanins;
};

/*! \brief A named group of signals forming an unsigned word, LSB first. */
struct WordBinding {
  std::string name;
  std::vector<std::string> bits;
};

/*!
  \brief Combinational netlist.

  Gates may be declared in any order; validate() checks single drivers,
  acyclicity and fanin resolution, and topo_order() yields a schedule.
*/
struct Netlist {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<Gate> gates;
  std::vector<WordBinding> words;

  /*! \brief Throws ValidationError naming the first violation found. */
  void validate() const;

  /*! \brief Gate indices such that every fanin precedes its consumer. */
  std::vector<size_t> topo_order() const;

  /*! \brief Index of the gate driving `signal`, or npos. */
  size_t driver_of(const std::string& signal) const;

  bool is_input(const std::string& signal) const;

  static constexpr size_t npos = static_cast<size_t>(-1);
};

}  // namespace spectral
