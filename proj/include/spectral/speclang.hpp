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
  \file speclang.hpp
  \brief Word-level specification language.

  Grammar:

      spec  := { worddecl } assign
      worddecl := "word" IDENT "=" bits "unsigned" ";"
      bits  := IDENT { IDENT } | IDENT ".." IDENT      (range over a numeric suffix)
      assign := IDENT "=" expr ";"?
      expr  := term { "+" term }
      term  := factor { "*" factor }
      factor := IDENT | INT | "(" expr ")"

  Word declarations are optional; undeclared words can later be resolved
  against circuit signal names (word X -> bits x0, x1, ...).
*/

#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "spectral/netlist.hpp"
#include "spectral/polynomial.hpp"

namespace spectral {

struct SpecExpr {
  enum class Kind { Word, Const, Add, Mul };
  Kind kind = Kind::Const;
  std::string word;                       // Kind::Word
  mpz_class value;                        // Kind::Const
  std::vector<SpecExpr> operands;         // Kind::Add / Kind::Mul

  static SpecExpr make_word(std::string name);
  static SpecExpr make_const(mpz_class v);
  static SpecExpr make_add(std::vector<SpecExpr> ops);
  static SpecExpr make_mul(std::vector<SpecExpr> ops);

  /*! \brief Word names referenced, in first-use order. */
  std::vector<std::string> words() const;
  std::string to_string() const;
};

struct SpecFile {
  std::vector<WordBinding> decls;  // explicit `word` declarations
  std::string output_word;         // left-hand side of the assignment
  SpecExpr expr;
};

SpecFile parse_spec(const std::string& text);

/*! \brief Expands the expression over per-word bit variables
    (LSB-first, unsigned encoding Σ 2^i · bit_i). */
Polynomial expand_spec(const SpecExpr& e, const std::map<std::string, std::vector<VarId>>& bits,
                       size_t max_terms = kDefaultTermCeiling);

/*! \brief Integer value of the expression under concrete word values. */
mpz_class evaluate_spec(const SpecExpr& e, const std::map<std::string, mpz_class>& words);

}  // namespace spectral
