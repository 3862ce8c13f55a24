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
  \file polynomial.hpp
  \brief Pseudo-Boolean polynomials: multilinear monomials over {0,1}-valued
  variables with arbitrary-precision signed integer coefficients.

  The map representation is canonical: no zero coefficients are stored and
  monomial variables are kept sorted, so two equal polynomials always compare
  equal. Variables are identified by integer ids (typically AIG node ids).
*/

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "spectral/netlist.hpp"

namespace spectral {

using VarId = uint32_t;

/*! \brief Thrown when an operation would exceed the configured monomial ceiling. */
class TermLimitError : public Error {
public:
  explicit TermLimitError(size_t limit, VarId at_var = kNoVar)
      : Error(at_var == kNoVar
                  ? "term ceiling of " + std::to_string(limit) + " monomials exceeded"
                  : "term ceiling of " + std::to_string(limit) +
                        " monomials exceeded while eliminating variable " + std::to_string(at_var)),
        limit_(limit),
        at_var_(at_var) {}
  size_t limit() const { return limit_; }
  VarId at_var() const { return at_var_; }
  static constexpr VarId kNoVar = static_cast<VarId>(-1);

private:
  size_t limit_;
  VarId at_var_;
};

constexpr size_t kDefaultTermCeiling = 10'000'000;

/*! \brief Product of distinct variables; the empty monomial is the constant 1. */
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(VarId v) : vars_{v} {}
  /*! \brief Builds from any variable list; sorts and removes duplicates (x*x = x). */
  explicit Monomial(std::vector<VarId> vars);

  static Monomial unit() { return Monomial{}; }

  size_t degree() const { return vars_.size(); }
  bool is_unit() const { return vars_.empty(); }
  bool contains(VarId v) const;
  const std::vector<VarId>& vars() const { return vars_; }

  /*! \brief Idempotent product: union of the two variable sets. */
  Monomial operator*(const Monomial& other) const;
  /*! \brief Copy with `v` removed (no-op if absent). */
  Monomial without(VarId v) const;

  bool operator==(const Monomial& other) const { return vars_ == other.vars_; }
  bool operator<(const Monomial& other) const { return vars_ < other.vars_; }

private:
  std::vector<VarId> vars_;
};

class Polynomial {
public:
  using TermMap = std::map<Monomial, mpz_class>;

  Polynomial() = default;

  static Polynomial zero() { return {}; }
  static Polynomial constant(const mpz_class& c);
  static Polynomial variable(VarId v);
  /*! \brief x or 1-x depending on `complemented`. */
  static Polynomial literal(VarId v, bool complemented);
  static Polynomial from_terms(TermMap terms);

  bool is_zero() const { return terms_.empty(); }
  size_t num_terms() const { return terms_.size(); }
  size_t degree() const;
  const TermMap& terms() const { return terms_; }

  bool contains_var(VarId v) const;
  std::vector<VarId> vars() const;

  /*! \brief Coefficient of `m`, zero if absent. */
  mpz_class coeff(const Monomial& m) const;

  void add_term(const Monomial& m, const mpz_class& c);

  Polynomial operator-() const;
  bool operator==(const Polynomial& other) const { return terms_ == other.terms_; }

  /*! \brief Renders `c1*v1*v2 + ...` with terms ordered by |coefficient|,
      sign, then monomial; `namer` resolves variable ids. */
  std::string to_string(const std::function<std::string(VarId)>& namer = {}) const;

private:
  TermMap terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q,
               size_t max_terms = kDefaultTermCeiling);
Polynomial sub(const Polynomial& p, const Polynomial& q,
               size_t max_terms = kDefaultTermCeiling);
Polynomial mul(const Polynomial& p, const Polynomial& q,
               size_t max_terms = kDefaultTermCeiling);
Polynomial mul(const Polynomial& p, const mpz_class& c);

inline Polynomial operator+(const Polynomial& p, const Polynomial& q) { return add(p, q); }
inline Polynomial operator-(const Polynomial& p, const Polynomial& q) { return sub(p, q); }
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return mul(p, q); }
inline Polynomial operator*(const mpz_class& c, const Polynomial& p) { return mul(p, c); }

/*! \brief Algebraic gate models: NOT -> 1-a, AND -> a*b, OR -> a+b-a*b,
    XOR -> a+b-2*a*b, with NAND/NOR/XNOR as their complements. */
Polynomial gate_model(GateFunc f, std::span<const Polynomial> fanins,
                      size_t max_terms = kDefaultTermCeiling);

/*! \brief Eliminates `v` by replacing it with `expr`; `expr` must not contain `v`. */
Polynomial substitute(const Polynomial& p, VarId v, const Polynomial& expr,
                      size_t max_terms = kDefaultTermCeiling);

/*! \brief Value under a {0,1} assignment; throws on missing variable. */
mpz_class evaluate(const Polynomial& p, const std::function<int(VarId)>& assignment);

/*! \brief Coefficients reduced into [0, modulus); no-op when modulus == 0. */
Polynomial reduce_coeffs_mod(const Polynomial& p, const mpz_class& modulus);

}  // namespace spectral
