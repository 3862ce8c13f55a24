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

#include "spectral/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace spectral {

Monomial::Monomial(std::vector<VarId> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

bool Monomial::contains(VarId v) const {
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.vars_.reserve(vars_.size() + other.vars_.size());
  std::set_union(vars_.begin(), vars_.end(), other.vars_.begin(), other.vars_.end(),
                 std::back_inserter(r.vars_));
  return r;
}

Monomial Monomial::without(VarId v) const {
  Monomial r;
  r.vars_.reserve(vars_.size());
  for (VarId x : vars_)
    if (x != v) r.vars_.push_back(x);
  return r;
}

Polynomial Polynomial::constant(const mpz_class& c) {
  Polynomial p;
  if (c != 0) p.terms_.emplace(Monomial::unit(), c);
  return p;
}

Polynomial Polynomial::variable(VarId v) {
  Polynomial p;
  p.terms_.emplace(Monomial(v), 1);
  return p;
}

Polynomial Polynomial::literal(VarId v, bool complemented) {
  if (!complemented) return variable(v);
  Polynomial p;
  p.terms_.emplace(Monomial::unit(), 1);
  p.terms_.emplace(Monomial(v), -1);
  return p;
}

Polynomial Polynomial::from_terms(TermMap terms) {
  Polynomial p;
  p.terms_ = std::move(terms);
  for (auto it = p.terms_.begin(); it != p.terms_.end();)
    it = (it->second == 0) ? p.terms_.erase(it) : std::next(it);
  return p;
}

size_t Polynomial::degree() const {
  size_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

bool Polynomial::contains_var(VarId v) const {
  for (const auto& [m, c] : terms_)
    if (m.contains(v)) return true;
  return false;
}

std::vector<VarId> Polynomial::vars() const {
  std::set<VarId> s;
  for (const auto& [m, c] : terms_) s.insert(m.vars().begin(), m.vars().end());
  return {s.begin(), s.end()};
}

mpz_class Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

std::string Polynomial::to_string(const std::function<std::string(VarId)>& namer) const {
  if (terms_.empty()) return "0";
  auto name = [&](VarId v) { return namer ? namer(v) : "x" + std::to_string(v); };

  std::vector<const TermMap::value_type*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    mpz_class aa = abs(a->second), ab = abs(b->second);
    if (aa != ab) return aa < ab;
    int sa = sgn(a->second), sb = sgn(b->second);
    if (sa != sb) return sa > sb;
    return a->first < b->first;
  });

  std::ostringstream ss;
  bool first = true;
  for (const auto* t : order) {
    if (!first) ss << " + ";
    first = false;
    ss << t->second.get_str();
    for (VarId v : t->first.vars()) ss << '*' << name(v);
  }
  return ss.str();
}

namespace {
void check_limit(size_t n, size_t max_terms) {
  if (n > max_terms) throw TermLimitError(max_terms);
}
}  // namespace

Polynomial add(const Polynomial& p, const Polynomial& q, size_t max_terms) {
  Polynomial r = p;
  for (const auto& [m, c] : q.terms()) r.add_term(m, c);
  check_limit(r.num_terms(), max_terms);
  return r;
}

Polynomial sub(const Polynomial& p, const Polynomial& q, size_t max_terms) {
  Polynomial r = p;
  for (const auto& [m, c] : q.terms()) r.add_term(m, -c);
  check_limit(r.num_terms(), max_terms);
  return r;
}

Polynomial mul(const Polynomial& p, const Polynomial& q, size_t max_terms) {
  Polynomial r;
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) {
      r.add_term(mp * mq, cp * cq);
      check_limit(r.num_terms(), max_terms);
    }
  }
  return r;
}

Polynomial mul(const Polynomial& p, const mpz_class& c) {
  if (c == 0) return {};
  Polynomial::TermMap t = p.terms();
  for (auto& [m, coeff] : t) coeff *= c;
  return Polynomial::from_terms(std::move(t));
}

Polynomial gate_model(GateFunc f, std::span<const Polynomial> fanins, size_t max_terms) {
  if (fanins.size() != arity(f))
    throw Error(std::string("gate_model: ") + to_string(f) + " expects " +
                std::to_string(arity(f)) + " operands, got " + std::to_string(fanins.size()));
  const Polynomial one = Polynomial::constant(1);
  switch (f) {
    case GateFunc::Const0: return {};
    case GateFunc::Const1: return one;
    case GateFunc::Buf: return fanins[0];
    case GateFunc::Not: return sub(one, fanins[0], max_terms);
    case GateFunc::And: return mul(fanins[0], fanins[1], max_terms);
    case GateFunc::Nand: return sub(one, mul(fanins[0], fanins[1], max_terms), max_terms);
    case GateFunc::Or: {
      Polynomial ab = mul(fanins[0], fanins[1], max_terms);
      return sub(add(fanins[0], fanins[1], max_terms), ab, max_terms);
    }
    case GateFunc::Nor: {
      Polynomial ab = mul(fanins[0], fanins[1], max_terms);
      return sub(one, sub(add(fanins[0], fanins[1], max_terms), ab, max_terms), max_terms);
    }
    case GateFunc::Xor: {
      Polynomial ab = mul(fanins[0], fanins[1], max_terms);
      return sub(add(fanins[0], fanins[1], max_terms), mul(ab, mpz_class(2)), max_terms);
    }
    case GateFunc::Xnor: {
      Polynomial ab = mul(fanins[0], fanins[1], max_terms);
      return sub(one, sub(add(fanins[0], fanins[1], max_terms), mul(ab, mpz_class(2)), max_terms),
                 max_terms);
    }
  }
  return {};
}

Polynomial substitute(const Polynomial& p, VarId v, const Polynomial& expr, size_t max_terms) {
  if (expr.contains_var(v)) throw Error("substitute: expression contains the eliminated variable");
  Polynomial rest;       // terms without v
  Polynomial quotient;   // terms with v, v stripped
  for (const auto& [m, c] : p.terms()) {
    if (m.contains(v)) quotient.add_term(m.without(v), c);
    else rest.add_term(m, c);
  }
  if (quotient.is_zero()) return p;
  return add(rest, mul(quotient, expr, max_terms), max_terms);
}

Polynomial reduce_coeffs_mod(const Polynomial& p, const mpz_class& modulus) {
  if (modulus == 0) return p;
  Polynomial::TermMap t;
  for (const auto& [m, c] : p.terms()) {
    mpz_class r = ((c % modulus) + modulus) % modulus;
    if (r != 0) t.emplace(m, r);
  }
  return Polynomial::from_terms(std::move(t));
}

mpz_class evaluate(const Polynomial& p, const std::function<int(VarId)>& assignment) {
  mpz_class total = 0;
  for (const auto& [m, c] : p.terms()) {
    bool active = true;
    for (VarId v : m.vars()) {
      int val = assignment(v);
      if (val < 0) throw Error("evaluate: variable " + std::to_string(v) + " unassigned");
      if (val == 0) {
        active = false;
        break;
      }
    }
    if (active) total += c;
  }
  return total;
}

}  // namespace spectral
