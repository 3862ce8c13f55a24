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
  \file spectrum.hpp
  \brief Algebraic spectra: per monomial size k, the ordered multiset of
  (count, coefficient) pairs of a polynomial's distinct coefficients.

  The coefficient distribution characterizes the arithmetic function shape:
  a triangle in the two-variable component for a product of two words, a
  constant line in the one-variable component for a sum, and so on. Negative
  coefficients are binned by their exact signed value.
*/

#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "spectral/polynomial.hpp"
#include "spectral/speclang.hpp"

namespace spectral {

struct SpectrumEntry {
  uint64_t count;    // N_i >= 1
  mpz_class coeff;   // C_i, distinct within a component
  bool operator==(const SpectrumEntry&) const = default;
};

class Spectrum {
public:
  using Component = std::vector<SpectrumEntry>;  // sorted by increasing coeff

  bool empty() const { return comps_.empty(); }
  const std::map<size_t, Component>& components() const { return comps_; }
  /*! \brief Component for monomial size k (empty if absent). */
  const Component& component(size_t k) const;
  std::vector<size_t> sizes() const;

  void add(size_t k, const mpz_class& coeff, uint64_t count = 1);

  uint64_t total_monomials() const;

  /*! \brief Components merged over k: the coefficient histogram alone. */
  Spectrum merged() const;

  bool operator==(const Spectrum& other) const { return comps_ == other.comps_; }

  std::string to_string() const;
  /*! \brief Rows `k,coeff,count`. */
  void to_csv(std::ostream& out) const;
  /*! \brief Bar chart of one component, in the style of a spectrum plot. */
  void to_svg(size_t k, std::ostream& out) const;

private:
  std::map<size_t, std::map<mpz_class, uint64_t>> accum_;
  std::map<size_t, Component> comps_;
  void rebuild(size_t k);
};

Spectrum compute_spectrum(const Polynomial& p);

/*! \brief N_i of an n-bit two-operand multiplier: i+1 rising to n, then
    falling; length 2n-1 (the top bit has no partial product). */
std::vector<uint64_t> mult_spectrum_formula(unsigned n);

/*! \brief Spectrum of the fully expanded spec expression at the given widths. */
Spectrum reference_spectrum(const SpecExpr& e, const std::map<std::string, unsigned>& widths,
                            size_t max_terms = kDefaultTermCeiling);

/*! \brief Linear polynomial over fresh placeholder variables realizing the
    spectrum: Σ_i Σ_j C_i p_i^j. Placeholders are numbered from `first_var`
    and named p1, p2, ... in the returned table. */
std::pair<Polynomial, std::map<VarId, std::string>> spectral_polynomial(const Spectrum& s,
                                                                        VarId first_var = 1);

struct Classification {
  enum class Kind { Adder, Multiplier2, Multiplier3, FusedMultiplyAdd, Composite, Unknown };
  Kind kind = Kind::Unknown;
  unsigned width = 0;     // operand bit width n, when applicable
  unsigned operands = 0;  // Adder: number of summands
  std::string description;
  Spectrum reference;     // matched reference; empty for Unknown

  bool is_known() const { return kind != Kind::Unknown; }
};

/*! \brief Matches the spectrum against adder / multiplier / fused templates
    across all widths consistent with the component lengths. */
Classification classify(const Spectrum& s);

}  // namespace spectral
