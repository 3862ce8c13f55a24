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
  \file rewriting.hpp
  \brief Backward rewriting (function extraction): the output signature is
  transformed into a polynomial over primary inputs by substituting each AND
  node's algebraic model in reverse topological order. A substituted variable
  never reappears, so the sweep terminates with Sig_in.

  rewrite_frontier starts instead from a weighted cut (typically the partial
  product boundary produced by adder-tree extraction) and only rewrites the
  logic below it.
*/

#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <vector>

#include "spectral/aig.hpp"
#include "spectral/netlist.hpp"
#include "spectral/polynomial.hpp"
#include "spectral/spectrum.hpp"

namespace spectral {

struct RewriteLimits {
  size_t max_terms = kDefaultTermCeiling;
  int64_t time_budget_ms = 600'000;
  // Nonzero: working coefficients are reduced modulo this (2^output-width).
  // Sound for fixed-width datapaths, where output values live in [0, 2^W);
  // it is what lets carries wrapping past the top output bit cancel.
  mpz_class modulus = 0;
};

/*! \brief Thrown when rewriting exceeds its time budget. */
class BudgetError : public Error {
public:
  using Error::Error;
};

struct TraceRecord {
  std::optional<uint32_t> eliminated;  // empty for the initial record
  Spectrum spectrum;
  size_t term_count = 0;
};

struct RewriteTrace {
  std::vector<TraceRecord> records;
};

void write_trace_jsonl(const RewriteTrace& t, const Aig& g, std::ostream& out);

/*! \brief Σ 2^i · z_i over the word's output bits (LSB first); a complemented
    output edge contributes 2^i · (1 - z_i). */
Polynomial output_signature(const Aig& g, const WordBinding& out_word);

/*! \brief Linear form over the current cut: per-node signed weight plus an
    accumulated constant. */
struct WeightedCut {
  std::map<uint32_t, mpz_class> weights;
  mpz_class constant = 0;
};

/*! \brief Rewrites `start` down to the primary inputs. Elimination order is
    strictly decreasing node id (a reverse topological order). */
Polynomial rewrite_to_pis(const Aig& g, const Polynomial& start, RewriteTrace* trace = nullptr,
                          const RewriteLimits& limits = {});

/*! \brief Sig_in from a weighted frontier: constant + Σ w_v · (v over PIs).
    Shallow frontier cones are expanded directly with memoization; anything
    deeper falls back to the global backward sweep. */
Polynomial rewrite_frontier(const Aig& g, const WeightedCut& cut,
                            const RewriteLimits& limits = {});

}  // namespace spectral
