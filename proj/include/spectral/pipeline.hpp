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
  \file pipeline.hpp
  \brief End-to-end flows.

  Verification first tries the spectral path (adder-tree extraction, weight
  propagation, local rewriting of the frontier); an unstructured tree falls
  back to full backward rewriting. A spectrum mismatch is a disproof on its
  own, but Verified always requires the exact Sig_in comparison against the
  expanded specification polynomial.
*/

#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>

#include "spectral/adder_tree.hpp"
#include "spectral/aig.hpp"
#include "spectral/rewriting.hpp"
#include "spectral/speclang.hpp"
#include "spectral/spectrum.hpp"

namespace spectral {

enum class VerdictStatus {
  Verified,
  SpectrumMismatch,
  SignatureMismatch,
  UnstructuredAdderTree,
  Blowup
};

const char* to_string(VerdictStatus s);

/*! \brief How far the spectral path got before the final comparison. */
enum class SpectralOutcome {
  Completed,            // frontier extracted and rewritten
  UnstructuredTree,     // weight sweep failed (UAT)
  FrontierMismatch,     // frontier spectrum already refutes the spec shape
  Blowup,
  Skipped
};

const char* to_string(SpectralOutcome s);

struct Counterexample {
  std::map<std::string, mpz_class> word_values;  // input words
  mpz_class circuit_value;
  mpz_class spec_value;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Blowup;
  SpectralOutcome spectral = SpectralOutcome::Skipped;
  std::string path;     // "spectral" or "full-rewrite"
  std::string details;
  Spectrum spectrum;    // spectrum of the extracted Sig_in when available
  std::optional<Counterexample> counterexample;
  std::map<std::string, int64_t> timings_ms;

  int exit_code() const;
  std::string to_json(bool with_timings = true) const;
};

struct PipelineOptions {
  RewriteLimits limits;
  bool fallback = true;        // fall back to full rewriting on UAT
  bool want_trace = false;
  RewriteTrace trace;          // filled when want_trace is set
};

/*! \brief Binds the spec's words against the circuit: explicit declarations
    are checked; undeclared words are resolved by the x0,x1,... convention. */
struct ResolvedWords {
  WordBinding output;                              // PO word
  std::map<std::string, std::vector<VarId>> input_vars;  // word -> PI node ids, LSB first
};

ResolvedWords resolve_words(const Aig& g, const SpecFile& spec);

Verdict verify(const Aig& g, const SpecFile& spec, PipelineOptions& opts);
Verdict verify(const Aig& g, const SpecFile& spec);

struct AbstractionReport {
  VerdictStatus status = VerdictStatus::Verified;  // Verified = extraction succeeded
  std::string path;
  Spectrum spectrum;
  Classification classification;
  std::map<std::string, std::string> operand_composition;  // placeholder -> PI expression
  std::map<std::string, int64_t> timings_ms;

  std::string to_json(bool with_timings = true) const;
};

AbstractionReport abstract_function(const Aig& g, PipelineOptions& opts);
AbstractionReport abstract_function(const Aig& g);

struct CrossCheckReport {
  bool agree = false;
  std::string details;
  Polynomial spectral_sig_in;
  Polynomial full_sig_in;
  Polynomial spec_poly;
};

/*! \brief Regression oracle: spectral-path Sig_in, full-rewrite Sig_in and
    the expanded spec must coincide, and simulation must agree with the
    spec's integer arithmetic (exhaustive up to 2^20 patterns). */
CrossCheckReport cross_check(const Aig& g, const SpecFile& spec, PipelineOptions& opts);
CrossCheckReport cross_check(const Aig& g, const SpecFile& spec);

}  // namespace spectral
