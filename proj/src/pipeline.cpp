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

#include "spectral/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>

namespace spectral {

namespace {

using Clock = std::chrono::steady_clock;

int64_t ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

struct PhaseTimer {
  std::map<std::string, int64_t>& sink;
  std::string key;
  Clock::time_point t0 = Clock::now();
  PhaseTimer(std::map<std::string, int64_t>& s, std::string k) : sink(s), key(std::move(k)) {}
  ~PhaseTimer() { sink[key] += ms_since(t0); }
};

nlohmann::json spectrum_json(const Spectrum& s) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, comp] : s.components()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : comp) arr.push_back({e.count, e.coeff.get_str()});
    j[std::to_string(k)] = std::move(arr);
  }
  return j;
}

}  // namespace

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Verified: return "Verified";
    case VerdictStatus::SpectrumMismatch: return "SpectrumMismatch";
    case VerdictStatus::SignatureMismatch: return "SignatureMismatch";
    case VerdictStatus::UnstructuredAdderTree: return "UnstructuredAdderTree";
    case VerdictStatus::Blowup: return "Blowup";
  }
  return "?";
}

const char* to_string(SpectralOutcome s) {
  switch (s) {
    case SpectralOutcome::Completed: return "completed";
    case SpectralOutcome::UnstructuredTree: return "unstructured-tree";
    case SpectralOutcome::FrontierMismatch: return "frontier-mismatch";
    case SpectralOutcome::Blowup: return "blowup";
    case SpectralOutcome::Skipped: return "skipped";
  }
  return "?";
}

int Verdict::exit_code() const {
  switch (status) {
    case VerdictStatus::Verified: return 0;
    case VerdictStatus::SpectrumMismatch:
    case VerdictStatus::SignatureMismatch: return 1;
    case VerdictStatus::UnstructuredAdderTree:
    case VerdictStatus::Blowup: return 2;
  }
  return 2;
}

std::string Verdict::to_json(bool with_timings) const {
  nlohmann::json j;
  j["schema"] = 1;
  j["status"] = to_string(status);
  j["spectral_outcome"] = to_string(spectral);
  j["path"] = path;
  if (!details.empty()) j["details"] = details;
  j["spectrum"] = spectrum_json(spectrum);
  if (counterexample) {
    nlohmann::json cx;
    for (const auto& [w, v] : counterexample->word_values)
      cx["inputs"][w] = "0x" + v.get_str(16);
    cx["circuit"] = "0x" + counterexample->circuit_value.get_str(16);
    cx["spec"] = "0x" + counterexample->spec_value.get_str(16);
    j["counterexample"] = std::move(cx);
  }
  if (with_timings) j["timings_ms"] = timings_ms;
  return j.dump(2);
}

std::string AbstractionReport::to_json(bool with_timings) const {
  nlohmann::json j;
  j["schema"] = 1;
  j["status"] = to_string(status);
  j["path"] = path;
  j["spectrum"] = spectrum_json(spectrum);
  j["classification"] = classification.description;
  j["operands"] = classification.operands;
  j["width"] = classification.width;
  if (!operand_composition.empty()) j["operand_composition"] = operand_composition;
  if (with_timings) j["timings_ms"] = timings_ms;
  return j.dump(2);
}

ResolvedWords resolve_words(const Aig& g, const SpecFile& spec) {
  ResolvedWords rw;
  std::map<std::string, WordBinding> decls;
  for (const WordBinding& w : spec.decls) decls[w.name] = w;

  auto infer_bits = [&](const std::string& word, bool as_output) -> std::vector<std::string> {
    std::string prefix = word;
    std::transform(prefix.begin(), prefix.end(), prefix.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    for (const std::string& pfx : {prefix, word}) {
      std::vector<std::string> bits;
      for (unsigned i = 0;; ++i) {
        std::string nm = pfx + std::to_string(i);
        bool found = as_output ? g.po_by_name(nm) != static_cast<size_t>(-1)
                               : g.pi_by_name(nm) != 0;
        if (!found) break;
        bits.push_back(nm);
      }
      if (!bits.empty()) return bits;
    }
    throw Error("unknown word '" + word + "': no declaration and no matching " +
                (as_output ? "outputs" : "inputs") + " named " + prefix + "0, " + prefix +
                "1, ...");
  };

  // output word
  {
    auto it = decls.find(spec.output_word);
    rw.output.name = spec.output_word;
    rw.output.bits =
        it != decls.end() ? it->second.bits : infer_bits(spec.output_word, /*as_output=*/true);
    for (const std::string& b : rw.output.bits)
      if (g.po_by_name(b) == static_cast<size_t>(-1))
        throw Error("output word bit '" + b + "' is not a primary output");
  }

  std::set<std::string> used_bits(rw.output.bits.begin(), rw.output.bits.end());
  for (const std::string& word : spec.expr.words()) {
    auto it = decls.find(word);
    std::vector<std::string> bits =
        it != decls.end() ? it->second.bits : infer_bits(word, /*as_output=*/false);
    std::vector<VarId>& vars = rw.input_vars[word];
    for (const std::string& b : bits) {
      uint32_t pi = g.pi_by_name(b);
      if (pi == 0) throw Error("input word bit '" + b + "' is not a primary input");
      if (!used_bits.insert(b).second) throw Error("bit '" + b + "' appears in two words");
      vars.push_back(pi);
    }
  }
  return rw;
}

namespace {

// A frontier whose nodes are all primary inputs or plain ANDs of two primary
// inputs already determines Sig_in up to variable renaming, so its spectrum
// is the final spectrum. Returns the spectrum and the input signature, or
// nothing when the frontier is not that simple.
std::optional<std::pair<Spectrum, Polynomial>> simple_frontier_signature(const Aig& g,
                                                                         const WeightMap& wm) {
  if (wm.constant != 0) return std::nullopt;
  Spectrum s;
  Polynomial sig_in;
  for (const auto& [node, w] : wm.weights) {
    if (g.is_pi(node)) {
      s.add(1, w);
      sig_in.add_term(Monomial(node), w);
      continue;
    }
    if (!g.is_and(node)) return std::nullopt;
    AigEdge e0 = g.fanin0(node), e1 = g.fanin1(node);
    if (e0.complemented() || e1.complemented()) return std::nullopt;
    if (!g.is_pi(e0.node()) || !g.is_pi(e1.node())) return std::nullopt;
    s.add(2, w);
    sig_in.add_term(Monomial({e0.node(), e1.node()}), w);
  }
  return std::make_pair(std::move(s), std::move(sig_in));
}

Counterexample make_counterexample(const Aig& g, const ResolvedWords& rw,
                                   const SpecFile& spec, const Polynomial& sig_in,
                                   const Polynomial& spec_poly) {
  Polynomial diff = sub(sig_in, spec_poly);
  if (diff.is_zero()) throw Error("no counterexample: polynomials are equal");
  // A minimal-degree monomial is subset-minimal: setting exactly its
  // variables to one makes the difference evaluate to its coefficient.
  const Monomial* best = nullptr;
  for (const auto& [m, c] : diff.terms())
    if (!best || m.degree() < best->degree()) best = &m;

  std::set<VarId> ones(best->vars().begin(), best->vars().end());

  Counterexample cx;
  std::vector<std::vector<uint64_t>> patterns(g.pis().size(), std::vector<uint64_t>(1, 0));
  for (size_t i = 0; i < g.pis().size(); ++i)
    if (ones.count(g.pis()[i])) patterns[i][0] = 1;

  for (const auto& [word, vars] : rw.input_vars) {
    mpz_class v = 0;
    for (size_t i = 0; i < vars.size(); ++i)
      if (ones.count(vars[i])) v |= mpz_class(1) << i;
    cx.word_values[word] = v;
  }
  auto po_vals = g.simulate(patterns);
  mpz_class f = 0;
  for (size_t i = 0; i < rw.output.bits.size(); ++i) {
    size_t idx = g.po_by_name(rw.output.bits[i]);
    if (po_vals[idx][0] & 1) f |= mpz_class(1) << i;
  }
  cx.circuit_value = f;
  cx.spec_value = evaluate_spec(spec.expr, cx.word_values);
  return cx;
}

// Compares Sig_in against the spec polynomial, filling in the verdict tail.
void finish_verdict(Verdict& v, const Aig& g, const ResolvedWords& rw, const SpecFile& spec,
                    const Polynomial& sig_in, const Polynomial& spec_poly,
                    const Spectrum& ref_spec) {
  v.spectrum = compute_spectrum(sig_in);
  if (!(v.spectrum == ref_spec)) {
    v.status = VerdictStatus::SpectrumMismatch;
    v.details = "computed spectrum " + v.spectrum.to_string() + " != reference " +
                ref_spec.to_string();
    v.counterexample = make_counterexample(g, rw, spec, sig_in, spec_poly);
    return;
  }
  if (sig_in == spec_poly) {
    v.status = VerdictStatus::Verified;
    return;
  }
  v.status = VerdictStatus::SignatureMismatch;
  v.details = "spectra match but the input signatures differ (operand composition)";
  v.counterexample = make_counterexample(g, rw, spec, sig_in, spec_poly);
}

}  // namespace

Verdict verify(const Aig& g, const SpecFile& spec, PipelineOptions& opts) {
  Clock::time_point t_total = Clock::now();
  Verdict v;
  v.path = "spectral";

  ResolvedWords rw = resolve_words(g, spec);
  Polynomial spec_poly;
  Spectrum ref_spec;
  try {
    PhaseTimer t(v.timings_ms, "expand_spec");
    spec_poly = expand_spec(spec.expr, rw.input_vars, opts.limits.max_terms);
    ref_spec = compute_spectrum(spec_poly);
  } catch (const TermLimitError&) {
    v.status = VerdictStatus::Blowup;
    v.details = "specification expansion exceeded the term ceiling";
    v.timings_ms["total"] = ms_since(t_total);
    return v;
  }

  const mpz_class modulus = mpz_class(1) << rw.output.bits.size();
  bool need_fallback = false;
  try {
    WeightMap wm;
    {
      PhaseTimer t(v.timings_ms, "extract");
      CutSet cuts = enumerate_cuts(g);
      std::vector<AdderInstance> adders = detect_adders(g, cuts);
      wm = propagate_weights(g, adders, signature_weights(g, rw.output), modulus);
    }
    if (auto fs = simple_frontier_signature(g, wm)) {
      if (!(fs->first == ref_spec)) {
        v.spectral = SpectralOutcome::FrontierMismatch;
        v.status = VerdictStatus::SpectrumMismatch;
        v.spectrum = fs->first;
        v.details = "frontier spectrum " + fs->first.to_string() +
                    " violates the reference spectrum " + ref_spec.to_string();
        v.counterexample = make_counterexample(g, rw, spec, fs->second, spec_poly);
        v.timings_ms["total"] = ms_since(t_total);
        return v;
      }
    }
    Polynomial sig_in;
    {
      PhaseTimer t(v.timings_ms, "rewrite");
      sig_in = reduce_coeffs_mod(rewrite_frontier(g, to_weighted_cut(wm), opts.limits), modulus);
    }
    v.spectral = SpectralOutcome::Completed;
    PhaseTimer t(v.timings_ms, "compare");
    finish_verdict(v, g, rw, spec, sig_in, spec_poly, ref_spec);
  } catch (const UatError& e) {
    v.spectral = SpectralOutcome::UnstructuredTree;
    v.details = e.what();
    need_fallback = true;
  } catch (const TermLimitError& e) {
    v.spectral = SpectralOutcome::Blowup;
    v.details = e.what();
    need_fallback = true;
  } catch (const BudgetError& e) {
    v.spectral = SpectralOutcome::Blowup;
    v.details = e.what();
    need_fallback = true;
  }

  if (need_fallback) {
    if (!opts.fallback) {
      v.status = v.spectral == SpectralOutcome::Blowup ? VerdictStatus::Blowup
                                                       : VerdictStatus::UnstructuredAdderTree;
      v.timings_ms["total"] = ms_since(t_total);
      return v;
    }
    v.path = "full-rewrite";
    try {
      Polynomial sig_in;
      {
        PhaseTimer t(v.timings_ms, "full_rewrite");
        RewriteLimits full_limits = opts.limits;
        full_limits.modulus = modulus;
        Polynomial sig_out = output_signature(g, rw.output);
        sig_in = rewrite_to_pis(g, sig_out, opts.want_trace ? &opts.trace : nullptr, full_limits);
      }
      std::string spectral_details = v.details;
      PhaseTimer t(v.timings_ms, "compare");
      finish_verdict(v, g, rw, spec, sig_in, spec_poly, ref_spec);
      if (!spectral_details.empty())
        v.details = "spectral path failed (" + spectral_details + "); " +
                    (v.details.empty() ? "full rewriting completed" : v.details);
    } catch (const TermLimitError& e) {
      v.status = VerdictStatus::Blowup;
      v.details = v.details + "; full rewriting also blew up: " + e.what();
    } catch (const BudgetError& e) {
      v.status = VerdictStatus::Blowup;
      v.details = v.details + "; full rewriting exceeded the time budget";
      (void)e;
    }
  }
  v.timings_ms["total"] = ms_since(t_total);
  return v;
}

Verdict verify(const Aig& g, const SpecFile& spec) {
  PipelineOptions opts;
  return verify(g, spec, opts);
}

namespace {

// Placeholder composition table: frontier variables ordered like the
// spectral polynomial (by coefficient, then node id), each expanded over the
// primary inputs when its cone is shallow.
std::map<std::string, std::string> operand_table(const Aig& g, const WeightMap& wm,
                                                 const RewriteLimits& limits) {
  std::map<std::string, std::string> table;
  std::vector<std::pair<mpz_class, uint32_t>> order;
  for (const auto& [node, w] : wm.weights) order.emplace_back(w, node);
  std::sort(order.begin(), order.end());
  unsigned idx = 1;
  auto namer = [&g](VarId v) { return g.node_name(v); };
  for (const auto& [w, node] : order) {
    if (g.is_and(node) && g.cone(node, {}, 64).size() > 64) return {};
    WeightedCut one;
    one.weights[node] = 1;
    Polynomial p = rewrite_frontier(g, one, limits);
    table["p" + std::to_string(idx++)] = p.to_string(namer);
  }
  return table;
}

}  // namespace

AbstractionReport abstract_function(const Aig& g, PipelineOptions& opts) {
  Clock::time_point t_total = Clock::now();
  AbstractionReport r;
  r.path = "spectral";

  bool need_fallback = false;
  try {
    const mpz_class modulus = mpz_class(1) << g.pos().size();
    WeightMap wm;
    {
      PhaseTimer t(r.timings_ms, "extract");
      CutSet cuts = enumerate_cuts(g);
      std::vector<AdderInstance> adders = detect_adders(g, cuts);
      WordBinding all_pos;
      all_pos.name = "F";
      for (const auto& [e, name] : g.pos()) all_pos.bits.push_back(name);
      wm = propagate_weights(g, adders, signature_weights(g, all_pos), modulus);
    }
    Polynomial sig_in;
    {
      PhaseTimer t(r.timings_ms, "rewrite");
      sig_in = reduce_coeffs_mod(rewrite_frontier(g, to_weighted_cut(wm), opts.limits), modulus);
    }
    r.spectrum = compute_spectrum(sig_in);
    r.classification = classify(r.spectrum);
    r.operand_composition = operand_table(g, wm, opts.limits);
    r.status = VerdictStatus::Verified;
  } catch (const UatError&) {
    need_fallback = true;
  } catch (const TermLimitError&) {
    r.status = VerdictStatus::Blowup;
    r.path = "spectral";
  } catch (const BudgetError&) {
    r.status = VerdictStatus::Blowup;
    r.path = "spectral";
  }

  if (need_fallback) {
    r.path = "full-rewrite";
    try {
      WordBinding all_pos;
      all_pos.name = "F";
      for (const auto& [e, name] : g.pos()) all_pos.bits.push_back(name);
      PhaseTimer t(r.timings_ms, "full_rewrite");
      RewriteLimits full_limits = opts.limits;
      full_limits.modulus = mpz_class(1) << g.pos().size();
      Polynomial sig_in = rewrite_to_pis(g, output_signature(g, all_pos),
                                         opts.want_trace ? &opts.trace : nullptr, full_limits);
      r.spectrum = compute_spectrum(sig_in);
      r.classification = classify(r.spectrum);
      r.status = VerdictStatus::Verified;
    } catch (const TermLimitError&) {
      r.status = VerdictStatus::Blowup;
    } catch (const BudgetError&) {
      r.status = VerdictStatus::Blowup;
    }
  }
  r.timings_ms["total"] = ms_since(t_total);
  return r;
}

AbstractionReport abstract_function(const Aig& g) {
  PipelineOptions opts;
  return abstract_function(g, opts);
}

namespace {

bool simulate_against_spec(const Aig& g, const ResolvedWords& rw, const SpecFile& spec,
                           std::string& details) {
  const unsigned pis = static_cast<unsigned>(g.pis().size());
  const bool exhaustive = pis <= 20;
  const size_t total_patterns = exhaustive ? (size_t(1) << pis) : (size_t(1) << 20);
  const size_t block_words = 1024;

  std::vector<size_t> po_idx;
  for (const std::string& b : rw.output.bits) po_idx.push_back(g.po_by_name(b));
  std::vector<std::pair<std::string, std::vector<size_t>>> word_pis;
  for (const auto& [word, vars] : rw.input_vars) {
    std::vector<size_t> idx;
    for (VarId v : vars) {
      size_t k = 0;
      while (g.pis()[k] != v) ++k;
      idx.push_back(k);
    }
    word_pis.emplace_back(word, idx);
  }

  uint64_t rng_state = 0x9e3779b97f4a7c15ull;
  auto next_rand = [&rng_state]() {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 7;
    rng_state ^= rng_state << 17;
    return rng_state;
  };

  size_t done = 0;
  while (done < total_patterns) {
    size_t count = std::min(total_patterns - done, block_words * 64);
    size_t words = (count + 63) / 64;
    std::vector<std::vector<uint64_t>> patterns(pis, std::vector<uint64_t>(words, 0));
    for (unsigned i = 0; i < pis; ++i) {
      for (size_t p = 0; p < count; ++p) {
        uint64_t bit = exhaustive ? ((done + p) >> i) & 1 : (next_rand() & 1);
        if (bit) patterns[i][p / 64] |= uint64_t(1) << (p % 64);
      }
    }
    auto po_vals = g.simulate(patterns);
    std::map<std::string, mpz_class> wv;
    for (size_t p = 0; p < count; ++p) {
      for (const auto& [word, idx] : word_pis) {
        mpz_class v = 0;
        for (size_t i = 0; i < idx.size(); ++i)
          if ((patterns[idx[i]][p / 64] >> (p % 64)) & 1) v |= mpz_class(1) << i;
        wv[word] = v;
      }
      mpz_class f = 0;
      for (size_t i = 0; i < po_idx.size(); ++i)
        if ((po_vals[po_idx[i]][p / 64] >> (p % 64)) & 1) f |= mpz_class(1) << i;
      mpz_class expect = evaluate_spec(spec.expr, wv);
      if (f != expect) {
        details = "simulation mismatch: circuit=0x" + f.get_str(16) + " spec=0x" +
                  expect.get_str(16);
        return false;
      }
    }
    done += count;
  }
  return true;
}

}  // namespace

CrossCheckReport cross_check(const Aig& g, const SpecFile& spec, PipelineOptions& opts) {
  CrossCheckReport r;
  ResolvedWords rw = resolve_words(g, spec);
  r.spec_poly = expand_spec(spec.expr, rw.input_vars, opts.limits.max_terms);

  try {
    const mpz_class modulus = mpz_class(1) << rw.output.bits.size();
    CutSet cuts = enumerate_cuts(g);
    std::vector<AdderInstance> adders = detect_adders(g, cuts);
    WeightMap wm = propagate_weights(g, adders, signature_weights(g, rw.output), modulus);
    r.spectral_sig_in =
        reduce_coeffs_mod(rewrite_frontier(g, to_weighted_cut(wm), opts.limits), modulus);
  } catch (const UatError& e) {
    r.agree = false;
    r.details = std::string("spectral path failed: ") + e.what();
    return r;
  }
  {
    RewriteLimits full_limits = opts.limits;
    full_limits.modulus = mpz_class(1) << rw.output.bits.size();
    r.full_sig_in = rewrite_to_pis(g, output_signature(g, rw.output), nullptr, full_limits);
  }

  if (!(r.spectral_sig_in == r.full_sig_in)) {
    r.agree = false;
    r.details = "spectral-path and full-rewrite signatures disagree";
    return r;
  }
  if (!(r.full_sig_in == r.spec_poly)) {
    r.agree = false;
    Counterexample cx = make_counterexample(g, rw, spec, r.full_sig_in, r.spec_poly);
    r.details = "signature differs from the specification; witness: circuit=0x" +
                cx.circuit_value.get_str(16) + " spec=0x" + cx.spec_value.get_str(16);
    return r;
  }
  std::string sim_details;
  if (!simulate_against_spec(g, rw, spec, sim_details)) {
    r.agree = false;
    r.details = sim_details;
    return r;
  }
  r.agree = true;
  return r;
}

CrossCheckReport cross_check(const Aig& g, const SpecFile& spec) {
  PipelineOptions opts;
  return cross_check(g, spec, opts);
}

}  // namespace spectral
