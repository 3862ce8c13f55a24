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

#include "spectral/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "spectral/aiger.hpp"
#include "spectral/blif.hpp"
#include "spectral/genbench.hpp"
#include "spectral/pipeline.hpp"

namespace spectral {

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

Netlist load_circuit(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  if (ext == ".blif") return read_blif_file(path);
  if (ext == ".aag" || ext == ".aig") return read_aiger_file(path);
  // sniff the header
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::string head(3, '\0');
  in.read(head.data(), 3);
  in.close();
  if (head == "aag" || head == "aig") return read_aiger_file(path);
  return read_blif_file(path);
}

SpecFile load_spec(const std::string& inline_text, const std::string& path) {
  if (!inline_text.empty()) return parse_spec(inline_text);
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
  }
  throw Error("no specification given (use --spec or --spec-file)");
}

// Word declarations recorded in the circuit file take precedence over the
// name-prefix convention.
void merge_circuit_words(SpecFile& spec, const Netlist& n) {
  std::set<std::string> declared;
  for (const WordBinding& w : spec.decls) declared.insert(w.name);
  for (const WordBinding& w : n.words)
    if (!declared.count(w.name)) spec.decls.push_back(w);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

struct CommonOpts {
  std::string spec_text, spec_file;
  size_t term_ceiling = kDefaultTermCeiling;
  int64_t time_budget_s = 600;
  bool no_timings = false;
  std::string trace_path;
  std::string json_path;
  std::string dot_path;

  PipelineOptions pipeline() const {
    PipelineOptions o;
    o.limits.max_terms = term_ceiling;
    o.limits.time_budget_ms = time_budget_s * 1000;
    o.want_trace = !trace_path.empty();
    return o;
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_spec) {
  if (with_spec) {
    cmd->add_option("--spec", o.spec_text, "inline specification, e.g. \"F = A*B\"");
    cmd->add_option("--spec-file", o.spec_file, "specification file");
  }
  cmd->add_option("--term-ceiling", o.term_ceiling, "monomial ceiling (default 10^7)");
  cmd->add_option("--time-budget", o.time_budget_s, "rewriting budget in seconds (default 600)");
  cmd->add_flag("--no-timings", o.no_timings, "omit timings from JSON (reproducible output)");
  cmd->add_option("--json", o.json_path, "write the JSON report here");
  cmd->add_option("--trace", o.trace_path, "write rewriting snapshots as JSON lines");
  cmd->add_option("--dot", o.dot_path, "write a DOT dump of the AIG");
}

int run_verify_one(const std::string& input, const CommonOpts& o, std::ostream& out) {
  Netlist n = load_circuit(input);
  SpecFile spec = load_spec(o.spec_text, o.spec_file);
  merge_circuit_words(spec, n);
  Aig g = from_netlist(n);
  PipelineOptions popts = o.pipeline();
  Verdict v = verify(g, spec, popts);
  std::string json = v.to_json(!o.no_timings);
  out << input << ": " << to_string(v.status) << " (" << v.path << ")\n";
  if (!o.json_path.empty()) write_file(o.json_path, json + "\n");
  else out << json << '\n';
  if (!o.trace_path.empty()) {
    std::ofstream t(o.trace_path);
    write_trace_jsonl(popts.trace, g, t);
  }
  if (!o.dot_path.empty()) {
    std::ofstream d(o.dot_path);
    write_dot(g, d);
  }
  return v.exit_code();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"spectral: arithmetic circuit verification via algebraic spectra"};
  app.require_subcommand(1);

  CommonOpts o;
  std::vector<std::string> inputs;
  unsigned jobs = 1;

  auto* verify_cmd = app.add_subcommand("verify", "check a circuit against a word-level spec");
  verify_cmd->add_option("inputs", inputs, "circuit files (BLIF or AIGER)")->required();
  verify_cmd->add_option("--jobs", jobs, "verify input files in parallel");
  add_common(verify_cmd, o, true);

  auto* abstract_cmd = app.add_subcommand("abstract", "extract the word-level function shape");
  abstract_cmd->add_option("input", inputs, "circuit file")->required();
  add_common(abstract_cmd, o, false);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "compute and export the spectrum");
  spectrum_cmd->add_option("input", inputs, "circuit file")->required();
  std::string csv_path, svg_prefix;
  spectrum_cmd->add_option("--csv", csv_path, "CSV output path (default stdout)");
  spectrum_cmd->add_option("--svg", svg_prefix, "write one SVG bar chart per component");
  add_common(spectrum_cmd, o, false);

  auto* extract_cmd = app.add_subcommand("extract", "print the canonical input signature");
  extract_cmd->add_option("input", inputs, "circuit file")->required();
  add_common(extract_cmd, o, false);

  auto* cross_cmd = app.add_subcommand("cross-check", "spectral path vs full rewriting vs spec");
  cross_cmd->add_option("input", inputs, "circuit file")->required();
  add_common(cross_cmd, o, true);

  auto* gen_cmd = app.add_subcommand("gen", "generate a benchmark circuit");
  std::string family_name = "csa_mult", out_path = "out.blif", aiger_path, manifest_path;
  unsigned width = 4, bugs = 0;
  uint64_t seed = 1;
  bool strash = false;
  gen_cmd->add_option("--family", family_name,
                      "csa_mult | array_mult | booth_radix4_mult | ripple_adder | mac | mult3 | "
                      "mult_plus_distrib");
  gen_cmd->add_option("-n,--width", width, "operand width in bits")->required();
  gen_cmd->add_option("--seed", seed, "bug-injection seed");
  gen_cmd->add_option("--bugs", bugs, "number of injected bugs");
  gen_cmd->add_option("-o,--output", out_path, "BLIF output path");
  gen_cmd->add_option("--aiger", aiger_path, "also emit AIGER binary here");
  gen_cmd->add_option("--manifest", manifest_path, "JSON manifest path");
  gen_cmd->add_flag("--strash", strash, "emit the structurally hashed AIG view as the netlist");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (verify_cmd->parsed()) {
      int worst = 0;
      if (jobs <= 1 || inputs.size() <= 1) {
        for (const std::string& input : inputs) worst = std::max(worst, run_verify_one(input, o, out));
      } else {
        std::vector<int> codes(inputs.size(), 0);
        std::vector<std::string> texts(inputs.size());
        std::vector<std::thread> workers;
        std::atomic<size_t> next{0};
        for (unsigned t = 0; t < std::min<size_t>(jobs, inputs.size()); ++t) {
          workers.emplace_back([&] {
            size_t i;
            while ((i = next.fetch_add(1)) < inputs.size()) {
              std::ostringstream local;
              try {
                codes[i] = run_verify_one(inputs[i], o, local);
              } catch (const Error& e) {
                local << inputs[i] << ": error: " << e.what() << '\n';
                codes[i] = kExitIo;
              }
              texts[i] = local.str();
            }
          });
        }
        for (auto& w : workers) w.join();
        for (size_t i = 0; i < inputs.size(); ++i) {
          out << texts[i];
          worst = std::max(worst, codes[i]);
        }
      }
      return worst;
    }

    if (abstract_cmd->parsed()) {
      Netlist n = load_circuit(inputs.at(0));
      Aig g = from_netlist(n);
      PipelineOptions popts = o.pipeline();
      AbstractionReport r = abstract_function(g, popts);
      std::string json = r.to_json(!o.no_timings);
      out << inputs[0] << ": " << r.classification.description << '\n';
      if (!o.json_path.empty()) write_file(o.json_path, json + "\n");
      else out << json << '\n';
      if (!o.trace_path.empty()) {
        std::ofstream t(o.trace_path);
        write_trace_jsonl(popts.trace, g, t);
      }
      return r.status == VerdictStatus::Blowup ? 2 : 0;
    }

    if (spectrum_cmd->parsed() || extract_cmd->parsed()) {
      Netlist n = load_circuit(inputs.at(0));
      Aig g = from_netlist(n);
      PipelineOptions popts = o.pipeline();
      WordBinding all_pos;
      all_pos.name = "F";
      for (const auto& [e, name] : g.pos()) all_pos.bits.push_back(name);
      Polynomial sig_in;
      try {
        const mpz_class modulus = mpz_class(1) << g.pos().size();
        CutSet cuts = enumerate_cuts(g);
        auto adders = detect_adders(g, cuts);
        WeightMap wm = propagate_weights(g, adders, signature_weights(g, all_pos), modulus);
        sig_in = reduce_coeffs_mod(rewrite_frontier(g, to_weighted_cut(wm), popts.limits), modulus);
      } catch (const UatError&) {
        RewriteLimits full_limits = popts.limits;
        full_limits.modulus = mpz_class(1) << g.pos().size();
        sig_in = rewrite_to_pis(g, output_signature(g, all_pos),
                                popts.want_trace ? &popts.trace : nullptr, full_limits);
      }
      if (extract_cmd->parsed()) {
        out << sig_in.to_string([&g](VarId v) { return g.node_name(v); }) << '\n';
      } else {
        Spectrum s = compute_spectrum(sig_in);
        if (!csv_path.empty()) {
          std::ofstream c(csv_path);
          s.to_csv(c);
        } else {
          s.to_csv(out);
        }
        if (!svg_prefix.empty()) {
          for (size_t k : s.sizes()) {
            std::ofstream f(svg_prefix + "_s" + std::to_string(k) + ".svg");
            s.to_svg(k, f);
          }
        }
      }
      if (!o.dot_path.empty()) {
        std::ofstream d(o.dot_path);
        write_dot(g, d);
      }
      return 0;
    }

    if (cross_cmd->parsed()) {
      Netlist n = load_circuit(inputs.at(0));
      SpecFile spec = load_spec(o.spec_text, o.spec_file);
      merge_circuit_words(spec, n);
      Aig g = from_netlist(n);
      PipelineOptions popts = o.pipeline();
      CrossCheckReport r = cross_check(g, spec, popts);
      out << inputs[0] << ": " << (r.agree ? "all paths agree" : r.details) << '\n';
      return r.agree ? 0 : 1;
    }

    if (gen_cmd->parsed()) {
      GenSpec gs;
      gs.family = family_from_string(family_name);
      gs.width = width;
      gs.seed = seed;
      gs.bugs = 0;
      Netlist n = generate(gs);
      std::vector<BugLocation> locations;
      if (bugs > 0) std::tie(n, locations) = inject_bugs(n, bugs, seed);
      if (strash) {
        std::vector<WordBinding> words = n.words;
        n = to_netlist(from_netlist(n));
        n.words = std::move(words);
      }
      write_file(out_path, to_blif(n));
      if (!aiger_path.empty()) write_file(aiger_path, to_aiger_binary(from_netlist(n)));
      if (!manifest_path.empty()) {
        std::ostringstream m;
        m << "{\"schema\":1,\"family\":\"" << family_name << "\",\"width\":" << width
          << ",\"seed\":" << seed << ",\"bugs\":[";
        for (size_t i = 0; i < locations.size(); ++i) {
          if (i) m << ',';
          m << "{\"gate\":\"" << locations[i].gate << "\",\"mutation\":\""
            << locations[i].mutation << "\"}";
        }
        m << "],\"spec\":\"" << default_spec_text(gs.family) << "\"}\n";
        write_file(manifest_path, m.str());
      }
      out << "wrote " << out_path << '\n';
      return 0;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace spectral
