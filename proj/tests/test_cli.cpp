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

#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spectral/cli.hpp"

using namespace spectral;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() / ("spectral_test_" + std::to_string(counter.fetch_add(1)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(std::initializer_list<std::string> args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::vector<const char*> argv{"spectral"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: gen then verify round trip with exit code contract") {
  TempDir tmp;
  std::string blif = tmp.file("mult4.blif");
  std::string manifest = tmp.file("mult4.json");
  CHECK(run({"gen", "--family", "csa_mult", "-n", "4", "-o", blif, "--manifest", manifest}) == 0);
  CHECK(slurp(manifest).find("\"family\":\"csa_mult\"") != std::string::npos);

  std::string out;
  CHECK(run({"verify", blif, "--spec", "F=A*B", "--json", tmp.file("v.json")}, &out) == 0);
  CHECK(out.find("Verified") != std::string::npos);
  CHECK(slurp(tmp.file("v.json")).find("\"status\": \"Verified\"") != std::string::npos);

  // wrong spec refutes with exit code 1
  CHECK(run({"verify", blif, "--spec", "F=A+B"}) == 1);
}

TEST_CASE("cli: buggy circuit is refuted") {
  TempDir tmp;
  std::string blif = tmp.file("bad.blif");
  CHECK(run({"gen", "--family", "csa_mult", "-n", "6", "--bugs", "1", "--seed", "5", "-o",
             blif}) == 0);
  int code = run({"verify", blif, "--spec", "F=A*B", "--term-ceiling", "100000",
                  "--time-budget", "3"});
  CHECK(code != 0);
}

TEST_CASE("cli: spectrum csv of a generated adder") {
  TempDir tmp;
  std::string blif = tmp.file("add4.blif");
  CHECK(run({"gen", "--family", "ripple_adder", "-n", "4", "-o", blif}) == 0);
  std::string out;
  CHECK(run({"spectrum", blif}, &out) == 0);
  CHECK(out == "k,coefficient,count\n1,1,2\n1,2,2\n1,4,2\n1,8,2\n");
}

TEST_CASE("cli: extract prints the booth product polynomial") {
  TempDir tmp;
  std::string blif = tmp.file("booth3.blif");
  CHECK(run({"gen", "--family", "booth_radix4_mult", "-n", "3", "-o", blif}) == 0);
  std::string out;
  CHECK(run({"extract", blif}, &out) == 0);
  CHECK(out == "1*a0*b0 + 2*a0*b1 + 2*a1*b0 + 4*a0*b2 + 4*a1*b1 + 4*a2*b0 + 8*a1*b2 + "
               "8*a2*b1 + 16*a2*b2\n");
}

TEST_CASE("cli: abstract classifies a mac") {
  TempDir tmp;
  std::string blif = tmp.file("mac4.blif");
  CHECK(run({"gen", "--family", "mac", "-n", "4", "-o", blif}) == 0);
  std::string out;
  CHECK(run({"abstract", blif, "--no-timings"}, &out) == 0);
  CHECK(out.find("1*mult;1*add") != std::string::npos);
}

TEST_CASE("cli: cross-check subcommand") {
  TempDir tmp;
  std::string blif = tmp.file("arr3.blif");
  CHECK(run({"gen", "--family", "array_mult", "-n", "3", "-o", blif}) == 0);
  CHECK(run({"cross-check", blif, "--spec", "F=A*B"}) == 0);
  CHECK(run({"cross-check", blif, "--spec", "F=A+B"}) == 1);
}

TEST_CASE("cli: deterministic artifacts across runs") {
  TempDir tmp;
  std::string b1 = tmp.file("g1.blif"), b2 = tmp.file("g2.blif");
  std::string a1 = tmp.file("g1.aig"), a2 = tmp.file("g2.aig");
  CHECK(run({"gen", "--family", "booth_radix4_mult", "-n", "5", "--seed", "3", "-o", b1,
             "--aiger", a1}) == 0);
  CHECK(run({"gen", "--family", "booth_radix4_mult", "-n", "5", "--seed", "3", "-o", b2,
             "--aiger", a2}) == 0);
  CHECK(slurp(b1) == slurp(b2));
  CHECK(slurp(a1) == slurp(a2));

  std::string v1, v2;
  CHECK(run({"verify", b1, "--spec", "F=A*B", "--no-timings", "--json", tmp.file("r1.json")},
            &v1) == 0);
  CHECK(run({"verify", b1, "--spec", "F=A*B", "--no-timings", "--json", tmp.file("r2.json")},
            &v2) == 0);
  CHECK(slurp(tmp.file("r1.json")) == slurp(tmp.file("r2.json")));
}

TEST_CASE("cli: usage and io errors") {
  std::string err;
  CHECK(run({"bogus-subcommand"}, nullptr, &err) == 64);
  CHECK(run({"verify", "/nonexistent/file.blif", "--spec", "F=A*B"}, nullptr, &err) == 74);
  CHECK(run({"verify"}, nullptr, &err) == 64);
}

TEST_CASE("cli: strashed netlist emission") {
  TempDir tmp;
  std::string blif = tmp.file("strash.blif");
  CHECK(run({"gen", "--family", "csa_mult", "-n", "3", "--strash", "-o", blif}) == 0);
  std::string text = slurp(blif);
  CHECK(text.find(".names") != std::string::npos);
  CHECK(run({"verify", blif, "--spec", "F=A*B"}) == 0);
}

TEST_CASE("cli: trace export") {
  TempDir tmp;
  std::string blif = tmp.file("csa3.blif");
  CHECK(run({"gen", "--family", "csa_mult", "-n", "3", "-o", blif}) == 0);
  std::string trace = tmp.file("trace.jsonl");
  // extract with --trace uses the full-rewrite path only on UAT; force it by
  // tracing through spectrum of a clean circuit (trace may be empty) and by
  // verifying a buggy one (fallback records the trace)
  std::string bad = tmp.file("bad.blif");
  CHECK(run({"gen", "--family", "csa_mult", "-n", "6", "--bugs", "1", "--seed", "11", "-o",
             bad}) == 0);
  int code = run({"verify", bad, "--spec", "F=A*B", "--trace", trace, "--term-ceiling",
                  "100000", "--time-budget", "3"});
  CHECK(code != 0);
  CHECK(fs::exists(trace));
}
