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

#include "spectral/spectrum.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace spectral {

const Spectrum::Component& Spectrum::component(size_t k) const {
  static const Component empty;
  auto it = comps_.find(k);
  return it == comps_.end() ? empty : it->second;
}

std::vector<size_t> Spectrum::sizes() const {
  std::vector<size_t> v;
  for (const auto& [k, c] : comps_) v.push_back(k);
  return v;
}

void Spectrum::add(size_t k, const mpz_class& coeff, uint64_t count) {
  if (count == 0) return;
  accum_[k][coeff] += count;
  rebuild(k);
}

void Spectrum::rebuild(size_t k) {
  Component c;
  for (const auto& [coeff, n] : accum_[k]) c.push_back(SpectrumEntry{n, coeff});
  comps_[k] = std::move(c);
}

uint64_t Spectrum::total_monomials() const {
  uint64_t total = 0;
  for (const auto& [k, comp] : comps_)
    for (const auto& e : comp) total += e.count;
  return total;
}

Spectrum Spectrum::merged() const {
  Spectrum m;
  for (const auto& [k, comp] : comps_)
    for (const auto& e : comp) m.add(0, e.coeff, e.count);
  return m;
}

std::string Spectrum::to_string() const {
  std::ostringstream ss;
  bool first_comp = true;
  for (const auto& [k, comp] : comps_) {
    if (!first_comp) ss << "; ";
    first_comp = false;
    ss << "S" << k << " = {";
    for (size_t i = 0; i < comp.size(); ++i) {
      if (i) ss << ", ";
      ss << '(' << comp[i].count << ',' << comp[i].coeff.get_str() << ')';
    }
    ss << '}';
  }
  return comps_.empty() ? "{}" : ss.str();
}

void Spectrum::to_csv(std::ostream& out) const {
  out << "k,coefficient,count\n";
  for (const auto& [k, comp] : comps_)
    for (const auto& e : comp) out << k << ',' << e.coeff.get_str() << ',' << e.count << '\n';
}

void Spectrum::to_svg(size_t k, std::ostream& out) const {
  const Component& comp = component(k);
  const int bar_w = 22, gap = 8, h = 200, margin = 30;
  uint64_t max_n = 1;
  for (const auto& e : comp) max_n = std::max(max_n, e.count);
  int width = margin * 2 + static_cast<int>(comp.size()) * (bar_w + gap);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << (h + 2 * margin + 20) << "\">\n";
  out << "  <text x=\"" << margin << "\" y=\"18\" font-size=\"13\">S" << k
      << " spectrum (count by coefficient)</text>\n";
  int x = margin;
  for (const auto& e : comp) {
    int bh = static_cast<int>(static_cast<double>(e.count) / static_cast<double>(max_n) * h);
    int y = margin + (h - bh);
    out << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w << "\" height=\"" << bh
        << "\" fill=\"#4878a8\"/>\n";
    out << "  <text x=\"" << x << "\" y=\"" << (margin + h + 14)
        << "\" font-size=\"9\" transform=\"rotate(45 " << x << ',' << (margin + h + 14) << ")\">"
        << e.coeff.get_str() << "</text>\n";
    out << "  <text x=\"" << x + 2 << "\" y=\"" << (y - 3) << "\" font-size=\"10\">" << e.count
        << "</text>\n";
    x += bar_w + gap;
  }
  out << "</svg>\n";
}

Spectrum compute_spectrum(const Polynomial& p) {
  Spectrum s;
  for (const auto& [m, c] : p.terms()) s.add(m.degree(), c);
  return s;
}

std::vector<uint64_t> mult_spectrum_formula(unsigned n) {
  if (n == 0) throw Error("mult_spectrum_formula: width must be at least 1");
  std::vector<uint64_t> v(2 * n - 1);
  for (unsigned i = 0; i < 2 * n - 1; ++i) v[i] = (i <= n - 1) ? i + 1 : 2 * n - 1 - i;
  return v;
}

Spectrum reference_spectrum(const SpecExpr& e, const std::map<std::string, unsigned>& widths,
                            size_t max_terms) {
  std::map<std::string, std::vector<VarId>> bits;
  VarId next = 1;
  for (const std::string& w : e.words()) {
    auto it = widths.find(w);
    if (it == widths.end()) throw Error("reference_spectrum: no width for word '" + w + "'");
    std::vector<VarId>& v = bits[w];
    for (unsigned i = 0; i < it->second; ++i) v.push_back(next++);
  }
  return compute_spectrum(expand_spec(e, bits, max_terms));
}

std::pair<Polynomial, std::map<VarId, std::string>> spectral_polynomial(const Spectrum& s,
                                                                        VarId first_var) {
  Polynomial p;
  std::map<VarId, std::string> table;
  VarId v = first_var;
  unsigned placeholder = 1;
  for (const auto& [k, comp] : s.components()) {
    for (const auto& e : comp) {
      for (uint64_t j = 0; j < e.count; ++j) {
        p.add_term(Monomial(v), e.coeff);
        table[v] = "p" + std::to_string(placeholder);
        ++v;
        ++placeholder;
      }
    }
  }
  return {std::move(p), std::move(table)};
}

namespace {

bool is_power_ladder(const Spectrum::Component& comp) {
  mpz_class w = 1;
  for (const auto& e : comp) {
    if (e.coeff != w) return false;
    w <<= 1;
  }
  return true;
}

std::vector<uint64_t> counts(const Spectrum::Component& comp) {
  std::vector<uint64_t> v;
  for (const auto& e : comp) v.push_back(e.count);
  return v;
}

// N_i of an n-bit three-operand multiplier: #{(a,b,c) in [0,n)^3 : a+b+c = i}.
std::vector<uint64_t> mult3_counts(unsigned n) {
  std::vector<uint64_t> v(3 * n - 2, 0);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b)
      for (unsigned c = 0; c < n; ++c) ++v[a + b + c];
  return v;
}

Spectrum template_spectrum(const std::string& shape, unsigned n, unsigned m = 0) {
  SpecFile f = parse_spec("F = " + shape);
  std::map<std::string, unsigned> widths;
  for (const std::string& w : f.expr.words()) widths[w] = n;
  if (m != 0) widths["C"] = m;
  return reference_spectrum(f.expr, widths);
}

}  // namespace

Classification classify(const Spectrum& s) {
  Classification r;
  std::vector<size_t> ks;
  for (const auto& [k, comp] : s.components())
    if (!comp.empty()) ks.push_back(k);

  if (ks == std::vector<size_t>{1}) {
    const auto& c1 = s.component(1);
    if (is_power_ladder(c1) && !c1.empty()) {
      uint64_t m = c1.front().count;
      bool constant = std::all_of(c1.begin(), c1.end(),
                                  [&](const SpectrumEntry& e) { return e.count == m; });
      if (constant && m >= 2) {
        r.kind = Classification::Kind::Adder;
        r.operands = static_cast<unsigned>(m);
        r.width = static_cast<unsigned>(c1.size());
        r.description = std::to_string(m) + "-operand " + std::to_string(r.width) + "-bit adder (" +
                        std::to_string(m) + "*add)";
        r.reference = template_spectrum("A + B", r.width);
        if (m != 2) {
          // rebuild the reference for m operands
          Spectrum ref;
          mpz_class w = 1;
          for (unsigned i = 0; i < r.width; ++i, w <<= 1) ref.add(1, w, m);
          r.reference = ref;
        }
        if (r.reference == s) return r;
        r = {};
      }
    }
  }
  if (ks == std::vector<size_t>{2}) {
    const auto& c2 = s.component(2);
    if (is_power_ladder(c2) && c2.size() % 2 == 1) {
      unsigned n = static_cast<unsigned>((c2.size() + 1) / 2);
      auto cnt = counts(c2);
      auto tri = mult_spectrum_formula(n);
      if (cnt == tri) {
        r.kind = Classification::Kind::Multiplier2;
        r.width = n;
        r.description = std::to_string(n) + "-bit multiplier (1*mult)";
        r.reference = template_spectrum("A * B", n);
        if (r.reference == s) return r;
        r = {};
      }
      std::vector<uint64_t> doubled = tri;
      for (auto& x : doubled) x *= 2;
      if (cnt == doubled) {
        r.kind = Classification::Kind::Composite;
        r.width = n;
        r.description = std::to_string(n) + "-bit sum of two equal-width products (2*mult)";
        r.reference = template_spectrum("A*B + A*C", n);
        if (r.reference == s) return r;
        r = {};
      }
    }
  }
  if (ks == std::vector<size_t>{3}) {
    const auto& c3 = s.component(3);
    if (is_power_ladder(c3) && c3.size() % 3 == 1) {
      unsigned n = static_cast<unsigned>((c3.size() + 2) / 3);
      if (counts(c3) == mult3_counts(n)) {
        r.kind = Classification::Kind::Multiplier3;
        r.width = n;
        r.description = std::to_string(n) + "-bit three-operand multiplier (1*mult3)";
        r.reference = template_spectrum("A * B * C", n);
        if (r.reference == s) return r;
        r = {};
      }
    }
  }
  if (ks == std::vector<size_t>{1, 2}) {
    const auto& c1 = s.component(1);
    const auto& c2 = s.component(2);
    bool addend_ok = is_power_ladder(c1) &&
                     std::all_of(c1.begin(), c1.end(),
                                 [](const SpectrumEntry& e) { return e.count == 1; });
    if (addend_ok && is_power_ladder(c2) && c2.size() % 2 == 1) {
      unsigned n = static_cast<unsigned>((c2.size() + 1) / 2);
      unsigned m = static_cast<unsigned>(c1.size());
      if (counts(c2) == mult_spectrum_formula(n)) {
        r.kind = Classification::Kind::FusedMultiplyAdd;
        r.width = n;
        r.description = std::to_string(n) + "-bit fused multiply-add (1*mult;1*add)";
        r.reference = template_spectrum("A*B + C", n, m);
        if (r.reference == s) return r;
        r = {};
      }
    }
  }
  r = {};
  r.description = "unrecognized spectrum";
  return r;
}

}  // namespace spectral
