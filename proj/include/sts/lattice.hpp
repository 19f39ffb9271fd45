// Copyright 2026 The sts authors
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

#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sts/pauli.hpp"

namespace sts {

struct TemplateError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

/// Position of a composite particle on the coarse-grained lattice.
using Cell = std::array<int64_t, 2>;  // second entry unused for dim 1

/// A periodic lattice of composite particles, each holding `cell_size`
/// qubits. Qubit id = site + cell_size * (r1 + n1 * r2), row-major over
/// composite coordinates.
struct Lattice {
  int dim = 1;                    // 1 or 2
  size_t cell_size = 1;           // qubits per composite particle (v)
  std::array<int64_t, 2> extent;  // composite particles per direction

  Lattice() : extent{1, 1} {}
  Lattice(int d, size_t v, std::array<int64_t, 2> n) : dim(d), cell_size(v), extent(n) {
    if (d != 1 && d != 2) throw Error("lattice: dim must be 1 or 2");
    if (d == 1) extent[1] = 1;
    if (v < 1 || extent[0] < 1 || extent[1] < 1)
      throw Error("lattice: cell size and extents must be positive");
  }
  static Lattice chain(size_t v, int64_t n) { return Lattice(1, v, {n, 1}); }
  static Lattice grid(size_t v, int64_t n1, int64_t n2) { return Lattice(2, v, {n1, n2}); }

  size_t cells() const { return static_cast<size_t>(extent[0] * extent[1]); }
  size_t n_qubits() const { return cell_size * cells(); }

  size_t cell_index(Cell r) const {
    int64_t a = ((r[0] % extent[0]) + extent[0]) % extent[0];
    int64_t b = ((r[1] % extent[1]) + extent[1]) % extent[1];
    return static_cast<size_t>(a + extent[0] * b);
  }
  size_t qubit(Cell r, size_t site) const { return site + cell_size * cell_index(r); }
  Cell cell_of(size_t qubit_id) const {
    auto c = static_cast<int64_t>(qubit_id / cell_size);
    return {c % extent[0], c / extent[0]};
  }
};

/// One term of a local generator pattern: a letter at a site of the cell
/// at `offset` relative to the instantiation origin.
struct TemplateTerm {
  std::array<int, 2> offset;  // {0,1} for STS locality; larger for raw models
  size_t site;
  Letter letter;
};

/// A local stabilizer generator given as letters on cell offsets. Terms are
/// kept sorted by (offset lex, site) with duplicate positions merged; the
/// i-phase picked up by merging is stored in `phase`.
struct GeneratorTemplate {
  std::string id;
  int dim = 1;
  std::vector<TemplateTerm> terms;
  unsigned phase = 0;

  GeneratorTemplate() = default;
  GeneratorTemplate(std::string name, int d, std::vector<TemplateTerm> raw)
      : id(std::move(name)), dim(d) {
    for (const auto& t : raw) add_term(t);
  }

  void add_term(TemplateTerm t) {
    if (t.offset[0] < 0 || t.offset[1] < 0)
      throw TemplateError("template '" + id + "': negative offset");
    if (dim == 1) t.offset[1] = 0;
    auto key = [](const TemplateTerm& a) {
      return std::array<int64_t, 3>{a.offset[0], a.offset[1], static_cast<int64_t>(a.site)};
    };
    auto it = terms.begin();
    while (it != terms.end() && key(*it) < key(t)) ++it;
    if (it != terms.end() && key(*it) == key(t)) {
      // Merge letters at the same position, in insertion = sorted order.
      unsigned xa = static_cast<uint8_t>(it->letter) & 1,
               za = (static_cast<uint8_t>(it->letter) >> 1) & 1;
      unsigned xb = static_cast<uint8_t>(t.letter) & 1,
               zb = (static_cast<uint8_t>(t.letter) >> 1) & 1;
      unsigned xc = xa ^ xb, zc = za ^ zb;
      phase = (phase + xa * za + xb * zb + 2 * za * xb + 3 * (xc * zc)) & 3u;
      it->letter = static_cast<Letter>(xc | (zc << 1));
      if (it->letter == Letter::I) terms.erase(it);
    } else if (t.letter != Letter::I) {
      terms.insert(it, t);
    }
  }

  /// Largest offset used in direction m.
  int reach(int m) const {
    int r = 0;
    for (const auto& t : terms) r = std::max(r, t.offset[m]);
    return r;
  }

  /// True when all offsets lie in the 2x...x2 local block.
  bool is_local() const { return reach(0) <= 1 && (dim == 1 || reach(1) <= 1); }
};

/// Places the template at `origin`, wrapping offsets around the periodic
/// boundary. When an extent is 1 (or smaller than the template's reach),
/// several terms land on the same qubit; their letters are multiplied in
/// term order (offset 0 first), the folding rule.
inline PauliOp instantiate(const GeneratorTemplate& t, Cell origin, const Lattice& lat) {
  if (t.dim != lat.dim) throw TemplateError("template '" + t.id + "': dimension mismatch");
  PauliOp p(lat.n_qubits());
  p.set_phase_exp(t.phase);
  for (const auto& term : t.terms) {
    if (term.site >= lat.cell_size)
      throw TemplateError("template '" + t.id + "': site beyond cell size");
    Cell c{origin[0] + term.offset[0], origin[1] + term.offset[1]};
    p.mul_letter(lat.qubit(c, term.site), term.letter);
  }
  return p;
}

/// Cyclic shift by `steps` composite particles in direction m (0-based).
inline PauliOp translate(const PauliOp& p, int m, int64_t steps, const Lattice& lat) {
  if (p.n_qubits() != lat.n_qubits()) throw DimensionError("translate: size mismatch");
  std::vector<size_t> perm(lat.n_qubits());
  for (size_t q = 0; q < lat.n_qubits(); ++q) {
    Cell r = lat.cell_of(q);
    r[static_cast<size_t>(m)] += steps;
    perm[q] = lat.qubit(r, q % lat.cell_size);
  }
  return p.permuted(perm);
}

/// Every template instantiated at every origin, ordered by template then
/// row-major origin.
inline std::vector<PauliOp> all_generators(const std::vector<GeneratorTemplate>& templates,
                                           const Lattice& lat) {
  std::vector<PauliOp> out;
  out.reserve(templates.size() * lat.cells());
  for (const auto& t : templates)
    for (int64_t r2 = 0; r2 < lat.extent[1]; ++r2)
      for (int64_t r1 = 0; r1 < lat.extent[0]; ++r1)
        out.push_back(instantiate(t, {r1, r2}, lat));
  return out;
}

/// A named model: lattice geometry (without a fixed extent) plus templates.
struct Model {
  std::string name;
  int dim = 1;
  size_t cell_size = 1;
  std::vector<GeneratorTemplate> templates;

  Lattice lattice(std::array<int64_t, 2> extent) const {
    return Lattice(dim, cell_size, extent);
  }
  bool is_local() const {
    for (const auto& t : templates)
      if (!t.is_local()) return false;
    return true;
  }
  int reach(int m) const {
    int r = 1;
    for (const auto& t : templates) r = std::max(r, t.reach(m));
    return r;
  }
};

/// Groups blocks of a1 x a2 cells into larger composite particles. The
/// returned model generates the same Hamiltonian; template count multiplies
/// by a1*a2 (one per origin residue class).
inline Model regroup(const Model& m, std::array<int64_t, 2> factors) {
  if (m.dim == 1) factors[1] = 1;
  if (factors[0] < 1 || factors[1] < 1) throw Error("regroup: factors must be positive");
  Model out;
  out.name = m.name;
  out.dim = m.dim;
  out.cell_size = m.cell_size * static_cast<size_t>(factors[0] * factors[1]);
  for (const auto& t : m.templates) {
    for (int64_t s2 = 0; s2 < factors[1]; ++s2) {
      for (int64_t s1 = 0; s1 < factors[0]; ++s1) {
        GeneratorTemplate g;
        g.id = t.id + (factors[0] * factors[1] > 1
                           ? "@" + std::to_string(s1) +
                                 (m.dim == 2 ? "," + std::to_string(s2) : "")
                           : "");
        g.dim = t.dim;
        g.phase = 0;
        for (const auto& term : t.terms) {
          int64_t p1 = s1 + term.offset[0], p2 = s2 + term.offset[1];
          TemplateTerm nt;
          nt.offset = {static_cast<int>(p1 / factors[0]), static_cast<int>(p2 / factors[1])};
          size_t sub = static_cast<size_t>(p1 % factors[0] + factors[0] * (p2 % factors[1]));
          nt.site = term.site + m.cell_size * sub;
          nt.letter = term.letter;
          g.add_term(nt);
        }
        g.phase = (g.phase + t.phase) & 3u;
        out.templates.push_back(std::move(g));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Model definition files (UTF-8, line oriented, '#' comments):
//   model <name>
//   dim <1|2>
//   cell <v>
//   gen <id>
//     term <d1> [<d2>] <site> <X|Y|Z>     (offsets in {0,1}; site 1-based)
//   end
// ---------------------------------------------------------------------------

inline Model parse_model(std::istream& in) {
  Model m;
  bool have_name = false, have_dim = false, have_cell = false;
  GeneratorTemplate cur;
  bool in_gen = false;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    auto fail = [&](const std::string& msg) {
      throw ParseError("model file line " + std::to_string(lineno) + ": " + msg);
    };
    if (kw == "model") {
      if (!(ls >> m.name)) fail("missing model name");
      have_name = true;
    } else if (kw == "dim") {
      if (!(ls >> m.dim) || (m.dim != 1 && m.dim != 2)) fail("dim must be 1 or 2");
      have_dim = true;
    } else if (kw == "cell") {
      long long v;
      if (!(ls >> v) || v < 1) fail("cell must be a positive integer");
      m.cell_size = static_cast<size_t>(v);
      have_cell = true;
    } else if (kw == "gen") {
      if (!have_dim || !have_cell) fail("gen before dim/cell");
      if (in_gen) fail("nested gen block");
      cur = GeneratorTemplate();
      cur.dim = m.dim;
      if (!(ls >> cur.id)) fail("missing gen id");
      in_gen = true;
    } else if (kw == "term") {
      if (!in_gen) fail("term outside gen block");
      int d1 = 0, d2 = 0;
      long long site;
      std::string letter;
      if (!(ls >> d1)) fail("missing offset");
      if (m.dim == 2 && !(ls >> d2)) fail("missing second offset");
      if (!(ls >> site >> letter)) fail("missing site or letter");
      if (d1 < 0 || d1 > 1 || d2 < 0 || d2 > 1)
        fail("offsets must be 0 or 1; coarse-grain the model first");
      if (site < 1 || static_cast<size_t>(site) > m.cell_size) fail("site out of range");
      Letter l;
      if (letter == "X")
        l = Letter::X;
      else if (letter == "Y")
        l = Letter::Y;
      else if (letter == "Z")
        l = Letter::Z;
      else {
        fail("letter must be X, Y or Z");
        l = Letter::I;
      }
      cur.add_term({{d1, d2}, static_cast<size_t>(site - 1), l});
    } else if (kw == "end") {
      if (!in_gen) fail("end outside gen block");
      m.templates.push_back(cur);
      in_gen = false;
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  if (in_gen) throw ParseError("model file: unterminated gen block");
  if (!have_name || !have_dim || !have_cell)
    throw ParseError("model file: model/dim/cell header incomplete");
  return m;
}

inline Model parse_model(const std::string& text) {
  std::istringstream in(text);
  return parse_model(in);
}

/// Serializes in the file grammar. Only models whose offsets all lie in
/// {0,1} round-trip; others throw.
inline std::string serialize_model(const Model& m) {
  if (!m.is_local())
    throw TemplateError("model '" + m.name + "' has offsets beyond the 2x..x2 block");
  std::ostringstream out;
  out << "model " << m.name << "\n";
  out << "dim " << m.dim << "\n";
  out << "cell " << m.cell_size << "\n";
  for (const auto& t : m.templates) {
    if (t.phase != 0)
      throw TemplateError("template '" + t.id + "' carries a merge phase");
    out << "gen " << t.id << "\n";
    for (const auto& term : t.terms) {
      out << "term " << term.offset[0];
      if (m.dim == 2) out << " " << term.offset[1];
      out << " " << (term.site + 1) << " " << letter_char(term.letter) << "\n";
    }
    out << "end\n";
  }
  return out.str();
}

}  // namespace sts
