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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sts/lattice.hpp"

namespace sts {

/// Expected analysis results for one lattice extent of a catalog model.
struct Expectation {
  std::array<int64_t, 2> extent{0, 1};
  size_t k = 0;
  std::optional<std::pair<size_t, size_t>> fingerprint;  // (k0, k1)
  std::optional<int64_t> s_topo;
  std::optional<size_t> distance;
  std::optional<size_t> distance_probe_weight;
};

/// A built-in model plus its documented results. `sizes` lists the extents
/// exercised by `check`. Raw (pre-coarse-graining) entries may carry
/// template offsets beyond {0,1} and are not expressible in the .sts file
/// grammar; `file_form` reflects that.
struct CatalogEntry {
  Model model;
  std::string summary;
  bool file_form = true;   // offsets within {0,1}: serializable
  bool sts_form = true;    // translation+scale symmetric as stored
  std::vector<Expectation> expectations;
  std::function<size_t(std::array<int64_t, 2>)> k_rule;
};

namespace catalog_detail {

inline GeneratorTemplate tpl(std::string id, int dim,
                             std::initializer_list<TemplateTerm> terms) {
  return GeneratorTemplate(std::move(id), dim, std::vector<TemplateTerm>(terms));
}

inline CatalogEntry ferro1d() {
  CatalogEntry e;
  e.model.name = "ferro1d";
  e.model.dim = 1;
  e.model.cell_size = 1;
  e.model.templates = {tpl("zz", 1, {{{0, 0}, 0, Letter::Z}, {{1, 0}, 0, Letter::Z}})};
  e.summary = "classical ferromagnet chain, ZZ couplings";
  e.k_rule = [](std::array<int64_t, 2>) -> size_t { return 1; };
  for (int64_t n = 3; n <= 10; ++n)
    e.expectations.push_back({{n, 1}, 1, std::pair<size_t, size_t>{1, 0}, std::nullopt,
                              1, 2});
  return e;
}

inline CatalogEntry cluster1d() {
  CatalogEntry e;
  e.model.name = "cluster1d";
  e.model.dim = 1;
  e.model.cell_size = 1;
  e.model.templates = {tpl("zxz", 1, {{{0, 0}, 0, Letter::Z},
                                      {{1, 0}, 0, Letter::X},
                                      {{2, 0}, 0, Letter::Z}})};
  e.summary = "one-dimensional cluster state, unique ground state";
  e.file_form = false;  // reach 2: grouped into two-qubit cells for files
  e.k_rule = [](std::array<int64_t, 2> n) -> size_t { return n[0] >= 3 ? 0 : 1; };
  for (int64_t n : {4, 6, 8, 10})
    e.expectations.push_back({{n, 1}, 0, std::pair<size_t, size_t>{0, 0}});
  return e;
}

inline CatalogEntry fivequbit() {
  CatalogEntry e;
  e.model.name = "fivequbit";
  e.model.dim = 1;
  e.model.cell_size = 1;
  e.model.templates = {tpl("xyyx", 1, {{{0, 0}, 0, Letter::X},
                                       {{1, 0}, 0, Letter::Y},
                                       {{2, 0}, 0, Letter::Y},
                                       {{3, 0}, 0, Letter::X}})};
  e.summary = "five qubit code, fixed N=5";
  e.file_form = false;
  e.sts_form = false;  // fixed size, not swept
  e.k_rule = [](std::array<int64_t, 2>) -> size_t { return 1; };
  e.expectations.push_back({{5, 1}, 1, std::nullopt, std::nullopt, 3, 5});
  return e;
}

inline CatalogEntry ext5chain() {
  CatalogEntry e = fivequbit();
  e.model.name = "ext5chain";
  e.summary = "five qubit code extended to a chain of any length";
  e.sts_form = true;  // scale symmetric on raw qubits; locality needs v=3
  e.expectations.clear();
  for (int64_t n : {6, 9, 12}) e.expectations.push_back({{n, 1}, 1});
  return e;
}

inline CatalogEntry zzz_chain() {
  CatalogEntry e;
  e.model.name = "zzz_chain";
  e.model.dim = 1;
  e.model.cell_size = 1;
  e.model.templates = {tpl("zzz", 1, {{{0, 0}, 0, Letter::Z},
                                      {{1, 0}, 0, Letter::Z},
                                      {{2, 0}, 0, Letter::Z}})};
  e.summary = "three-body ZZZ chain; weakly broken translation symmetry";
  e.file_form = false;
  e.sts_form = false;  // k depends on N mod 3
  e.k_rule = [](std::array<int64_t, 2> n) -> size_t { return n[0] % 3 == 0 ? 2 : 0; };
  for (int64_t n : {6, 7, 8, 9}) e.expectations.push_back({{n, 1}, n % 3 == 0 ? 2u : 0u});
  return e;
}

inline CatalogEntry ferro2d() {
  CatalogEntry e;
  e.model.name = "ferro2d";
  e.model.dim = 2;
  e.model.cell_size = 1;
  e.model.templates = {
      tpl("zz_h", 2, {{{0, 0}, 0, Letter::Z}, {{1, 0}, 0, Letter::Z}}),
      tpl("zz_v", 2, {{{0, 0}, 0, Letter::Z}, {{0, 1}, 0, Letter::Z}})};
  e.summary = "two-dimensional classical ferromagnet";
  e.k_rule = [](std::array<int64_t, 2>) -> size_t { return 1; };
  for (int64_t n : {3, 4, 5})
    e.expectations.push_back({{n, n}, 1, std::pair<size_t, size_t>{1, 0}, std::nullopt,
                              1, 2});
  return e;
}

inline CatalogEntry toric() {
  // Composite-particle form of the Toric code (two qubits per cell).
  CatalogEntry e;
  e.model.name = "toric";
  e.model.dim = 2;
  e.model.cell_size = 2;
  e.model.templates = {
      tpl("A", 2, {{{0, 0}, 0, Letter::Z},
                   {{0, 0}, 1, Letter::X},
                   {{1, 0}, 0, Letter::Z},
                   {{0, 1}, 1, Letter::X}}),
      tpl("B", 2, {{{1, 0}, 0, Letter::X},
                   {{0, 1}, 1, Letter::Z},
                   {{1, 1}, 1, Letter::Z},
                   {{1, 1}, 0, Letter::X}})};
  e.summary = "Toric code in composite-particle form";
  e.k_rule = [](std::array<int64_t, 2>) -> size_t { return 2; };
  for (int64_t n : {3, 4, 5, 6})
    e.expectations.push_back({{n, n}, 2, std::pair<size_t, size_t>{0, 2},
                              n >= 4 ? std::optional<int64_t>{2} : std::nullopt,
                              n == 3 ? std::optional<size_t>{3} : std::nullopt,
                              n == 3 ? std::optional<size_t>{3} : std::nullopt});
  return e;
}

inline CatalogEntry toric_edges() {
  // Star/plaquette layout: cell (i,j) holds the right edge (site 0) and the
  // top edge (site 1) of vertex (i,j).
  CatalogEntry e;
  e.model.name = "toric_edges";
  e.model.dim = 2;
  e.model.cell_size = 2;
  e.model.templates = {
      tpl("star", 2, {{{0, 1}, 0, Letter::X},
                      {{1, 1}, 0, Letter::X},
                      {{1, 0}, 1, Letter::X},
                      {{1, 1}, 1, Letter::X}}),
      tpl("plaq", 2, {{{0, 0}, 0, Letter::Z},
                      {{0, 1}, 0, Letter::Z},
                      {{0, 0}, 1, Letter::Z},
                      {{1, 0}, 1, Letter::Z}})};
  e.summary = "Toric code on lattice edges (star/plaquette form)";
  e.k_rule = [](std::array<int64_t, 2>) -> size_t { return 2; };
  for (int64_t n : {3, 4})
    e.expectations.push_back({{n, n}, 2, std::nullopt, std::nullopt,
                              n == 3 ? std::optional<size_t>{3} : std::nullopt,
                              n == 3 ? std::optional<size_t>{3} : std::nullopt});
  return e;
}

inline CatalogEntry cluster2d() {
  CatalogEntry e;
  e.model.name = "cluster2d";
  e.model.dim = 2;
  e.model.cell_size = 1;
  e.model.templates = {tpl("xz4", 2, {{{1, 1}, 0, Letter::X},
                                      {{0, 1}, 0, Letter::Z},
                                      {{2, 1}, 0, Letter::Z},
                                      {{1, 0}, 0, Letter::Z},
                                      {{1, 2}, 0, Letter::Z}})};
  e.summary = "two-dimensional cluster state";
  e.file_form = false;  // reach 2 raw
  e.k_rule = [](std::array<int64_t, 2>) -> size_t { return 0; };
  // The annulus must clear the reach-two terms: document S_topo from n = 5.
  for (int64_t n : {3, 4, 5})
    e.expectations.push_back({{n, n}, 0, std::pair<size_t, size_t>{0, 0},
                              n >= 5 ? std::optional<int64_t>{0} : std::nullopt});
  return e;
}

inline CatalogEntry product2d() {
  CatalogEntry e;
  e.model.name = "product2d";
  e.model.dim = 2;
  e.model.cell_size = 1;
  e.model.templates = {tpl("x", 2, {{{0, 0}, 0, Letter::X}})};
  e.summary = "product state, -X on every qubit";
  e.k_rule = [](std::array<int64_t, 2>) -> size_t { return 0; };
  for (int64_t n : {3, 4, 5})
    e.expectations.push_back({{n, n}, 0, std::pair<size_t, size_t>{0, 0},
                              n >= 4 ? std::optional<int64_t>{0} : std::nullopt});
  return e;
}

inline CatalogEntry cross() {
  // Five-body X-row / Z-column term on raw qubits.
  CatalogEntry e;
  e.model.name = "cross";
  e.model.dim = 2;
  e.model.cell_size = 1;
  e.model.templates = {tpl("s", 2, {{{0, 1}, 0, Letter::X},
                                    {{1, 1}, 0, Letter::X},
                                    {{2, 1}, 0, Letter::X},
                                    {{1, 0}, 0, Letter::Z},
                                    {{1, 2}, 0, Letter::Z}})};
  e.summary = "cross model on raw qubits (coarse-grains to a 3x2 cell)";
  e.file_form = false;
  e.sts_form = false;  // k depends on residues mod (3, 2)
  // The three-X row only admits dependencies when 3 | L1 (1+x+x^2 has no
  // root at x=1), so k vanishes off that residue class.
  e.k_rule = [](std::array<int64_t, 2> n) -> size_t {
    if (n[0] % 3 != 0) return 0;
    return n[1] % 2 == 0 ? 4 : 2;
  };
  for (auto ext : std::vector<std::array<int64_t, 2>>{{4, 3}, {6, 3}, {4, 4}, {5, 4}, {6, 4}})
    e.expectations.push_back({ext, 0});
  for (auto& x : e.expectations) x.k = e.k_rule(x.extent);
  return e;
}

inline CatalogEntry cross_cg() {
  // The six composite-form generators of the cross model (cells of 3x2
  // qubits, after intra-cell rotations).
  CatalogEntry e;
  e.model.name = "cross_cg";
  e.model.dim = 2;
  e.model.cell_size = 6;
  auto pair_a = [&](std::string id, size_t za, size_t xb) {
    // [[Z_a, I], [Z_a X_b, X_b]]
    return tpl(std::move(id), 2,
               {{{0, 0}, za, Letter::Z},
                {{0, 0}, xb, Letter::X},
                {{1, 0}, xb, Letter::X},
                {{0, 1}, za, Letter::Z}});
  };
  auto pair_b = [&](std::string id, size_t xa, size_t zb) {
    // [[X_a, X_a Z_b], [I, Z_b]]
    return tpl(std::move(id), 2,
               {{{1, 0}, zb, Letter::Z},
                {{0, 1}, xa, Letter::X},
                {{1, 1}, xa, Letter::X},
                {{1, 1}, zb, Letter::Z}});
  };
  e.model.templates = {pair_a("S1", 0, 1), pair_b("S2", 0, 1),
                       pair_a("S3", 2, 3), pair_b("S4", 2, 3),
                       tpl("S5", 2, {{{0, 0}, 5, Letter::X}, {{0, 1}, 4, Letter::X}}),
                       tpl("S6", 2, {{{0, 0}, 5, Letter::Z}, {{0, 1}, 4, Letter::Z}})};
  e.summary = "cross model in composite form (S1..S6)";
  e.k_rule = [](std::array<int64_t, 2>) -> size_t { return 4; };
  for (int64_t n : {2, 3, 4, 5})
    e.expectations.push_back({{n, n}, 4, std::pair<size_t, size_t>{0, 4},
                              n >= 4 ? std::optional<int64_t>{4} : std::nullopt});
  return e;
}

inline CatalogEntry twotoric() {
  // H' of the cross-model discussion: the five-body term without its
  // center, two decoupled Toric codes on the even/odd sublattices.
  CatalogEntry e;
  e.model.name = "twotoric";
  e.model.dim = 2;
  e.model.cell_size = 1;
  e.model.templates = {tpl("s", 2, {{{0, 1}, 0, Letter::X},
                                    {{2, 1}, 0, Letter::X},
                                    {{1, 0}, 0, Letter::Z},
                                    {{1, 2}, 0, Letter::Z}})};
  e.summary = "two non-interacting Toric codes (cross model minus center)";
  e.file_form = false;
  e.sts_form = false;  // k depends on parities
  e.k_rule = [](std::array<int64_t, 2> n) -> size_t {
    return (n[0] % 2 == 0 && n[1] % 2 == 0) ? 4 : (n[0] * n[1]) % 2 == 0 ? 2 : 1;
  };
  for (auto ext : std::vector<std::array<int64_t, 2>>{{4, 4}, {6, 4}, {6, 6}})
    e.expectations.push_back({ext, e.k_rule(ext)});
  return e;
}

inline CatalogEntry vchains() {
  CatalogEntry e;
  e.model.name = "vchains";
  e.model.dim = 2;
  e.model.cell_size = 1;
  e.model.templates = {tpl("zz_v", 2, {{{0, 0}, 0, Letter::Z}, {{0, 1}, 0, Letter::Z}})};
  e.summary = "decoupled vertical ferromagnet chains (not an STS model)";
  e.sts_form = false;  // k grows with the width
  e.k_rule = [](std::array<int64_t, 2> n) -> size_t { return static_cast<size_t>(n[0]); };
  for (int64_t n : {3, 4}) e.expectations.push_back({{n, n}, static_cast<size_t>(n)});
  return e;
}

}  // namespace catalog_detail

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    using namespace catalog_detail;
    std::vector<CatalogEntry> v;
    v.push_back(ferro1d());
    v.push_back(cluster1d());
    v.push_back(fivequbit());
    v.push_back(ext5chain());
    v.push_back(zzz_chain());
    v.push_back(ferro2d());
    v.push_back(toric());
    v.push_back(toric_edges());
    v.push_back(cluster2d());
    v.push_back(product2d());
    v.push_back(cross());
    v.push_back(cross_cg());
    v.push_back(twotoric());
    v.push_back(vchains());
    return v;
  }();
  return entries;
}

inline const CatalogEntry& catalog_get(const std::string& name) {
  for (const auto& e : catalog())
    if (e.model.name == name) return e;
  std::string names;
  for (const auto& e : catalog()) names += (names.empty() ? "" : ", ") + e.model.name;
  throw Error("unknown model '" + name + "'; available: " + names);
}

/// Expected analysis results for a documented size, with the k size rule
/// evaluated for arbitrary extents.
inline Expectation expected_report(const std::string& name, std::array<int64_t, 2> extent) {
  const CatalogEntry& e = catalog_get(name);
  for (const auto& x : e.expectations)
    if (x.extent == extent) return x;
  Expectation x;
  x.extent = extent;
  x.k = e.k_rule(extent);
  return x;
}

}  // namespace sts
