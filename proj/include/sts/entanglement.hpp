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

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "sts/engine.hpp"

namespace sts {

struct RegionError : Error {
  using Error::Error;
};
struct GeometryError : Error {
  using Error::Error;
};

/// A set of composite particles; the qubit support is derived from it.
struct Region {
  std::vector<Cell> cells;

  static Region of_cells(std::vector<Cell> c) {
    Region r;
    r.cells = std::move(c);
    return r;
  }

  /// Rectangle of cells, inclusive corners, wrapped into range by the lattice.
  static Region rect(Cell lo, Cell hi) {
    Region r;
    for (int64_t y = lo[1]; y <= hi[1]; ++y)
      for (int64_t x = lo[0]; x <= hi[0]; ++x) r.cells.push_back({x, y});
    return r;
  }

  bool empty() const { return cells.empty(); }
  size_t cell_count() const { return cells.size(); }

  Support qubits(const Lattice& lat) const {
    std::vector<size_t> q;
    q.reserve(cells.size() * lat.cell_size);
    for (const auto& c : cells)
      for (size_t s = 0; s < lat.cell_size; ++s) q.push_back(lat.qubit(c, s));
    return make_support(std::move(q));
  }

  Region complement(const Lattice& lat) const {
    std::set<size_t> in;
    for (const auto& c : cells) in.insert(lat.cell_index(c));
    Region r;
    for (int64_t y = 0; y < lat.extent[1]; ++y)
      for (int64_t x = 0; x < lat.extent[0]; ++x)
        if (!in.count(lat.cell_index({x, y}))) r.cells.push_back({x, y});
    return r;
  }

  static Region join(const Region& a, const Region& b) {
    Region r = a;
    r.cells.insert(r.cells.end(), b.cells.begin(), b.cells.end());
    return r;
  }

  bool disjoint_from(const Region& b, const Lattice& lat) const {
    std::set<size_t> in;
    for (const auto& c : cells) in.insert(lat.cell_index(c));
    for (const auto& c : b.cells)
      if (in.count(lat.cell_index(c))) return false;
    return true;
  }
};

/// Parses the CLI region syntax "x0:x1,y0:y1" (inclusive cell ranges,
/// unions with '+'); one range for 1D models.
inline Region parse_region(const std::string& text, int dim) {
  Region out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t plus = text.find('+', pos);
    std::string part = text.substr(pos, plus == std::string::npos ? plus : plus - pos);
    auto parse_range = [&](const std::string& s) -> std::pair<int64_t, int64_t> {
      auto colon = s.find(':');
      if (colon == std::string::npos)
        throw RegionError("region: expected <lo>:<hi>, got '" + s + "'");
      return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
    };
    if (dim == 1) {
      auto [lo, hi] = parse_range(part);
      out = Region::join(out, Region::rect({lo, 0}, {hi, 0}));
    } else {
      auto comma = part.find(',');
      if (comma == std::string::npos)
        throw RegionError("region: expected x0:x1,y0:y1, got '" + part + "'");
      auto [x0, x1] = parse_range(part.substr(0, comma));
      auto [y0, y1] = parse_range(part.substr(comma + 1));
      out = Region::join(out, Region::rect({x0, y0}, {x1, y1}));
    }
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return out;
}

/// Annulus used for topological entanglement entropy: the border of an
/// (a+2w) x (b+2w) rectangle of cells, width w. Must fit strictly inside
/// the torus so the loop is contractible.
struct Annulus {
  Cell origin{0, 0};  // lower-left corner of the inner rectangle
  int64_t a = 1, b = 1;
  int64_t w = 1;

  void validate(const Lattice& lat) const {
    if (lat.dim != 2) throw GeometryError("annulus: needs a two-dimensional lattice");
    if (a < 1 || b < 1 || w < 1) throw GeometryError("annulus: sizes must be positive");
    if (a + 2 * w >= lat.extent[0] || b + 2 * w >= lat.extent[1])
      throw GeometryError("annulus: outer rectangle must be smaller than the lattice");
  }

  // Region A: the full ring. B: A minus its top strip. C: A minus its
  // bottom strip. D: A minus both.
  Region ring(const Lattice& lat, bool cut_top, bool cut_bottom) const {
    validate(lat);
    Region r;
    for (int64_t dy = -w; dy < b + w; ++dy) {
      for (int64_t dx = -w; dx < a + w; ++dx) {
        bool in_hole = dx >= 0 && dx < a && dy >= 0 && dy < b;
        if (in_hole) continue;
        if (cut_top && dy >= b) continue;
        if (cut_bottom && dy < 0) continue;
        r.cells.push_back({origin[0] + dx, origin[1] + dy});
      }
    }
    return r;
  }
};

/// A stabilizer group with k extra commuting logical operators adjoined so
/// that the ground state is unique (k = 0).
struct PureCompletion {
  StabilizerGroup group;

  /// Default completion: the r_p member of each canonical pair, +1 sign.
  static PureCompletion standard(const StabilizerGroup& base) {
    return with_members(base, canonical_logicals(base), /*use_left=*/false);
  }

  static PureCompletion with_members(const StabilizerGroup& base, const CanonicalSet& cs,
                                     bool use_left) {
    std::vector<PauliOp> rows = base.basis();
    for (const auto& pr : cs.pairs) {
      PauliOp add = use_left ? pr.first : pr.second;
      add.set_phase_exp(0);
      rows.push_back(std::move(add));
    }
    PureCompletion pc{StabilizerGroup(base.lattice(), std::move(rows))};
    if (pc.group.logical_count() != 0)
      throw Error("pure completion: residual degeneracy (internal)");
    return pc;
  }
};

/// Entanglement entropy in bits of the (pure) stabilizer state on region r:
/// E_R = V_R - G(S_R). For a degenerate group the region must not support
/// any logical operator, otherwise a pure completion is required.
inline size_t entropy(const StabilizerGroup& g, const Region& r) {
  Support s = r.qubits(g.lattice());
  if (g.logical_count() > 0 && logical_count_in_region(g, s) != 0)
    throw RegionError("region supports logical operators; supply a pure completion");
  return s.size() - restriction_rank(g, s);
}

inline size_t entropy(const PureCompletion& pc, const Region& r) {
  return entropy(pc.group, r);
}

/// E(A:B) = E(A) + E(B) - E(A u B) for disjoint regions.
inline size_t mutual_information(const PureCompletion& pc, const Region& a, const Region& b) {
  if (!a.disjoint_from(b, pc.group.lattice()))
    throw RegionError("mutual information: regions overlap");
  return entropy(pc, a) + entropy(pc, b) - entropy(pc, Region::join(a, b));
}

/// S_topo = E_B + E_C - E_A - E_D over the annulus family. Equivalently
/// G(S_A) + G(S_D) - G(S_B) - G(S_C): the qubit counts cancel.
inline int64_t topological_entropy(const PureCompletion& pc, const Annulus& ann) {
  const Lattice& lat = pc.group.lattice();
  auto e = [&](bool cut_top, bool cut_bottom) {
    return static_cast<int64_t>(entropy(pc, ann.ring(lat, cut_top, cut_bottom)));
  };
  return e(true, false) + e(false, true) - e(false, false) - e(true, true);
}

/// True iff no logical operator can be supported inside r, so no local
/// observable distinguishes or connects ground states there.
inline bool local_indistinguishability(const StabilizerGroup& g, const Region& r) {
  if (r.empty()) return true;
  return logical_count_in_region(g, r.qubits(g.lattice())) == 0;
}

/// Result of a code distance search: exact value, or a lower bound when no
/// logical operator of weight <= max_weight exists.
struct DistanceResult {
  size_t value = 0;
  bool exact = false;  // false: d > value
  std::string to_string() const {
    return exact ? "d=" + std::to_string(value) : "d>" + std::to_string(value);
  }
};

namespace detail {

/// Qubit adjacency: two qubits are adjacent when some generator acts on
/// both. A minimum-weight logical always has connected support, since the
/// restriction to a connected component is itself in the centralizer.
inline std::vector<std::vector<size_t>> support_graph(const StabilizerGroup& g) {
  size_t n = g.n_qubits();
  std::vector<std::set<size_t>> adj(n);
  for (const auto& gen : g.generators()) {
    Support s = gen.support();
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = i + 1; j < s.size(); ++j) {
        adj[s[i]].insert(s[j]);
        adj[s[j]].insert(s[i]);
      }
  }
  std::vector<std::vector<size_t>> out(n);
  for (size_t q = 0; q < n; ++q) out[q].assign(adj[q].begin(), adj[q].end());
  return out;
}

/// Enumerates connected subsets of size `target` containing `seed`, using
/// only vertices > seed otherwise, each subset exactly once. `banned`
/// carries the vertices already tried (and excluded) at ancestor levels.
template <typename Fn>
void connected_subsets_from(const std::vector<std::vector<size_t>>& adj, size_t seed,
                            size_t target, std::vector<size_t>& cur,
                            std::vector<size_t> ext, std::vector<char>& banned,
                            bool& stop, Fn&& fn) {
  if (stop) return;
  if (cur.size() == target) {
    fn(cur);
    return;
  }
  std::vector<size_t> banned_here;
  while (!ext.empty() && !stop) {
    size_t v = ext.back();
    ext.pop_back();
    std::vector<size_t> child_ext = ext;
    for (size_t w : adj[v]) {
      if (w <= seed || banned[w]) continue;
      if (std::find(cur.begin(), cur.end(), w) != cur.end()) continue;
      if (std::find(child_ext.begin(), child_ext.end(), w) != child_ext.end()) continue;
      child_ext.push_back(w);
    }
    cur.push_back(v);
    connected_subsets_from(adj, seed, target, cur, std::move(child_ext), banned, stop, fn);
    cur.pop_back();
    banned[v] = 1;
    banned_here.push_back(v);
  }
  for (size_t v : banned_here) banned[v] = 0;
}

}  // namespace detail

/// Weight-ordered search for the minimum weight of a logical operator.
/// Supports are enumerated over connected subsets of the generator-support
/// graph; a support s hosts a logical iff g_s > 0.
inline DistanceResult code_distance(const StabilizerGroup& g, size_t max_weight) {
  if (max_weight < 1) throw Error("code_distance: max_weight must be >= 1");
  if (g.logical_count() == 0) return {max_weight, false};
  auto adj = detail::support_graph(g);
  auto cent = centralizer(g);
  for (size_t w = 1; w <= max_weight; ++w) {
    bool found = false;
    for (size_t seed = 0; seed < g.n_qubits() && !found; ++seed) {
      std::vector<size_t> cur{seed};
      std::vector<size_t> ext;
      for (size_t v : adj[seed])
        if (v > seed) ext.push_back(v);
      std::vector<char> banned(g.n_qubits(), 0);
      detail::connected_subsets_from(adj, seed, w, cur, std::move(ext), banned, found,
                                     [&](const std::vector<size_t>& sub) {
                                       Support s = make_support(sub);
                                       if (logical_count_in_region(g, s, cent) > 0)
                                         found = true;
                                     });
    }
    if (found) return {w, true};
  }
  return {max_weight, false};
}

}  // namespace sts
