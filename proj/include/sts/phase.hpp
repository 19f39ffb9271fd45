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

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sts/entanglement.hpp"

namespace sts {

/// The model fails translation equivalence: not an STS model.
struct NotStsError : Error {
  using Error::Error;
};
/// A probe budget ran out before a conclusion was reached.
struct InconclusiveError : Error {
  using Error::Error;
};
/// The window structure contradicts the one-dimensional normal form.
struct StructuralError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Phase fingerprints
// ---------------------------------------------------------------------------

/// Order parameter of a phase: counts of logical-operator pair shapes.
/// k0 pairs are point-like against codimension-zero partners; k1 pairs are
/// string-string (two dimensions only). For one dimension k0 = k.
struct Fingerprint {
  int dim = 1;
  size_t k = 0;
  size_t k0 = 0;
  size_t k1 = 0;

  std::string to_string() const {
    std::ostringstream os;
    os << "D=" << dim << " k=" << k << " k0=" << k0 << " k1=" << k1;
    return os.str();
  }
};

inline bool same_phase(const Fingerprint& a, const Fingerprint& b) {
  if (a.dim != b.dim) throw Error("same_phase: mixed dimensions");
  return a.k0 == b.k0 && a.k1 == b.k1;
}

// ---------------------------------------------------------------------------
// Translation equivalence and scale symmetry
// ---------------------------------------------------------------------------

/// Tests, per direction, whether every canonical generator stays equivalent
/// under a unit translation of composite particles. Products inherit the
/// property, so this settles it for every logical operator.
inline std::vector<bool> check_translation_equivalence(const StabilizerGroup& g,
                                                       const CanonicalSet& cs) {
  std::vector<bool> ok;
  for (int m = 0; m < g.lattice().dim; ++m) {
    bool all = true;
    for (const auto& u : cs.all())
      if (!g.contains(u * translate(u, m, 1, g.lattice()), /*ignore_sign=*/true)) {
        all = false;
        break;
      }
    ok.push_back(all);
  }
  return ok;
}

struct ScaleSweep {
  std::vector<std::pair<std::array<int64_t, 2>, size_t>> k_by_size;
  bool scale_symmetric = false;
};

inline ScaleSweep check_scale_symmetry(const Model& m,
                                       const std::vector<std::array<int64_t, 2>>& sizes) {
  if (sizes.size() < 2) throw Error("scale symmetry check needs at least two sizes");
  ScaleSweep out;
  for (auto ext : sizes)
    out.k_by_size.emplace_back(ext, build_group(m, ext).logical_count());
  out.scale_symmetric = true;
  for (const auto& [ext, k] : out.k_by_size)
    if (k != out.k_by_size.front().second) out.scale_symmetric = false;
  return out;
}

/// Default probe set: all extents with 2 <= n_m <= max(6, 2v+1), plus one
/// folded size with each n_m = 1.
inline std::vector<std::array<int64_t, 2>> default_probe_sizes(const Model& m) {
  int64_t hi = std::max<int64_t>(6, 2 * static_cast<int64_t>(m.cell_size) + 1);
  std::vector<std::array<int64_t, 2>> out;
  if (m.dim == 1) {
    for (int64_t n = 2; n <= hi; ++n) out.push_back({n, 1});
    out.push_back({1, 1});
  } else {
    for (int64_t a = 2; a <= hi; ++a)
      for (int64_t b = 2; b <= hi; ++b) out.push_back({a, b});
    out.push_back({1, 3});
    out.push_back({3, 1});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coarse graining
// ---------------------------------------------------------------------------

struct CoarseGrainResult {
  std::array<int64_t, 2> factors{1, 1};
  Model model;  // regrouped, 2x..x2 local
};

namespace detail {

inline bool translation_equivalence_holds(const StabilizerGroup& g, const CanonicalSet& cs,
                                          int m, int64_t steps) {
  for (const auto& u : cs.all())
    if (!g.contains(u * translate(u, m, steps, g.lattice()), /*ignore_sign=*/true))
      return false;
  return true;
}

}  // namespace detail

/// Finds per-direction grouping factors that turn the model into an STS
/// model: the regrouped templates must fit 2x..x2 blocks (a_m >= reach) and
/// all logical operators must be equivalent under the grouped translations.
/// Probing is capped; running out is reported as inconclusive, never as a
/// wrong answer.
inline CoarseGrainResult coarse_grain(const Model& m, size_t k_target, int64_t cap = 12) {
  const int dim = m.dim;
  const size_t max_probe_qubits = 6000;
  // Smallest extent reaching k_target.
  std::array<int64_t, 2> n_min{0, 0};
  for (int64_t s = 1; s <= 2 * cap && n_min[0] == 0; ++s) {
    std::vector<std::array<int64_t, 2>> layer;
    if (dim == 1) {
      layer.push_back({s, 1});
    } else {
      for (int64_t b = 1; b <= s; ++b) layer.push_back({s, b});
      for (int64_t a = 1; a < s; ++a) layer.push_back({a, s});
    }
    for (auto ext : layer) {
      if (m.cell_size * static_cast<size_t>(ext[0] * ext[1]) > max_probe_qubits) continue;
      if (build_group(m, ext).logical_count() == k_target) {
        n_min = ext;
        break;
      }
    }
  }
  if (n_min[0] == 0)
    throw InconclusiveError("coarse_grain: no probed size reaches k=" +
                            std::to_string(k_target));

  std::array<int64_t, 2> factors{1, 1};
  for (int m_dir = 0; m_dir < dim; ++m_dir) {
    int64_t reach = m.reach(m_dir);
    bool found = false;
    for (int64_t a = std::max<int64_t>(reach, 1); a <= cap && !found; ++a) {
      // Probe on an extent where the grouped translation acts nontrivially
      // and the logical count equals the target.
      for (int64_t q = 2; q <= std::max<int64_t>(4, 2 * cap / a); ++q) {
        std::array<int64_t, 2> ext = n_min;
        ext[static_cast<size_t>(m_dir)] = a * q;
        if (m.cell_size * static_cast<size_t>(ext[0] * ext[1]) > max_probe_qubits) break;
        StabilizerGroup g = build_group(m, ext);
        if (g.logical_count() != k_target) continue;
        CanonicalSet cs = canonical_logicals(g);
        if (detail::translation_equivalence_holds(g, cs, m_dir, a)) {
          factors[static_cast<size_t>(m_dir)] = a;
          found = true;
        }
        break;  // one adequate probe decides this candidate
      }
    }
    if (!found)
      throw InconclusiveError("coarse_grain: no grouping factor <= " + std::to_string(cap) +
                              " restores equivalence in direction " +
                              std::to_string(m_dir + 1));
  }

  CoarseGrainResult res;
  res.factors = factors;
  res.model = regroup(m, factors);
  if (!res.model.is_local())
    throw Error("coarse_grain: regrouped templates exceed the local block (internal)");
  // Re-verify scale symmetry on the regrouped model.
  std::vector<std::array<int64_t, 2>> sizes;
  if (dim == 1) {
    for (int64_t n : {1, 2, 3, 4, 5}) sizes.push_back({n, 1});
  } else {
    sizes = {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 3}, {1, 3}, {3, 1}};
  }
  ScaleSweep sweep = check_scale_symmetry(res.model, sizes);
  for (const auto& [ext, k] : sweep.k_by_size)
    if (k != k_target)
      throw InconclusiveError("coarse_grain: regrouped model has k=" + std::to_string(k) +
                              " at " + std::to_string(ext[0]) + "x" + std::to_string(ext[1]));
  return res;
}

// ---------------------------------------------------------------------------
// Shape classification (two dimensions)
// ---------------------------------------------------------------------------

/// Region counts of the topological-deformation theorem, all equal to the
/// number of deformable logical operators they should carry.
struct DeformationCounts {
  size_t all_but_one_cell = 0;   // complement of P_{1,1}
  size_t row_and_column = 0;     // Q(1) u Q(2)
  size_t block = 0;              // complement of the above
  size_t one_cell = 0;           // P_{1,1}
  size_t row = 0, row_complement = 0;
  size_t column = 0, column_complement = 0;
  bool equalities_hold = false;
};

inline DeformationCounts deformation_counts(const StabilizerGroup& g) {
  const Lattice& lat = g.lattice();
  if (lat.dim != 2) throw Error("deformation_counts: needs a two-dimensional model");
  auto cent = centralizer(g);
  auto count = [&](const Region& r) {
    return logical_count_in_region(g, r.qubits(lat), cent);
  };
  Region cell = Region::rect({0, 0}, {0, 0});
  Region row = Region::rect({0, 0}, {lat.extent[0] - 1, 0});
  Region col = Region::rect({0, 0}, {0, lat.extent[1] - 1});
  Region cross = Region::join(row, Region::rect({0, 1}, {0, lat.extent[1] - 1}));
  DeformationCounts d;
  d.one_cell = count(cell);
  d.all_but_one_cell = count(cell.complement(lat));
  d.row_and_column = count(cross);
  d.block = count(cross.complement(lat));
  d.row = count(row);
  d.row_complement = count(row.complement(lat));
  d.column = count(col);
  d.column_complement = count(col.complement(lat));
  size_t k = g.logical_count();
  d.equalities_hold = d.all_but_one_cell == d.row_and_column && d.block == d.one_cell &&
                      d.row == k && d.row_complement == k && d.column == k &&
                      d.column_complement == k;
  return d;
}

/// Classifies logical-operator shapes. k0 counts the independent logical
/// operators expressible inside a point-like window of 2v x 1 cells (capped
/// below the extent so the window cannot wind); the window is scanned over
/// all translations and the counts must agree.
inline Fingerprint classify_shapes(const StabilizerGroup& g, const CanonicalSet& cs) {
  const Lattice& lat = g.lattice();
  auto equiv = check_translation_equivalence(g, cs);
  for (bool ok : equiv)
    if (!ok) throw NotStsError("not an STS model: translation equivalence fails");
  Fingerprint f;
  f.dim = lat.dim;
  f.k = g.logical_count();
  if (lat.dim == 1) {
    f.k0 = f.k;
    f.k1 = 0;
    return f;
  }
  if (lat.extent[0] < 2 || lat.extent[1] < 2)
    throw GeometryError("classify: extent too small");
  int64_t width = std::min<int64_t>(2 * static_cast<int64_t>(lat.cell_size),
                                    lat.extent[0] - 1);
  auto cent = centralizer(g);
  std::optional<size_t> k0;
  for (int64_t oy = 0; oy < lat.extent[1]; ++oy) {
    for (int64_t ox = 0; ox < lat.extent[0]; ++ox) {
      Region window;
      for (int64_t d = 0; d < width; ++d) window.cells.push_back({ox + d, oy});
      size_t got = logical_count_in_region(g, window.qubits(lat), cent);
      if (k0 && *k0 != got)
        throw Error("classify: window count varies under translation (internal)");
      k0 = got;
    }
  }
  f.k0 = *k0;
  f.k1 = f.k - f.k0;
  if (f.k0 == 0 && f.k1 % 2 != 0)
    throw Error("classify: odd string-pair count without point-like pairs");
  // Cross-check against the deformation theorem: a full row or column
  // carries exactly k independent logical operators.
  DeformationCounts d = deformation_counts(g);
  if (d.row != f.k || d.row_complement != f.k || d.column != f.k ||
      d.column_complement != f.k)
    throw Error("classify: deformation counts disagree with k (internal)");
  return f;
}

// ---------------------------------------------------------------------------
// Loop stabilizers and braiding
// ---------------------------------------------------------------------------

/// Rectangle product of one generator template; for paired templates of the
/// string-string form the bulk cancels and only the border survives.
struct LoopStabilizer {
  int64_t x = 0, y = 0;
  PauliOp op;
  bool border_only = false;
  bool member = false;
};

inline LoopStabilizer loop_stabilizer(const StabilizerGroup& g, const Model& m,
                                      const std::string& generator_id, int64_t x, int64_t y,
                                      Cell origin = {0, 0}) {
  const Lattice& lat = g.lattice();
  if (lat.dim != 2) throw GeometryError("loop stabilizer: needs two dimensions");
  if (x < 1 || y < 1 || x > lat.extent[0] - 2 || y > lat.extent[1] - 2)
    throw GeometryError("loop stabilizer: rectangle does not fit");
  const GeneratorTemplate* tpl = nullptr;
  for (const auto& t : m.templates)
    if (t.id == generator_id) tpl = &t;
  if (!tpl) throw Error("loop stabilizer: unknown generator '" + generator_id + "'");
  LoopStabilizer out;
  out.x = x;
  out.y = y;
  out.op = PauliOp::identity(lat.n_qubits());
  for (int64_t j = 0; j < y; ++j)
    for (int64_t i = 0; i < x; ++i)
      out.op = out.op * instantiate(*tpl, {origin[0] + i, origin[1] + j}, lat);
  out.member = g.contains(out.op, /*ignore_sign=*/true);
  // Border check on the support's bounding box of cells.
  std::set<std::pair<int64_t, int64_t>> cells;
  for (size_t q : out.op.support()) {
    Cell c = lat.cell_of(q);
    cells.insert({c[0], c[1]});
  }
  if (cells.empty()) {
    out.border_only = true;
    return out;
  }
  int64_t lo0 = cells.begin()->first, hi0 = cells.rbegin()->first;
  int64_t lo1 = INT64_MAX, hi1 = INT64_MIN;
  for (auto& [a, b] : cells) {
    lo1 = std::min(lo1, b);
    hi1 = std::max(hi1, b);
  }
  out.border_only = true;
  for (auto& [a, b] : cells)
    if (a != lo0 && a != hi0 && b != lo1 && b != hi1) out.border_only = false;
  return out;
}

/// (-1)^(symplectic product): the phase picked up when the two processes
/// cross. Symmetric and multiplicative in each argument.
inline int braiding_phase(const PauliOp& a, const PauliOp& b) {
  return a.commutes_with(b) ? +1 : -1;
}

// ---------------------------------------------------------------------------
// Periodicity extraction
// ---------------------------------------------------------------------------

/// Decomposition of a one-line centralizer operator into a periodic part
/// and a remainder confined to a point-like window.
struct PeriodicDecomposition {
  PauliOp alpha;  // non-periodic part, window of <= 2v cells
  PauliOp beta;   // periodic part, translate-by-period invariant
  int64_t period = 1;
  bool stalled = false;
};

namespace detail {

/// Cell-local bit pattern of `p` on one cell, encoded as a v-qubit PauliOp.
inline PauliOp cell_pattern(const PauliOp& p, const Lattice& lat, Cell c) {
  PauliOp out(lat.cell_size);
  for (size_t s = 0; s < lat.cell_size; ++s) out.set_letter(s, p.letter(lat.qubit(c, s)));
  return out;
}

inline bool in_centralizer(const StabilizerGroup& g, const PauliOp& p) {
  for (const auto& s : g.basis())
    if (!p.commutes_with(s)) return false;
  return true;
}

/// Longest run of consecutive identity cells along the line (cyclically);
/// returns the index just past the run, i.e. a start that makes the support
/// as contiguous as possible.
inline int64_t unwrap_start(const std::vector<PauliOp>& cells) {
  int64_t L = static_cast<int64_t>(cells.size());
  int64_t best_len = -1, best_start = 0;
  for (int64_t s = 0; s < L; ++s) {
    if (!cells[static_cast<size_t>(s)].is_identity_bits()) continue;
    int64_t len = 0;
    while (len < L && cells[static_cast<size_t>((s + len) % L)].is_identity_bits()) ++len;
    if (len > best_len) {
      best_len = len;
      best_start = (s + len) % L;
    }
  }
  return best_len < 0 ? 0 : best_start;
}

}  // namespace detail

/// Splits a centralizer operator supported on a single row or column of
/// cells into alpha * beta with beta periodic (period <= 4^v) and alpha
/// inside a window of 2v cells, modulo stabilizers. Constructive moves are
/// certified: beta is checked into the centralizer and alpha keeps the
/// class of u * beta exactly (only stabilizer elements are multiplied in).
/// When the extent defeats the construction the best decomposition found is
/// returned with `stalled` set.
inline PeriodicDecomposition extract_periodic_part(const StabilizerGroup& g, PauliOp u) {
  const Lattice& lat = g.lattice();
  if (!detail::in_centralizer(g, u))
    throw Error("extract_periodic_part: operand is not a centralizer element");
  PeriodicDecomposition out;
  out.alpha = PauliOp::identity(lat.n_qubits());
  out.beta = PauliOp::identity(lat.n_qubits());
  u.set_phase_exp(0);
  if (u.is_identity_bits()) return out;

  // Identify the line: a single row (axis 0) or column (axis 1).
  int axis = 0;
  {
    std::set<int64_t> rows, cols;
    for (size_t q : u.support()) {
      Cell c = lat.cell_of(q);
      cols.insert(c[0]);
      rows.insert(c[1]);
    }
    if (lat.dim == 1 || rows.size() == 1) {
      axis = 0;
    } else if (cols.size() == 1) {
      axis = 1;
    } else {
      throw Error("extract_periodic_part: support is not confined to one row or column");
    }
  }
  const int64_t L = lat.extent[static_cast<size_t>(axis)];
  Cell base = lat.cell_of(u.support().front());
  auto line_cell = [&](int64_t i) -> Cell {
    Cell c = base;
    c[static_cast<size_t>(axis)] = i;
    return c;
  };
  auto patterns = [&](const PauliOp& p) {
    std::vector<PauliOp> v;
    for (int64_t i = 0; i < L; ++i)
      v.push_back(detail::cell_pattern(p, lat, line_cell(i)));
    return v;
  };

  // Periodic part: smallest b with a repeated nontrivial cell pattern at
  // distance b that extends to a centralizer element on the whole line.
  std::vector<PauliOp> cells = patterns(u);
  PauliOp residual = u;
  for (int64_t b = 1; b < L; ++b) {
    if (L % b != 0) continue;
    bool took = false;
    for (int64_t j = 0; j + b < L; ++j) {
      const PauliOp& pat = cells[static_cast<size_t>(j)];
      if (pat.is_identity_bits()) continue;
      if (!(pat == cells[static_cast<size_t>(j + b)])) continue;
      PauliOp beta(lat.n_qubits());
      for (int64_t i = 0; i < L; ++i) {
        int64_t src = j + ((i - j) % b + b) % b;
        const PauliOp& cp = cells[static_cast<size_t>(src)];
        for (size_t s = 0; s < lat.cell_size; ++s)
          beta.set_letter(lat.qubit(line_cell(i), s), cp.letter(s));
      }
      if (!detail::in_centralizer(g, beta)) continue;
      if (!(translate(beta, axis, b, lat).same_bits(beta))) continue;
      out.beta = beta;
      out.period = b;
      residual = u * beta;
      residual.set_phase_exp(0);
      took = true;
      break;
    }
    if (took) break;
  }

  // Shrink the remainder toward a 2v-cell window by multiplying in
  // stabilizer elements that erase its leading cell.
  const int64_t window = 2 * static_cast<int64_t>(lat.cell_size);
  auto span_of = [&](const PauliOp& p) -> std::pair<int64_t, int64_t> {
    // (start, length) of the support in unwrapped line coordinates.
    std::vector<PauliOp> pc = patterns(p);
    int64_t start = detail::unwrap_start(pc);
    int64_t first = -1, last = -1;
    for (int64_t d = 0; d < L; ++d) {
      if (!pc[static_cast<size_t>((start + d) % L)].is_identity_bits()) {
        if (first < 0) first = d;
        last = d;
      }
    }
    if (first < 0) return {0, 0};
    return {(start + first) % L, last - first + 1};
  };
  auto [start, span] = span_of(residual);
  int64_t guard = 4 * L + 8;
  while (span > window && guard-- > 0) {
    // Stabilizer-span elements supported on line cells [start, start+W]
    // whose leading cell matches the residual's.
    bool advanced = false;
    for (int64_t W = 1; W < span && !advanced; ++W) {
      Support inside;
      for (int64_t d = 0; d <= W; ++d) {
        Cell c = line_cell(start + d);
        for (size_t s = 0; s < lat.cell_size; ++s) inside.push_back(lat.qubit(c, s));
      }
      inside = make_support(std::move(inside));
      // Basis of stabilizer elements supported inside the window.
      std::vector<PauliOp> rows = g.basis();
      std::vector<PauliOp> local;
      {
        std::vector<bool> inw(lat.n_qubits(), false);
        for (size_t q : inside) inw[q] = true;
        std::vector<bool> used(rows.size(), false);
        for (size_t q = 0; q < lat.n_qubits(); ++q) {
          if (inw[q]) continue;
          for (unsigned half = 0; half < 2; ++half) {
            size_t piv = rows.size();
            for (size_t r = 0; r < rows.size(); ++r) {
              bool bit = half == 0 ? rows[r].x_bit(q) : rows[r].z_bit(q);
              if (!used[r] && bit) {
                piv = r;
                break;
              }
            }
            if (piv == rows.size()) continue;
            for (size_t r = 0; r < rows.size(); ++r) {
              bool bit = half == 0 ? rows[r].x_bit(q) : rows[r].z_bit(q);
              if (r != piv && !used[r] && bit) {
                rows[r] = rows[r] * rows[piv];
                rows[r].set_phase_exp(0);
              }
            }
            used[piv] = true;
          }
        }
        for (size_t r = 0; r < rows.size(); ++r)
          if (!used[r] && !rows[r].is_identity_bits()) local.push_back(rows[r]);
      }
      if (local.empty()) continue;
      // Solve for a combination matching the residual on the leading cell.
      PauliOp target = detail::cell_pattern(residual, lat, line_cell(start));
      std::vector<PauliOp> lead;
      for (const auto& rr : local) lead.push_back(detail::cell_pattern(rr, lat, line_cell(start)));
      // Gaussian elimination on the leading-cell patterns with combo tracking.
      size_t nl = local.size();
      std::vector<PauliOp> pat = lead;
      std::vector<std::vector<char>> combo(nl, std::vector<char>(nl, 0));
      for (size_t i = 0; i < nl; ++i) combo[i][i] = 1;
      PauliOp want = target;
      std::vector<char> want_combo(nl, 0);
      for (size_t col = 0; col < 2 * lat.cell_size; ++col) {
        size_t piv = nl;
        for (size_t r = 0; r < nl; ++r)
          if (pat[r].pivot_column() == col) {
            piv = r;
            break;
          }
        if (piv == nl) continue;
        for (size_t r = 0; r < nl; ++r) {
          if (r != piv && pat[r].get_column(col)) {
            pat[r] = pat[r] * pat[piv];
            pat[r].set_phase_exp(0);
            for (size_t t = 0; t < nl; ++t) combo[r][t] ^= combo[piv][t];
          }
        }
        if (want.get_column(col)) {
          want = want * pat[piv];
          want.set_phase_exp(0);
          for (size_t t = 0; t < nl; ++t) want_combo[t] ^= combo[piv][t];
        }
      }
      if (!want.is_identity_bits()) continue;  // leading cell not erasable here
      PauliOp eraser = PauliOp::identity(lat.n_qubits());
      for (size_t t = 0; t < nl; ++t)
        if (want_combo[t]) eraser = eraser * local[t];
      eraser.set_phase_exp(0);
      residual = residual * eraser;
      residual.set_phase_exp(0);
      auto [ns, nspan] = span_of(residual);
      if (nspan < span || (nspan == span && ns != start)) {
        start = ns;
        span = nspan;
        advanced = true;
      } else {
        residual = residual * eraser;  // undo: no progress
        residual.set_phase_exp(0);
      }
    }
    if (!advanced) break;
  }
  out.alpha = residual;
  out.stalled = span > window;
  return out;
}

// ---------------------------------------------------------------------------
// One-dimensional normal form (disentangling)
// ---------------------------------------------------------------------------

/// GF(2) matrix acting on cell coordinates (column c = 2s for x_s, 2s+1 for
/// z_s); rows_ hold the images of the basis vectors, so apply() is M * w.
struct SymplecticMap {
  size_t n_bits = 0;
  std::vector<uint64_t> rows;  // rows[i] = image coordinates of basis vector i

  static SymplecticMap identity(size_t n_bits) {
    SymplecticMap m;
    m.n_bits = n_bits;
    m.rows.resize(n_bits);
    for (size_t i = 0; i < n_bits; ++i) m.rows[i] = uint64_t{1} << i;
    return m;
  }

  uint64_t apply(uint64_t w) const {
    uint64_t out = 0;
    for (size_t i = 0; i < n_bits; ++i)
      if (w & (uint64_t{1} << i)) out ^= rows[i];
    return out;
  }
};

/// One-dimensional normal-form result: the generator set is mapped by a
/// translation-invariant cell map onto ferromagnetic pairs, neighbor Z/X
/// pairs and frozen single-cell directions; neighbor CNOT maps then fully
/// decouple the short-range pairs.
struct NormalFormReport {
  size_t ferromagnetic_pairs = 0;
  size_t short_range_pairs = 0;
  size_t single_cell = 0;
  SymplecticMap cell_map;                                  // applied at every cell
  std::vector<std::pair<size_t, size_t>> cnot_pairs;       // (site@j -> site@j+1)
  bool verified = false;
  std::string script;
};

namespace detail {

inline uint64_t cell_bits(const PauliOp& p, size_t v, size_t cell) {
  uint64_t w = 0;
  for (size_t s = 0; s < v; ++s) {
    if (p.x_bit(cell * v + s)) w |= uint64_t{1} << (2 * s);
    if (p.z_bit(cell * v + s)) w |= uint64_t{1} << (2 * s + 1);
  }
  return w;
}

inline unsigned sympl_bits(uint64_t a, uint64_t b) {
  // Interleaved (x, z) per site: swap halves of b and take the dot product.
  uint64_t swapped = ((b & 0x5555555555555555ull) << 1) | ((b >> 1) & 0x5555555555555555ull);
  return static_cast<unsigned>(std::popcount(a & swapped) & 1u);
}

/// Solves rows * g = rhs over GF(2) where row i constrains sympl(basis[i], g).
inline std::optional<uint64_t> solve_symplectic(const std::vector<uint64_t>& basis,
                                                const std::vector<unsigned>& rhs,
                                                size_t n_bits) {
  // Convert symplectic constraints into plain linear ones by swapping halves.
  size_t rows = basis.size();
  std::vector<uint64_t> m(rows);
  std::vector<unsigned> b = rhs;
  for (size_t i = 0; i < rows; ++i) {
    uint64_t v = basis[i];
    m[i] = ((v & 0x5555555555555555ull) << 1) | ((v >> 1) & 0x5555555555555555ull);
  }
  std::vector<int> pivot_of_col(n_bits, -1);
  size_t next = 0;
  for (size_t c = 0; c < n_bits && next < rows; ++c) {
    size_t sel = next;
    while (sel < rows && !((m[sel] >> c) & 1u)) ++sel;
    if (sel == rows) continue;
    std::swap(m[next], m[sel]);
    std::swap(b[next], b[sel]);
    for (size_t r = 0; r < rows; ++r)
      if (r != next && ((m[r] >> c) & 1u)) {
        m[r] ^= m[next];
        b[r] ^= b[next];
      }
    pivot_of_col[c] = static_cast<int>(next);
    ++next;
  }
  for (size_t r = next; r < rows; ++r)
    if (b[r]) return std::nullopt;
  uint64_t g = 0;
  for (size_t c = 0; c < n_bits; ++c)
    if (pivot_of_col[c] >= 0 && b[static_cast<size_t>(pivot_of_col[c])]) g |= uint64_t{1} << c;
  return g;
}

}  // namespace detail

inline NormalFormReport disentangle_1d(const Model& model, int64_t verify_extent = 6);

namespace detail {

/// Renders the script lines for one cell map and the CNOT pair maps on an
/// extent of n cells.
inline std::string render_script(const SymplecticMap& m,
                                 const std::vector<std::pair<size_t, size_t>>& cnots,
                                 size_t v, int64_t n) {
  std::ostringstream os;
  auto bits = [&](uint64_t w, size_t count) {
    std::string s;
    for (size_t i = 0; i < count; ++i) s.push_back((w >> i) & 1u ? '1' : '0');
    return s;
  };
  bool identity = true;
  for (size_t i = 0; i < m.n_bits; ++i)
    if (m.rows[i] != (uint64_t{1} << i)) identity = false;
  if (!identity) {
    for (int64_t c = 0; c < n; ++c) {
      os << "cellmap " << c;
      for (size_t i = 0; i < m.n_bits; ++i) os << " " << bits(m.rows[i], m.n_bits);
      os << "\n";
    }
  }
  for (auto [a, b] : cnots) {
    // CNOT from site a of cell j to site b of cell j+1 as a 4v x 4v map.
    size_t nb = 4 * v;
    SymplecticMap p = SymplecticMap::identity(nb);
    size_t xa = 2 * a, za = 2 * a + 1;
    size_t xb = 2 * v + 2 * b, zb = 2 * v + 2 * b + 1;
    // Conjugation by CNOT(control a, target b'): X_a -> X_a X_b', Z_b' -> Z_a Z_b'.
    p.rows[xa] ^= uint64_t{1} << xb;
    p.rows[zb] ^= uint64_t{1} << za;
    for (int64_t c = 0; c < n; ++c) {
      os << "pairmap " << c << " " << (c + 1) % n;
      for (size_t i = 0; i < nb; ++i) os << " " << bits(p.rows[i], nb);
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace detail

inline NormalFormReport disentangle_1d(const Model& model, int64_t verify_extent) {
  if (model.dim != 1) throw Error("disentangle: needs a one-dimensional model");
  if (!model.is_local())
    throw Error("disentangle: templates exceed the two-cell window; coarse-grain first");
  const size_t v = model.cell_size;
  if (2 * v > 30) throw Error("disentangle: cell too large");
  // STS precondition: translation equivalence on the verification extent.
  StabilizerGroup probe = build_group(model, {verify_extent, 1});
  CanonicalSet probe_cs = canonical_logicals(probe);
  if (!check_translation_equivalence(probe, probe_cs)[0])
    throw NotStsError("not an STS model: translation equivalence fails");
  const size_t k = probe.logical_count();

  // Window rows (alpha | beta) as 2v-qubit operators: left cell then right.
  std::vector<PauliOp> rows;
  for (const auto& t : model.templates) {
    PauliOp r(2 * v);
    bool single = t.reach(0) == 0;
    for (const auto& term : t.terms)
      r.mul_letter(static_cast<size_t>(term.offset[0]) * v + term.site, term.letter);
    r.set_phase_exp(0);
    rows.push_back(r);
    if (single) {
      PauliOp shifted(2 * v);
      for (const auto& term : t.terms) shifted.mul_letter(v + term.site, term.letter);
      shifted.set_phase_exp(0);
      rows.push_back(shifted);
    }
  }

  auto alpha_bits = [&](const PauliOp& r) { return detail::cell_bits(r, v, 0); };
  auto beta_bits = [&](const PauliOp& r) { return detail::cell_bits(r, v, 1); };

  // Independent singles: combinations with an empty right half (plus the
  // mirrored left-half kernel, which generates the same subgroup).
  detail::BitBasis win(2 * v);
  std::vector<PauliOp> indep;
  for (const auto& r : rows)
    if (win.insert(r)) indep.push_back(win.rows().back());
  detail::BitBasis single_span(v);
  {
    // Kernel of the beta side over the independent rows.
    size_t nr = indep.size();
    for (uint32_t mask = 1; mask < (1u << nr); ++mask) {
      PauliOp acc(2 * v);
      for (size_t i = 0; i < nr; ++i)
        if (mask & (1u << i)) acc = acc * indep[i];
      acc.set_phase_exp(0);
      uint64_t a = alpha_bits(acc), b = beta_bits(acc);
      if (b == 0 && a != 0) {
        PauliOp s(v);
        for (size_t q = 0; q < v; ++q) s.set_letter(q, acc.letter(q));
        single_span.insert(s);
      }
      if (a == 0 && b != 0) {
        PauliOp s(v);
        for (size_t q = 0; q < v; ++q) s.set_letter(q, acc.letter(v + q));
        single_span.insert(s);
      }
    }
  }
  std::vector<PauliOp> singles = single_span.rows();
  const size_t s_count = singles.size();

  // Quotient rows by the singles on both halves.
  auto reduce_half = [&](PauliOp r) {
    PauliOp left(v), right(v);
    for (size_t q = 0; q < v; ++q) {
      left.set_letter(q, r.letter(q));
      right.set_letter(q, r.letter(v + q));
    }
    left = single_span.reduce(left);
    right = single_span.reduce(right);
    PauliOp out(2 * v);
    for (size_t q = 0; q < v; ++q) {
      out.set_letter(q, left.letter(q));
      out.set_letter(v + q, right.letter(q));
    }
    return out;
  };
  std::vector<PauliOp> quo;
  {
    detail::BitBasis qb(2 * v);
    for (const auto& r : indep) {
      PauliOp rr = reduce_half(r);
      if (qb.insert(rr)) quo.push_back(qb.rows().back());
    }
  }

  // Ferromagnetic directions: combinations whose two halves agree mod the
  // singles. Enumerate the quotient row space (it has at most 2v rows).
  std::vector<PauliOp> ferro_dirs;
  detail::BitBasis ferro_span(v);
  std::vector<PauliOp> pair_rows;
  {
    size_t nr = quo.size();
    if (nr > 24) throw StructuralError("disentangle: window row space too large");
    detail::BitBasis consumed(2 * v);
    for (uint32_t mask = 1; mask < (1u << nr); ++mask) {
      PauliOp acc(2 * v);
      for (size_t i = 0; i < nr; ++i)
        if (mask & (1u << i)) acc = acc * quo[i];
      acc = reduce_half(acc);
      acc.set_phase_exp(0);
      uint64_t a = alpha_bits(acc), b = beta_bits(acc);
      if (a == b && a != 0) {
        PauliOp dir(v);
        for (size_t q = 0; q < v; ++q) dir.set_letter(q, acc.letter(q));
        if (ferro_span.insert(dir)) {
          ferro_dirs.push_back(ferro_span.rows().back());
          consumed.insert(acc);
        }
      }
    }
    for (const auto& r : quo) {
      PauliOp rr = consumed.reduce(r);
      if (!rr.is_identity_bits() && consumed.insert(rr)) pair_rows.push_back(rr);
    }
  }
  const size_t k_ferro = ferro_dirs.size();
  if (k_ferro != k)
    throw StructuralError("disentangle: ferromagnetic directions (" +
                          std::to_string(k_ferro) + ") disagree with k (" +
                          std::to_string(k) + ")");
  if ((v - s_count - k_ferro) % 2 != 0)
    throw StructuralError("disentangle: v - k odd after removing single-cell stabilizers");

  // Pair the remaining rows with the symplectic Gram-Schmidt on the left
  // halves; the right halves inherit the same pattern.
  std::vector<std::pair<PauliOp, PauliOp>> pairs;
  {
    std::vector<PauliOp> work = pair_rows;
    while (!work.empty()) {
      PauliOp u = work.front();
      work.erase(work.begin());
      size_t partner = work.size();
      for (size_t j = 0; j < work.size(); ++j)
        if (detail::sympl_bits(alpha_bits(u), alpha_bits(work[j]))) {
          partner = j;
          break;
        }
      if (partner == work.size())
        throw StructuralError("disentangle: unpaired short-range row");
      PauliOp w = work[partner];
      work.erase(work.begin() + static_cast<std::ptrdiff_t>(partner));
      for (auto& x : work) {
        if (detail::sympl_bits(alpha_bits(x), alpha_bits(w))) x = x * u;
        if (detail::sympl_bits(alpha_bits(x), alpha_bits(u))) x = x * w;
        x = reduce_half(x);
        x.set_phase_exp(0);
      }
      pairs.emplace_back(u, w);
    }
  }
  const size_t t_pairs = pairs.size();
  if (2 * t_pairs != v - s_count - k_ferro)
    throw StructuralError("disentangle: pair count mismatch");

  // Assemble the target symplectic basis: e_c/f_c per site.
  std::vector<uint64_t> e(v, 0), f(v, 0);
  std::vector<char> have_f(v, 0);
  size_t site = 0;
  for (const auto& d : ferro_dirs) e[site++] = detail::cell_bits(d, v, 0);
  std::vector<std::pair<size_t, size_t>> cnot_pairs;
  for (const auto& [ru, rw] : pairs) {
    size_t a = site, b = site + 1;
    e[a] = alpha_bits(ru);
    f[a] = alpha_bits(rw);
    e[b] = beta_bits(ru);
    f[b] = beta_bits(rw);
    have_f[a] = have_f[b] = 1;
    cnot_pairs.emplace_back(a, b);
    site += 2;
  }
  for (const auto& s : singles) e[site++] = detail::cell_bits(s, v, 0);
  // Partners for the isotropic directions (ferro + singles), then sanity.
  for (size_t c = 0; c < v; ++c) {
    if (have_f[c]) continue;
    std::vector<uint64_t> basis;
    std::vector<unsigned> rhs;
    for (size_t d = 0; d < v; ++d) {
      basis.push_back(e[d]);
      rhs.push_back(d == c ? 1u : 0u);
      if (have_f[d] || (d < c && !have_f[d])) {
        basis.push_back(f[d]);
        rhs.push_back(0u);
      }
    }
    auto g = detail::solve_symplectic(basis, rhs, 2 * v);
    if (!g) throw StructuralError("disentangle: symplectic completion failed");
    f[c] = *g;
    have_f[c] = 1;
  }

  // Cell map M: e_c -> Z_c, f_c -> X_c. Columns of B hold the preimages.
  SymplecticMap cell_map = SymplecticMap::identity(2 * v);
  {
    // Solve M * e_c = z_c and M * f_c = x_c: rows of M from the inverse of
    // the matrix whose columns are (e_1, f_1, ..., e_v, f_v).
    size_t nb = 2 * v;
    std::vector<uint64_t> cols(nb), target(nb);
    for (size_t c = 0; c < v; ++c) {
      cols[2 * c] = e[c];
      target[2 * c] = uint64_t{1} << (2 * c + 1);  // Z_c
      cols[2 * c + 1] = f[c];
      target[2 * c + 1] = uint64_t{1} << (2 * c);  // X_c
    }
    // Gauss-Jordan: [cols | target] -> [I | M^T-ish]; track images.
    std::vector<uint64_t> m = cols, img = target;
    std::vector<int> piv(nb, -1);
    size_t next = 0;
    for (size_t c = 0; c < nb && next < nb; ++c) {
      size_t sel = next;
      while (sel < nb && !((m[sel] >> c) & 1u)) ++sel;
      if (sel == nb) continue;
      std::swap(m[next], m[sel]);
      std::swap(img[next], img[sel]);
      for (size_t r = 0; r < nb; ++r)
        if (r != next && ((m[r] >> c) & 1u)) {
          m[r] ^= m[next];
          img[r] ^= img[next];
        }
      piv[c] = static_cast<int>(next);
      ++next;
    }
    if (next != nb) throw StructuralError("disentangle: basis not invertible");
    // Now m[piv[c]] = unit c and img[piv[c]] = image of unit c under M.
    for (size_t c = 0; c < nb; ++c) cell_map.rows[c] = img[static_cast<size_t>(piv[c])];
  }

  NormalFormReport rep;
  rep.ferromagnetic_pairs = k_ferro;
  rep.short_range_pairs = t_pairs;
  rep.single_cell = s_count;
  rep.cell_map = cell_map;
  rep.cnot_pairs = cnot_pairs;
  rep.script = detail::render_script(cell_map, cnot_pairs, v, verify_extent);

  // Verification: replay the script on the generator matrix and compare
  // row spans with the normal form at the verification extent.
  {
    Lattice lat = model.lattice({verify_extent, 1});
    auto apply_cell_map = [&](const PauliOp& p) {
      PauliOp out(lat.n_qubits());
      for (int64_t c = 0; c < verify_extent; ++c) {
        uint64_t w = 0;
        for (size_t s = 0; s < v; ++s) {
          size_t q = lat.qubit({c, 0}, s);
          if (p.x_bit(q)) w |= uint64_t{1} << (2 * s);
          if (p.z_bit(q)) w |= uint64_t{1} << (2 * s + 1);
        }
        uint64_t u2 = cell_map.apply(w);
        for (size_t s = 0; s < v; ++s) {
          size_t q = lat.qubit({c, 0}, s);
          unsigned x = (u2 >> (2 * s)) & 1u, z = (u2 >> (2 * s + 1)) & 1u;
          out.set_letter(q, static_cast<Letter>(x | (z << 1)));
        }
      }
      return out;
    };
    auto apply_cnots = [&](PauliOp p) {
      // Conjugation by CNOT(a@c -> b@c+1) on bit vectors: x_a' += x picks up
      // on b, z_b' propagates onto a.
      for (auto [a, b] : cnot_pairs) {
        PauliOp out(lat.n_qubits());
        for (int64_t c = 0; c < verify_extent; ++c) {
          for (size_t s = 0; s < v; ++s) {
            size_t q = lat.qubit({c, 0}, s);
            unsigned x = p.x_bit(q), z = p.z_bit(q);
            if (x) {
              out = out * PauliOp::single(lat.n_qubits(), q, Letter::X);
              if (s == a)
                out = out * PauliOp::single(lat.n_qubits(), lat.qubit({c + 1, 0}, b), Letter::X);
            }
            if (z) {
              out = out * PauliOp::single(lat.n_qubits(), q, Letter::Z);
              if (s == b)
                out = out * PauliOp::single(lat.n_qubits(), lat.qubit({c - 1, 0}, a), Letter::Z);
            }
          }
        }
        out.set_phase_exp(0);
        p = out;
      }
      return p;
    };
    detail::BitBasis transformed(lat.n_qubits());
    for (const auto& gen : all_generators(model.templates, lat))
      transformed.insert(apply_cnots(apply_cell_map(gen)));
    // Normal form target: decoupled after the CNOT stage.
    detail::BitBasis target(lat.n_qubits());
    for (int64_t c = 0; c < verify_extent; ++c) {
      for (size_t p = 0; p < k_ferro; ++p) {
        PauliOp zz(lat.n_qubits());
        zz.set_letter(lat.qubit({c, 0}, p), Letter::Z);
        zz.set_letter(lat.qubit({c + 1, 0}, p), Letter::Z);
        target.insert(zz);
      }
      for (auto [a, b] : cnot_pairs) {
        target.insert(PauliOp::single(lat.n_qubits(), lat.qubit({c, 0}, a), Letter::X));
        target.insert(PauliOp::single(lat.n_qubits(), lat.qubit({c, 0}, b), Letter::Z));
      }
      for (size_t s = 0; s < s_count; ++s) {
        size_t site_idx = v - s_count + s;
        target.insert(PauliOp::single(lat.n_qubits(), lat.qubit({c, 0}, site_idx), Letter::Z));
      }
    }
    rep.verified = transformed.rank() == target.rank();
    if (rep.verified)
      for (const auto& row : transformed.rows())
        if (!target.reduce(row).is_identity_bits()) rep.verified = false;
  }
  if (!rep.verified)
    throw StructuralError("disentangle: script verification failed");
  return rep;
}

}  // namespace sts
