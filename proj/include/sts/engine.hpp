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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sts/lattice.hpp"
#include "sts/pauli.hpp"

namespace sts {

/// Two generators fail to commute: the input is not a stabilizer Hamiltonian.
struct NotStabilizerError : Error {
  using Error::Error;
};
/// The generators multiply to -I: inconsistent signs.
struct SignError : Error {
  using Error::Error;
};

namespace detail {

/// Bits-only reduced row echelon basis over the interleaved column order
/// (2q for x_q, 2q+1 for z_q). Rows are PauliOps with phase forced to 0.
class BitBasis {
 public:
  explicit BitBasis(size_t n_qubits) : n_(n_qubits), pivot_row_(2 * n_qubits, -1) {}

  size_t rank() const { return rows_.size(); }
  const std::vector<PauliOp>& rows() const { return rows_; }

  PauliOp reduce(PauliOp p) const {
    p.set_phase_exp(0);
    for (;;) {
      size_t c = p.pivot_column();
      if (c >= 2 * n_) break;
      int32_t r = pivot_row_[c];
      if (r < 0) break;
      p = p * rows_[static_cast<size_t>(r)];
      p.set_phase_exp(0);
    }
    return p;
  }

  /// Reduces and inserts when independent. Returns true if the rank grew.
  bool insert(PauliOp p) {
    p = reduce(std::move(p));
    size_t c = p.pivot_column();
    if (c >= 2 * n_) return false;
    for (auto& row : rows_) {
      if (row.get_column(c)) {
        row = row * p;
        row.set_phase_exp(0);
      }
    }
    pivot_row_[c] = static_cast<int32_t>(rows_.size());
    rows_.push_back(std::move(p));
    return true;
  }

 private:
  size_t n_;
  std::vector<PauliOp> rows_;
  std::vector<int32_t> pivot_row_;
};

/// Verifies pairwise commutation, looking only at pairs that share support.
/// Throws NotStabilizerError naming the first offending pair.
inline void check_commuting(const std::vector<PauliOp>& rows) {
  if (rows.empty()) return;
  size_t n = rows[0].n_qubits();
  std::vector<std::vector<uint32_t>> at_qubit(n);
  std::vector<uint32_t> seen(rows.size(), UINT32_MAX);
  for (uint32_t i = 0; i < rows.size(); ++i) {
    for (size_t q : rows[i].support()) {
      for (uint32_t j : at_qubit[q]) {
        if (seen[j] == i) continue;
        seen[j] = i;
        if (!rows[i].commutes_with(rows[j]))
          throw NotStabilizerError("not a stabilizer Hamiltonian: generators " +
                                   std::to_string(j) + " and " + std::to_string(i) +
                                   " anticommute");
      }
      at_qubit[q].push_back(i);
    }
  }
}

}  // namespace detail

/// An abelian Pauli group with sign data: generators, a sign-tracked RREF
/// basis, and the lattice the qubits live on. Immutable after build; all
/// queries are const.
class StabilizerGroup {
 public:
  StabilizerGroup(Lattice lat, std::vector<PauliOp> gens)
      : lattice_(std::move(lat)), generators_(std::move(gens)), pivot_row_(0) {
    n_ = lattice_.n_qubits();
    for (const auto& g : generators_)
      if (g.n_qubits() != n_) throw DimensionError("generator size mismatch");
    detail::check_commuting(generators_);
    pivot_row_.assign(2 * n_, -1);
    for (const auto& g : generators_) {
      if (g.phase_exp() & 1u)
        throw SignError("inconsistent signs: generator " + render_small(g) +
                        " is not Hermitian");
      PauliOp r = reduce(g);
      if (r.is_identity_bits()) {
        if (r.phase_exp() != 0)
          throw SignError("inconsistent signs: -I is in the group");
        continue;
      }
      size_t c = r.pivot_column();
      for (auto& row : basis_) {
        if (row.get_column(c)) row = row * r;
      }
      pivot_row_[c] = static_cast<int32_t>(basis_.size());
      basis_.push_back(std::move(r));
    }
  }

  const Lattice& lattice() const { return lattice_; }
  const std::vector<PauliOp>& generators() const { return generators_; }
  const std::vector<PauliOp>& basis() const { return basis_; }
  size_t n_qubits() const { return n_; }
  size_t rank() const { return basis_.size(); }
  size_t logical_count() const { return n_ - rank(); }  // k

  /// Multiplies p down against the basis; the result has no bits in common
  /// with any pivot. p is in <S> iff the residual is exactly +I.
  PauliOp reduce(PauliOp p) const {
    if (p.n_qubits() != n_) throw DimensionError("reduce: size mismatch");
    for (;;) {
      size_t c = p.pivot_column();
      if (c >= 2 * n_) break;
      int32_t r = pivot_row_[c];
      if (r < 0) break;
      p = p * basis_[static_cast<size_t>(r)];
    }
    return p;
  }

  /// Membership in <S> (sign checked) or, with ignore_sign, in <iI, S>.
  bool contains(const PauliOp& p, bool ignore_sign = false) const {
    PauliOp r = reduce(p);
    if (!r.is_identity_bits()) return false;
    return ignore_sign || r.phase_exp() == 0;
  }

  /// Equivalence of logical operators: a ~ b iff ab in <iI, S>.
  bool equivalent(const PauliOp& a, const PauliOp& b) const {
    return contains(a * b, /*ignore_sign=*/true);
  }

 private:
  static std::string render_small(const PauliOp& p) {
    return p.n_qubits() <= 64 ? render(p) : "<operator on " + std::to_string(p.n_qubits()) + " qubits>";
  }

  Lattice lattice_;
  std::vector<PauliOp> generators_;
  std::vector<PauliOp> basis_;
  std::vector<int32_t> pivot_row_;
  size_t n_;
};

/// Builds the group generated by all translations of the templates.
inline StabilizerGroup build_group(const std::vector<GeneratorTemplate>& templates,
                                   const Lattice& lat) {
  return StabilizerGroup(lat, all_generators(templates, lat));
}

inline StabilizerGroup build_group(const Model& m, std::array<int64_t, 2> extent) {
  return build_group(m.templates, m.lattice(extent));
}

/// Basis of the centralizer: all Paulis commuting with every stabilizer.
/// The first rank(S) rows are the stabilizer basis itself; G(C) = N + k.
inline std::vector<PauliOp> centralizer(const StabilizerGroup& g) {
  size_t n = g.n_qubits();
  size_t cols = 2 * n;
  size_t words = (cols + 63) / 64;
  // Constraint rows: symplectic duals of the stabilizer basis, so that
  // "w commutes with s" becomes an ordinary dot product.
  std::vector<std::vector<uint64_t>> m;
  m.reserve(g.rank());
  for (const auto& s : g.basis()) {
    std::vector<uint64_t> row(words, 0);
    for (size_t q = 0; q < n; ++q) {
      if (s.z_bit(q)) row[(2 * q) >> 6] |= uint64_t{1} << ((2 * q) & 63);
      if (s.x_bit(q)) row[(2 * q + 1) >> 6] |= uint64_t{1} << ((2 * q + 1) & 63);
    }
    m.push_back(std::move(row));
  }
  auto get = [&](const std::vector<uint64_t>& r, size_t c) -> bool {
    return (r[c >> 6] >> (c & 63)) & 1u;
  };
  // Full RREF of the constraint matrix.
  std::vector<size_t> pivot_col;
  std::vector<int32_t> col_pivot(cols, -1);
  size_t next = 0;
  for (size_t c = 0; c < cols && next < m.size(); ++c) {
    size_t sel = next;
    while (sel < m.size() && !get(m[sel], c)) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[next], m[sel]);
    for (size_t r = 0; r < m.size(); ++r) {
      if (r != next && get(m[r], c))
        for (size_t w = 0; w < words; ++w) m[r][w] ^= m[next][w];
    }
    col_pivot[c] = static_cast<int32_t>(next);
    pivot_col.push_back(c);
    ++next;
  }
  // Kernel vector per free column.
  detail::BitBasis out(n);
  std::vector<PauliOp> rows = g.basis();
  for (const auto& s : g.basis()) out.insert(s);
  for (size_t f = 0; f < cols; ++f) {
    if (col_pivot[f] >= 0) continue;
    PauliOp v(n);
    auto set_col = [&](size_t c) {
      size_t q = c >> 1;
      v.set_letter(q, static_cast<Letter>(static_cast<uint8_t>(v.letter(q)) ^
                                          ((c & 1u) ? 2u : 1u)));
    };
    set_col(f);
    for (size_t i = 0; i < pivot_col.size(); ++i) {
      if (get(m[i], f)) set_col(pivot_col[i]);
    }
    if (out.insert(v)) rows.push_back(out.rows().back());
  }
  if (rows.size() != n + g.logical_count())
    throw Error("centralizer: dimension mismatch (internal)");
  return rows;
}

/// k anti-commuting logical pairs in canonical commutation pattern.
struct CanonicalSet {
  std::vector<std::pair<PauliOp, PauliOp>> pairs;  // (l_p, r_p)
  size_t size() const { return pairs.size(); }
  std::vector<PauliOp> all() const {
    std::vector<PauliOp> v;
    for (const auto& pr : pairs) {
      v.push_back(pr.first);
      v.push_back(pr.second);
    }
    return v;
  }
};

/// Symplectic Gram-Schmidt over the centralizer modulo the stabilizer
/// rows. Deterministic: rows are processed in basis order and the first
/// anticommuting row is taken as the partner. Phases are normalized to +1.
inline CanonicalSet canonical_logicals(const StabilizerGroup& g) {
  CanonicalSet out;
  if (g.logical_count() == 0) return out;
  detail::BitBasis stab(g.n_qubits());
  for (const auto& s : g.basis()) stab.insert(s);
  std::vector<PauliOp> work;
  for (const auto& c : centralizer(g)) {
    PauliOp r = stab.reduce(c);
    if (!r.is_identity_bits()) work.push_back(std::move(r));
  }
  while (!work.empty()) {
    PauliOp u = work.front();
    work.erase(work.begin());
    if (u.is_identity_bits()) continue;
    size_t partner = work.size();
    for (size_t j = 0; j < work.size(); ++j) {
      if (u.symplectic(work[j])) {
        partner = j;
        break;
      }
    }
    if (partner == work.size()) {
      // Unreachable for a consistent centralizer: the symplectic form on
      // C/S is nondegenerate, so a reduced nonzero row has a partner.
      throw Error("canonical_logicals: centralizer row without partner (internal)");
    }
    PauliOp w = work[partner];
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(partner));
    for (auto& v : work) {
      if (v.symplectic(w)) v = v * u;
      if (v.symplectic(u)) v = v * w;
      v = stab.reduce(v);
    }
    u.set_phase_exp(0);
    w.set_phase_exp(0);
    out.pairs.emplace_back(std::move(u), std::move(w));
  }
  if (out.pairs.size() != g.logical_count())
    throw Error("canonical_logicals: pair count mismatch (internal)");
  return out;
}

/// Rank of the subgroup of span(rows) supported entirely inside `s`:
/// eliminate the complement columns first, then count the rows that ended
/// up with no support outside.
inline size_t restricted_rank(std::vector<PauliOp> rows, const Support& s, size_t n_qubits) {
  std::vector<bool> inside(n_qubits, false);
  for (size_t q : s) {
    if (q >= n_qubits) throw Error("region: qubit index out of range");
    inside[q] = true;
  }
  for (auto& r : rows) r.set_phase_exp(0);
  std::vector<bool> used(rows.size(), false);
  for (size_t q = 0; q < n_qubits; ++q) {
    if (inside[q]) continue;
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
  size_t count = 0;
  for (size_t r = 0; r < rows.size(); ++r)
    if (!used[r] && !rows[r].is_identity_bits()) ++count;
  return count;
}

/// G(S_A): generators of the stabilizer subgroup supported inside s.
inline size_t restriction_rank(const StabilizerGroup& g, const Support& s) {
  return restricted_rank(g.basis(), s, g.n_qubits());
}

/// g_A = G(C_A) - G(S_A): independent logical operators inside s.
inline size_t logical_count_in_region(const StabilizerGroup& g, const Support& s,
                                      const std::vector<PauliOp>& centralizer_rows) {
  return restricted_rank(centralizer_rows, s, g.n_qubits()) - restriction_rank(g, s);
}

inline size_t logical_count_in_region(const StabilizerGroup& g, const Support& s) {
  return logical_count_in_region(g, s, centralizer(g));
}

}  // namespace sts
