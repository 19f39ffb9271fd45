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
#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sts {

/// Base class for all errors thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched qubit counts between two operators.
struct DimensionError : Error {
  using Error::Error;
};

enum class Letter : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline char letter_char(Letter l) {
  switch (l) {
    case Letter::I: return '_';
    case Letter::X: return 'X';
    case Letter::Z: return 'Z';
    case Letter::Y: return 'Y';
  }
  return '?';
}

/// Sorted, duplicate-free list of qubit indices.
using Support = std::vector<size_t>;

inline Support make_support(std::vector<size_t> idx) {
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

namespace detail {

inline size_t word_count(size_t n_bits) { return (n_bits + 63) / 64; }

inline size_t popcount_and(const std::vector<uint64_t>& a,
                           const std::vector<uint64_t>& b) {
  size_t c = 0;
  for (size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

}  // namespace detail

/// An N-qubit Pauli operator in binary symplectic form.
///
/// The operator equals i^phase * (tensor product of the Hermitian letters
/// I, X, Y, Z given per qubit by the (x, z) bit pair: (1,0)=X, (0,1)=Z,
/// (1,1)=Y). Immutable by convention: operations return new values.
class PauliOp {
 public:
  PauliOp() = default;

  explicit PauliOp(size_t n_qubits)
      : n_(n_qubits),
        x_(detail::word_count(n_qubits), 0),
        z_(detail::word_count(n_qubits), 0),
        phase_(0) {}

  static PauliOp identity(size_t n_qubits) { return PauliOp(n_qubits); }

  /// Single-letter constructor: the given letter on qubit q, I elsewhere.
  static PauliOp single(size_t n_qubits, size_t q, Letter l) {
    PauliOp p(n_qubits);
    p.set_letter(q, l);
    return p;
  }

  size_t n_qubits() const { return n_; }
  unsigned phase_exp() const { return phase_; }
  void set_phase_exp(unsigned p) { phase_ = p & 3u; }

  bool x_bit(size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1u; }
  bool z_bit(size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1u; }

  Letter letter(size_t q) const {
    return static_cast<Letter>((x_bit(q) ? 1 : 0) | (z_bit(q) ? 2 : 0));
  }

  /// Overwrites the letter at q without touching the phase.
  void set_letter(size_t q, Letter l) {
    uint64_t mask = uint64_t{1} << (q & 63);
    auto li = static_cast<uint8_t>(l);
    if (li & 1)
      x_[q >> 6] |= mask;
    else
      x_[q >> 6] &= ~mask;
    if (li & 2)
      z_[q >> 6] |= mask;
    else
      z_[q >> 6] &= ~mask;
  }

  /// Multiplies the letter at q onto the existing one, tracking the i-phase.
  void mul_letter(size_t q, Letter l) {
    Letter a = letter(q);
    unsigned xa = static_cast<uint8_t>(a) & 1, za = (static_cast<uint8_t>(a) >> 1) & 1;
    unsigned xb = static_cast<uint8_t>(l) & 1, zb = (static_cast<uint8_t>(l) >> 1) & 1;
    unsigned xc = xa ^ xb, zc = za ^ zb;
    // i-exponent of L(a)L(b) relative to L(a+b); see operator*.
    phase_ = (phase_ + xa * za + xb * zb + 2 * za * xb + 3 * (xc * zc)) & 3u;
    set_letter(q, static_cast<Letter>(xc | (zc << 1)));
  }

  bool is_identity_bits() const {
    for (auto w : x_)
      if (w) return false;
    for (auto w : z_)
      if (w) return false;
    return true;
  }

  bool is_identity() const { return phase_ == 0 && is_identity_bits(); }

  /// Number of qubits with a non-trivial letter.
  size_t weight() const {
    size_t c = 0;
    for (size_t i = 0; i < x_.size(); ++i) c += std::popcount(x_[i] | z_[i]);
    return c;
  }

  Support support() const {
    Support s;
    for (size_t q = 0; q < n_; ++q)
      if (x_bit(q) || z_bit(q)) s.push_back(q);
    return s;
  }

  /// Group product a*b with exact phase bookkeeping.
  friend PauliOp operator*(const PauliOp& a, const PauliOp& b) {
    if (a.n_ != b.n_) throw DimensionError("pauli product: qubit count mismatch");
    PauliOp c(a.n_);
    for (size_t i = 0; i < a.x_.size(); ++i) {
      c.x_[i] = a.x_[i] ^ b.x_[i];
      c.z_[i] = a.z_[i] ^ b.z_[i];
    }
    // Per qubit, with L(x,z) = i^{xz} X^x Z^z:
    //   L(a)L(b) = i^{ xa za + xb zb + 2 za xb - xc zc } L(c),  c = a^b.
    size_t c1 = detail::popcount_and(a.x_, a.z_);
    size_t c2 = detail::popcount_and(b.x_, b.z_);
    size_t c3 = detail::popcount_and(a.z_, b.x_);
    size_t c4 = detail::popcount_and(c.x_, c.z_);
    c.phase_ = (a.phase_ + b.phase_ + c1 + c2 + 2 * c3 + 3 * c4) & 3u;
    return c;
  }

  /// Hermitian adjoint; for phase in {0,2} this is the operator itself.
  PauliOp adjoint() const {
    PauliOp p = *this;
    p.phase_ = (4u - phase_) & 3u;
    return p;
  }

  bool commutes_with(const PauliOp& o) const {
    if (n_ != o.n_) throw DimensionError("commutes: qubit count mismatch");
    size_t s = detail::popcount_and(x_, o.z_) + detail::popcount_and(z_, o.x_);
    return (s & 1u) == 0;
  }

  /// Symplectic inner product (0 = commute, 1 = anticommute).
  unsigned symplectic(const PauliOp& o) const { return commutes_with(o) ? 0u : 1u; }

  /// Keeps the letters on `s`, identity elsewhere. The phase is reset to 0:
  /// restriction is a support operation, not a group homomorphism.
  PauliOp restrict_to(const Support& s) const {
    PauliOp p(n_);
    for (size_t q : s) {
      if (q >= n_) throw Error("restrict: qubit index out of range");
      p.set_letter(q, letter(q));
    }
    return p;
  }

  /// Applies a qubit permutation: letter at q moves to perm[q].
  PauliOp permuted(const std::vector<size_t>& perm) const {
    PauliOp p(n_);
    for (size_t q = 0; q < n_; ++q) {
      Letter l = letter(q);
      if (l != Letter::I) p.set_letter(perm[q], l);
    }
    p.phase_ = phase_;
    return p;
  }

  bool operator==(const PauliOp& o) const {
    return n_ == o.n_ && phase_ == o.phase_ && x_ == o.x_ && z_ == o.z_;
  }
  bool operator!=(const PauliOp& o) const { return !(*this == o); }

  bool same_bits(const PauliOp& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }

  /// First qubit with a non-trivial letter at or after `from`, or n_qubits.
  size_t first_nontrivial(size_t from = 0) const {
    for (size_t w = from >> 6; w < x_.size(); ++w) {
      uint64_t bits = x_[w] | z_[w];
      if (w == (from >> 6)) bits &= ~uint64_t{0} << (from & 63);
      if (bits) {
        size_t q = (w << 6) + static_cast<size_t>(std::countr_zero(bits));
        return q < n_ ? q : n_;
      }
    }
    return n_;
  }

  /// Leading pivot column with x/z interleaved per qubit (2q for x, 2q+1
  /// for z); 2N if the bits are all zero.
  size_t pivot_column() const {
    for (size_t q = 0; q < n_; ++q) {
      if (x_bit(q)) return 2 * q;
      if (z_bit(q)) return 2 * q + 1;
    }
    return 2 * n_;
  }

  bool get_column(size_t col) const {
    return (col & 1u) ? z_bit(col >> 1) : x_bit(col >> 1);
  }

 private:
  size_t n_ = 0;
  std::vector<uint64_t> x_;
  std::vector<uint64_t> z_;
  unsigned phase_ = 0;
};

/// Renders as sign prefix plus one letter per qubit, underscore for I,
/// e.g. "+XZX__" or "-i_Y___".
inline std::string render(const PauliOp& p) {
  static const char* signs[4] = {"+", "+i", "-", "-i"};
  std::string s = signs[p.phase_exp()];
  s.reserve(s.size() + p.n_qubits());
  for (size_t q = 0; q < p.n_qubits(); ++q) s.push_back(letter_char(p.letter(q)));
  return s;
}

/// Parses the grammar emitted by render(); the sign prefix is optional.
inline PauliOp parse_pauli(const std::string& s) {
  size_t i = 0;
  unsigned phase = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    bool neg = s[i] == '-';
    ++i;
    bool imag = i < s.size() && s[i] == 'i';
    if (imag) ++i;
    phase = (neg ? 2u : 0u) + (imag ? 1u : 0u);
  }
  PauliOp p(s.size() - i);
  for (size_t q = 0; i < s.size(); ++i, ++q) {
    switch (s[i]) {
      case '_':
      case 'I': break;
      case 'X': p.set_letter(q, Letter::X); break;
      case 'Y': p.set_letter(q, Letter::Y); break;
      case 'Z': p.set_letter(q, Letter::Z); break;
      default: throw Error(std::string("parse_pauli: bad letter '") + s[i] + "'");
    }
  }
  p.set_phase_exp(phase);
  return p;
}

}  // namespace sts
