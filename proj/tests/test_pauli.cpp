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

#include <random>

#include "gtest/gtest.h"
#include "sts/pauli.hpp"

namespace sts {
namespace {

PauliOp random_pauli(size_t n, std::mt19937& rng) {
  PauliOp p(n);
  std::uniform_int_distribution<int> letter(0, 3), ph(0, 3);
  for (size_t q = 0; q < n; ++q) p.set_letter(q, static_cast<Letter>(letter(rng)));
  p.set_phase_exp(static_cast<unsigned>(ph(rng)));
  return p;
}

// Stabilizers of the five qubit code: S_j = X^j Y^j+1 Y^j+2 X^j+3, cyclic.
PauliOp five_qubit_stab(size_t j) {
  PauliOp p(5);
  p.set_letter(j % 5, Letter::X);
  p.set_letter((j + 1) % 5, Letter::Y);
  p.set_letter((j + 2) % 5, Letter::Y);
  p.set_letter((j + 3) % 5, Letter::X);
  return p;
}

TEST(Pauli, SingleLetterProducts) {
  PauliOp x = PauliOp::single(1, 0, Letter::X);
  PauliOp y = PauliOp::single(1, 0, Letter::Y);
  PauliOp z = PauliOp::single(1, 0, Letter::Z);
  // The fixed convention: X*Z = -iY, Z*X = +iY, X*Y = iZ, Y*X = -iZ,
  // Y*Z = iX, Z*Y = -iX.
  EXPECT_EQ(render(x * z), "-iY");
  EXPECT_EQ(render(z * x), "+iY");
  EXPECT_EQ(render(x * y), "+iZ");
  EXPECT_EQ(render(y * x), "-iZ");
  EXPECT_EQ(render(y * z), "+iX");
  EXPECT_EQ(render(z * y), "-iX");
  EXPECT_TRUE((x * x).is_identity());
  EXPECT_TRUE((y * y).is_identity());
  EXPECT_TRUE((z * z).is_identity());
}

TEST(Pauli, MultiplyExamples) {
  // X(x)I * X(x)I -> identity with phase +1.
  PauliOp xi = parse_pauli("X_");
  EXPECT_TRUE((xi * xi).is_identity());

  // Ferromagnet stabilizer product: Z1 Z2 * Z2 Z3 = Z1 Z3 (1-based).
  EXPECT_EQ(render(parse_pauli("ZZ__") * parse_pauli("_ZZ_")), "+Z_Z_");

  // Five qubit code: S1 S2 S3 S4 S5 = +I.
  PauliOp prod = PauliOp::identity(5);
  for (size_t j = 0; j < 5; ++j) prod = prod * five_qubit_stab(j);
  EXPECT_TRUE(prod.is_identity());
  EXPECT_EQ(prod.phase_exp(), 0u);
}

TEST(Pauli, CommutesExamples) {
  EXPECT_FALSE(parse_pauli("X").commutes_with(parse_pauli("Z")));
  // Five qubit logical pair l = X1 Z2 X3, r = Z1 Y2 Z3 anticommute.
  EXPECT_FALSE(parse_pauli("XZX__").commutes_with(parse_pauli("ZYZ__")));
  // All translations of the XYYX generator commute.
  for (size_t i = 0; i < 5; ++i)
    for (size_t j = 0; j < 5; ++j)
      EXPECT_TRUE(five_qubit_stab(i).commutes_with(five_qubit_stab(j)));
}

TEST(Pauli, RestrictExamples) {
  PauliOp l = parse_pauli("XZX__");
  EXPECT_EQ(render(l.restrict_to({0})), "+X____");
  EXPECT_EQ(render(l.restrict_to({0, 1, 2, 3, 4})), "+XZX__");
  // Restriction resets the phase even when it keeps everything.
  PauliOp m = parse_pauli("-XZX__");
  EXPECT_EQ(m.restrict_to({0, 1, 2, 3, 4}).phase_exp(), 0u);
  EXPECT_THROW(l.restrict_to({7}), Error);
}

TEST(Pauli, WeightExamples) {
  EXPECT_EQ(PauliOp::identity(5).weight(), 0u);
  EXPECT_EQ(parse_pauli("XZX__").weight(), 3u);
  EXPECT_EQ(five_qubit_stab(0).weight(), 4u);
}

TEST(Pauli, AssociativityAndPhaseConsistency) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    size_t n = 1 + static_cast<size_t>(rng() % 70);
    PauliOp p = random_pauli(n, rng), q = random_pauli(n, rng), r = random_pauli(n, rng);
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_TRUE((p * p.adjoint()).is_identity());
    EXPECT_EQ((p * q).n_qubits(), n);
    EXPECT_LE((p * q).weight(), p.weight() + q.weight());
    // commutes == vanishing symplectic product.
    size_t dot = 0;
    for (size_t i = 0; i < n; ++i)
      dot += (p.x_bit(i) && q.z_bit(i)) + (p.z_bit(i) && q.x_bit(i));
    EXPECT_EQ(p.commutes_with(q), dot % 2 == 0);
    // ab = (-1)^sym ba exactly.
    PauliOp ab = p * q, ba = q * p;
    EXPECT_TRUE(ab.same_bits(ba));
    EXPECT_EQ((ab.phase_exp() - ba.phase_exp()) & 3u, p.commutes_with(q) ? 0u : 2u);
  }
}

TEST(Pauli, RenderParseRoundTrip) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    PauliOp p = random_pauli(1 + rng() % 40, rng);
    EXPECT_EQ(parse_pauli(render(p)), p);
  }
  EXPECT_EQ(render(parse_pauli("-i_Y_")), "-i_Y_");
  EXPECT_THROW(parse_pauli("XQ"), Error);
}

TEST(Pauli, DimensionErrors) {
  EXPECT_THROW(parse_pauli("XX") * parse_pauli("X"), DimensionError);
  EXPECT_THROW(parse_pauli("XX").commutes_with(parse_pauli("X")), DimensionError);
}

}  // namespace
}  // namespace sts
