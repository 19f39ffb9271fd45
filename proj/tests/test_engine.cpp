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
#include "sts/catalog.hpp"
#include "sts/engine.hpp"

namespace sts {
namespace {

StabilizerGroup build_catalog(const std::string& name, std::array<int64_t, 2> extent) {
  const auto& e = catalog_get(name);
  return build_group(e.model, extent);
}

TEST(Engine, BuildRanks) {
  StabilizerGroup ferro = build_catalog("ferro1d", {8, 1});
  EXPECT_EQ(ferro.rank(), 7u);
  EXPECT_EQ(ferro.logical_count(), 1u);

  StabilizerGroup cluster = build_catalog("cluster1d", {8, 1});
  EXPECT_EQ(cluster.rank(), 8u);
  EXPECT_EQ(cluster.logical_count(), 0u);

  StabilizerGroup toric = build_catalog("toric", {4, 4});
  EXPECT_EQ(toric.logical_count(), 2u);

  StabilizerGroup five = build_catalog("fivequbit", {5, 1});
  EXPECT_EQ(five.rank(), 4u);
  EXPECT_EQ(five.logical_count(), 1u);
}

TEST(Engine, BuildRejectsNonCommuting) {
  Lattice lat = Lattice::chain(1, 3);
  std::vector<GeneratorTemplate> bad = {
      GeneratorTemplate("x", 1, {{{0, 0}, 0, Letter::X}}),
      GeneratorTemplate("z", 1, {{{0, 0}, 0, Letter::Z}})};
  try {
    build_group(bad, lat);
    FAIL() << "expected NotStabilizerError";
  } catch (const NotStabilizerError& err) {
    EXPECT_NE(std::string(err.what()).find("anticommute"), std::string::npos);
  }
}

TEST(Engine, BuildRejectsInconsistentSigns) {
  // X*Z*X merges to -Z at parse time; together with +Z the group holds -I.
  Lattice lat = Lattice::chain(1, 2);
  std::vector<GeneratorTemplate> bad = {
      GeneratorTemplate("plus", 1, {{{0, 0}, 0, Letter::Z}}),
      GeneratorTemplate("minus", 1, {{{0, 0}, 0, Letter::X},
                                     {{0, 0}, 0, Letter::Z},
                                     {{0, 0}, 0, Letter::X}})};
  ASSERT_EQ(bad[1].phase, 2u);
  EXPECT_THROW(build_group(bad, lat), SignError);
  // A lone non-Hermitian generator is rejected as well.
  std::vector<GeneratorTemplate> odd = {
      GeneratorTemplate("xz", 1, {{{0, 0}, 0, Letter::X}, {{0, 0}, 0, Letter::Z}})};
  EXPECT_THROW(build_group(odd, lat), SignError);
}

TEST(Engine, ContainsExamples) {
  StabilizerGroup ferro = build_catalog("ferro1d", {4, 1});
  EXPECT_TRUE(ferro.contains(parse_pauli("Z__Z")));
  EXPECT_FALSE(ferro.contains(parse_pauli("X___")));
  // l T(l) = Z0 Z1 is a stabilizer.
  PauliOp l = parse_pauli("Z___");
  EXPECT_TRUE(ferro.contains(l * translate(l, 0, 1, ferro.lattice())));
  // Signed vs unsigned membership.
  EXPECT_FALSE(ferro.contains(parse_pauli("-Z__Z")));
  EXPECT_TRUE(ferro.contains(parse_pauli("-Z__Z"), /*ignore_sign=*/true));
  EXPECT_THROW(ferro.contains(parse_pauli("Z")), DimensionError);
}

TEST(Engine, ContainsIsMultiplicative) {
  StabilizerGroup toric = build_catalog("toric", {3, 3});
  std::mt19937 rng(3);
  const auto& basis = toric.basis();
  for (int trial = 0; trial < 50; ++trial) {
    PauliOp s = PauliOp::identity(toric.n_qubits());
    PauliOp t = PauliOp::identity(toric.n_qubits());
    for (const auto& row : basis) {
      if (rng() & 1) s = s * row;
      if (rng() & 1) t = t * row;
    }
    EXPECT_TRUE(toric.contains(s));
    EXPECT_TRUE(toric.contains(t));
    EXPECT_TRUE(toric.contains(s * t));
    // Sign-consistency: products of stabilizers never pick up a phase.
    EXPECT_EQ(toric.reduce(s * t).phase_exp(), 0u);
  }
}

TEST(Engine, CentralizerDimensions) {
  StabilizerGroup five = build_catalog("fivequbit", {5, 1});
  EXPECT_EQ(centralizer(five).size(), 6u);  // N + k

  StabilizerGroup ferro = build_catalog("ferro1d", {4, 1});
  EXPECT_EQ(centralizer(ferro).size(), 5u);

  StabilizerGroup trivial(Lattice::chain(1, 3), {});
  EXPECT_EQ(centralizer(trivial).size(), 6u);  // 2N

  // Every centralizer row commutes with every stabilizer row, and the
  // stabilizer basis comes first.
  auto rows = centralizer(five);
  for (const auto& c : rows)
    for (const auto& s : five.basis()) EXPECT_TRUE(c.commutes_with(s));
  for (size_t i = 0; i < five.rank(); ++i) EXPECT_EQ(rows[i], five.basis()[i]);
}

void expect_canonical_pattern(const StabilizerGroup& g, const CanonicalSet& cs) {
  auto ops = cs.all();
  for (size_t i = 0; i < ops.size(); ++i) {
    for (size_t j = 0; j < ops.size(); ++j) {
      bool same_pair = (i / 2) == (j / 2);
      unsigned expected = (same_pair && i != j) ? 1u : 0u;
      EXPECT_EQ(ops[i].symplectic(ops[j]), expected) << i << "," << j;
    }
    for (const auto& s : g.basis()) EXPECT_TRUE(ops[i].commutes_with(s));
  }
  // Independence: no nonempty product of the 2k operators falls in <iI, S>.
  for (uint32_t mask = 1; mask < (1u << ops.size()); ++mask) {
    PauliOp prod = PauliOp::identity(g.n_qubits());
    for (size_t i = 0; i < ops.size(); ++i)
      if (mask & (1u << i)) prod = prod * ops[i];
    EXPECT_FALSE(g.contains(prod, /*ignore_sign=*/true));
  }
}

TEST(Engine, CanonicalLogicalsFerro) {
  StabilizerGroup ferro = build_catalog("ferro1d", {4, 1});
  CanonicalSet cs = canonical_logicals(ferro);
  ASSERT_EQ(cs.size(), 1u);
  expect_canonical_pattern(ferro, cs);
  // The pair is equivalent to (Z0, XXXX) in one or the other order.
  PauliOp z0 = parse_pauli("Z___"), allx = parse_pauli("XXXX");
  bool direct = ferro.equivalent(cs.pairs[0].first, z0) &&
                ferro.equivalent(cs.pairs[0].second, allx);
  bool swapped = ferro.equivalent(cs.pairs[0].first, allx) &&
                 ferro.equivalent(cs.pairs[0].second, z0);
  EXPECT_TRUE(direct || swapped);
}

TEST(Engine, CanonicalLogicalsFiveQubit) {
  StabilizerGroup five = build_catalog("fivequbit", {5, 1});
  CanonicalSet cs = canonical_logicals(five);
  ASSERT_EQ(cs.size(), 1u);
  expect_canonical_pattern(five, cs);
  PauliOp l = parse_pauli("XZX__");
  EXPECT_TRUE(five.equivalent(cs.pairs[0].first, l) ||
              five.equivalent(cs.pairs[0].second, l));
}

TEST(Engine, CanonicalLogicalsToric) {
  StabilizerGroup toric = build_catalog("toric", {4, 4});
  CanonicalSet cs = canonical_logicals(toric);
  ASSERT_EQ(cs.size(), 2u);
  expect_canonical_pattern(toric, cs);
  // Vertical Z strings and horizontal X strings span the logical classes.
  const Lattice& lat = toric.lattice();
  auto vstring = [&](size_t site) {
    PauliOp p(lat.n_qubits());
    for (int64_t j = 0; j < lat.extent[1]; ++j) p.set_letter(lat.qubit({0, j}, site), Letter::Z);
    return p;
  };
  auto hstring = [&](size_t site) {
    PauliOp p(lat.n_qubits());
    for (int64_t i = 0; i < lat.extent[0]; ++i) p.set_letter(lat.qubit({i, 0}, site), Letter::X);
    return p;
  };
  // Each vertical string is a product of canonical operators and stabilizers:
  // reduce it against <S, l1, l2, r1, r2> and expect the identity.
  detail::BitBasis span(lat.n_qubits());
  for (const auto& s : toric.basis()) span.insert(s);
  for (const auto& pr : cs.pairs) {
    span.insert(pr.first);
    span.insert(pr.second);
  }
  for (size_t site = 0; site < 2; ++site) {
    EXPECT_TRUE(span.reduce(vstring(site)).is_identity_bits());
    EXPECT_TRUE(span.reduce(hstring(site)).is_identity_bits());
  }
}

TEST(Engine, CanonicalEmptyForClusterState) {
  StabilizerGroup cluster = build_catalog("cluster1d", {8, 1});
  EXPECT_EQ(canonical_logicals(cluster).size(), 0u);
}

TEST(Engine, RestrictionRankExamples) {
  StabilizerGroup five = build_catalog("fivequbit", {5, 1});
  // Derived oracle: enumerate all 2^4 products of the independent
  // generators and keep those supported in A = {0,1,2}.
  size_t oracle = 0;
  {
    std::vector<PauliOp> inside;
    for (uint32_t mask = 0; mask < 16; ++mask) {
      PauliOp p = PauliOp::identity(5);
      for (size_t j = 0; j < 4; ++j)
        if (mask & (1u << j)) p = p * five.generators()[j];
      if (!p.is_identity_bits() && p.support().back() <= 2) inside.push_back(p);
    }
    oracle = inside.size();  // distinct nonzero elements, so rank = log2(count+1)
  }
  EXPECT_EQ(oracle, 0u);
  EXPECT_EQ(restriction_rank(five, {0, 1, 2}), 0u);
  EXPECT_EQ(restriction_rank(five, {0, 1, 2, 3, 4}), five.rank());

  // Cluster chain: a block of j consecutive qubits holds j-2 stabilizers
  // for 2 <= j <= N-2 and j-1 at j = N-1 (the complement is one qubit).
  StabilizerGroup cluster = build_catalog("cluster1d", {8, 1});
  for (size_t j = 2; j <= 6; ++j) {
    Support s;
    for (size_t q = 0; q < j; ++q) s.push_back(q);
    EXPECT_EQ(restriction_rank(cluster, s), j - 2) << j;
  }
  EXPECT_EQ(restriction_rank(cluster, {0, 1, 2, 3, 4, 5, 6}), 6u);
}

TEST(Engine, LogicalCountExamples) {
  StabilizerGroup five = build_catalog("fivequbit", {5, 1});
  EXPECT_EQ(logical_count_in_region(five, {0, 1, 2}), 2u);
  EXPECT_EQ(logical_count_in_region(five, {3, 4}), 0u);

  StabilizerGroup toric = build_catalog("toric", {4, 4});
  Support zero_dim;  // all but one row and one column of cells
  const Lattice& lat = toric.lattice();
  for (int64_t y = 0; y < 3; ++y)
    for (int64_t x = 0; x < 3; ++x)
      for (size_t s = 0; s < 2; ++s) zero_dim.push_back(lat.qubit({x, y}, s));
  EXPECT_EQ(logical_count_in_region(toric, make_support(zero_dim)), 0u);
}

TEST(Engine, BipartitionTheoremProperty) {
  std::mt19937 rng(17);
  for (const char* name : {"fivequbit", "ferro1d", "toric", "cross"}) {
    std::array<int64_t, 2> extent =
        std::string(name) == "toric" ? std::array<int64_t, 2>{3, 3}
        : std::string(name) == "cross" ? std::array<int64_t, 2>{6, 4}
                                       : std::array<int64_t, 2>{6, 1};
    StabilizerGroup g = build_catalog(name, extent);
    auto cent = centralizer(g);
    size_t two_k = 2 * g.logical_count();
    for (int trial = 0; trial < 25; ++trial) {
      Support a, b;
      for (size_t q = 0; q < g.n_qubits(); ++q) (rng() & 1 ? a : b).push_back(q);
      EXPECT_EQ(logical_count_in_region(g, a, cent) + logical_count_in_region(g, b, cent),
                two_k);
    }
  }
}

}  // namespace
}  // namespace sts
