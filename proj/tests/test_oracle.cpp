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

#include <cmath>

#include "gtest/gtest.h"
#include "sts/catalog.hpp"
#include "state_oracle.hpp"

namespace sts {
namespace {

// Desk-scale extents with N <= 12 for every catalog model.
const std::vector<std::pair<const char*, std::array<int64_t, 2>>> kOracleSizes = {
    {"ferro1d", {10, 1}},   {"cluster1d", {10, 1}}, {"fivequbit", {5, 1}},
    {"ext5chain", {9, 1}},  {"zzz_chain", {9, 1}},  {"ferro2d", {3, 4}},
    {"toric", {2, 3}},      {"toric_edges", {3, 2}}, {"cluster2d", {3, 4}},
    {"product2d", {3, 3}},  {"cross", {3, 4}},      {"twotoric", {4, 3}},
    {"cross_cg", {1, 2}},   {"vchains", {3, 4}},
};

TEST(StateOracle, PauliApplicationMatchesAlgebra) {
  // (PQ)|v> == P(Q|v>) for random operators, exercising the phase rules.
  std::mt19937 rng(2);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 40; ++trial) {
    size_t n = 2 + rng() % 5;
    std::vector<oracle::Amp> v(size_t{1} << n);
    for (auto& a : v) a = {gauss(rng), gauss(rng)};
    PauliOp p(n), q(n);
    for (size_t i = 0; i < n; ++i) {
      p.set_letter(i, static_cast<Letter>(rng() % 4));
      q.set_letter(i, static_cast<Letter>(rng() % 4));
    }
    p.set_phase_exp(rng() % 4);
    q.set_phase_exp(rng() % 4);
    auto lhs = oracle::apply_pauli(v, p * q);
    auto rhs = oracle::apply_pauli(oracle::apply_pauli(v, q), p);
    for (size_t b = 0; b < v.size(); ++b) EXPECT_LT(std::abs(lhs[b] - rhs[b]), 1e-12);
  }
}

TEST(StateOracle, GhzStateFromCompletion) {
  StabilizerGroup ferro = build_group(catalog_get("ferro1d").model, {3, 1});
  PureCompletion ghz = PureCompletion::standard(ferro);
  auto state = oracle::stabilizer_state(ghz.group);
  // Only |000> and |111> carry weight, equally.
  EXPECT_NEAR(std::norm(state[0]), 0.5, 1e-9);
  EXPECT_NEAR(std::norm(state[7]), 0.5, 1e-9);
  double rest = 0;
  for (uint64_t b = 1; b < 7; ++b) rest += std::norm(state[b]);
  EXPECT_NEAR(rest, 0.0, 1e-9);
  EXPECT_NEAR(oracle::reduced_entropy(state, {0}, 3), 1.0, 1e-9);
}

TEST(StateOracle, FormulaMatchesBruteForceEverywhere) {
  for (const auto& [name, extent] : kOracleSizes) {
    const Model& model = catalog_get(name).model;
    Lattice lat = model.lattice(extent);
    ASSERT_LE(lat.n_qubits(), 12u) << name;
    StabilizerGroup g = build_group(model, extent);
    PureCompletion pc = PureCompletion::standard(g);
    auto state = oracle::stabilizer_state(pc.group);
    size_t checked = 0;
    auto check = [&](const Region& r) {
      Support s = r.qubits(lat);
      if (s.empty() || s.size() == lat.n_qubits()) return;
      double brute = oracle::reduced_entropy(state, s, lat.n_qubits());
      double formula = static_cast<double>(entropy(pc, r));
      ASSERT_NEAR(formula, brute, 1e-9)
          << name << " region of " << r.cell_count() << " cells";
      ++checked;
    };
    if (lat.dim == 1) {
      for (int64_t a = 0; a < lat.extent[0]; ++a)
        for (int64_t len = 1; len < lat.extent[0]; ++len)
          check(Region::rect({a, 0}, {a + len - 1, 0}));
    } else {
      for (int64_t oy = 0; oy < lat.extent[1]; ++oy)
        for (int64_t ox = 0; ox < lat.extent[0]; ++ox)
          for (int64_t h = 1; h <= lat.extent[1]; ++h)
            for (int64_t w = 1; w <= lat.extent[0]; ++w) {
              if (w == lat.extent[0] && h == lat.extent[1]) continue;
              check(Region::rect({ox, oy}, {ox + w - 1, oy + h - 1}));
            }
    }
    EXPECT_GT(checked, 0u) << name;
  }
}

TEST(StateOracle, MutualInformationMatches) {
  StabilizerGroup ferro = build_group(catalog_get("ferro1d").model, {8, 1});
  PureCompletion ghz = PureCompletion::standard(ferro);
  auto state = oracle::stabilizer_state(ghz.group);
  Region a = Region::rect({0, 0}, {1, 0}), b = Region::rect({4, 0}, {5, 0});
  double brute =
      oracle::reduced_entropy(state, a.qubits(ghz.group.lattice()), 8) +
      oracle::reduced_entropy(state, b.qubits(ghz.group.lattice()), 8) -
      oracle::reduced_entropy(state, Region::join(a, b).qubits(ghz.group.lattice()), 8);
  EXPECT_NEAR(static_cast<double>(mutual_information(ghz, a, b)), brute, 1e-9);
}

}  // namespace
}  // namespace sts
