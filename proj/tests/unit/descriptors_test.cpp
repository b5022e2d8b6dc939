// Copyright 2026 The ADSeqGAN Authors.
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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "adseqgan/chem/smiles.hpp"
#include "adseqgan/descriptors/descriptors.hpp"
#include "oracles.hpp"

namespace adseqgan::descriptors {
namespace {

DescriptorVector of(std::string_view smiles) { return compute_descriptors(chem::parse_smiles(smiles)); }

TEST(Descriptors, SchemaShape) {
  EXPECT_EQ(kDescriptorCount, 20u);
  const auto& names = descriptor_names();
  std::set<std::string_view> unique(names.begin(), names.end());
  EXPECT_EQ(unique.size(), names.size());
  EXPECT_EQ(kSchemaVersion, "desc-v1");
}

TEST(Descriptors, Ethanol) {
  const auto d = of("CCO");
  EXPECT_EQ(d[kHeavyAtoms], 3);
  EXPECT_EQ(d[kOxygenCount], 1);
  EXPECT_EQ(d[kRingCount], 0);
  EXPECT_EQ(d[kHBondDonors], 1);
  EXPECT_EQ(d[kHBondAcceptors], 1);
  EXPECT_DOUBLE_EQ(d[kCarbonFraction], 2.0 / 3.0);
  // C2H6O with standard atomic weights 12.011, 1.008, 15.999.
  EXPECT_NEAR(d[kMolecularWeight], 2 * 12.011 + 6 * 1.008 + 15.999, 1e-9);
  EXPECT_EQ(d[kRotatableBonds], 0);
  EXPECT_EQ(d[kSp3CarbonFraction], 1.0);
  EXPECT_EQ(d[kCanonicalTokenLength], 3);
}

TEST(Descriptors, Benzene) {
  const auto d = of("c1ccccc1");
  EXPECT_EQ(d[kAromaticRings], 1);
  EXPECT_EQ(d[kAliphaticRings], 0);
  EXPECT_EQ(d[kCarbonFraction], 1.0);
  EXPECT_EQ(d[kHBondDonors], 0);
  EXPECT_EQ(d[kMaxRingSize], 6);
  EXPECT_EQ(d[kSp3CarbonFraction], 0.0);
}

TEST(Descriptors, Pyridine) {
  const auto d = of("c1ccncc1");
  EXPECT_EQ(d[kNitrogenCount], 1);
  EXPECT_EQ(d[kAromaticRings], 1);
  EXPECT_EQ(d[kHBondAcceptors], 1);
  EXPECT_EQ(d[kHBondDonors], 0);
}

TEST(Descriptors, FusedPairsAndRings) {
  EXPECT_EQ(of("c1ccc2ccccc2c1")[kFusedAromaticPairs], 1);
  EXPECT_EQ(of("c1ccc2cc3ccccc3cc2c1")[kFusedAromaticPairs], 2);
  EXPECT_EQ(of("c1ccccc1-c1ccccc1")[kFusedAromaticPairs], 0);
  EXPECT_TRUE(fused_aromatic_with_heteroatom(chem::parse_smiles("c1ccc2ncccc2c1")));
  EXPECT_FALSE(fused_aromatic_with_heteroatom(chem::parse_smiles("c1ccc2ccccc2c1")));
  const auto d = of("C1CCC2CCCCC2C1");
  EXPECT_EQ(d[kRingCount], 2);
  EXPECT_EQ(d[kAliphaticRings], 2);
  EXPECT_EQ(of("C1CCCCCCCCCCCCC1")[kMaxRingSize], 14);
}

TEST(Descriptors, RotatableBonds) {
  EXPECT_EQ(of("CCCC")[kRotatableBonds], 1);
  EXPECT_EQ(of("CCCCC")[kRotatableBonds], 2);
  EXPECT_EQ(of("c1ccccc1-c1ccccc1")[kRotatableBonds], 1);
  EXPECT_EQ(of("C1CCCCC1")[kRotatableBonds], 0);
  // Amide C-N is excluded; C-C(=O) and N-C count.
  EXPECT_EQ(of("CCC(=O)NCC")[kRotatableBonds], 2);
  EXPECT_EQ(of("CC(=O)NC")[kRotatableBonds], 0);
}

TEST(Descriptors, HalogensAndCharge) {
  const auto d = of("FC(F)(F)Cl");
  EXPECT_EQ(d[kHalogenCount], 4);
  EXPECT_DOUBLE_EQ(d[kHalogenRatio], 0.8);
  EXPECT_EQ(of("C[N+](C)(C)C")[kNetCharge], 1);
  EXPECT_EQ(of("CC(=O)[O-]")[kNetCharge], -1);
}

TEST(DescriptorProperties, PermutationInvariance) {
  Rng rng(11);
  for (const auto& s : testing::curated_molecules()) {
    const auto g = chem::parse_smiles(s);
    const auto base = compute_descriptors(g);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<int> perm(static_cast<std::size_t>(g.atom_count()));
      std::iota(perm.begin(), perm.end(), 0);
      rng.shuffle(perm.begin(), perm.end());
      EXPECT_EQ(compute_descriptors(g.permuted(perm)), base) << s;
      EXPECT_EQ(compute_descriptors(chem::parse_smiles(testing::random_smiles(g, rng))), base) << s;
    }
  }
}

TEST(DescriptorProperties, ConsistencyAndFiniteness) {
  for (const auto& s : testing::curated_molecules()) {
    const auto d = of(s);
    for (double v : d.values) EXPECT_TRUE(std::isfinite(v)) << s;
    EXPECT_EQ(d[kAromaticRings] + d[kAliphaticRings], d[kRingCount]) << s;
    const double nos = d[kNitrogenCount] + d[kOxygenCount] + d[kSulfurCount];
    EXPECT_EQ(std::round(d[kHeteroRatio] * d[kHeavyAtoms]), nos) << s;
    for (std::size_t i : {kHeavyAtoms, kNitrogenCount, kOxygenCount, kSulfurCount, kHalogenCount, kRingCount,
                          kRotatableBonds, kHBondDonors, kHBondAcceptors, kCanonicalTokenLength}) {
      EXPECT_GE(d[i], 0.0);
      EXPECT_EQ(d[i], std::floor(d[i])) << s << " " << descriptor_names()[i];
    }
  }
}

}  // namespace
}  // namespace adseqgan::descriptors
