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

#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "adseqgan/chem/molecule.hpp"

namespace adseqgan::descriptors {

inline constexpr std::string_view kSchemaVersion = "desc-v1";
inline constexpr std::size_t kDescriptorCount = 20;

enum Index : std::size_t {
  kHeavyAtoms,
  kMolecularWeight,
  kNitrogenCount,
  kOxygenCount,
  kSulfurCount,
  kHalogenCount,
  kCarbonFraction,
  kHeteroRatio,  // (N + O + S) / heavy atoms
  kHalogenRatio,
  kRingCount,
  kAromaticRings,
  kAliphaticRings,
  kMaxRingSize,
  kFusedAromaticPairs,
  kRotatableBonds,
  kHBondDonors,
  kHBondAcceptors,
  kSp3CarbonFraction,
  kNetCharge,
  kCanonicalTokenLength,
};

/// Descriptor identifiers in schema order.
const std::array<std::string_view, kDescriptorCount>& descriptor_names();

struct DescriptorVector {
  std::array<double, kDescriptorCount> values{};

  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const noexcept { return values.size(); }
  std::string_view schema() const noexcept { return kSchemaVersion; }

  friend bool operator==(const DescriptorVector&, const DescriptorVector&) = default;
};

DescriptorVector compute_descriptors(const chem::MolecularGraph& graph);

/// Number of pairs of aromatic SSSR rings sharing at least two atoms.
int fused_aromatic_pairs(const chem::MolecularGraph& graph);

/// True when some fused aromatic pair contains N, O or S.
bool fused_aromatic_with_heteroatom(const chem::MolecularGraph& graph);

int rotatable_bonds(const chem::MolecularGraph& graph);

}  // namespace adseqgan::descriptors
