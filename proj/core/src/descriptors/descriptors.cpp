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

#include "adseqgan/descriptors/descriptors.hpp"

#include <algorithm>
#include <map>

#include "adseqgan/chem/canonical.hpp"
#include "adseqgan/chem/elements.hpp"
#include "adseqgan/chem/smiles.hpp"

namespace adseqgan::descriptors {

using chem::BondOrder;
using chem::MolecularGraph;

const std::array<std::string_view, kDescriptorCount>& descriptor_names() {
  static constexpr std::array<std::string_view, kDescriptorCount> kNames = {
      "heavy_atoms",       "mol_weight",        "n_nitrogen",     "n_oxygen",       "n_sulfur",
      "n_halogen",         "carbon_fraction",   "hetero_ratio",   "halogen_ratio",  "n_rings",
      "n_aromatic_rings",  "n_aliphatic_rings", "max_ring_size",  "fused_aromatic_pairs",
      "rotatable_bonds",   "hbond_donors",      "hbond_acceptors", "sp3_carbon_fraction",
      "net_charge",        "canonical_token_length",
  };
  return kNames;
}

namespace {

int shared_atoms(const chem::Ring& a, const chem::Ring& b) {
  int shared = 0;
  for (int x : a.atoms) {
    if (std::find(b.atoms.begin(), b.atoms.end(), x) != b.atoms.end()) ++shared;
  }
  return shared;
}

bool is_nos(int z) { return z == chem::z::N || z == chem::z::O || z == chem::z::S; }

int heavy_degree(const MolecularGraph& g, int atom) {
  int d = 0;
  for (const auto& nb : g.neighbors(atom)) {
    if (g.atoms()[static_cast<std::size_t>(nb.atom)].atomic_number != chem::z::H) ++d;
  }
  return d;
}

// C(=O)-N single bond.
bool is_amide_cn(const MolecularGraph& g, const chem::Bond& b) {
  auto carbonyl_carbon = [&](int c) {
    if (g.atoms()[static_cast<std::size_t>(c)].atomic_number != chem::z::C) return false;
    for (const auto& nb : g.neighbors(c)) {
      const auto& bond = g.bonds()[static_cast<std::size_t>(nb.bond)];
      if (bond.order == BondOrder::Double && g.atoms()[static_cast<std::size_t>(nb.atom)].atomic_number == chem::z::O) {
        return true;
      }
    }
    return false;
  };
  const int za = g.atoms()[static_cast<std::size_t>(b.a)].atomic_number;
  const int zb = g.atoms()[static_cast<std::size_t>(b.b)].atomic_number;
  return (za == chem::z::N && carbonyl_carbon(b.b)) || (zb == chem::z::N && carbonyl_carbon(b.a));
}

}  // namespace

int fused_aromatic_pairs(const MolecularGraph& g) {
  int pairs = 0;
  const auto& rings = g.rings();
  for (std::size_t i = 0; i < rings.size(); ++i) {
    for (std::size_t j = i + 1; j < rings.size(); ++j) {
      if (rings[i].aromatic && rings[j].aromatic && shared_atoms(rings[i], rings[j]) >= 2) ++pairs;
    }
  }
  return pairs;
}

bool fused_aromatic_with_heteroatom(const MolecularGraph& g) {
  const auto& rings = g.rings();
  auto has_hetero = [&](const chem::Ring& r) {
    return std::any_of(r.atoms.begin(), r.atoms.end(),
                       [&](int a) { return is_nos(g.atoms()[static_cast<std::size_t>(a)].atomic_number); });
  };
  for (std::size_t i = 0; i < rings.size(); ++i) {
    for (std::size_t j = i + 1; j < rings.size(); ++j) {
      if (rings[i].aromatic && rings[j].aromatic && shared_atoms(rings[i], rings[j]) >= 2 &&
          (has_hetero(rings[i]) || has_hetero(rings[j]))) {
        return true;
      }
    }
  }
  return false;
}

int rotatable_bonds(const MolecularGraph& g) {
  int count = 0;
  for (int bi = 0; bi < g.bond_count(); ++bi) {
    const auto& b = g.bonds()[static_cast<std::size_t>(bi)];
    if (b.order != BondOrder::Single || g.bond_in_ring(bi)) continue;
    if (heavy_degree(g, b.a) < 2 || heavy_degree(g, b.b) < 2) continue;
    if (is_amide_cn(g, b)) continue;
    ++count;
  }
  return count;
}

DescriptorVector compute_descriptors(const MolecularGraph& g) {
  DescriptorVector d;
  auto& v = d.values;
  int heavy = 0, carbons = 0, nitrogen = 0, oxygen = 0, sulfur = 0, halogens = 0;
  int donors = 0, acceptors = 0, sp3_carbons = 0, charge = 0;
  // Per-element counts keep the weight independent of atom order.
  std::map<int, long> element_counts;
  for (int i = 0; i < g.atom_count(); ++i) {
    const auto& a = g.atoms()[static_cast<std::size_t>(i)];
    ++element_counts[a.atomic_number];
    element_counts[chem::z::H] += a.hydrogens;
    charge += a.charge;
    if (a.atomic_number == chem::z::H) continue;
    ++heavy;
    switch (a.atomic_number) {
      case chem::z::C: {
        ++carbons;
        bool saturated = !a.aromatic;
        for (const auto& nb : g.neighbors(i)) {
          if (g.bonds()[static_cast<std::size_t>(nb.bond)].order != BondOrder::Single) saturated = false;
        }
        if (saturated) ++sp3_carbons;
        break;
      }
      case chem::z::N: ++nitrogen; break;
      case chem::z::O: ++oxygen; break;
      case chem::z::S: ++sulfur; break;
      default:
        if (chem::is_halogen(a.atomic_number)) ++halogens;
    }
    if ((a.atomic_number == chem::z::N || a.atomic_number == chem::z::O)) {
      ++acceptors;
      if (a.hydrogens > 0) ++donors;
    }
  }
  double weight = 0.0;
  for (const auto& [number, count] : element_counts) {
    weight += static_cast<double>(count) * chem::element_by_number(number).mass;
  }
  int aromatic_rings = 0;
  int max_ring = 0;
  for (const auto& r : g.rings()) {
    if (r.aromatic) ++aromatic_rings;
    max_ring = std::max(max_ring, static_cast<int>(r.atoms.size()));
  }
  const int rings = static_cast<int>(g.rings().size());
  const double heavy_d = heavy > 0 ? static_cast<double>(heavy) : 1.0;

  v[kHeavyAtoms] = heavy;
  v[kMolecularWeight] = weight;
  v[kNitrogenCount] = nitrogen;
  v[kOxygenCount] = oxygen;
  v[kSulfurCount] = sulfur;
  v[kHalogenCount] = halogens;
  v[kCarbonFraction] = carbons / heavy_d;
  v[kHeteroRatio] = (nitrogen + oxygen + sulfur) / heavy_d;
  v[kHalogenRatio] = halogens / heavy_d;
  v[kRingCount] = rings;
  v[kAromaticRings] = aromatic_rings;
  v[kAliphaticRings] = rings - aromatic_rings;
  v[kMaxRingSize] = max_ring;
  v[kFusedAromaticPairs] = fused_aromatic_pairs(g);
  v[kRotatableBonds] = rotatable_bonds(g);
  v[kHBondDonors] = donors;
  v[kHBondAcceptors] = acceptors;
  v[kSp3CarbonFraction] = carbons > 0 ? static_cast<double>(sp3_carbons) / carbons : 0.0;
  v[kNetCharge] = charge;
  v[kCanonicalTokenLength] = static_cast<double>(chem::tokenize(chem::canonicalize(g)).size());
  return d;
}

}  // namespace adseqgan::descriptors
