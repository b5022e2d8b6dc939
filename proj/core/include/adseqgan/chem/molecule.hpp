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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace adseqgan::chem {

enum class BondOrder : std::uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

struct Atom {
  int atomic_number = 0;
  int charge = 0;
  bool aromatic = false;
  int hydrogens = 0;  // total attached H, implicit ones included
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::Single;
  // Localised order (1, 2 or 3) from the Kekule assignment; equals `order`
  // for non-aromatic bonds.
  BondOrder kekule = BondOrder::Single;

  int other(int atom) const noexcept { return atom == a ? b : a; }
};

struct Ring {
  std::vector<int> atoms;  // in cycle order
  bool aromatic = false;
  bool antiaromatic = false;
};

/// Hydrogen-suppressed molecular graph produced by the SMILES parser.
///
/// Aromatic bonds are stored as BondOrder::Aromatic. `rings` holds the
/// smallest set of smallest rings; aromaticity is perceived per ring.
class MolecularGraph {
 public:
  struct Neighbor {
    int atom;
    int bond;
  };

  MolecularGraph() = default;
  MolecularGraph(std::vector<Atom> atoms, std::vector<Bond> bonds, std::vector<Ring> rings);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<Bond>& bonds() const noexcept { return bonds_; }
  const std::vector<Ring>& rings() const noexcept { return rings_; }
  const std::vector<Neighbor>& neighbors(int atom) const { return adjacency_[static_cast<std::size_t>(atom)]; }

  int atom_count() const noexcept { return static_cast<int>(atoms_.size()); }
  int bond_count() const noexcept { return static_cast<int>(bonds_.size()); }
  int degree(int atom) const { return static_cast<int>(neighbors(atom).size()); }

  /// Bond index joining two atoms, or -1.
  int find_bond(int a, int b) const;

  /// Sum of bond orders, aromatic bonds counted as 1.5.
  double bond_order_sum(int atom) const;

  /// Kekule bond orders plus attached hydrogens.
  int valence(int atom) const;

  /// True when the bond lies on at least one ring of the SSSR.
  bool bond_in_ring(int bond) const { return bond_in_ring_[static_cast<std::size_t>(bond)]; }
  bool atom_in_ring(int atom) const { return atom_in_ring_[static_cast<std::size_t>(atom)]; }

  /// Atom index sets of the connected components, each sorted.
  std::vector<std::vector<int>> components() const;

  /// Same molecule with atom i moved to position perm[i].
  MolecularGraph permuted(const std::vector<int>& perm) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<Ring> rings_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<bool> bond_in_ring_;
  std::vector<bool> atom_in_ring_;
};

/// Smallest set of smallest rings over the bond graph, each cycle in walk
/// order starting at its lowest atom index. Deterministic for a given atom
/// numbering.
std::vector<std::vector<int>> smallest_rings(int atom_count, const std::vector<Bond>& bonds);

}  // namespace adseqgan::chem
