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

#include "oracles.hpp"

#include <algorithm>
#include <functional>

#include "adseqgan/chem/elements.hpp"

namespace adseqgan::testing {

using chem::MolecularGraph;

bool isomorphic(const MolecularGraph& a, const MolecularGraph& b) {
  const int n = a.atom_count();
  if (n != b.atom_count() || a.bond_count() != b.bond_count()) return false;
  auto label = [](const MolecularGraph& g, int i) {
    const auto& at = g.atoms()[static_cast<std::size_t>(i)];
    return std::tuple(at.atomic_number, at.charge, at.aromatic, at.hydrogens, g.degree(i));
  };
  auto order = [](const MolecularGraph& g, int x, int y) {
    const int bond = g.find_bond(x, y);
    return bond < 0 ? 0 : static_cast<int>(g.bonds()[static_cast<std::size_t>(bond)].order);
  };
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<bool(int)> extend = [&](int i) {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)] || label(a, i) != label(b, j)) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) {
        ok = order(a, i, k) == order(b, j, map[static_cast<std::size_t>(k)]);
      }
      if (!ok) continue;
      map[static_cast<std::size_t>(i)] = j;
      used[static_cast<std::size_t>(j)] = true;
      if (extend(i + 1)) return true;
      used[static_cast<std::size_t>(j)] = false;
    }
    return false;
  };
  return extend(0);
}

std::string random_smiles(const MolecularGraph& g, Rng& rng) {
  const int n = g.atom_count();
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  std::vector<bool> used(static_cast<std::size_t>(g.bond_count()), false);
  std::vector<std::vector<int>> rings_at(static_cast<std::size_t>(n));
  std::vector<std::vector<MolecularGraph::Neighbor>> kids(static_cast<std::size_t>(n));

  std::function<void(int, int)> plan = [&](int u, int parent_bond) {
    visited[static_cast<std::size_t>(u)] = true;
    auto nbs = g.neighbors(u);
    rng.shuffle(nbs.begin(), nbs.end());
    for (const auto& nb : nbs) {
      if (nb.bond == parent_bond || used[static_cast<std::size_t>(nb.bond)]) continue;
      used[static_cast<std::size_t>(nb.bond)] = true;
      if (visited[static_cast<std::size_t>(nb.atom)]) {
        rings_at[static_cast<std::size_t>(nb.atom)].push_back(nb.bond);
        rings_at[static_cast<std::size_t>(u)].push_back(nb.bond);
      } else {
        kids[static_cast<std::size_t>(u)].push_back(nb);
        plan(nb.atom, nb.bond);
      }
    }
  };
  auto bond_sym = [&](int bond) -> std::string {
    switch (g.bonds()[static_cast<std::size_t>(bond)].order) {
      case chem::BondOrder::Single: return "-";
      case chem::BondOrder::Double: return "=";
      case chem::BondOrder::Triple: return "#";
      case chem::BondOrder::Aromatic: return ":";
    }
    return "";
  };
  auto atom_sym = [&](int i) {
    const auto& at = g.atoms()[static_cast<std::size_t>(i)];
    std::string sym(chem::element_by_number(at.atomic_number).symbol);
    if (at.aromatic) sym[0] = static_cast<char>(sym[0] - 'A' + 'a');
    std::string out = "[" + sym;
    if (at.hydrogens > 0) out += "H" + std::to_string(at.hydrogens);
    if (at.charge > 0) out += "+" + std::to_string(at.charge);
    if (at.charge < 0) out += "-" + std::to_string(-at.charge);
    return out + "]";
  };
  std::vector<int> digit(static_cast<std::size_t>(g.bond_count()), 0);
  std::vector<bool> taken(100, false);
  std::function<void(int, std::string&)> emit = [&](int u, std::string& out) {
    out += atom_sym(u);
    for (int bond : rings_at[static_cast<std::size_t>(u)]) {
      int& d = digit[static_cast<std::size_t>(bond)];
      if (d > 0) {
        out += bond_sym(bond) + (d < 10 ? std::to_string(d) : "%" + std::to_string(d));
        taken[static_cast<std::size_t>(d)] = false;
      } else {
        // Random free digit to exercise label reuse and %nn.
        std::vector<int> free;
        for (int k = 1; k < 100; ++k) {
          if (!taken[static_cast<std::size_t>(k)]) free.push_back(k);
        }
        d = free[rng.below(std::min<std::size_t>(free.size(), 12))];
        taken[static_cast<std::size_t>(d)] = true;
        out += d < 10 ? std::to_string(d) : "%" + std::to_string(d);
      }
    }
    const auto& ks = kids[static_cast<std::size_t>(u)];
    for (std::size_t k = 0; k < ks.size(); ++k) {
      const bool branch = k + 1 < ks.size();
      if (branch) out += "(";
      out += bond_sym(ks[k].bond);
      emit(ks[k].atom, out);
      if (branch) out += ")";
    }
  };

  std::vector<std::string> fragments;
  auto comps = g.components();
  rng.shuffle(comps.begin(), comps.end());
  for (const auto& comp : comps) {
    const int start = comp[rng.below(comp.size())];
    plan(start, -1);
    std::string out;
    emit(start, out);
    fragments.push_back(out);
  }
  std::string out;
  for (std::size_t i = 0; i < fragments.size(); ++i) out += (i ? "." : "") + fragments[i];
  return out;
}

const std::vector<std::string>& curated_molecules() {
  static const std::vector<std::string> kMolecules = {
      "CCO",
      "OCC",
      "CC(=O)O",
      "c1ccccc1",
      "C1=CC=CC=C1",
      "c1ccncc1",
      "c1cc[nH]c1",
      "c1ccoc1",
      "c1ccsc1",
      "Cn1cccc1",
      "c1ccc2ccccc2c1",
      "c1ccc2c(c1)cccn2",
      "c1ccc2[nH]ccc2c1",
      "O=c1cccc[nH]1",
      "CC(C)(C)c1ccc(O)cc1",
      "CC(=O)Nc1ccc(O)cc1",
      "CN1CCC[C@H]1c1cccnc1",
      "CC(=O)Oc1ccccc1C(=O)O",
      "CN1C(=O)N(C)c2ncn(C)c2C1=O",
      "C[N+](C)(C)C",
      "CC(=O)[O-]",
      "C[n+]1ccccc1",
      "O=[N+]([O-])c1ccccc1",
      "FC(F)(F)c1ccc(Cl)cc1Br",
      "ClC(Br)=O",
      "C1CCCCC1",
      "C1CCCCCCCCCCCCC1",
      "C1CC2CCC1C2",
      "C1=CC=C1",
      "C#N",
      "CC#CC",
      "OS(=O)(=O)O",
      "CS(C)=O",
      "OP(=O)(O)O",
      "B(O)(O)c1ccccc1",
      "c1ccc2cc3ccccc3cc2c1",
      "c1ccc(-c2ccccc2)cc1",
      "C1CC1C(=O)NC2CC2",
      "CC12CCC(CC1)CC2",
      "NC(=O)c1cnccn1",
      "c1cnc2[nH]cnc2c1",
      "O=C1CCC(=O)N1",
      "C=CC=O",
      "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
      "COc1ccc2[nH]cc(CCN)c2c1",
      "Oc1ccc2ccccc2c1",
      "C1=CCCC=C1",
      "c1cscn1",
      "c1cocn1",
      "CCN(CC)CC",
      "[NH4+]",
      "[O-][n+]1ccccc1",
  };
  return kMolecules;
}

const std::vector<std::string>& curated_invalid() {
  static const std::vector<std::string> kInvalid = {
      "",                      // empty
      "C1CC",                  // unclosed ring
      "C(C)(C)(C)(C)C",        // pentavalent carbon
      "C(=O)(=O)C",            // carbon valence 5
      "O(C)(C)C",              // trivalent neutral oxygen
      "N(C)(C)(C)C",           // tetravalent neutral nitrogen
      "FF(F)",                 // divalent fluorine
      "ClCl(C)",               // divalent chlorine
      "C=C=C=C(=C)C",          // carbon valence 5 in the middle
      "C#C#C",                 // carbon valence 6
      "CC(C",                  // unbalanced branch
      "CC)C",                  // stray close
      "C()C",                  // empty branch
      "(CC)",                  // branch with no anchor
      "C==C",                  // doubled bond symbol
      "CC=",                   // dangling bond
      "=CC",                   // leading bond
      "C11",                   // self bond
      "C12CC12",               // duplicate bond
      "c1cccc1",               // odd aromatic ring, no Kekule form
      "c1ccccc",               // unclosed aromatic ring
      "c1ccc1c",               // aromatic atom cannot be matched
      "C[Xx]C",                // unknown element
      "C*C",                   // wildcard not supported
      "C$C",                   // quadruple bond not supported
      "CC.",                   // trailing dot
      ".CC",                   // leading dot
      "C%1C",                  // malformed %nn
      "[CH5]",                 // explicit H over valence
      "[NH4]",                 // neutral ammonium
      "C[O](C)C",              // bracket oxygen with three bonds
      "CC[C",                  // unterminated bracket
      "S(=O)(=O)(=O)(=O)C",    // sulfur valence 9
      "B(C)(C)(C)C",           // tetravalent neutral boron
      "C1CC=1=C",              // ring closure bond conflicts with valence
      "C=1CCC#1",              // conflicting ring-closure bond symbols
  };
  return kInvalid;
}

double pairwise_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

}  // namespace adseqgan::testing
