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

#include "adseqgan/chem/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include "adseqgan/chem/elements.hpp"
#include "adseqgan/chem/smiles.hpp"

namespace adseqgan::chem {
namespace {

int bond_code(BondOrder order) { return static_cast<int>(order); }

// Dense ranks of `keys`, preserving order.
template <typename Key>
std::vector<int> dense_rank(const std::vector<Key>& keys) {
  std::vector<int> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
  });
  std::vector<int> rank(keys.size(), 0);
  int current = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k > 0 && keys[static_cast<std::size_t>(idx[k - 1])] < keys[static_cast<std::size_t>(idx[k])]) ++current;
    rank[static_cast<std::size_t>(idx[k])] = current;
  }
  return rank;
}

int distinct(const std::vector<int>& ranks) {
  return ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end()) + 1;
}

void refine(const MolecularGraph& g, std::vector<int>& ranks) {
  using Key = std::pair<int, std::vector<int>>;
  int classes = distinct(ranks);
  while (true) {
    std::vector<Key> keys(ranks.size());
    for (int i = 0; i < g.atom_count(); ++i) {
      std::vector<int> env;
      for (const auto& nb : g.neighbors(i)) {
        env.push_back(ranks[static_cast<std::size_t>(nb.atom)] * 8 +
                      bond_code(g.bonds()[static_cast<std::size_t>(nb.bond)].order));
      }
      std::sort(env.begin(), env.end());
      keys[static_cast<std::size_t>(i)] = {ranks[static_cast<std::size_t>(i)], std::move(env)};
    }
    std::vector<int> next = dense_rank(keys);
    const int next_classes = distinct(next);
    ranks = std::move(next);
    if (next_classes == classes) break;
    classes = next_classes;
  }
}

// Hydrogen count a bare organic-subset atom would receive when read back.
int implied_hydrogens(const MolecularGraph& g, int atom) {
  const Atom& a = g.atoms()[static_cast<std::size_t>(atom)];
  const Element& e = element_by_number(a.atomic_number);
  int sigma = 0;
  for (const auto& nb : g.neighbors(atom)) {
    const BondOrder order = g.bonds()[static_cast<std::size_t>(nb.bond)].order;
    sigma += order == BondOrder::Aromatic ? 1 : static_cast<int>(order);
  }
  if (a.aromatic) {
    const int d = e.valences.front();
    return sigma + 1 <= d ? d - sigma - 1 : 0;
  }
  for (int v : e.valences) {
    if (v >= sigma) return v - sigma;
  }
  return -1;
}

std::string atom_text(const MolecularGraph& g, int atom) {
  const Atom& a = g.atoms()[static_cast<std::size_t>(atom)];
  const Element& e = element_by_number(a.atomic_number);
  std::string symbol(e.symbol);
  if (a.aromatic) symbol[0] = static_cast<char>(symbol[0] - 'A' + 'a');
  if (is_organic_subset(e.symbol) && a.charge == 0 && implied_hydrogens(g, atom) == a.hydrogens) return symbol;
  std::string out = "[" + symbol;
  if (a.hydrogens == 1) out += "H";
  else if (a.hydrogens > 1) out += "H" + std::to_string(a.hydrogens);
  if (a.charge != 0) {
    out += a.charge > 0 ? "+" : "-";
    if (std::abs(a.charge) > 1) out += std::to_string(std::abs(a.charge));
  }
  return out + "]";
}

std::string bond_text(const MolecularGraph& g, int bond) {
  const Bond& b = g.bonds()[static_cast<std::size_t>(bond)];
  switch (b.order) {
    case BondOrder::Double: return "=";
    case BondOrder::Triple: return "#";
    case BondOrder::Aromatic: return "";
    case BondOrder::Single:
      return g.atoms()[static_cast<std::size_t>(b.a)].aromatic && g.atoms()[static_cast<std::size_t>(b.b)].aromatic
                 ? "-"
                 : "";
  }
  return "";
}

class Writer {
 public:
  Writer(const MolecularGraph& g, const std::vector<int>& ranks)
      : g_(g), ranks_(ranks), visited_(g.atom_count(), false), used_bond_(g.bond_count(), false),
        children_(g.atom_count()), closures_(g.atom_count()), digit_of_bond_(g.bond_count(), 0) {}

  std::string write(int start) {
    plan(start, -1);
    std::string out;
    emit(start, out);
    return out;
  }

 private:
  std::vector<MolecularGraph::Neighbor> sorted_neighbors(int atom) const {
    std::vector<MolecularGraph::Neighbor> nbs = g_.neighbors(atom);
    std::sort(nbs.begin(), nbs.end(), [&](const auto& x, const auto& y) {
      return ranks_[static_cast<std::size_t>(x.atom)] < ranks_[static_cast<std::size_t>(y.atom)];
    });
    return nbs;
  }

  void plan(int atom, int parent_bond) {
    visited_[static_cast<std::size_t>(atom)] = true;
    for (const auto& nb : sorted_neighbors(atom)) {
      if (nb.bond == parent_bond || used_bond_[static_cast<std::size_t>(nb.bond)]) continue;
      used_bond_[static_cast<std::size_t>(nb.bond)] = true;
      if (visited_[static_cast<std::size_t>(nb.atom)]) {
        // Ring closure: opened at the earlier atom, closed here.
        closures_[static_cast<std::size_t>(nb.atom)].push_back(nb.bond);
        closures_[static_cast<std::size_t>(atom)].push_back(nb.bond);
      } else {
        children_[static_cast<std::size_t>(atom)].push_back(nb);
        plan(nb.atom, nb.bond);
      }
    }
  }

  void emit(int atom, std::string& out) {
    out += atom_text(g_, atom);
    for (int bond : closures_[static_cast<std::size_t>(atom)]) {
      int& digit = digit_of_bond_[static_cast<std::size_t>(bond)];
      if (digit > 0) {
        out += bond_text(g_, bond);
        out += digit_text(digit);
        in_use_[static_cast<std::size_t>(digit)] = false;
      } else {
        digit = 1;
        while (in_use_[static_cast<std::size_t>(digit)]) ++digit;
        in_use_[static_cast<std::size_t>(digit)] = true;
        out += digit_text(digit);
      }
    }
    const auto& kids = children_[static_cast<std::size_t>(atom)];
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const bool branch = k + 1 < kids.size();
      if (branch) out += "(";
      out += bond_text(g_, kids[k].bond);
      emit(kids[k].atom, out);
      if (branch) out += ")";
    }
  }

  static std::string digit_text(int digit) {
    return digit < 10 ? std::to_string(digit) : "%" + std::to_string(digit);
  }

  const MolecularGraph& g_;
  const std::vector<int>& ranks_;
  std::vector<bool> visited_;
  std::vector<bool> used_bond_;
  std::vector<std::vector<MolecularGraph::Neighbor>> children_;
  std::vector<std::vector<int>> closures_;
  std::vector<int> digit_of_bond_;
  std::vector<bool> in_use_ = std::vector<bool>(100, false);
};

}  // namespace

std::vector<int> canonical_ranks(const MolecularGraph& g) {
  const int n = g.atom_count();
  using Invariant = std::tuple<int, int, int, int, int, int>;
  std::vector<Invariant> inv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Atom& a = g.atoms()[static_cast<std::size_t>(i)];
    inv[static_cast<std::size_t>(i)] = {a.atomic_number, a.charge, g.degree(i), a.hydrogens, a.aromatic ? 1 : 0,
                                        g.atom_in_ring(i) ? 1 : 0};
  }
  std::vector<int> ranks = dense_rank(inv);
  refine(g, ranks);
  while (distinct(ranks) < n) {
    // Break the lowest tie by promoting its first member.
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (int r : ranks) ++count[static_cast<std::size_t>(r)];
    int tied = 0;
    while (count[static_cast<std::size_t>(tied)] < 2) ++tied;
    int chosen = -1;
    for (int i = 0; i < n && chosen < 0; ++i) {
      if (ranks[static_cast<std::size_t>(i)] == tied) chosen = i;
    }
    for (int i = 0; i < n; ++i) {
      ranks[static_cast<std::size_t>(i)] = 2 * ranks[static_cast<std::size_t>(i)] + (i == chosen ? 0 : 1);
    }
    ranks = dense_rank(ranks);
    refine(g, ranks);
  }
  return ranks;
}

std::string canonicalize(const MolecularGraph& g) {
  if (g.atom_count() == 0) return {};
  const std::vector<int> ranks = canonical_ranks(g);
  std::vector<std::string> fragments;
  Writer writer(g, ranks);
  for (const auto& comp : g.components()) {
    const int start = *std::min_element(comp.begin(), comp.end(), [&](int a, int b) {
      return ranks[static_cast<std::size_t>(a)] < ranks[static_cast<std::size_t>(b)];
    });
    fragments.push_back(writer.write(start));
  }
  std::sort(fragments.begin(), fragments.end());
  std::string out;
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    if (i > 0) out += ".";
    out += fragments[i];
  }
  return out;
}

std::string canonical_smiles(std::string_view smiles) { return canonicalize(parse_smiles(smiles)); }

}  // namespace adseqgan::chem
