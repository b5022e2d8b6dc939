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

#include "adseqgan/chem/molecule.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <stdexcept>

namespace adseqgan::chem {

MolecularGraph::MolecularGraph(std::vector<Atom> atoms, std::vector<Bond> bonds, std::vector<Ring> rings)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)), rings_(std::move(rings)) {
  adjacency_.assign(atoms_.size(), {});
  for (std::size_t i = 0; i < bonds_.size(); ++i) {
    const Bond& b = bonds_[i];
    adjacency_[static_cast<std::size_t>(b.a)].push_back({b.b, static_cast<int>(i)});
    adjacency_[static_cast<std::size_t>(b.b)].push_back({b.a, static_cast<int>(i)});
  }
  bond_in_ring_.assign(bonds_.size(), false);
  atom_in_ring_.assign(atoms_.size(), false);
  for (const Ring& ring : rings_) {
    const std::size_t n = ring.atoms.size();
    for (std::size_t k = 0; k < n; ++k) {
      const int a = ring.atoms[k];
      const int b = ring.atoms[(k + 1) % n];
      atom_in_ring_[static_cast<std::size_t>(a)] = true;
      const int bond = find_bond(a, b);
      if (bond >= 0) bond_in_ring_[static_cast<std::size_t>(bond)] = true;
    }
  }
}

int MolecularGraph::find_bond(int a, int b) const {
  for (const Neighbor& nb : neighbors(a)) {
    if (nb.atom == b) return nb.bond;
  }
  return -1;
}

double MolecularGraph::bond_order_sum(int atom) const {
  double sum = 0.0;
  for (const Neighbor& nb : neighbors(atom)) {
    const BondOrder order = bonds_[static_cast<std::size_t>(nb.bond)].order;
    sum += order == BondOrder::Aromatic ? 1.5 : static_cast<double>(order);
  }
  return sum;
}

int MolecularGraph::valence(int atom) const {
  int sum = atoms_[static_cast<std::size_t>(atom)].hydrogens;
  for (const Neighbor& nb : neighbors(atom)) sum += static_cast<int>(bonds_[static_cast<std::size_t>(nb.bond)].kekule);
  return sum;
}

std::vector<std::vector<int>> MolecularGraph::components() const {
  std::vector<int> comp(atoms_.size(), -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < atom_count(); ++start) {
    if (comp[static_cast<std::size_t>(start)] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::deque<int> queue{start};
    comp[static_cast<std::size_t>(start)] = id;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      out.back().push_back(u);
      for (const Neighbor& nb : neighbors(u)) {
        if (comp[static_cast<std::size_t>(nb.atom)] < 0) {
          comp[static_cast<std::size_t>(nb.atom)] = id;
          queue.push_back(nb.atom);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

MolecularGraph MolecularGraph::permuted(const std::vector<int>& perm) const {
  if (perm.size() != atoms_.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<Atom> atoms(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) atoms[static_cast<std::size_t>(perm[i])] = atoms_[i];
  std::vector<Bond> bonds = bonds_;
  for (Bond& b : bonds) {
    b.a = perm[static_cast<std::size_t>(b.a)];
    b.b = perm[static_cast<std::size_t>(b.b)];
  }
  std::vector<Ring> rings = rings_;
  for (Ring& r : rings) {
    for (int& a : r.atoms) a = perm[static_cast<std::size_t>(a)];
  }
  return MolecularGraph(std::move(atoms), std::move(bonds), std::move(rings));
}

namespace {

using EdgeSet = std::vector<std::uint64_t>;

struct Candidate {
  std::vector<int> cycle;  // walk order
  std::vector<int> sorted;
  EdgeSet edges;
};

std::vector<int> normalize_cycle(std::vector<int> cycle) {
  const auto min_it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), min_it, cycle.end());
  if (cycle.size() > 2 && cycle.back() < cycle[1]) std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

}  // namespace

std::vector<std::vector<int>> smallest_rings(int atom_count, const std::vector<Bond>& bonds) {
  const auto n = static_cast<std::size_t>(atom_count);
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, bond)
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    adj[static_cast<std::size_t>(bonds[i].a)].emplace_back(bonds[i].b, static_cast<int>(i));
    adj[static_cast<std::size_t>(bonds[i].b)].emplace_back(bonds[i].a, static_cast<int>(i));
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  // Cyclomatic number E - V + C.
  int components = 0;
  {
    std::vector<bool> seen(n, false);
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s]) continue;
      ++components;
      std::deque<std::size_t> q{s};
      seen[s] = true;
      while (!q.empty()) {
        const std::size_t u = q.front();
        q.pop_front();
        for (auto [v, b] : adj[u]) {
          if (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = true;
            q.push_back(static_cast<std::size_t>(v));
          }
        }
      }
    }
  }
  const int needed = static_cast<int>(bonds.size()) - atom_count + components;
  if (needed <= 0) return {};

  const std::size_t words = (bonds.size() + 63) / 64;
  std::map<EdgeSet, Candidate> unique;

  // Horton candidates: shortest path root->x, edge (x, y), shortest path y->root.
  for (std::size_t root = 0; root < n; ++root) {
    std::vector<int> dist(n, -1);
    std::vector<int> parent(n, -1);
    std::vector<int> parent_bond(n, -1);
    std::deque<std::size_t> q{root};
    dist[root] = 0;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (auto [v, b] : adj[u]) {
        const auto vi = static_cast<std::size_t>(v);
        if (dist[vi] < 0) {
          dist[vi] = dist[u] + 1;
          parent[vi] = static_cast<int>(u);
          parent_bond[vi] = b;
          q.push_back(vi);
        }
      }
    }
    auto path_to_root = [&](int x) {
      std::vector<int> path;
      for (int cur = x; cur >= 0; cur = parent[static_cast<std::size_t>(cur)]) path.push_back(cur);
      return path;  // x ... root
    };
    for (std::size_t bi = 0; bi < bonds.size(); ++bi) {
      const int x = bonds[bi].a;
      const int y = bonds[bi].b;
      const auto xi = static_cast<std::size_t>(x);
      const auto yi = static_cast<std::size_t>(y);
      if (dist[xi] < 0 || dist[yi] < 0) continue;
      if (parent_bond[xi] == static_cast<int>(bi) || parent_bond[yi] == static_cast<int>(bi)) continue;
      std::vector<int> px = path_to_root(x);
      std::vector<int> py = path_to_root(y);
      // Paths must meet only at the root.
      std::vector<int> sx(px.begin(), px.end() - 1);
      std::vector<int> sy(py.begin(), py.end() - 1);
      std::sort(sx.begin(), sx.end());
      std::sort(sy.begin(), sy.end());
      std::vector<int> common;
      std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(), std::back_inserter(common));
      if (!common.empty()) continue;

      std::vector<int> cycle(px.rbegin(), px.rend());  // root ... x
      for (std::size_t k = 0; k + 1 < py.size(); ++k) cycle.push_back(py[k]);  // y ... (before root)
      if (cycle.size() < 3) continue;

      EdgeSet edges(words, 0);
      bool ok = true;
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        const int a = cycle[k];
        const int b = cycle[(k + 1) % cycle.size()];
        int bond = -1;
        for (auto [v, bb] : adj[static_cast<std::size_t>(a)]) {
          if (v == b) {
            bond = bb;
            break;
          }
        }
        if (bond < 0) {
          ok = false;
          break;
        }
        edges[static_cast<std::size_t>(bond) / 64] |= 1ULL << (static_cast<std::size_t>(bond) % 64);
      }
      if (!ok) continue;
      if (unique.count(edges)) continue;
      Candidate c;
      c.cycle = normalize_cycle(cycle);
      c.sorted = c.cycle;
      std::sort(c.sorted.begin(), c.sorted.end());
      c.edges = edges;
      unique.emplace(edges, std::move(c));
    }
  }

  std::vector<const Candidate*> ordered;
  ordered.reserve(unique.size());
  for (const auto& [key, c] : unique) ordered.push_back(&c);
  std::sort(ordered.begin(), ordered.end(), [](const Candidate* a, const Candidate* b) {
    if (a->cycle.size() != b->cycle.size()) return a->cycle.size() < b->cycle.size();
    return a->sorted < b->sorted;
  });

  // Greedy selection of GF(2)-independent cycles.
  std::vector<EdgeSet> basis(bonds.size());
  std::vector<bool> has_pivot(bonds.size(), false);
  std::vector<std::vector<int>> rings;
  for (const Candidate* c : ordered) {
    EdgeSet v = c->edges;
    int lowest = -1;
    for (std::size_t bit = 0; bit < bonds.size(); ++bit) {
      if (!(v[bit / 64] >> (bit % 64) & 1ULL)) continue;
      if (has_pivot[bit]) {
        for (std::size_t w = 0; w < words; ++w) v[w] ^= basis[bit][w];
      } else {
        lowest = static_cast<int>(bit);
        break;
      }
    }
    if (lowest < 0) continue;
    basis[static_cast<std::size_t>(lowest)] = v;
    has_pivot[static_cast<std::size_t>(lowest)] = true;
    rings.push_back(c->cycle);
    if (static_cast<int>(rings.size()) == needed) break;
  }
  return rings;
}

}  // namespace adseqgan::chem
