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

#include "adseqgan/chem/fingerprint.hpp"

#include <algorithm>
#include <bit>

#include "adseqgan/common/error.hpp"
#include "adseqgan/common/rng.hpp"

namespace adseqgan::chem {

Fingerprint::Fingerprint(std::size_t width, int radius)
    : width_(width), radius_(radius), words_((width + 63) / 64, 0) {}

void Fingerprint::set(std::size_t bit) { words_[bit / 64] |= 1ULL << (bit % 64); }

bool Fingerprint::test(std::size_t bit) const { return (words_[bit / 64] >> (bit % 64)) & 1ULL; }

std::size_t Fingerprint::count() const noexcept {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::size_t> Fingerprint::on_bits() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < width_; ++i) {
    if (test(i)) out.push_back(i);
  }
  return out;
}

namespace {

std::uint64_t combine(std::uint64_t h, std::uint64_t v) { return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6))); }

}  // namespace

Fingerprint fingerprint(const MolecularGraph& g, int radius, std::size_t width) {
  if (width == 0 || !std::has_single_bit(width)) {
    throw Error(Errc::WidthMismatch, "fingerprint width must be a power of two, got " + std::to_string(width));
  }
  if (radius < 0) throw Error(Errc::WidthMismatch, "negative fingerprint radius");
  Fingerprint fp(width, radius);
  const auto n = static_cast<std::size_t>(g.atom_count());
  std::vector<std::uint64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& a = g.atoms()[i];
    std::uint64_t h = 0x1f;
    h = combine(h, static_cast<std::uint64_t>(a.atomic_number));
    h = combine(h, static_cast<std::uint64_t>(g.degree(static_cast<int>(i))));
    h = combine(h, static_cast<std::uint64_t>(a.hydrogens));
    h = combine(h, static_cast<std::uint64_t>(a.charge + 8));
    h = combine(h, a.aromatic ? 1 : 0);
    h = combine(h, g.atom_in_ring(static_cast<int>(i)) ? 1 : 0);
    ids[i] = h;
  }
  for (std::uint64_t id : ids) fp.set(id & (width - 1));

  for (int iter = 1; iter <= radius; ++iter) {
    std::vector<std::uint64_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<int, std::uint64_t>> env;
      for (const auto& nb : g.neighbors(static_cast<int>(i))) {
        env.emplace_back(static_cast<int>(g.bonds()[static_cast<std::size_t>(nb.bond)].order),
                         ids[static_cast<std::size_t>(nb.atom)]);
      }
      std::sort(env.begin(), env.end());
      std::uint64_t h = combine(static_cast<std::uint64_t>(iter), ids[i]);
      for (const auto& [order, id] : env) {
        h = combine(h, static_cast<std::uint64_t>(order));
        h = combine(h, id);
      }
      next[i] = h;
    }
    ids = std::move(next);
    for (std::uint64_t id : ids) fp.set(id & (width - 1));
  }
  return fp;
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  if (a.width() != b.width()) {
    throw Error(Errc::WidthMismatch,
                "fingerprint widths differ: " + std::to_string(a.width()) + " vs " + std::to_string(b.width()));
  }
  std::size_t both = 0;
  std::size_t either = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w) {
    both += static_cast<std::size_t>(std::popcount(a.words()[w] & b.words()[w]));
    either += static_cast<std::size_t>(std::popcount(a.words()[w] | b.words()[w]));
  }
  if (either == 0) return 1.0;
  return static_cast<double>(both) / static_cast<double>(either);
}

}  // namespace adseqgan::chem
