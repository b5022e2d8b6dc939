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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "adseqgan/chem/molecule.hpp"

namespace adseqgan::chem {

class Fingerprint {
 public:
  Fingerprint() = default;
  Fingerprint(std::size_t width, int radius);

  std::size_t width() const noexcept { return width_; }
  int radius() const noexcept { return radius_; }

  void set(std::size_t bit);
  bool test(std::size_t bit) const;
  std::size_t count() const noexcept;
  std::vector<std::size_t> on_bits() const;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

 private:
  std::size_t width_ = 0;
  int radius_ = 0;
  std::vector<std::uint64_t> words_;
};

inline constexpr std::size_t kDefaultFingerprintWidth = 2048;
inline constexpr int kDefaultFingerprintRadius = 2;  // ECFP4

/// Circular (Morgan) fingerprint folded to `width` bits. width must be a
/// power of two; throws Error(WidthMismatch) otherwise.
Fingerprint fingerprint(const MolecularGraph& graph, int radius = kDefaultFingerprintRadius,
                        std::size_t width = kDefaultFingerprintWidth);

/// |a & b| / |a | b|; 1.0 when both are empty. Throws Error(WidthMismatch).
double tanimoto(const Fingerprint& a, const Fingerprint& b);

}  // namespace adseqgan::chem
