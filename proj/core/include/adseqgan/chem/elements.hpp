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

#include <span>
#include <string_view>
#include <vector>

namespace adseqgan::chem {

struct Element {
  std::string_view symbol;
  int atomic_number;
  double mass;  // standard atomic weight
  // Neutral valences in increasing order. Empty means no valence model
  // (metals and other elements we only need to recognise).
  std::span<const int> valences;
};

/// nullptr when the symbol is not a recognised element.
const Element* find_element(std::string_view symbol) noexcept;
const Element& element_by_number(int atomic_number);

/// Allowed total valences for an element carrying `charge`, ascending.
/// Empty result means unconstrained.
std::vector<int> allowed_valences(const Element& element, int charge);

bool is_halogen(int atomic_number) noexcept;

/// Members of the bracket-free organic subset (B C N O P S F Cl Br I).
bool is_organic_subset(std::string_view symbol) noexcept;

namespace z {
inline constexpr int H = 1;
inline constexpr int B = 5;
inline constexpr int C = 6;
inline constexpr int N = 7;
inline constexpr int O = 8;
inline constexpr int F = 9;
inline constexpr int P = 15;
inline constexpr int S = 16;
inline constexpr int Cl = 17;
inline constexpr int Se = 34;
inline constexpr int Br = 35;
inline constexpr int I = 53;
}  // namespace z

}  // namespace adseqgan::chem
