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

#include "adseqgan/chem/elements.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

#include "adseqgan/common/error.hpp"

namespace adseqgan::chem {
namespace {

constexpr std::array<int, 1> kV1{1};
constexpr std::array<int, 1> kV2{2};
constexpr std::array<int, 1> kV3{3};
constexpr std::array<int, 1> kV4{4};
constexpr std::array<int, 2> kV35{3, 5};
constexpr std::array<int, 3> kV246{2, 4, 6};
constexpr std::span<const int> kNone{};

// Elements up to iodine plus a few heavier ones seen in salt forms.
const std::array kElements = {
    Element{"H", 1, 1.008, kV1},     Element{"He", 2, 4.0026, kNone}, Element{"Li", 3, 6.94, kNone},
    Element{"Be", 4, 9.0122, kNone}, Element{"B", 5, 10.81, kV3},     Element{"C", 6, 12.011, kV4},
    Element{"N", 7, 14.007, kV3},    Element{"O", 8, 15.999, kV2},    Element{"F", 9, 18.998, kV1},
    Element{"Ne", 10, 20.180, kNone}, Element{"Na", 11, 22.990, kNone}, Element{"Mg", 12, 24.305, kNone},
    Element{"Al", 13, 26.982, kNone}, Element{"Si", 14, 28.085, kV4},  Element{"P", 15, 30.974, kV35},
    Element{"S", 16, 32.06, kV246},   Element{"Cl", 17, 35.45, kV1},   Element{"Ar", 18, 39.948, kNone},
    Element{"K", 19, 39.098, kNone},  Element{"Ca", 20, 40.078, kNone}, Element{"Sc", 21, 44.956, kNone},
    Element{"Ti", 22, 47.867, kNone}, Element{"V", 23, 50.942, kNone},  Element{"Cr", 24, 51.996, kNone},
    Element{"Mn", 25, 54.938, kNone}, Element{"Fe", 26, 55.845, kNone}, Element{"Co", 27, 58.933, kNone},
    Element{"Ni", 28, 58.693, kNone}, Element{"Cu", 29, 63.546, kNone}, Element{"Zn", 30, 65.38, kNone},
    Element{"Ga", 31, 69.723, kNone}, Element{"Ge", 32, 72.630, kV4},  Element{"As", 33, 74.922, kV35},
    Element{"Se", 34, 78.971, kV246}, Element{"Br", 35, 79.904, kV1},  Element{"Kr", 36, 83.798, kNone},
    Element{"Rb", 37, 85.468, kNone}, Element{"Sr", 38, 87.62, kNone},  Element{"Y", 39, 88.906, kNone},
    Element{"Zr", 40, 91.224, kNone}, Element{"Nb", 41, 92.906, kNone}, Element{"Mo", 42, 95.95, kNone},
    Element{"Tc", 43, 98.0, kNone},   Element{"Ru", 44, 101.07, kNone}, Element{"Rh", 45, 102.91, kNone},
    Element{"Pd", 46, 106.42, kNone}, Element{"Ag", 47, 107.87, kNone}, Element{"Cd", 48, 112.41, kNone},
    Element{"In", 49, 114.82, kNone}, Element{"Sn", 50, 118.71, kNone}, Element{"Sb", 51, 121.76, kNone},
    Element{"Te", 52, 127.60, kV246}, Element{"I", 53, 126.90, kV1},   Element{"Xe", 54, 131.29, kNone},
    Element{"Cs", 55, 132.91, kNone}, Element{"Ba", 56, 137.33, kNone}, Element{"Gd", 64, 157.25, kNone},
    Element{"Pt", 78, 195.08, kNone}, Element{"Au", 79, 196.97, kNone}, Element{"Hg", 80, 200.59, kNone},
    Element{"Tl", 81, 204.38, kNone}, Element{"Pb", 82, 207.2, kNone},  Element{"Bi", 83, 208.98, kNone},
};

}  // namespace

const Element* find_element(std::string_view symbol) noexcept {
  for (const auto& e : kElements) {
    if (e.symbol == symbol) return &e;
  }
  return nullptr;
}

const Element& element_by_number(int atomic_number) {
  for (const auto& e : kElements) {
    if (e.atomic_number == atomic_number) return e;
  }
  throw Error(Errc::UnknownElement, "atomic number " + std::to_string(atomic_number));
}

std::vector<int> allowed_valences(const Element& element, int charge) {
  std::vector<int> out;
  if (element.valences.empty()) return out;
  const int z = element.atomic_number;
  for (int v : element.valences) {
    int adjusted = v;
    switch (z) {
      case z::N: case z::P: case z::O: case z::S: case z::Se: case 33: case 52:
        adjusted = v + charge;  // N+ -> 4, O- -> 1
        break;
      case z::H: case z::C: case 14: case 32:
        adjusted = v - std::abs(charge);  // C+ and C- -> 3, H+ -> 0
        break;
      case z::B:
        adjusted = v - charge;  // B- -> 4
        break;
      default:  // halogens: F- -> 0
        adjusted = v + charge;
        break;
    }
    if (adjusted >= 0) out.push_back(adjusted);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) out.push_back(0);
  return out;
}

bool is_halogen(int atomic_number) noexcept {
  return atomic_number == z::F || atomic_number == z::Cl || atomic_number == z::Br || atomic_number == z::I;
}

bool is_organic_subset(std::string_view symbol) noexcept {
  static constexpr std::array<std::string_view, 10> kOrganic = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"};
  return std::find(kOrganic.begin(), kOrganic.end(), symbol) != kOrganic.end();
}

}  // namespace adseqgan::chem
