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

#include <string>
#include <vector>

#include "adseqgan/chem/molecule.hpp"

namespace adseqgan::chem {

/// Morgan-style canonical ranks: initial (element, charge, degree, H count,
/// aromaticity, ring membership) classes refined by neighbour ranks, with
/// remaining ties broken one atom at a time. Result is a permutation of 0..n-1.
std::vector<int> canonical_ranks(const MolecularGraph& graph);

/// Canonical SMILES. Fragments are written separately and joined with '.'
/// in lexicographic order.
std::string canonicalize(const MolecularGraph& graph);

/// parse + canonicalize; throws on invalid input.
std::string canonical_smiles(std::string_view smiles);

}  // namespace adseqgan::chem
