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
#include <string>
#include <string_view>
#include <vector>

#include "adseqgan/chem/molecule.hpp"
#include "adseqgan/common/error.hpp"

namespace adseqgan::chem {

enum class TokenKind {
  Atom,         // organic-subset symbol, upper or lower case
  BracketAtom,  // [...]
  Bond,         // - = # : / \ .
  BranchOpen,
  BranchClose,
  RingClosure,  // digit or %nn
  Dot,          // fragment separator
  ClassStart,   // reserved class start token; never produced from SMILES text
};

struct Token {
  TokenKind kind = TokenKind::Atom;
  std::string text;
  int ring_label = -1;       // RingClosure only, in [0, 99]
  std::size_t position = 0;  // byte offset in the source string
};

/// Failure while reading SMILES. `position` is a byte offset into the source
/// text where one applies; `atom` and `ring_label` are set for valence and
/// ring errors respectively.
class SmilesError : public Error {
 public:
  SmilesError(Errc code, const std::string& message, std::ptrdiff_t position = -1, int atom = -1,
              int ring_label = -1)
      : Error(code, message), position_(position), atom_(atom), ring_label_(ring_label) {}

  std::ptrdiff_t position() const noexcept { return position_; }
  int atom() const noexcept { return atom_; }
  int ring_label() const noexcept { return ring_label_; }

 private:
  std::ptrdiff_t position_;
  int atom_;
  int ring_label_;
};

std::vector<Token> tokenize(std::string_view smiles);

/// Builds a valence-checked graph. Stereo marks are accepted and dropped,
/// isotopes and atom classes are ignored. Lowercase input is kekulized and
/// aromaticity is then re-perceived per ring, so Kekule and aromatic inputs
/// for the same molecule give the same graph.
MolecularGraph parse(const std::vector<Token>& tokens);

MolecularGraph parse_smiles(std::string_view smiles);

/// Concatenated token texts.
std::string detokenize(const std::vector<Token>& tokens);

/// Token texts only, a convenience for vocabularies.
std::vector<std::string> token_texts(std::string_view smiles);

}  // namespace adseqgan::chem
