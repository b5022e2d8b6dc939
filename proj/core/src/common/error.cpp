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

#include "adseqgan/common/error.hpp"

namespace adseqgan {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::UnknownCharacter: return "UnknownCharacter";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnclosedRing: return "UnclosedRing";
    case Errc::UnbalancedBranch: return "UnbalancedBranch";
    case Errc::UnknownElement: return "UnknownElement";
    case Errc::ValenceViolation: return "ValenceViolation";
    case Errc::KekulizationFailure: return "KekulizationFailure";
    case Errc::WidthMismatch: return "WidthMismatch";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::DegenerateLabels: return "DegenerateLabels";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::IndexOutOfVocab: return "IndexOutOfVocab";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::EmptyBatch: return "EmptyBatch";
    case Errc::EmptySampleSet: return "EmptySampleSet";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::UnknownClass: return "UnknownClass";
    case Errc::NonFiniteLoss: return "NonFiniteLoss";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::MissingArtifact: return "MissingArtifact";
    case Errc::ConfigHashMismatch: return "ConfigHashMismatch";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace adseqgan
