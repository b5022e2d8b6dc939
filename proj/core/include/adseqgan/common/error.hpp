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

#include <stdexcept>
#include <string>
#include <string_view>

namespace adseqgan {

// Every failure the library reports carries one of these codes. The CLI maps
// code families onto process exit codes (see docs/cli.md).
enum class Errc {
  // chem
  UnknownCharacter,
  EmptyInput,
  SyntaxError,
  UnclosedRing,
  UnbalancedBranch,
  UnknownElement,
  ValenceViolation,
  KekulizationFailure,
  WidthMismatch,
  // auxdisc
  InsufficientData,
  DegenerateLabels,
  SchemaMismatch,
  // neural
  IndexOutOfVocab,
  ShapeMismatch,
  // data / adversarial / metrics
  EmptyDataset,
  EmptyBatch,
  EmptySampleSet,
  FileNotFound,
  MalformedRow,
  UnknownClass,
  NonFiniteLoss,
  // pipeline
  InvalidConfig,
  MissingArtifact,
  ConfigHashMismatch,
  IoError,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace adseqgan
