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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adseqgan/neural/critic.hpp"
#include "adseqgan/neural/generator.hpp"
#include "adseqgan/neural/tensor.hpp"

namespace adseqgan::neural {

/// Everything needed to resume or sample: networks, optimizer moments,
/// vocabulary and free-form metadata (length statistics, epoch, ...).
struct Checkpoint {
  std::string config_hash;
  std::map<std::string, std::string> meta;
  std::vector<std::string> vocabulary;
  GeneratorParams generator;
  AdamState generator_opt;
  std::optional<CriticParams> critic;
  AdamState critic_opt;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

std::string serialize_checkpoint(const Checkpoint& checkpoint);

/// Parses a checkpoint; when expected_hash is non-empty a different stored hash
/// raises ConfigHashMismatch.
Checkpoint deserialize_checkpoint(std::string_view text, std::string_view expected_hash = {});

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint);
/// Missing file raises MissingArtifact.
Checkpoint load_checkpoint(const std::string& path, std::string_view expected_hash = {});

}  // namespace adseqgan::neural
