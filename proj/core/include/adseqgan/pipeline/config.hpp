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
#include <string>
#include <string_view>
#include <vector>

namespace adseqgan::pipeline {

enum class KeyKind { Integer, Real, Boolean, Text, IntegerList, RealList, TextList };

struct KeySpec {
  std::string_view name;
  std::string_view default_value;
  KeyKind kind;
  bool hashed;  // run-time keys such as the output directory are excluded from the hash
  std::string_view help;
};

/// Every recognised configuration key in file order.
const std::vector<KeySpec>& config_keys();

/// Declarative run configuration: `key = value` lines, `#` comment lines.
/// Values are validated by kind on assignment; unknown keys are rejected.
class Config {
 public:
  Config();

  static Config parse(std::string_view text, const std::string& origin = "config");
  static Config load(const std::string& path);

  /// Throws InvalidConfig on unknown keys or values of the wrong kind.
  void set(std::string_view key, std::string_view value);
  /// Parses "key=value".
  void set_assignment(std::string_view assignment);

  const std::string& text(std::string_view key) const;
  long long integer(std::string_view key) const;
  double real(std::string_view key) const;
  bool boolean(std::string_view key) const;
  std::vector<long long> integers(std::string_view key) const;
  std::vector<double> reals(std::string_view key) const;
  std::vector<std::string> texts(std::string_view key) const;

  /// Cross-key checks: lambda sum, token bounds, positive sizes.
  void validate() const;

  /// Every key in file order, one `key = value` line each.
  std::string resolved() const;
  /// Hash over the hashed keys and the dataset bytes.
  std::string hash(std::string_view dataset_bytes) const;

  friend bool operator==(const Config&, const Config&) = default;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

}  // namespace adseqgan::pipeline
