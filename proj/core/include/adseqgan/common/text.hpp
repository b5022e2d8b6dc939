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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace adseqgan {

/// FNV-1a over bytes.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL) noexcept;

/// 16 lowercase hex digits.
std::string hex64(std::uint64_t value);

/// Shortest decimal text that round-trips to the same double. inf/nan are
/// written as "inf", "-inf", "nan".
std::string format_double(double value);

/// Inverse of format_double. Throws Error(MalformedRow) on bad text.
double parse_double(std::string_view text);

long long parse_int(std::string_view text);

std::string_view trim(std::string_view s) noexcept;

std::vector<std::string_view> split(std::string_view s, char delim);

/// Reads a whole file; throws Error(FileNotFound).
std::string read_file(const std::string& path);

/// Writes a whole file atomically enough for our purposes; throws Error(IoError).
void write_file(const std::string& path, std::string_view contents);

/// Cursor over a line-oriented "keyword field field ..." text format.
/// Blank lines are skipped; errors carry the 1-based line number.
class KeywordReader {
 public:
  explicit KeywordReader(std::string_view text, std::string what = "file");

  /// Keyword of the next non-blank line, empty at end of input.
  std::string_view peek();
  /// Consume a line that must start with keyword; returns its remaining fields.
  std::vector<std::string_view> fields(std::string_view keyword);
  /// Consume a line starting with keyword; returns the rest of the line verbatim.
  std::string_view rest(std::string_view keyword);
  /// Consume the next line as raw text.
  std::string_view raw_line();
  bool at_end();
  [[noreturn]] void fail(const std::string& message) const;

 private:
  void skip_blank();

  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
  std::string what_;
};

}  // namespace adseqgan
