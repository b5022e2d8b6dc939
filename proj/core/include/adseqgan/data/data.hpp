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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adseqgan/common/rng.hpp"

namespace adseqgan::data {

struct RawRecord {
  std::string label;
  std::string smiles;
  std::size_t line = 0;  // 1-based line number in the source file
};

struct RawDataset {
  std::vector<RawRecord> rows;
  std::vector<std::string> class_names;  // dense label order
  std::vector<int> labels;               // one per row

  std::size_t size() const noexcept { return rows.size(); }
};

/// Two comma-separated fields per line: label, SMILES. A first line equal to
/// "label,smiles" (any case) is a header. Labels map to dense integers by first
/// appearance unless class_names fixes the order.
RawDataset parse_dataset(std::string_view text, const std::vector<std::string>& class_names = {});
RawDataset load_dataset(const std::string& path, const std::vector<std::string>& class_names = {});

enum class Rejection { ParseFailure, DisallowedElement, LengthOutOfRange };

std::string_view rejection_name(Rejection r);

struct PreprocessOptions {
  int min_tokens = 10;
  int max_tokens = 80;
};

struct CleanRecord {
  int label = 0;
  std::string smiles;               // canonical, single fragment
  std::vector<std::string> tokens;  // token texts of smiles
};

struct PreprocessResult {
  std::optional<CleanRecord> record;
  Rejection reason = Rejection::ParseFailure;
  std::string detail;

  bool accepted() const noexcept { return record.has_value(); }
};

/// Elements admitted by the filter: C H N O F Cl Br I B S P.
bool allowed_element(int atomic_number) noexcept;

/// Parse, keep the largest fragment, check elements, canonicalise, check length.
PreprocessResult preprocess(int label, std::string_view smiles, const PreprocessOptions& options = {});

struct RejectedRow {
  std::size_t line = 0;
  Rejection reason = Rejection::ParseFailure;
  std::string detail;
};

struct PreprocessedDataset {
  std::vector<CleanRecord> records;
  std::vector<std::string> class_names;
  std::vector<RejectedRow> rejected;
};

PreprocessedDataset preprocess_all(const RawDataset& raw, const PreprocessOptions& options = {});

/// Line-delimited "line<TAB>reason<TAB>detail" rejection report.
std::string rejection_report(const std::vector<RejectedRow>& rejected);

/// Reserved tokens first (pad, eos, one start token per class), then chemistry
/// tokens in lexicographic order.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kEos = 1;

  Vocabulary() = default;
  static Vocabulary build(const std::vector<CleanRecord>& records, int class_count);
  /// Rebuild from a persisted token list.
  static Vocabulary from_tokens(std::vector<std::string> tokens);

  int size() const noexcept { return static_cast<int>(tokens_.size()); }
  int class_count() const noexcept { return class_count_; }
  int pad() const noexcept { return kPad; }
  int eos() const noexcept { return kEos; }
  int start(int label) const;
  std::vector<int> start_tokens() const;
  bool is_reserved(int index) const noexcept { return index >= 0 && index < 2 + class_count_; }

  int index(std::string_view token) const;
  const std::string& token(int index) const;
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  /// 1 for tokens a generator may emit: eos and chemistry tokens.
  std::vector<std::uint8_t> emittable_mask() const;

  std::vector<int> encode(const std::vector<std::string>& tokens) const;
  /// Tokens before the first eos, concatenated. Reserved tokens render as their
  /// bracketed names, which no SMILES parser accepts.
  std::string decode(std::span<const int> sequence) const;
  /// Content length: tokens before the first eos.
  static int content_length(std::span<const int> sequence, int eos = kEos);

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<std::string> tokens_;
  int class_count_ = 0;
};

inline std::string reserved_start_name(int label) { return "<c" + std::to_string(label) + ">"; }

struct EncodedRecord {
  int label = 0;
  std::string smiles;
  std::vector<int> tokens;  // content tokens followed by eos
};

std::vector<EncodedRecord> encode_records(const std::vector<CleanRecord>& records, const Vocabulary& vocab);

struct LengthStats {
  double mean = 0.0;
  double stddev = 1.0;
};

/// Per-class mean and population standard deviation of content length.
/// A class without records, or with zero spread, gets stddev 1.
std::vector<LengthStats> length_stats(const std::vector<CleanRecord>& records, int class_count);

/// Uniform draws with replacement from a pool in which every record of the
/// target class appears factor times.
class OversampleSampler {
 public:
  OversampleSampler(std::span<const int> labels, int class_count, int target_class, int factor,
                    std::uint64_t seed);

  std::size_t next();
  std::vector<std::size_t> batch(std::size_t n);
  const std::vector<std::size_t>& pool() const noexcept { return pool_; }

 private:
  std::vector<std::size_t> pool_;
  Rng rng_;
};

inline constexpr int kDefaultOversampleFactor = 3;

struct SyntheticCorpusOptions {
  std::vector<int> per_class = {300, 300};
  std::uint64_t seed = 1;
  int min_units = 3;
  int max_units = 10;
};

/// Seeded two-class corpus of linear fragment chains. Class 0 favours oxygen
/// fragments, class 1 nitrogen and sulfur fragments; several fragments are
/// shared. Output is a "label,smiles" header followed by one row per molecule,
/// with class names "O_rich" and "NS_rich".
std::string synthetic_corpus(const SyntheticCorpusOptions& options);

}  // namespace adseqgan::data
