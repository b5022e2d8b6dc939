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

#include "adseqgan/data/data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "adseqgan/chem/canonical.hpp"
#include "adseqgan/chem/elements.hpp"
#include "adseqgan/chem/smiles.hpp"
#include "adseqgan/common/error.hpp"
#include "adseqgan/common/text.hpp"

namespace adseqgan::data {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

RawDataset parse_dataset(std::string_view text, const std::vector<std::string>& class_names) {
  RawDataset ds;
  ds.class_names = class_names;
  const bool fixed = !class_names.empty();
  const auto lines = split(text, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (ds.rows.empty() && fields.size() == 2 && lower(trim(fields[0])) == "label" &&
        lower(trim(fields[1])) == "smiles") {
      continue;
    }
    if (fields.size() != 2 || trim(fields[0]).empty() || trim(fields[1]).empty()) {
      throw Error(Errc::MalformedRow, "line " + std::to_string(i + 1) + ": expected 'label,SMILES'");
    }
    RawRecord r{std::string(trim(fields[0])), std::string(trim(fields[1])), i + 1};
    auto it = std::find(ds.class_names.begin(), ds.class_names.end(), r.label);
    if (it == ds.class_names.end()) {
      if (fixed) throw Error(Errc::UnknownClass, "line " + std::to_string(i + 1) + ": unknown class " + r.label);
      ds.class_names.push_back(r.label);
      it = ds.class_names.end() - 1;
    }
    ds.labels.push_back(static_cast<int>(it - ds.class_names.begin()));
    ds.rows.push_back(std::move(r));
  }
  if (ds.rows.empty()) throw Error(Errc::EmptyDataset, "dataset has no rows");
  return ds;
}

RawDataset load_dataset(const std::string& path, const std::vector<std::string>& class_names) {
  return parse_dataset(read_file(path), class_names);
}

std::string_view rejection_name(Rejection r) {
  switch (r) {
    case Rejection::ParseFailure: return "ParseFailure";
    case Rejection::DisallowedElement: return "DisallowedElement";
    case Rejection::LengthOutOfRange: return "LengthOutOfRange";
  }
  return "Unknown";
}

bool allowed_element(int z) noexcept {
  switch (z) {
    case chem::z::H: case chem::z::B: case chem::z::C: case chem::z::N: case chem::z::O:
    case chem::z::F: case chem::z::P: case chem::z::S: case chem::z::Cl: case chem::z::Br:
    case chem::z::I:
      return true;
    default:
      return false;
  }
}

PreprocessResult preprocess(int label, std::string_view smiles, const PreprocessOptions& options) {
  PreprocessResult result;
  std::string canonical;
  try {
    canonical = chem::canonical_smiles(smiles);
  } catch (const Error& e) {
    result.reason = Rejection::ParseFailure;
    result.detail = e.what();
    return result;
  }
  // Largest fragment by heavy atoms; ties go to the smaller canonical text.
  std::string best;
  int best_heavy = -1;
  chem::MolecularGraph best_graph;
  for (auto frag : split(canonical, '.')) {
    const std::string text = chem::canonical_smiles(frag);
    auto g = chem::parse_smiles(text);
    int heavy = 0;
    for (const auto& a : g.atoms()) heavy += a.atomic_number != chem::z::H;
    if (heavy > best_heavy || (heavy == best_heavy && text < best)) {
      best = text;
      best_heavy = heavy;
      best_graph = std::move(g);
    }
  }
  for (const auto& a : best_graph.atoms()) {
    if (!allowed_element(a.atomic_number)) {
      result.reason = Rejection::DisallowedElement;
      result.detail = std::string(chem::element_by_number(a.atomic_number).symbol);
      return result;
    }
  }
  auto tokens = chem::token_texts(best);
  const int n = static_cast<int>(tokens.size());
  if (n < options.min_tokens || n > options.max_tokens) {
    result.reason = Rejection::LengthOutOfRange;
    result.detail = std::to_string(n) + " tokens";
    return result;
  }
  result.record = CleanRecord{label, std::move(best), std::move(tokens)};
  return result;
}

PreprocessedDataset preprocess_all(const RawDataset& raw, const PreprocessOptions& options) {
  PreprocessedDataset out;
  out.class_names = raw.class_names;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto r = preprocess(raw.labels[i], raw.rows[i].smiles, options);
    if (r.accepted()) {
      out.records.push_back(std::move(*r.record));
    } else {
      out.rejected.push_back({raw.rows[i].line, r.reason, std::move(r.detail)});
    }
  }
  return out;
}

std::string rejection_report(const std::vector<RejectedRow>& rejected) {
  std::ostringstream out;
  for (const auto& r : rejected) {
    std::string detail = r.detail;
    std::replace(detail.begin(), detail.end(), '\t', ' ');
    std::replace(detail.begin(), detail.end(), '\n', ' ');
    out << r.line << '\t' << rejection_name(r.reason) << '\t' << detail << '\n';
  }
  return out.str();
}

Vocabulary Vocabulary::build(const std::vector<CleanRecord>& records, int class_count) {
  if (records.empty()) throw Error(Errc::EmptyDataset, "vocabulary needs at least one record");
  if (class_count < 1) throw Error(Errc::InvalidConfig, "vocabulary needs at least one class");
  std::set<std::string> chemistry;
  for (const auto& r : records) chemistry.insert(r.tokens.begin(), r.tokens.end());
  std::vector<std::string> tokens = {"<pad>", "<eos>"};
  for (int c = 0; c < class_count; ++c) tokens.push_back(reserved_start_name(c));
  tokens.insert(tokens.end(), chemistry.begin(), chemistry.end());
  return from_tokens(std::move(tokens));
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  if (tokens.size() < 3 || tokens[0] != "<pad>" || tokens[1] != "<eos>") {
    throw Error(Errc::MalformedRow, "vocabulary must begin with <pad> <eos> and class start tokens");
  }
  Vocabulary v;
  while (static_cast<std::size_t>(2 + v.class_count_) < tokens.size() &&
         tokens[static_cast<std::size_t>(2 + v.class_count_)] == reserved_start_name(v.class_count_)) {
    ++v.class_count_;
  }
  if (v.class_count_ == 0) throw Error(Errc::MalformedRow, "vocabulary has no class start tokens");
  std::set<std::string> seen;
  for (const auto& t : tokens) {
    if (!seen.insert(t).second) throw Error(Errc::MalformedRow, "duplicate vocabulary token " + t);
  }
  v.tokens_ = std::move(tokens);
  return v;
}

int Vocabulary::start(int label) const {
  if (label < 0 || label >= class_count_) {
    throw Error(Errc::UnknownClass, "class label " + std::to_string(label) + " outside vocabulary");
  }
  return 2 + label;
}

std::vector<int> Vocabulary::start_tokens() const {
  std::vector<int> out;
  for (int c = 0; c < class_count_; ++c) out.push_back(2 + c);
  return out;
}

int Vocabulary::index(std::string_view token) const {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i] == token) return static_cast<int>(i);
  }
  throw Error(Errc::IndexOutOfVocab, "token '" + std::string(token) + "' not in vocabulary");
}

const std::string& Vocabulary::token(int index) const {
  if (index < 0 || index >= size()) throw Error(Errc::IndexOutOfVocab, "index " + std::to_string(index));
  return tokens_[static_cast<std::size_t>(index)];
}

std::vector<std::uint8_t> Vocabulary::emittable_mask() const {
  std::vector<std::uint8_t> mask(tokens_.size(), 1);
  for (int i = 0; i < size(); ++i) {
    if (is_reserved(i) && i != kEos) mask[static_cast<std::size_t>(i)] = 0;
  }
  return mask;
}

std::vector<int> Vocabulary::encode(const std::vector<std::string>& tokens) const {
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(index(t));
  return out;
}

std::string Vocabulary::decode(std::span<const int> sequence) const {
  std::string out;
  for (int t : sequence) {
    if (t == kEos) break;
    out += token(t);
  }
  return out;
}

int Vocabulary::content_length(std::span<const int> sequence, int eos) {
  const auto it = std::find(sequence.begin(), sequence.end(), eos);
  return static_cast<int>(it - sequence.begin());
}

std::vector<EncodedRecord> encode_records(const std::vector<CleanRecord>& records, const Vocabulary& vocab) {
  std::vector<EncodedRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    EncodedRecord e{r.label, r.smiles, vocab.encode(r.tokens)};
    e.tokens.push_back(vocab.eos());
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<LengthStats> length_stats(const std::vector<CleanRecord>& records, int class_count) {
  std::vector<LengthStats> stats(static_cast<std::size_t>(class_count));
  std::vector<double> sum(stats.size(), 0.0), sum_sq(stats.size(), 0.0), n(stats.size(), 0.0);
  for (const auto& r : records) {
    const auto c = static_cast<std::size_t>(r.label);
    const double len = static_cast<double>(r.tokens.size());
    sum[c] += len;
    sum_sq[c] += len * len;
    n[c] += 1.0;
  }
  for (std::size_t c = 0; c < stats.size(); ++c) {
    if (n[c] == 0.0) continue;
    stats[c].mean = sum[c] / n[c];
    const double var = std::max(0.0, sum_sq[c] / n[c] - stats[c].mean * stats[c].mean);
    stats[c].stddev = var > 1e-12 ? std::sqrt(var) : 1.0;
  }
  return stats;
}

OversampleSampler::OversampleSampler(std::span<const int> labels, int class_count, int target_class, int factor,
                                     std::uint64_t seed)
    : rng_(seed) {
  if (target_class < 0 || target_class >= class_count) {
    throw Error(Errc::UnknownClass, "oversample class " + std::to_string(target_class) + " does not exist");
  }
  if (factor < 1) throw Error(Errc::InvalidConfig, "oversample factor must be at least 1");
  if (labels.empty()) throw Error(Errc::EmptyDataset, "sampler needs at least one record");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int copies = labels[i] == target_class ? factor : 1;
    for (int k = 0; k < copies; ++k) pool_.push_back(i);
  }
}

std::size_t OversampleSampler::next() { return pool_[rng_.below(pool_.size())]; }

std::vector<std::size_t> OversampleSampler::batch(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (auto& x : out) x = next();
  return out;
}

namespace {

struct Unit {
  const char* text;
  double weight[2];
};

// Chain fragments; each begins with an atom bonded to the end of the previous one.
constexpr Unit kBody[] = {
    {"C", {3.0, 3.0}},          {"CC", {2.0, 2.0}},         {"c1ccc(cc1)", {1.5, 1.5}},
    {"O", {3.0, 0.2}},          {"CO", {3.0, 0.2}},         {"C(=O)", {2.5, 0.3}},
    {"C(O)", {2.0, 0.1}},       {"C(=O)O", {2.0, 0.1}},     {"c1ccc(o1)", {1.0, 0.0}},
    {"N", {0.2, 3.0}},          {"CN", {0.2, 3.0}},         {"C(N)", {0.1, 2.0}},
    {"S", {0.1, 2.5}},          {"CS", {0.1, 2.0}},         {"c1ccc(nc1)", {0.2, 1.5}},
    {"c1ccc(s1)", {0.0, 1.0}},  {"C(=N)", {0.0, 1.0}},      {"N(C)", {0.1, 1.5}},
};

constexpr Unit kEnd[] = {
    {"C", {2.0, 2.0}},   {"O", {3.0, 0.2}},   {"C(=O)O", {1.5, 0.1}}, {"F", {0.5, 0.5}},
    {"N", {0.2, 3.0}},   {"S", {0.1, 1.5}},   {"Cl", {0.3, 0.3}},     {"c1ccccc1", {1.0, 1.0}},
};

template <std::size_t N>
const char* pick(const Unit (&units)[N], int cls, Rng& rng) {
  double total = 0.0;
  for (const auto& u : units) total += u.weight[cls];
  double r = rng.uniform() * total;
  for (const auto& u : units) {
    r -= u.weight[cls];
    if (r < 0.0) return u.text;
  }
  return units[N - 1].text;
}

}  // namespace

std::string synthetic_corpus(const SyntheticCorpusOptions& options) {
  static const char* kNames[2] = {"O_rich", "NS_rich"};
  if (options.per_class.size() != 2) throw Error(Errc::InvalidConfig, "synthetic corpus has exactly two classes");
  if (options.min_units < 1 || options.max_units < options.min_units) {
    throw Error(Errc::InvalidConfig, "synthetic corpus unit range is empty");
  }
  Rng rng(options.seed);
  std::ostringstream out;
  out << "label,smiles\n";
  std::vector<std::pair<int, int>> order;  // (class, index) interleaved by a shuffle
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < options.per_class[static_cast<std::size_t>(c)]; ++i) order.emplace_back(c, i);
  }
  rng.shuffle(order.begin(), order.end());
  for (const auto& [cls, idx] : order) {
    (void)idx;
    const int units = options.min_units +
                      static_cast<int>(rng.below(static_cast<std::size_t>(options.max_units - options.min_units + 1)));
    std::string s;
    for (int u = 0; u + 1 < units; ++u) s += pick(kBody, cls, rng);
    s += pick(kEnd, cls, rng);
    out << kNames[cls] << ',' << s << '\n';
  }
  return out.str();
}

}  // namespace adseqgan::data
