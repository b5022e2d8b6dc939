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

#include "adseqgan/neural/checkpoint.hpp"

#include <filesystem>
#include <sstream>
#include <utility>

#include "adseqgan/common/error.hpp"
#include "adseqgan/common/text.hpp"

namespace adseqgan::neural {

namespace {

constexpr std::string_view kMagic = "adseqgan-checkpoint";
constexpr int kVersion = 1;

void write_tensor(std::ostringstream& out, const Tensor& t) {
  out << "tensor " << t.name << ' ' << t.rows << ' ' << t.cols << '\n';
  for (std::size_t i = 0; i < t.data.size(); ++i) {
    if (i > 0) out << ' ';
    out << format_double(t.data[i]);
  }
  out << '\n';
}

void read_tensor(KeywordReader& in, Tensor& t) {
  const auto f = in.fields("tensor");
  if (f.size() != 3 || f[0] != t.name) in.fail("expected tensor " + t.name);
  if (static_cast<std::size_t>(parse_int(f[1])) != t.rows || static_cast<std::size_t>(parse_int(f[2])) != t.cols) {
    throw Error(Errc::ShapeMismatch, "tensor " + t.name + " has unexpected shape");
  }
  const auto values = split(trim(in.raw_line()), ' ');
  if (values.size() != t.data.size() && !(t.data.empty() && values.size() == 1 && values[0].empty())) {
    in.fail("tensor " + t.name + " value count");
  }
  for (std::size_t i = 0; i < t.data.size(); ++i) t.data[i] = parse_double(values[i]);
}

void write_adam(std::ostringstream& out, std::string_view which, const AdamState& s) {
  out << "adam " << which << ' ' << s.step << ' ' << s.m.size() << '\n';
  for (const auto& t : s.m) write_tensor(out, t);
  for (const auto& t : s.v) write_tensor(out, t);
}

void read_adam(KeywordReader& in, std::string_view which, const ConstTensorRefs& params, AdamState& s) {
  const auto f = in.fields("adam");
  if (f.size() != 3 || f[0] != which) in.fail("expected adam " + std::string(which));
  s = make_adam_state(params);
  s.step = parse_int(f[1]);
  const auto n = static_cast<std::size_t>(parse_int(f[2]));
  if (n == 0) {
    s.m.clear();
    s.v.clear();
    return;
  }
  if (n != params.size()) in.fail("optimizer tensor count");
  for (auto& t : s.m) read_tensor(in, t);
  for (auto& t : s.v) read_tensor(in, t);
}

std::string join_ints(const std::vector<int>& xs) {
  std::string out = std::to_string(xs.size());
  for (int x : xs) out += ' ' + std::to_string(x);
  return out;
}

std::vector<int> read_ints(KeywordReader& in, std::string_view keyword) {
  const auto f = in.fields(keyword);
  if (f.empty() || parse_int(f[0]) + 1 != static_cast<long long>(f.size())) in.fail("bad " + std::string(keyword));
  std::vector<int> out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(static_cast<int>(parse_int(f[i])));
  return out;
}

}  // namespace

std::string serialize_checkpoint(const Checkpoint& ck) {
  std::ostringstream out;
  out << kMagic << ' ' << kVersion << '\n';
  out << "config_hash " << (ck.config_hash.empty() ? "-" : ck.config_hash) << '\n';
  for (const auto& [k, v] : ck.meta) out << "meta " << k << ' ' << v << '\n';
  out << "vocab " << ck.vocabulary.size() << '\n';
  for (const auto& t : ck.vocabulary) out << "token " << t << '\n';

  const auto& g = ck.generator;
  out << "generator " << g.vocab << ' ' << g.d_emb << ' ' << g.d_hid << ' ' << g.eos_token << '\n';
  out << "starts " << join_ints(g.start_tokens) << '\n';
  out << "emittable " << join_ints(std::vector<int>(g.emittable.begin(), g.emittable.end())) << '\n';
  for (const Tensor* t : g.tensors()) write_tensor(out, *t);
  write_adam(out, "generator", ck.generator_opt);

  if (ck.critic) {
    const auto& c = *ck.critic;
    out << "critic " << c.vocab << ' ' << c.d_emb << ' ' << c.filters << ' ' << c.pad_token << '\n';
    out << "windows " << join_ints(c.windows) << '\n';
    for (const Tensor* t : c.tensors()) write_tensor(out, *t);
    write_adam(out, "critic", ck.critic_opt);
  }
  out << "end\n";
  return out.str();
}

Checkpoint deserialize_checkpoint(std::string_view text, std::string_view expected_hash) {
  KeywordReader in(text, "checkpoint");
  if (in.peek() != kMagic) throw Error(Errc::MalformedRow, "not a checkpoint file");
  const auto magic = in.fields(kMagic);
  if (magic.size() != 1 || parse_int(magic[0]) != kVersion) in.fail("unsupported checkpoint version");

  Checkpoint ck;
  const auto hash = in.fields("config_hash");
  if (hash.size() != 1) in.fail("bad config_hash");
  ck.config_hash = hash[0] == "-" ? "" : std::string(hash[0]);
  if (!expected_hash.empty() && ck.config_hash != expected_hash) {
    throw Error(Errc::ConfigHashMismatch,
                "checkpoint built with config " + ck.config_hash + ", current config is " + std::string(expected_hash));
  }
  while (in.peek() == "meta") {
    const auto line = in.rest("meta");
    const auto space = line.find(' ');
    ck.meta[std::string(line.substr(0, space))] =
        space == std::string_view::npos ? std::string() : std::string(line.substr(space + 1));
  }
  const auto vocab = in.fields("vocab");
  if (vocab.size() != 1) in.fail("bad vocab");
  const auto n_vocab = parse_int(vocab[0]);
  for (long long i = 0; i < n_vocab; ++i) {
    const auto f = in.fields("token");
    if (f.size() != 1) in.fail("bad token");
    ck.vocabulary.emplace_back(f[0]);
  }

  const auto gf = in.fields("generator");
  if (gf.size() != 4) in.fail("bad generator header");
  GeneratorShape gs;
  gs.vocab = static_cast<int>(parse_int(gf[0]));
  gs.d_emb = static_cast<int>(parse_int(gf[1]));
  gs.d_hid = static_cast<int>(parse_int(gf[2]));
  gs.eos_token = static_cast<int>(parse_int(gf[3]));
  gs.start_tokens = read_ints(in, "starts");
  for (int e : read_ints(in, "emittable")) gs.emittable.push_back(static_cast<std::uint8_t>(e));
  ck.generator = make_generator(gs);
  for (Tensor* t : ck.generator.tensors()) read_tensor(in, *t);
  read_adam(in, "generator", std::as_const(ck.generator).tensors(), ck.generator_opt);

  if (in.peek() == "critic") {
    const auto cf = in.fields("critic");
    if (cf.size() != 4) in.fail("bad critic header");
    CriticShape cs;
    cs.vocab = static_cast<int>(parse_int(cf[0]));
    cs.d_emb = static_cast<int>(parse_int(cf[1]));
    cs.filters = static_cast<int>(parse_int(cf[2]));
    cs.pad_token = static_cast<int>(parse_int(cf[3]));
    cs.windows = read_ints(in, "windows");
    ck.critic = make_critic(cs);
    for (Tensor* t : ck.critic->tensors()) read_tensor(in, *t);
    read_adam(in, "critic", std::as_const(*ck.critic).tensors(), ck.critic_opt);
  }
  in.fields("end");
  return ck;
}

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint) {
  write_file(path, serialize_checkpoint(checkpoint));
}

Checkpoint load_checkpoint(const std::string& path, std::string_view expected_hash) {
  if (!std::filesystem::exists(path)) throw Error(Errc::MissingArtifact, "checkpoint not found: " + path);
  return deserialize_checkpoint(read_file(path), expected_hash);
}

}  // namespace adseqgan::neural
