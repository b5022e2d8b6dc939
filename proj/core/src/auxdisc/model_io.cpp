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

#include <algorithm>
#include <sstream>

#include "adseqgan/auxdisc/auxdisc.hpp"
#include "adseqgan/common/error.hpp"
#include "adseqgan/common/text.hpp"

namespace adseqgan::auxdisc {

namespace {

constexpr std::string_view kMagic = "adseqgan-forest 1";

std::vector<double> rule_values(const StructuralRules& r) {
  return {r.hetero_ratio_max,    r.hetero_penalty,  static_cast<double>(r.macrocycle_size),
          r.macrocycle_penalty,  r.antiaromatic_penalty, r.halogen_ratio_max,
          r.halogen_penalty,     r.carbon_fraction_max,  r.carbon_penalty,
          r.fused_hetero_bonus};
}

StructuralRules rules_from(const std::vector<double>& v) {
  StructuralRules r;
  r.hetero_ratio_max = v[0];
  r.hetero_penalty = v[1];
  r.macrocycle_size = static_cast<int>(v[2]);
  r.macrocycle_penalty = v[3];
  r.antiaromatic_penalty = v[4];
  r.halogen_ratio_max = v[5];
  r.halogen_penalty = v[6];
  r.carbon_fraction_max = v[7];
  r.carbon_penalty = v[8];
  r.fused_hetero_bonus = v[9];
  return r;
}

}  // namespace

std::string serialize_model(const RandomForestModel& model) {
  std::ostringstream out;
  out << kMagic << '\n';
  out << "schema " << model.schema_version << '\n';
  out << "config_hash " << (model.config_hash.empty() ? "-" : model.config_hash) << '\n';
  out << "classes " << model.class_names.size();
  for (const auto& c : model.class_names) out << ' ' << c;
  out << '\n';
  out << "features " << model.features.size();
  for (int f : model.features) out << ' ' << f;
  out << '\n';
  for (int c = 0; c < model.class_count(); ++c) {
    out << "rules " << c;
    for (double v : rule_values(model.rules_for(c))) out << ' ' << format_double(v);
    out << '\n';
  }
  out << "trees " << model.trees.size() << '\n';
  for (const auto& tree : model.trees) {
    out << "tree " << tree.nodes.size() << '\n';
    for (const auto& n : tree.nodes) {
      if (n.feature < 0) {
        out << "leaf";
        for (double p : n.proba) out << ' ' << format_double(p);
      } else {
        out << "split " << n.feature << ' ' << format_double(n.threshold) << ' ' << n.left << ' ' << n.right;
      }
      out << '\n';
    }
  }
  out << "end\n";
  return out.str();
}

RandomForestModel deserialize_model(std::string_view text) {
  KeywordReader in(text, "forest model");
  if (in.peek() != "adseqgan-forest" || in.fields("adseqgan-forest") != std::vector<std::string_view>{"1"}) {
    throw Error(Errc::MalformedRow, "not a forest model file");
  }
  RandomForestModel model;
  auto schema = in.fields("schema");
  if (schema.size() != 1) in.fail("bad schema line");
  model.schema_version = std::string(schema[0]);
  auto hash = in.fields("config_hash");
  if (hash.size() != 1) in.fail("bad config_hash line");
  model.config_hash = hash[0] == "-" ? "" : std::string(hash[0]);

  auto classes = in.fields("classes");
  if (classes.empty() || static_cast<long long>(classes.size()) != parse_int(classes[0]) + 1) in.fail("bad classes line");
  for (std::size_t i = 1; i < classes.size(); ++i) model.class_names.emplace_back(classes[i]);
  const std::size_t class_count = model.class_names.size();

  auto features = in.fields("features");
  if (features.empty() || static_cast<long long>(features.size()) != parse_int(features[0]) + 1) {
    in.fail("bad features line");
  }
  for (std::size_t i = 1; i < features.size(); ++i) {
    const auto f = parse_int(features[i]);
    if (f < 0 || f >= static_cast<long long>(descriptors::kDescriptorCount)) in.fail("feature index out of schema");
    model.features.push_back(static_cast<int>(f));
  }
  for (std::size_t c = 0; c < class_count; ++c) {
    auto r = in.fields("rules");
    if (r.size() != 11 || parse_int(r[0]) != static_cast<long long>(c)) in.fail("bad rules line");
    std::vector<double> v;
    for (std::size_t i = 1; i < r.size(); ++i) v.push_back(parse_double(r[i]));
    model.rules.push_back(rules_from(v));
  }
  auto trees = in.fields("trees");
  if (trees.size() != 1) in.fail("bad trees line");
  const auto n_trees = parse_int(trees[0]);
  for (long long t = 0; t < n_trees; ++t) {
    auto header = in.fields("tree");
    if (header.size() != 1) in.fail("bad tree line");
    const auto n_nodes = parse_int(header[0]);
    DecisionTree tree;
    for (long long i = 0; i < n_nodes; ++i) {
      TreeNode node;
      const bool leaf = in.peek() == "leaf";
      const auto f = in.fields(leaf ? "leaf" : "split");
      if (leaf) {
        if (f.size() != class_count) in.fail("leaf width differs from class count");
        for (auto p : f) node.proba.push_back(parse_double(p));
      } else {
        if (f.size() != 4) in.fail("bad split line");
        node.feature = static_cast<int>(parse_int(f[0]));
        node.threshold = parse_double(f[1]);
        node.left = static_cast<int>(parse_int(f[2]));
        node.right = static_cast<int>(parse_int(f[3]));
        if (node.left <= i || node.right <= i || node.left >= n_nodes || node.right >= n_nodes) {
          in.fail("child index out of range");
        }
        if (std::find(model.features.begin(), model.features.end(), node.feature) == model.features.end()) {
          in.fail("split feature outside the selected set");
        }
      }
      tree.nodes.push_back(std::move(node));
    }
    if (tree.nodes.empty()) in.fail("empty tree");
    model.trees.push_back(std::move(tree));
  }
  in.fields("end");
  if (model.trees.empty()) throw Error(Errc::MalformedRow, "model has no trees");
  return model;
}

}  // namespace adseqgan::auxdisc
