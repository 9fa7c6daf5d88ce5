// Copyright 2026 The streamdec Authors. All Rights Reserved.
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

#include "fixtures.h"

#include <cstdio>
#include <string>
#include <utility>

namespace streamdec::testing {

namespace {

int UniformInt(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double UniformReal(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool HasAdjacentRepeat(const TokenSeq& seq) {
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq[i] == seq[i - 1]) return true;
  }
  return false;
}

std::vector<CorpusRecord> MakeCorpus(const std::string& prefix,
                                     const std::vector<std::vector<int>>& srcs,
                                     const ToyTransducerSpec& spec) {
  std::vector<CorpusRecord> corpus;
  for (std::size_t i = 0; i < srcs.size(); ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "%s%02zu", prefix.c_str(), i);
    corpus.push_back({id, srcs[i], ReferenceOf(spec, srcs[i]), 280.0});
  }
  return corpus;
}

}  // namespace

Vocabulary MakeVocab(int regular) { return Vocabulary(regular + 1, regular); }

Block MakeBlock(std::vector<int> symbols, bool is_final,
                double ms_per_symbol) {
  Block block;
  block.duration_ms = ms_per_symbol * static_cast<double>(symbols.size());
  block.symbols = std::move(symbols);
  block.is_final = is_final;
  return block;
}

std::vector<Block> OneSymbolBlocks(const std::vector<int>& source,
                                   double ms_per_symbol) {
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < source.size(); ++i) {
    blocks.push_back(
        MakeBlock({source[i]}, i + 1 == source.size(), ms_per_symbol));
  }
  return blocks;
}

TokenSeq ReferenceOf(const ToyTransducerSpec& spec,
                     const std::vector<int>& source) {
  TokenSeq ref;
  for (int s : source) {
    const TokenSeq& t = spec.mapping.at(s);
    ref.insert(ref.end(), t.begin(), t.end());
  }
  return ref;
}

RandomModel RandomToyModel(std::mt19937_64& rng, const RandomSpecOptions& opt) {
  RandomModel m{MakeVocab(opt.regular_tokens), {}};
  ToyTransducerSpec& spec = m.spec;
  for (int s = 0; s < opt.symbols; ++s) {
    TokenSeq targets(UniformInt(rng, 1, opt.max_targets_per_symbol));
    for (auto& t : targets) t = UniformInt(rng, 0, opt.regular_tokens - 1);
    spec.mapping[s] = targets;
  }
  if (opt.allow_decoys && opt.regular_tokens >= 2) {
    for (const auto& [s, targets] : spec.mapping) {
      if (UniformInt(rng, 0, 3) != 0) continue;
      Decoy decoy;
      decoy.tokens.resize(UniformInt(rng, 1, 2));
      for (auto& t : decoy.tokens) t = UniformInt(rng, 0, opt.regular_tokens - 1);
      if (decoy.tokens.front() == targets.front()) {
        decoy.tokens.front() = (targets.front() + 1) % opt.regular_tokens;
      }
      decoy.weight = UniformReal(rng, 0.1, 0.9);
      spec.decoys[s] = decoy;
    }
  }
  spec.epsilon = (opt.allow_zero_epsilon && UniformInt(rng, 0, 2) == 0)
                     ? 0.0
                     : UniformReal(rng, 0.01, opt.max_epsilon);
  spec.insufficient_context_mode =
      static_cast<InsufficientContextMode>(UniformInt(rng, 0, 2));
  spec.lookahead = UniformInt(rng, 0, opt.max_lookahead);
  spec.Validate(m.vocab);
  return m;
}

std::vector<int> RandomSource(std::mt19937_64& rng, int symbols, int min_len,
                              int max_len) {
  std::vector<int> source(UniformInt(rng, min_len, max_len));
  for (auto& s : source) s = UniformInt(rng, 0, symbols - 1);
  return source;
}

RandomModel GardenPathModel(int decoy_length) {
  RandomModel m{MakeVocab(8), {}};
  m.spec.mapping = {{0, {0, 1, 2}}, {1, {3}}, {2, {4}}, {3, {7}}};
  Decoy decoy;
  decoy.tokens = decoy_length == 1 ? TokenSeq{5} : TokenSeq{5, 6};
  decoy.weight = 0.6;
  m.spec.decoys[0] = decoy;
  m.spec.epsilon = 0.0;
  m.spec.insufficient_context_mode = InsufficientContextMode::kEos;
  m.spec.lookahead = 0;
  m.spec.Validate(m.vocab);
  return m;
}

std::vector<CorpusRecord> GardenPathCorpus() {
  const RandomModel m = GardenPathModel();
  std::mt19937_64 rng(17);
  std::vector<std::vector<int>> sources;
  for (int i = 0; i < 10; ++i) {
    std::vector<int> src{0};
    const int tail = UniformInt(rng, 3, 5);
    for (int k = 0; k < tail; ++k) src.push_back(UniformInt(rng, 1, 3));
    sources.push_back(src);
  }
  return MakeCorpus("gp", sources, m.spec);
}

RandomModel LatencyFixtureModel() {
  RandomModel m{MakeVocab(10), {}};
  m.spec.mapping = {{0, {0, 1}}, {1, {2}},    {2, {3, 4}}, {3, {5}},
                    {4, {6, 7}}, {5, {8}},    {6, {9, 0}}, {7, {1, 3}}};
  m.spec.epsilon = 0.0;
  m.spec.insufficient_context_mode = InsufficientContextMode::kRepeat;
  m.spec.lookahead = 0;
  m.spec.Validate(m.vocab);
  return m;
}

std::vector<CorpusRecord> LatencyFixtureCorpus() {
  const RandomModel m = LatencyFixtureModel();
  std::mt19937_64 rng(29);
  std::vector<std::vector<int>> sources;
  while (sources.size() < 20) {
    std::vector<int> src = RandomSource(rng, 8, 6, 10);
    // Adjacent repeats in the reference would fire the repetition heuristic
    // on the correct path; keep the fixture free of them.
    if (HasAdjacentRepeat(ReferenceOf(m.spec, src))) continue;
    sources.push_back(src);
  }
  return MakeCorpus("lat", sources, m.spec);
}

RandomModel ComputeFixtureModel() {
  RandomModel m{MakeVocab(10), {}};
  m.spec.mapping = {{0, {0, 1}}, {1, {2}},    {2, {3, 4}}, {3, {5}},
                    {4, {6, 7}}, {5, {8}},    {6, {9, 0}}, {7, {1, 3}}};
  m.spec.epsilon = 0.1;
  m.spec.insufficient_context_mode = InsufficientContextMode::kEos;
  m.spec.lookahead = 0;
  m.spec.Validate(m.vocab);
  return m;
}

std::vector<CorpusRecord> ComputeFixtureCorpus() {
  const RandomModel m = ComputeFixtureModel();
  std::mt19937_64 rng(41);
  std::vector<std::vector<int>> sources;
  for (int i = 0; i < 24; ++i) sources.push_back(RandomSource(rng, 8, 4, 8));
  return MakeCorpus("cmp", sources, m.spec);
}

}  // namespace streamdec::testing
