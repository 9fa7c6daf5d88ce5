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

#include "streamdec/toy_model.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.h"

namespace streamdec {
namespace {

using testing::MakeBlock;
using testing::MakeVocab;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

TokenId Argmax(const std::vector<double>& lp) {
  return static_cast<TokenId>(std::max_element(lp.begin(), lp.end()) -
                              lp.begin());
}

double ExpSum(const std::vector<double>& lp) {
  double sum = 0.0;
  for (double v : lp) sum += std::exp(v);
  return sum;
}

// s1 -> [t1, t2] with t1 = 0, t2 = 1; token 2 unused; EOS = 3.
ToyTransducerSpec TwoTokenSpec(InsufficientContextMode mode) {
  ToyTransducerSpec spec;
  spec.mapping = {{1, {0, 1}}};
  spec.insufficient_context_mode = mode;
  return spec;
}

TEST(ToyModelTest, RepeatModeRepeatsOnceReferenceIsExhausted) {
  auto factory = MakeToyModel(TwoTokenSpec(InsufficientContextMode::kRepeat),
                              MakeVocab(3), ContextMode::kBlockwise);
  auto session = factory->NewSession(0);
  session->IngestBlock(MakeBlock({1}, false));
  TokenSeq prefix;
  for (TokenId expected : {0, 1, 1}) {
    const auto lp = session->NextTokenLogprobs(prefix);
    EXPECT_EQ(Argmax(lp), expected);
    EXPECT_EQ(lp[expected], 0.0);
    prefix.push_back(Argmax(lp));
  }
}

TEST(ToyModelTest, FinalBlockEndsWithEos) {
  auto factory = MakeToyModel(TwoTokenSpec(InsufficientContextMode::kRepeat),
                              MakeVocab(3), ContextMode::kBlockwise);
  auto session = factory->NewSession(0);
  session->IngestBlock(MakeBlock({1}, true));
  const auto lp = session->NextTokenLogprobs(TokenSeq{0, 1});
  EXPECT_EQ(lp[3], 0.0);
  EXPECT_EQ(lp[0], kNegInf);
  EXPECT_EQ(session->NextTokenLogprobs(TokenSeq{0})[1], 0.0);
}

TEST(ToyModelTest, InsufficientContextModes) {
  const TokenSeq prefix{0, 1};
  {
    auto f = MakeToyModel(TwoTokenSpec(InsufficientContextMode::kEos),
                          MakeVocab(3), ContextMode::kBlockwise);
    auto s = f->NewSession(0);
    s->IngestBlock(MakeBlock({1}, false));
    EXPECT_EQ(s->NextTokenLogprobs(prefix)[3], 0.0);
  }
  {
    auto f = MakeToyModel(TwoTokenSpec(InsufficientContextMode::kHallucinate),
                          MakeVocab(3), ContextMode::kBlockwise);
    auto s = f->NewSession(0);
    s->IngestBlock(MakeBlock({1}, false));
    const auto lp = s->NextTokenLogprobs(prefix);
    for (TokenId t = 0; t < 3; ++t) EXPECT_NEAR(lp[t], std::log(1.0 / 3), 1e-12);
    EXPECT_EQ(lp[3], kNegInf);
  }
  {
    // REPEAT with nothing to repeat falls back to EOS.
    ToyTransducerSpec spec = TwoTokenSpec(InsufficientContextMode::kRepeat);
    spec.lookahead = 1;
    auto f = MakeToyModel(spec, MakeVocab(3), ContextMode::kBlockwise);
    auto s = f->NewSession(0);
    s->IngestBlock(MakeBlock({1}, false));
    EXPECT_EQ(s->NextTokenLogprobs(TokenSeq{})[3], 0.0);
  }
}

TEST(ToyModelTest, EpsilonSpreadsOverOtherTokens) {
  ToyTransducerSpec spec = TwoTokenSpec(InsufficientContextMode::kRepeat);
  spec.epsilon = 0.3;
  auto f = MakeToyModel(spec, MakeVocab(3), ContextMode::kBlockwise);
  auto s = f->NewSession(0);
  s->IngestBlock(MakeBlock({1}, false));
  const auto lp = s->NextTokenLogprobs(TokenSeq{0});
  EXPECT_NEAR(lp[1], std::log(0.7), 1e-12);
  for (TokenId t : {0, 2, 3}) EXPECT_NEAR(lp[t], std::log(0.1), 1e-12);
}

TEST(ToyModelTest, LookaheadDelaysConfidence) {
  ToyTransducerSpec spec;
  spec.mapping = {{0, {0}}, {1, {1}}};
  spec.lookahead = 1;
  spec.insufficient_context_mode = InsufficientContextMode::kEos;
  auto f = MakeToyModel(spec, MakeVocab(2), ContextMode::kBlockwise);
  auto s = f->NewSession(0);
  s->IngestBlock(MakeBlock({0}, false));
  EXPECT_EQ(s->NextTokenLogprobs(TokenSeq{})[2], 0.0);
  s->IngestBlock(MakeBlock({1}, false));
  EXPECT_EQ(s->NextTokenLogprobs(TokenSeq{})[0], 0.0);
  EXPECT_EQ(s->NextTokenLogprobs(TokenSeq{0})[2], 0.0);
}

TEST(ToyModelTest, FullContextConditionsOnAllBlocks) {
  ToyTransducerSpec spec;
  spec.mapping = {{0, {0}}, {1, {1}}};
  spec.insufficient_context_mode = InsufficientContextMode::kRepeat;
  auto f = MakeToyModel(spec, MakeVocab(2), ContextMode::kFullContext);
  auto s = f->NewSession(0);
  s->IngestBlock(MakeBlock({0}, false));
  EXPECT_EQ(Argmax(s->NextTokenLogprobs(TokenSeq{0})), 0);
  s->IngestBlock(MakeBlock({1}, false));
  EXPECT_EQ(Argmax(s->NextTokenLogprobs(TokenSeq{0})), 1);
}

TEST(ToyModelTest, DecoyOpensAnAlternativePath) {
  const auto m = testing::GardenPathModel();
  auto f = MakeToyModel(m.spec, m.vocab, ContextMode::kBlockwise);
  auto s = f->NewSession(0);
  s->IngestBlock(MakeBlock({0}, false));
  const auto first = s->NextTokenLogprobs(TokenSeq{});
  EXPECT_NEAR(first[0], std::log(0.4), 1e-12);
  EXPECT_NEAR(first[5], std::log(0.6), 1e-12);
  EXPECT_EQ(s->NextTokenLogprobs(TokenSeq{5})[6], 0.0);
  EXPECT_EQ(s->NextTokenLogprobs(TokenSeq{5, 6})[m.vocab.eos_id()], 0.0);
  EXPECT_EQ(s->NextTokenLogprobs(TokenSeq{0})[1], 0.0);
  EXPECT_EQ(s->NextTokenLogprobs(TokenSeq{0, 1, 2})[m.vocab.eos_id()], 0.0);
}

TEST(ToyModelTest, SessionContract) {
  auto f = MakeToyModel(TwoTokenSpec(InsufficientContextMode::kRepeat),
                        MakeVocab(3), ContextMode::kBlockwise);
  auto s = f->NewSession(0);
  EXPECT_THROW(s->NextTokenLogprobs(TokenSeq{}), StateError);
  EXPECT_EQ(s->blocks_ingested(), 0);
  s->IngestBlock(MakeBlock({1}, false));
  EXPECT_EQ(s->blocks_ingested(), 1);
  s->IngestBlock(MakeBlock({1}, true));
  EXPECT_TRUE(s->finalized());
  EXPECT_THROW(s->IngestBlock(MakeBlock({1}, true)), StateError);
  EXPECT_THROW(s->IngestBlock(MakeBlock({7}, false)), StateError);
  EXPECT_EQ(s->forward_pass_count(), 0);
  s->NextTokenLogprobs(TokenSeq{});
  s->NextTokenLogprobs(TokenSeq{0});
  EXPECT_EQ(s->forward_pass_count(), 2);
}

TEST(ToyModelTest, RejectsUncoveredSymbolAndBadSpecs) {
  auto f = MakeToyModel(TwoTokenSpec(InsufficientContextMode::kRepeat),
                        MakeVocab(3), ContextMode::kBlockwise);
  EXPECT_TRUE(f->Accepts(1));
  EXPECT_FALSE(f->Accepts(0));
  auto s = f->NewSession(0);
  EXPECT_THROW(s->IngestBlock(MakeBlock({0}, false)), ConfigError);

  ToyTransducerSpec bad;
  bad.mapping = {{0, {7}}};
  EXPECT_THROW(bad.Validate(MakeVocab(3)), ConfigError);
  bad.mapping = {{0, {3}}};
  EXPECT_THROW(bad.Validate(MakeVocab(3)), ConfigError);
  bad.mapping = {{0, {0}}};
  bad.epsilon = 1.0;
  EXPECT_THROW(bad.Validate(MakeVocab(3)), ConfigError);
}

TEST(ToyModelTest, RandomSpecsNormalizedDeterministicAndModeIndependent) {
  std::mt19937_64 rng(11);
  testing::RandomSpecOptions opt;
  opt.regular_tokens = 4;
  opt.symbols = 4;
  opt.max_targets_per_symbol = 3;
  opt.max_lookahead = 2;
  std::uniform_int_distribution<int> tok(0, 4), len(0, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = testing::RandomToyModel(rng, opt);
    const auto source = testing::RandomSource(rng, opt.symbols, 1, 4);
    const auto blocks = testing::OneSymbolBlocks(source);
    auto bw = MakeToyModel(m.spec, m.vocab, ContextMode::kBlockwise);
    auto fc = MakeToyModel(m.spec, m.vocab, ContextMode::kFullContext);
    auto a = bw->NewSession(1), b = bw->NewSession(1), c = fc->NewSession(1);
    for (const Block& block : blocks) {
      a->IngestBlock(block);
      b->IngestBlock(block);
      c->IngestBlock(block);
      for (int q = 0; q < 5; ++q) {
        TokenSeq prefix(len(rng));
        for (auto& t : prefix) t = tok(rng);
        const auto la = a->NextTokenLogprobs(prefix);
        EXPECT_NEAR(ExpSum(la), 1.0, 1e-6);
        EXPECT_EQ(la, b->NextTokenLogprobs(prefix));
        EXPECT_EQ(la, c->NextTokenLogprobs(prefix));
      }
    }
  }
}

TEST(ToyModelJsonTest, RoundTrip) {
  const auto m = testing::GardenPathModel();
  const ToyModelFile file{m.vocab, m.spec};
  const ToyModelFile back = ToyModelFromJson(ToyModelToJson(file));
  EXPECT_EQ(back.vocab.size(), m.vocab.size());
  EXPECT_EQ(back.vocab.eos_id(), m.vocab.eos_id());
  EXPECT_EQ(back.spec.mapping, m.spec.mapping);
  ASSERT_EQ(back.spec.decoys.size(), 1u);
  EXPECT_EQ(back.spec.decoys.at(0).tokens, m.spec.decoys.at(0).tokens);
  EXPECT_EQ(back.spec.decoys.at(0).weight, 0.6);
  EXPECT_EQ(back.spec.epsilon, m.spec.epsilon);
  EXPECT_EQ(back.spec.insufficient_context_mode,
            m.spec.insufficient_context_mode);
  EXPECT_EQ(back.spec.lookahead, m.spec.lookahead);
}

TEST(ToyModelJsonTest, SurfaceForms) {
  const auto doc = nlohmann::json::parse(R"({
    "vocab": ["a", "b", "<eos>"],
    "mapping": {"0": ["a", "b"], "1": [1]},
    "epsilon": 0.0, "mode": "repeat", "lookahead": 0})");
  const ToyModelFile file = ToyModelFromJson(doc);
  EXPECT_EQ(file.vocab.eos_id(), 2);
  EXPECT_EQ(file.spec.mapping.at(0), (TokenSeq{0, 1}));
  EXPECT_EQ(file.spec.mapping.at(1), (TokenSeq{1}));
}

TEST(ToyModelJsonTest, LoadErrorsAreInputErrors) {
  EXPECT_THROW(LoadToyModel("/nonexistent/model.json"), InputError);
  EXPECT_THROW(ToyModelFromJson(nlohmann::json::parse(R"({"vocab": []})")),
               InputError);
}

}  // namespace
}  // namespace streamdec
