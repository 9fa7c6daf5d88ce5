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

#include "streamdec/core.h"

#include <random>

#include <gtest/gtest.h>

namespace streamdec {
namespace {

Hypothesis MakeHyp(TokenSeq tokens, std::vector<double> lps) {
  Hypothesis h;
  h.tokens = std::move(tokens);
  h.token_logprobs = std::move(lps);
  return h;
}

TEST(LongestCommonPrefixTest, Examples) {
  EXPECT_EQ(LongestCommonPrefix(TokenSeq{1, 2, 3}, TokenSeq{1, 2, 4}),
            (TokenSeq{1, 2}));
  EXPECT_EQ(LongestCommonPrefix(TokenSeq{1, 2}, TokenSeq{1, 2}),
            (TokenSeq{1, 2}));
  EXPECT_EQ(LongestCommonPrefix(TokenSeq{}, TokenSeq{1}), TokenSeq{});
}

TEST(LongestCommonPrefixTest, CommutativeIdempotentAndBounded) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> len(0, 6), tok(0, 2);
  for (int trial = 0; trial < 500; ++trial) {
    TokenSeq a(len(rng)), b(len(rng));
    for (auto& t : a) t = tok(rng);
    for (auto& t : b) t = tok(rng);
    const TokenSeq ab = LongestCommonPrefix(a, b);
    EXPECT_EQ(ab, LongestCommonPrefix(b, a));
    EXPECT_EQ(LongestCommonPrefix(a, a), a);
    EXPECT_LE(ab.size(), std::min(a.size(), b.size()));
    EXPECT_TRUE(IsPrefixOf(ab, a));
    EXPECT_TRUE(IsPrefixOf(ab, b));
    if (ab.size() < std::min(a.size(), b.size())) {
      EXPECT_NE(a[ab.size()], b[ab.size()]);
    }
  }
}

TEST(NormalizedScoreTest, Examples) {
  EXPECT_DOUBLE_EQ(NormalizedScore(MakeHyp({1, 2}, {-0.5, -1.5})), -1.0);
  EXPECT_DOUBLE_EQ(NormalizedScore(MakeHyp({1}, {-2.0})), -2.0);
  EXPECT_DOUBLE_EQ(NormalizedScore(MakeHyp({1, 1, 1, 1}, {-1, -1, -1, -1})),
                   -1.0);
  EXPECT_EQ(NormalizedScore(Hypothesis{}), 0.0);
}

TEST(DetectStopTest, Examples) {
  SearchConfig cfg;
  const TokenId eos = 9;
  EXPECT_EQ(DetectStop(MakeHyp({1, 2, 2}, {0, 0, 0}), cfg, eos),
            StopReason::kRepeat);
  EXPECT_EQ(DetectStop(MakeHyp({1, eos}, {0, 0}), cfg, eos), StopReason::kEos);
  EXPECT_EQ(DetectStop(MakeHyp({1, 2, 3}, {0, 0, 0}), cfg, eos),
            StopReason::kNone);
}

TEST(DetectStopTest, EosTakesPrecedenceOverRepeat) {
  SearchConfig cfg;
  EXPECT_EQ(DetectStop(MakeHyp({9, 9}, {0, 0}), cfg, 9), StopReason::kEos);
}

TEST(DetectStopTest, RepetitionDetectionOffIgnoresRepeats) {
  SearchConfig cfg;
  cfg.repetition_detection = false;
  EXPECT_EQ(DetectStop(MakeHyp({1, 2, 2}, {0, 0, 0}), cfg, 9),
            StopReason::kNone);
}

TEST(DetectStopTest, BigramRepeat) {
  SearchConfig cfg;
  cfg.repetition_ngram = 2;
  EXPECT_EQ(DetectStop(MakeHyp({1, 2, 1, 2}, {0, 0, 0, 0}), cfg, 9),
            StopReason::kRepeat);
  EXPECT_EQ(DetectStop(MakeHyp({1, 2, 2}, {0, 0, 0}), cfg, 9),
            StopReason::kNone);
}

TEST(HypothesisTest, TruncateClearsFinished) {
  Hypothesis h = MakeHyp({1, 2, 9}, {-1, -2, -3});
  h.finished = true;
  h.Truncate(1);
  EXPECT_EQ(h.tokens, TokenSeq{1});
  EXPECT_EQ(h.token_logprobs, std::vector<double>{-1});
  EXPECT_FALSE(h.finished);
  EXPECT_DOUBLE_EQ(h.Score(), -1.0);
}

TEST(VocabularyTest, RejectsBadConfigurations) {
  EXPECT_THROW(Vocabulary(1, 0), ConfigError);
  EXPECT_THROW(Vocabulary(3, 3), ConfigError);
  EXPECT_THROW(Vocabulary(2, 1, {"a", "a"}), ConfigError);
  const Vocabulary v(3, 2, {"a", "b", "<eos>"});
  EXPECT_EQ(v.Lookup("b"), 1);
  EXPECT_FALSE(v.Lookup("z").has_value());
  EXPECT_EQ(v.Surface(2), "<eos>");
}

TEST(SearchConfigTest, ValidateAndMaxLength) {
  SearchConfig cfg;
  cfg.max_len_ratio = 10.0;
  cfg.max_len_offset = 2;
  EXPECT_EQ(cfg.MaxLength(0.25), 5);
  cfg.beam_size = 0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
}

}  // namespace
}  // namespace streamdec
