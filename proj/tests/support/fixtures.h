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

// Shared test fixtures: toy models, corpora and random generators.

#ifndef STREAMDEC_TESTS_SUPPORT_FIXTURES_H_
#define STREAMDEC_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "streamdec/corpus.h"
#include "streamdec/harness.h"
#include "streamdec/toy_model.h"

namespace streamdec::testing {

// Tokens 0..regular-1 plus EOS with id `regular`.
Vocabulary MakeVocab(int regular);

Block MakeBlock(std::vector<int> symbols, bool is_final,
                double ms_per_symbol = 280.0);

// Blocks of one symbol each; the last one is final.
std::vector<Block> OneSymbolBlocks(const std::vector<int>& source,
                                   double ms_per_symbol = 280.0);

// Concatenated mapping of `source` under `spec`.
TokenSeq ReferenceOf(const ToyTransducerSpec& spec,
                     const std::vector<int>& source);

struct RandomSpecOptions {
  int regular_tokens = 2;
  int symbols = 3;
  int max_targets_per_symbol = 2;
  double max_epsilon = 0.4;
  bool allow_zero_epsilon = true;
  int max_lookahead = 1;
  bool allow_decoys = true;
};

struct RandomModel {
  Vocabulary vocab;
  ToyTransducerSpec spec;
};

RandomModel RandomToyModel(std::mt19937_64& rng, const RandomSpecOptions& opt);

std::vector<int> RandomSource(std::mt19937_64& rng, int symbols, int min_len,
                              int max_len);

// Garden-path fixture. Symbol 0 translates to [0,1,2] but opens with the
// decoy [5,6] at weight 0.6; symbols 1..3 translate to [3], [4], [7].
// Noiseless, EOS on insufficient context, no lookahead.
RandomModel GardenPathModel(int decoy_length = 2);

// Corpus of utterances opening with the decoy symbol, plus a model factory.
std::vector<CorpusRecord> GardenPathCorpus();

// Noiseless repeat-mode fixture used for latency sweeps: 8 symbols mapping to
// one or two tokens over a 10-token vocabulary, lookahead 1.
RandomModel LatencyFixtureModel();
std::vector<CorpusRecord> LatencyFixtureCorpus();

// Full-context fixture with noise for compute accounting: >= 20 utterances
// of >= 4 symbols.
RandomModel ComputeFixtureModel();
std::vector<CorpusRecord> ComputeFixtureCorpus();

}  // namespace streamdec::testing

#endif  // STREAMDEC_TESTS_SUPPORT_FIXTURES_H_
