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

#ifndef STREAMDEC_DECODE_SESSION_H_
#define STREAMDEC_DECODE_SESSION_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "streamdec/core.h"
#include "streamdec/model.h"
#include "streamdec/policy.h"
#include "streamdec/search.h"

namespace streamdec {

enum class Algorithm {
  // Full re-decode with standard beam search after every block.
  kBeamSearch,
  kBwbs,
  kIbwbs,
};

enum class DecodeMode { kRetranslation, kIncremental };

std::string AlgorithmName(Algorithm algo);
Algorithm ParseAlgorithm(std::string_view name);

// What happened in one block, reported after the per-block search and before
// the next block's beam is seeded.
struct BlockReport {
  int index = 0;
  bool is_final = false;
  double source_consumed_ms = 0.0;
  // Beam state right after the per-block search (and pruning, if any).
  const BeamState* state = nullptr;
  // Output selected for this block, EOS stripped.
  TokenSeq selected;
  // Committed prefix after the policy ran (incremental mode).
  TokenSeq committed;
  // Tokens committed by this block; empty in re-translation mode.
  TokenSeq commit;
};

class DecodeObserver {
 public:
  virtual ~DecodeObserver() = default;
  virtual void OnBlock(const BlockReport& report) = 0;
};

struct DecodeOptions {
  Algorithm algorithm = Algorithm::kIbwbs;
  DecodeMode mode = DecodeMode::kIncremental;
  PolicyState policy;
  SearchConfig search;
  std::uint64_t seed = 0;
};

// Streams `blocks` through a fresh session of `factory`.
//
// Incremental mode: after each non-final block the search result is pruned
// to one hypothesis, the policy commits part of it, and the next block starts
// from the committed prefix (with its cached log-probabilities). The final
// block bypasses the policy and commits the rest of the completed output.
//
// Re-translation mode: no commits; one snapshot of the current best output is
// recorded per block. BWBS carries all its beams across blocks; IBWBS carries
// its selected hypothesis; standard beam search re-decodes from scratch.
//
// Throws ConfigError when the stream is empty, lacks a final block, has a
// final block before its end, or combines re-translation with a policy.
SessionTranscript DecodeSession(const ModelFactory& factory,
                                std::span<const Block> blocks,
                                const DecodeOptions& options,
                                DecodeObserver* observer = nullptr);

}  // namespace streamdec

#endif  // STREAMDEC_DECODE_SESSION_H_
