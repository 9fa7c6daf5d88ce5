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

// Per-block beam searches over a ModelSession.
//
// All searches extend beams synchronously: every active beam is queried once
// per step, the (beam x token) candidates are ranked by cumulative raw score
// (ties: lower beam index, then lower token id) and the best ones survive.
// Candidates with zero probability are never kept. Length normalization is
// only used when choosing among stopped or finished hypotheses.
//
// `max_len` bounds the total hypothesis length in tokens, EOS included.

#ifndef STREAMDEC_SEARCH_H_
#define STREAMDEC_SEARCH_H_

#include <span>
#include <vector>

#include "streamdec/core.h"
#include "streamdec/model.h"

namespace streamdec {

struct BeamState {
  std::vector<Hypothesis> active;
  // Beams stopped during the last IBWBS block.
  std::vector<Hypothesis> stopped;
  // Forced prefix every hypothesis extends.
  Hypothesis committed;

  static BeamState Start(Hypothesis committed = {});
};

struct BlockLimits {
  int max_len = 0;
  bool is_final = false;
};

// Total order used to pick among stopped/finished hypotheses: normalized
// score (raw score when length_norm is off), then longer, then
// lexicographically smaller. An empty hypothesis ranks below any non-empty
// one.
bool RanksAbove(const Hypothesis& a, const Hypothesis& b,
                const SearchConfig& cfg);

// Throws StateError on an empty span.
const Hypothesis& SelectBest(std::span<const Hypothesis> candidates,
                             const SearchConfig& cfg);

// Classic beam search from one or more start hypotheses. Candidates ending in
// EOS leave the beam as finished hypotheses and the beam is refilled from the
// remaining candidates. Stops when no beam is active, beam_size hypotheses
// have finished, or max_len is reached. Returns the best finished hypothesis,
// or the best unfinished one when nothing finished.
Hypothesis StandardBeamSearch(ModelSession& session,
                              std::vector<Hypothesis> start,
                              const SearchConfig& cfg, int max_len);

Hypothesis StandardBeamSearch(ModelSession& session, const Hypothesis& prefix,
                              const SearchConfig& cfg, int max_len);

// Blockwise streaming beam search for one block. On a non-final block the
// search stops as soon as any beam ends in EOS or a repetition; then the last
// two tokens of every beam are removed (never cutting into the committed
// prefix). All surviving beams stay active. On the final block the beams are
// completed with StandardBeamSearch and the winner becomes the only active
// hypothesis.
BeamState BwbsBlock(BeamState state, ModelSession& session,
                    const SearchConfig& cfg, const BlockLimits& limits);

// Incremental blockwise beam search for one block. On a non-final block each
// beam that ends in EOS or a repetition loses its last two tokens (never
// cutting into the committed prefix) and moves to the stopped set; the beam
// width shrinks accordingly. When no beam is active or max_len is reached,
// the remaining beams join the stopped set unchanged and the best stopped
// hypothesis under RanksAbove becomes the only active one. The final block is
// handled as in BwbsBlock.
BeamState IbwbsBlock(BeamState state, ModelSession& session,
                     const SearchConfig& cfg, const BlockLimits& limits);

}  // namespace streamdec

#endif  // STREAMDEC_SEARCH_H_
