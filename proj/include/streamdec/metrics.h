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

// Quality, latency and compute measurements over session transcripts.
//
// Latency is measured in source time: the delay of an output token is the
// amount of source consumed when the token was committed.

#ifndef STREAMDEC_METRICS_H_
#define STREAMDEC_METRICS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "streamdec/core.h"

namespace streamdec {

struct LatencyInput {
  std::vector<double> delays_ms;
  double source_duration_ms = 0.0;
  int ref_len = 0;
};

// Per-token delays of an incremental transcript.
LatencyInput LatencyInputFromTranscript(const SessionTranscript& transcript,
                                        int ref_len);

// AL = 1/tau * sum_{i<=tau} (d_i - (i-1) * T / ref_len), where tau is the
// first index with d_i >= T (|Y| if there is none). Throws InputError on an
// empty delay list or a non-positive duration/reference length.
double AverageLagging(const LatencyInput& input);

// Length-aware AL: as AL with the rate T / max(|Y|, ref_len).
double LengthAwareAverageLagging(const LatencyInput& input);

enum class BleuSmoothing {
  kNone,
  // A zero match count of order n becomes a precision of 1 / (2 * c_n).
  kFloor,
};

// Corpus BLEU-4 over token ids, in [0, 100]. Orders for which the whole
// corpus has no hypothesis n-grams are left out of the geometric mean.
// Throws InputError on a size mismatch or an empty corpus.
double CorpusBleu(std::span<const TokenSeq> hypotheses,
                  std::span<const TokenSeq> references,
                  BleuSmoothing smoothing = BleuSmoothing::kNone);

std::int64_t CountForwardPasses(const SessionTranscript& transcript);

}  // namespace streamdec

#endif  // STREAMDEC_METRICS_H_
