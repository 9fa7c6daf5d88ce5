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

#include "streamdec/metrics.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace streamdec {

namespace {

constexpr int kMaxOrder = 4;

void CheckLatencyInput(const LatencyInput& input) {
  if (input.delays_ms.empty()) throw InputError("latency of an empty output");
  if (!(input.source_duration_ms > 0.0)) {
    throw InputError("source duration must be positive");
  }
  if (input.ref_len <= 0) throw InputError("reference length must be positive");
}

double Lagging(const LatencyInput& input, double rate_denominator) {
  const auto& d = input.delays_ms;
  const double total = input.source_duration_ms;
  std::size_t tau = d.size();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] >= total) {
      tau = i + 1;
      break;
    }
  }
  const double step = total / rate_denominator;
  double sum = 0.0;
  for (std::size_t i = 0; i < tau; ++i) {
    sum += d[i] - static_cast<double>(i) * step;
  }
  return sum / static_cast<double>(tau);
}

using NgramCounts = std::map<std::vector<TokenId>, int>;

NgramCounts CountNgrams(const TokenSeq& seq, std::size_t n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= seq.size(); ++i) {
    ++counts[std::vector<TokenId>(seq.begin() + i, seq.begin() + i + n)];
  }
  return counts;
}

}  // namespace

LatencyInput LatencyInputFromTranscript(const SessionTranscript& transcript,
                                        int ref_len) {
  LatencyInput input;
  input.source_duration_ms = transcript.source_duration_ms;
  input.ref_len = ref_len;
  for (const auto& commit : transcript.commits) {
    input.delays_ms.insert(input.delays_ms.end(), commit.tokens.size(),
                           commit.source_consumed_ms);
  }
  return input;
}

double AverageLagging(const LatencyInput& input) {
  CheckLatencyInput(input);
  return Lagging(input, static_cast<double>(input.ref_len));
}

double LengthAwareAverageLagging(const LatencyInput& input) {
  CheckLatencyInput(input);
  const double denom = static_cast<double>(
      std::max<std::size_t>(input.delays_ms.size(),
                            static_cast<std::size_t>(input.ref_len)));
  return Lagging(input, denom);
}

double CorpusBleu(std::span<const TokenSeq> hypotheses,
                  std::span<const TokenSeq> references,
                  BleuSmoothing smoothing) {
  if (hypotheses.size() != references.size()) {
    throw InputError("BLEU needs as many hypotheses as references");
  }
  if (hypotheses.empty()) throw InputError("BLEU of an empty corpus");

  std::array<std::int64_t, kMaxOrder> matches{};
  std::array<std::int64_t, kMaxOrder> totals{};
  std::int64_t hyp_len = 0;
  std::int64_t ref_len = 0;
  for (std::size_t s = 0; s < hypotheses.size(); ++s) {
    const TokenSeq& hyp = hypotheses[s];
    const TokenSeq& ref = references[s];
    hyp_len += static_cast<std::int64_t>(hyp.size());
    ref_len += static_cast<std::int64_t>(ref.size());
    for (int n = 1; n <= kMaxOrder; ++n) {
      const NgramCounts hyp_counts = CountNgrams(hyp, n);
      const NgramCounts ref_counts = CountNgrams(ref, n);
      for (const auto& [gram, count] : hyp_counts) {
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) matches[n - 1] += std::min(count, it->second);
        totals[n - 1] += count;
      }
    }
  }
  if (hyp_len == 0) return 0.0;

  double log_precision_sum = 0.0;
  int orders = 0;
  for (int n = 0; n < kMaxOrder; ++n) {
    if (totals[n] == 0) continue;
    ++orders;
    if (matches[n] == 0) {
      if (smoothing == BleuSmoothing::kNone) return 0.0;
      log_precision_sum += std::log(1.0 / (2.0 * static_cast<double>(totals[n])));
    } else {
      log_precision_sum += std::log(static_cast<double>(matches[n]) /
                                    static_cast<double>(totals[n]));
    }
  }
  const double brevity = std::exp(std::min(
      0.0, 1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len)));
  return 100.0 * brevity * std::exp(log_precision_sum / orders);
}

std::int64_t CountForwardPasses(const SessionTranscript& transcript) {
  return transcript.forward_passes;
}

}  // namespace streamdec
