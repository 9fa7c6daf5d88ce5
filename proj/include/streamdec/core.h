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

#ifndef STREAMDEC_CORE_H_
#define STREAMDEC_CORE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace streamdec {

using TokenId = std::int32_t;
using TokenSeq = std::vector<TokenId>;

// Error hierarchy. The CLI maps InputError to exit code 1 and ConfigError to
// exit code 2; StateError signals misuse of a stateful object.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class StateError : public Error {
 public:
  using Error::Error;
};

class Vocabulary {
 public:
  // Surfaces are optional; when given there must be exactly `size` of them
  // and they must be unique.
  Vocabulary(int size, TokenId eos_id, std::vector<std::string> surfaces = {});

  int size() const { return size_; }
  TokenId eos_id() const { return eos_id_; }
  bool Contains(TokenId id) const { return id >= 0 && id < size_; }
  bool has_surfaces() const { return !surfaces_.empty(); }
  const std::vector<std::string>& surfaces() const { return surfaces_; }

  // Surface string of `id`, or its decimal form when no surfaces are set.
  std::string Surface(TokenId id) const;
  std::optional<TokenId> Lookup(std::string_view surface) const;

 private:
  int size_;
  TokenId eos_id_;
  std::vector<std::string> surfaces_;
  std::unordered_map<std::string, TokenId> index_;
};

// A (partial) output sequence with the cached log-probability of every token.
struct Hypothesis {
  TokenSeq tokens;
  std::vector<double> token_logprobs;
  bool stopped = false;
  // EOS was accepted as the legitimate end of the output.
  bool finished = false;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  // Sum of token log-probabilities, accumulated left to right.
  double Score() const;

  Hypothesis Extended(TokenId token, double logprob) const;
  // Keeps the first `length` tokens; no-op if already shorter.
  void Truncate(std::size_t length);
};

struct CommitEvent {
  TokenSeq tokens;
  double source_consumed_ms = 0.0;
};

// Current best output in re-translation mode; may be revised by later ones.
struct Snapshot {
  TokenSeq tokens;
  double source_consumed_ms = 0.0;
};

struct SessionTranscript {
  std::vector<CommitEvent> commits;
  std::vector<Snapshot> snapshots;
  TokenSeq final_output;
  double source_duration_ms = 0.0;
  std::int64_t forward_passes = 0;
};

struct SearchConfig {
  int beam_size = 6;
  // Output length bound: ceil(max_len_ratio * source seconds) + offset.
  double max_len_ratio = 10.0;
  int max_len_offset = 20;
  bool length_norm = true;
  bool repetition_detection = true;
  int repetition_ngram = 1;

  // Throws ConfigError.
  void Validate() const;
  int MaxLength(double source_seconds) const;
};

enum class StopReason { kNone, kRepeat, kEos };

const char* StopReasonName(StopReason reason);

TokenSeq LongestCommonPrefix(std::span<const TokenId> a,
                             std::span<const TokenId> b);

bool IsPrefixOf(std::span<const TokenId> prefix, std::span<const TokenId> seq);

// Mean token log-probability; 0 for the empty hypothesis.
double NormalizedScore(const Hypothesis& h);

// EOS takes precedence over repetition. A repetition is the last
// `repetition_ngram` tokens equal to the ones immediately before them.
StopReason DetectStop(const Hypothesis& h, const SearchConfig& cfg,
                      TokenId eos_id);

}  // namespace streamdec

#endif  // STREAMDEC_CORE_H_
