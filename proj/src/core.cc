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

#include <algorithm>
#include <cmath>

namespace streamdec {

Vocabulary::Vocabulary(int size, TokenId eos_id,
                       std::vector<std::string> surfaces)
    : size_(size), eos_id_(eos_id), surfaces_(std::move(surfaces)) {
  if (size_ < 2) {
    throw ConfigError("vocabulary needs at least two entries (one is EOS)");
  }
  if (!Contains(eos_id_)) {
    throw ConfigError("EOS id " + std::to_string(eos_id_) +
                      " outside vocabulary of size " + std::to_string(size_));
  }
  if (!surfaces_.empty()) {
    if (static_cast<int>(surfaces_.size()) != size_) {
      throw ConfigError("vocabulary surface count does not match its size");
    }
    for (TokenId id = 0; id < size_; ++id) {
      if (!index_.emplace(surfaces_[id], id).second) {
        throw ConfigError("duplicate vocabulary surface '" + surfaces_[id] +
                          "'");
      }
    }
  }
}

std::string Vocabulary::Surface(TokenId id) const {
  if (!Contains(id)) throw ConfigError("token id out of range");
  return surfaces_.empty() ? std::to_string(id) : surfaces_[id];
}

std::optional<TokenId> Vocabulary::Lookup(std::string_view surface) const {
  auto it = index_.find(std::string(surface));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double Hypothesis::Score() const {
  double total = 0.0;
  for (double lp : token_logprobs) total += lp;
  return total;
}

Hypothesis Hypothesis::Extended(TokenId token, double logprob) const {
  Hypothesis out;
  out.tokens.reserve(tokens.size() + 1);
  out.token_logprobs.reserve(tokens.size() + 1);
  out.tokens = tokens;
  out.token_logprobs = token_logprobs;
  out.tokens.push_back(token);
  out.token_logprobs.push_back(logprob);
  return out;
}

void Hypothesis::Truncate(std::size_t length) {
  if (length >= tokens.size()) return;
  tokens.resize(length);
  token_logprobs.resize(length);
  finished = false;
}

void SearchConfig::Validate() const {
  if (beam_size < 1) throw ConfigError("beam size must be >= 1");
  if (!(max_len_ratio > 0.0)) throw ConfigError("max_len_ratio must be > 0");
  if (max_len_offset < 0) throw ConfigError("max_len_offset must be >= 0");
  if (repetition_ngram < 1) throw ConfigError("repetition_ngram must be >= 1");
}

int SearchConfig::MaxLength(double source_seconds) const {
  return static_cast<int>(std::ceil(max_len_ratio * source_seconds)) +
         max_len_offset;
}

const char* StopReasonName(StopReason reason) {
  switch (reason) {
    case StopReason::kNone:
      return "none";
    case StopReason::kRepeat:
      return "repeat";
    case StopReason::kEos:
      return "eos";
  }
  return "?";
}

TokenSeq LongestCommonPrefix(std::span<const TokenId> a,
                             std::span<const TokenId> b) {
  auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
  (void)ib;
  return TokenSeq(a.begin(), ia);
}

bool IsPrefixOf(std::span<const TokenId> prefix,
                std::span<const TokenId> seq) {
  return prefix.size() <= seq.size() &&
         std::equal(prefix.begin(), prefix.end(), seq.begin());
}

double NormalizedScore(const Hypothesis& h) {
  if (h.empty()) return 0.0;
  return h.Score() / static_cast<double>(h.size());
}

StopReason DetectStop(const Hypothesis& h, const SearchConfig& cfg,
                      TokenId eos_id) {
  if (h.empty()) return StopReason::kNone;
  if (h.tokens.back() == eos_id) return StopReason::kEos;
  if (!cfg.repetition_detection) return StopReason::kNone;
  const std::size_t n = static_cast<std::size_t>(cfg.repetition_ngram);
  if (h.size() < 2 * n) return StopReason::kNone;
  auto last = h.tokens.end() - n;
  if (std::equal(last - n, last, last)) return StopReason::kRepeat;
  return StopReason::kNone;
}

}  // namespace streamdec
