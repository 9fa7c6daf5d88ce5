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

#ifndef STREAMDEC_MODEL_H_
#define STREAMDEC_MODEL_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "streamdec/core.h"

namespace streamdec {

enum class ContextMode {
  // Encoder state is appended per block and never recomputed.
  kBlockwise,
  // Encoder and decoder conditioning is rebuilt from all blocks on each query.
  kFullContext,
};

const char* ContextModeName(ContextMode mode);
ContextMode ParseContextMode(std::string_view name);

// One segment of source input.
struct Block {
  // Source symbols; the only payload toy models look at.
  std::vector<int> symbols;
  // Opaque feature frames for real frontends; ignored by toy models.
  std::vector<std::vector<float>> frames;
  double duration_ms = 0.0;
  bool is_final = false;
};

// Stateful scorer for one utterance. The public entry points enforce the
// session contract (ordering, finalization, forward-pass accounting) and
// forward to the protected hooks.
//
// A session is used by a single decode at a time.
class ModelSession {
 public:
  explicit ModelSession(Vocabulary vocab) : vocab_(std::move(vocab)) {}
  virtual ~ModelSession() = default;

  ModelSession(const ModelSession&) = delete;
  ModelSession& operator=(const ModelSession&) = delete;

  // Throws StateError after a final block, ConfigError on a malformed block.
  void IngestBlock(const Block& block);

  // Log-distribution over the vocabulary for the token after `prefix`.
  // Counts as exactly one forward pass. Throws StateError before the first
  // block.
  std::vector<double> NextTokenLogprobs(std::span<const TokenId> prefix);

  std::int64_t forward_pass_count() const { return forward_passes_; }
  int blocks_ingested() const { return blocks_ingested_; }
  bool finalized() const { return finalized_; }
  const Vocabulary& vocab() const { return vocab_; }

 protected:
  virtual void OnBlock(const Block& block) = 0;
  virtual std::vector<double> Score(std::span<const TokenId> prefix) = 0;

 private:
  Vocabulary vocab_;
  std::int64_t forward_passes_ = 0;
  int blocks_ingested_ = 0;
  bool finalized_ = false;
};

// Produces independent sessions; must be safe to call concurrently.
class ModelFactory {
 public:
  virtual ~ModelFactory() = default;
  virtual std::unique_ptr<ModelSession> NewSession(std::uint64_t seed) const = 0;
  // Whether the model can consume this source symbol.
  virtual bool Accepts(int symbol) const = 0;
  virtual const Vocabulary& vocab() const = 0;
};

}  // namespace streamdec

#endif  // STREAMDEC_MODEL_H_
