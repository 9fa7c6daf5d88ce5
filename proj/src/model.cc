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

#include "streamdec/model.h"

namespace streamdec {

const char* ContextModeName(ContextMode mode) {
  return mode == ContextMode::kBlockwise ? "blockwise" : "full";
}

ContextMode ParseContextMode(std::string_view name) {
  if (name == "blockwise") return ContextMode::kBlockwise;
  if (name == "full" || name == "full_context") return ContextMode::kFullContext;
  throw ConfigError("unknown context mode '" + std::string(name) +
                    "' (expected blockwise|full)");
}

void ModelSession::IngestBlock(const Block& block) {
  if (finalized_) {
    throw StateError("block ingested after the final block");
  }
  if (!(block.duration_ms > 0.0)) {
    throw ConfigError("block duration must be positive");
  }
  OnBlock(block);
  ++blocks_ingested_;
  finalized_ = block.is_final;
}

std::vector<double> ModelSession::NextTokenLogprobs(
    std::span<const TokenId> prefix) {
  if (blocks_ingested_ == 0) {
    throw StateError("next-token query before any block was ingested");
  }
  ++forward_passes_;
  return Score(prefix);
}

}  // namespace streamdec
