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

// A toy monotone transducer standing in for a neural encoder-decoder.
//
// Each source symbol translates to a fixed target token sequence. The
// reference for the ingested source is the concatenation of those sequences,
// and its j-th token is aligned to the symbol that produced it. For a query
// prefix that follows the reference, the next token is predicted with mass
// 1 - epsilon when its aligned symbol plus `lookahead` further symbols have
// been read (or the source is complete), EOS is predicted once the reference
// is exhausted on a finalized source, and otherwise the model lacks context
// and falls back to its insufficient-context behavior:
//
//   kRepeat       previous prefix token (EOS for an empty prefix)
//   kEos          EOS
//   kHallucinate  uniform over non-EOS tokens
//
// The remaining epsilon mass is spread uniformly over the other tokens.
//
// A symbol may carry a decoy: an alternative opening of its translation that
// takes `weight` of the confident mass at the symbol's first target position.
// A prefix that follows a decoy continues it with confidence; once the decoy
// is exhausted, or for any other prefix that left the reference, the model
// has no context and uses the insufficient-context behavior.

#ifndef STREAMDEC_TOY_MODEL_H_
#define STREAMDEC_TOY_MODEL_H_

#include <map>
#include <memory>
#include <string>

#include "json.hpp"
#include "streamdec/model.h"

namespace streamdec {

enum class InsufficientContextMode { kRepeat, kEos, kHallucinate };

const char* InsufficientContextModeName(InsufficientContextMode mode);
InsufficientContextMode ParseInsufficientContextMode(std::string_view name);

struct Decoy {
  TokenSeq tokens;
  double weight = 0.0;
};

struct ToyTransducerSpec {
  std::map<int, TokenSeq> mapping;
  std::map<int, Decoy> decoys;
  double epsilon = 0.0;
  InsufficientContextMode insufficient_context_mode =
      InsufficientContextMode::kRepeat;
  int lookahead = 0;

  // Throws ConfigError when the spec references tokens outside `vocab`, maps
  // a symbol to an empty or EOS-containing sequence, or has epsilon outside
  // [0, 1).
  void Validate(const Vocabulary& vocab) const;
};

std::shared_ptr<const ModelFactory> MakeToyModel(ToyTransducerSpec spec,
                                                 Vocabulary vocab,
                                                 ContextMode mode);

// On-disk model description:
//   {"vocab": [surface...], "mapping": {"<symbol>": [token id...]},
//    "epsilon": r, "mode": "repeat|eos|hallucinate", "lookahead": k}
// Optional: "eos" (surface or id; defaults to the "<eos>" or "</s>" entry)
// and "decoys": {"<symbol>": {"tokens": [id...], "weight": w}}.
struct ToyModelFile {
  Vocabulary vocab;
  ToyTransducerSpec spec;
};

// Throws InputError on schema problems, ConfigError on invalid values.
ToyModelFile ToyModelFromJson(const nlohmann::json& doc);
nlohmann::json ToyModelToJson(const ToyModelFile& model);
ToyModelFile LoadToyModel(const std::string& path);

}  // namespace streamdec

#endif  // STREAMDEC_TOY_MODEL_H_
