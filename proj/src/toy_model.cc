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

#include "streamdec/toy_model.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <utility>

namespace streamdec {

const char* InsufficientContextModeName(InsufficientContextMode mode) {
  switch (mode) {
    case InsufficientContextMode::kRepeat:
      return "repeat";
    case InsufficientContextMode::kEos:
      return "eos";
    case InsufficientContextMode::kHallucinate:
      return "hallucinate";
  }
  return "?";
}

InsufficientContextMode ParseInsufficientContextMode(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "repeat") return InsufficientContextMode::kRepeat;
  if (lower == "eos") return InsufficientContextMode::kEos;
  if (lower == "hallucinate") return InsufficientContextMode::kHallucinate;
  throw ConfigError("unknown insufficient-context mode '" + std::string(name) +
                    "' (expected repeat|eos|hallucinate)");
}

void ToyTransducerSpec::Validate(const Vocabulary& vocab) const {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw ConfigError("epsilon must lie in [0, 1)");
  }
  if (lookahead < 0) throw ConfigError("lookahead must be >= 0");
  if (mapping.empty()) throw ConfigError("toy model mapping is empty");
  auto check_targets = [&](int symbol, const TokenSeq& targets,
                           const char* what) {
    if (targets.empty()) {
      throw ConfigError(std::string(what) + " of symbol " +
                        std::to_string(symbol) + " is empty");
    }
    for (TokenId t : targets) {
      if (!vocab.Contains(t)) {
        throw ConfigError(std::string(what) + " of symbol " +
                          std::to_string(symbol) + " references token " +
                          std::to_string(t) + " outside the vocabulary");
      }
      if (t == vocab.eos_id()) {
        throw ConfigError(std::string(what) + " of symbol " +
                          std::to_string(symbol) + " contains EOS");
      }
    }
  };
  for (const auto& [symbol, targets] : mapping) {
    if (symbol < 0) throw ConfigError("source symbols must be non-negative");
    check_targets(symbol, targets, "mapping");
  }
  for (const auto& [symbol, decoy] : decoys) {
    auto it = mapping.find(symbol);
    if (it == mapping.end()) {
      throw ConfigError("decoy for unmapped symbol " + std::to_string(symbol));
    }
    check_targets(symbol, decoy.tokens, "decoy");
    if (decoy.tokens.front() == it->second.front()) {
      throw ConfigError("decoy of symbol " + std::to_string(symbol) +
                        " must open with a different token");
    }
    if (!(decoy.weight > 0.0 && decoy.weight < 1.0)) {
      throw ConfigError("decoy weight must lie in (0, 1)");
    }
  }
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Reference translation of the source read so far, with alignment.
struct AlignedSource {
  std::vector<int> symbols;
  TokenSeq reference;
  // reference position -> index into `symbols`
  std::vector<int> aligned_symbol;
  // symbol index -> first reference position it produced
  std::vector<int> segment_start;

  void Append(const ToyTransducerSpec& spec, std::span<const int> block) {
    for (int s : block) {
      auto it = spec.mapping.find(s);
      if (it == spec.mapping.end()) {
        throw ConfigError("source symbol " + std::to_string(s) +
                          " is not covered by the toy model");
      }
      const int index = static_cast<int>(symbols.size());
      symbols.push_back(s);
      segment_start.push_back(static_cast<int>(reference.size()));
      for (TokenId t : it->second) {
        reference.push_back(t);
        aligned_symbol.push_back(index);
      }
    }
  }
};

// Probability mass before epsilon smoothing.
using Target = std::vector<std::pair<TokenId, double>>;

Target InsufficientContext(const ToyTransducerSpec& spec,
                           const Vocabulary& vocab,
                           std::span<const TokenId> prefix) {
  switch (spec.insufficient_context_mode) {
    case InsufficientContextMode::kRepeat:
      if (prefix.empty()) return {{vocab.eos_id(), 1.0}};
      return {{prefix.back(), 1.0}};
    case InsufficientContextMode::kEos:
      return {{vocab.eos_id(), 1.0}};
    case InsufficientContextMode::kHallucinate: {
      Target target;
      const double p = 1.0 / static_cast<double>(vocab.size() - 1);
      for (TokenId t = 0; t < vocab.size(); ++t) {
        if (t != vocab.eos_id()) target.emplace_back(t, p);
      }
      return target;
    }
  }
  return {};
}

Target Predict(const ToyTransducerSpec& spec, const Vocabulary& vocab,
               const AlignedSource& src, bool finalized,
               std::span<const TokenId> prefix) {
  const std::size_t n = prefix.size();
  const TokenSeq& ref = src.reference;
  const std::size_t m = src.symbols.size();
  const auto diverge =
      std::mismatch(prefix.begin(), prefix.end(), ref.begin(), ref.end());
  const std::size_t k = static_cast<std::size_t>(diverge.first - prefix.begin());

  if (k == n) {
    if (n == ref.size()) {
      if (finalized) return {{vocab.eos_id(), 1.0}};
      return InsufficientContext(spec, vocab, prefix);
    }
    const int sym = src.aligned_symbol[n];
    const bool confident =
        finalized || static_cast<std::size_t>(sym + 1 + spec.lookahead) <= m;
    if (!confident) return InsufficientContext(spec, vocab, prefix);
    if (static_cast<std::size_t>(src.segment_start[sym]) == n) {
      auto decoy = spec.decoys.find(src.symbols[sym]);
      if (decoy != spec.decoys.end()) {
        return {{ref[n], 1.0 - decoy->second.weight},
                {decoy->second.tokens.front(), decoy->second.weight}};
      }
    }
    return {{ref[n], 1.0}};
  }

  // Left the reference at position k; only a decoy branch opened exactly at
  // a segment start keeps the model confident.
  if (k < ref.size()) {
    const int sym = src.aligned_symbol[k];
    auto decoy = spec.decoys.find(src.symbols[sym]);
    if (static_cast<std::size_t>(src.segment_start[sym]) == k &&
        decoy != spec.decoys.end()) {
      const TokenSeq& alt = decoy->second.tokens;
      const std::size_t offset = n - k;
      if (offset < alt.size() &&
          std::equal(prefix.begin() + k, prefix.end(), alt.begin())) {
        return {{alt[offset], 1.0}};
      }
    }
  }
  return InsufficientContext(spec, vocab, prefix);
}

std::vector<double> Smooth(const Target& target, double epsilon,
                           const Vocabulary& vocab) {
  std::vector<double> probs(vocab.size(), 0.0);
  for (const auto& [t, p] : target) probs[t] += p;
  const auto others = static_cast<std::size_t>(
      std::count(probs.begin(), probs.end(), 0.0));
  std::vector<double> logprobs(vocab.size(), kNegInf);
  if (others == 0 || epsilon == 0.0) {
    for (TokenId t = 0; t < vocab.size(); ++t) {
      if (probs[t] > 0.0) logprobs[t] = std::log(probs[t]);
    }
    return logprobs;
  }
  const double floor = epsilon / static_cast<double>(others);
  for (TokenId t = 0; t < vocab.size(); ++t) {
    logprobs[t] = probs[t] > 0.0 ? std::log((1.0 - epsilon) * probs[t])
                                 : std::log(floor);
  }
  return logprobs;
}

class BlockwiseToySession : public ModelSession {
 public:
  BlockwiseToySession(std::shared_ptr<const ToyTransducerSpec> spec,
                      Vocabulary vocab)
      : ModelSession(std::move(vocab)), spec_(std::move(spec)) {}

 protected:
  void OnBlock(const Block& block) override {
    source_.Append(*spec_, block.symbols);
  }

  std::vector<double> Score(std::span<const TokenId> prefix) override {
    return Smooth(Predict(*spec_, vocab(), source_, finalized(), prefix),
                  spec_->epsilon, vocab());
  }

 private:
  std::shared_ptr<const ToyTransducerSpec> spec_;
  AlignedSource source_;
};

class FullContextToySession : public ModelSession {
 public:
  FullContextToySession(std::shared_ptr<const ToyTransducerSpec> spec,
                        Vocabulary vocab)
      : ModelSession(std::move(vocab)), spec_(std::move(spec)) {}

 protected:
  void OnBlock(const Block& block) override {
    // Validate coverage eagerly so errors surface at ingest time.
    AlignedSource probe;
    probe.Append(*spec_, block.symbols);
    blocks_.push_back(block.symbols);
  }

  std::vector<double> Score(std::span<const TokenId> prefix) override {
    AlignedSource source;
    for (const auto& symbols : blocks_) source.Append(*spec_, symbols);
    return Smooth(Predict(*spec_, vocab(), source, finalized(), prefix),
                  spec_->epsilon, vocab());
  }

 private:
  std::shared_ptr<const ToyTransducerSpec> spec_;
  std::vector<std::vector<int>> blocks_;
};

class ToyModelFactory : public ModelFactory {
 public:
  ToyModelFactory(ToyTransducerSpec spec, Vocabulary vocab, ContextMode mode)
      : spec_(std::make_shared<const ToyTransducerSpec>(std::move(spec))),
        vocab_(std::move(vocab)),
        mode_(mode) {}

  // Toy sessions are deterministic, so the seed is not consulted.
  std::unique_ptr<ModelSession> NewSession(std::uint64_t) const override {
    if (mode_ == ContextMode::kBlockwise) {
      return std::make_unique<BlockwiseToySession>(spec_, vocab_);
    }
    return std::make_unique<FullContextToySession>(spec_, vocab_);
  }

  bool Accepts(int symbol) const override {
    return spec_->mapping.count(symbol) > 0;
  }

  const Vocabulary& vocab() const override { return vocab_; }

 private:
  std::shared_ptr<const ToyTransducerSpec> spec_;
  Vocabulary vocab_;
  ContextMode mode_;
};

int ParseSymbolKey(const std::string& key) {
  std::size_t used = 0;
  int value = -1;
  try {
    value = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || value < 0) {
    throw InputError("mapping key '" + key +
                     "' is not a non-negative symbol id");
  }
  return value;
}

TokenSeq ParseTokens(const nlohmann::json& arr, const Vocabulary& vocab,
                     const std::string& where) {
  if (!arr.is_array()) throw InputError(where + " must be an array");
  TokenSeq out;
  for (const auto& item : arr) {
    if (item.is_number_integer()) {
      out.push_back(item.get<TokenId>());
    } else if (item.is_string()) {
      auto id = vocab.Lookup(item.get<std::string>());
      if (!id) {
        throw InputError(where + " references unknown surface '" +
                         item.get<std::string>() + "'");
      }
      out.push_back(*id);
    } else {
      throw InputError(where + " entries must be token ids or surfaces");
    }
  }
  return out;
}

}  // namespace

std::shared_ptr<const ModelFactory> MakeToyModel(ToyTransducerSpec spec,
                                                 Vocabulary vocab,
                                                 ContextMode mode) {
  spec.Validate(vocab);
  return std::make_shared<ToyModelFactory>(std::move(spec), std::move(vocab),
                                           mode);
}

ToyModelFile ToyModelFromJson(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("model document must be an object");
  for (const char* key : {"vocab", "mapping", "epsilon", "mode", "lookahead"}) {
    if (!doc.contains(key)) {
      throw InputError(std::string("model document lacks field '") + key +
                       "'");
    }
  }
  const auto& vocab_json = doc.at("vocab");
  if (!vocab_json.is_array()) throw InputError("'vocab' must be an array");
  std::vector<std::string> surfaces;
  for (const auto& s : vocab_json) {
    if (!s.is_string()) throw InputError("'vocab' entries must be strings");
    surfaces.push_back(s.get<std::string>());
  }

  TokenId eos = -1;
  if (doc.contains("eos")) {
    const auto& e = doc.at("eos");
    if (e.is_number_integer()) {
      eos = e.get<TokenId>();
    } else if (e.is_string()) {
      auto it = std::find(surfaces.begin(), surfaces.end(), e.get<std::string>());
      if (it == surfaces.end()) throw InputError("'eos' surface not in vocab");
      eos = static_cast<TokenId>(it - surfaces.begin());
    } else {
      throw InputError("'eos' must be a token id or surface");
    }
  } else {
    for (const char* candidate : {"<eos>", "</s>"}) {
      auto it = std::find(surfaces.begin(), surfaces.end(), candidate);
      if (it != surfaces.end()) {
        eos = static_cast<TokenId>(it - surfaces.begin());
        break;
      }
    }
    if (eos < 0) {
      throw InputError("vocab has no '<eos>' or '</s>' entry and no 'eos' field");
    }
  }
  Vocabulary vocab(static_cast<int>(surfaces.size()), eos, surfaces);

  ToyTransducerSpec spec;
  const auto& mapping = doc.at("mapping");
  if (!mapping.is_object()) throw InputError("'mapping' must be an object");
  for (const auto& [key, value] : mapping.items()) {
    spec.mapping[ParseSymbolKey(key)] =
        ParseTokens(value, vocab, "mapping[" + key + "]");
  }
  if (doc.contains("decoys")) {
    const auto& decoys = doc.at("decoys");
    if (!decoys.is_object()) throw InputError("'decoys' must be an object");
    for (const auto& [key, value] : decoys.items()) {
      if (!value.is_object() || !value.contains("tokens") ||
          !value.contains("weight") || !value.at("weight").is_number()) {
        throw InputError("decoys[" + key +
                         "] needs 'tokens' and a numeric 'weight'");
      }
      spec.decoys[ParseSymbolKey(key)] =
          Decoy{ParseTokens(value.at("tokens"), vocab, "decoys[" + key + "]"),
                value.at("weight").get<double>()};
    }
  }
  if (!doc.at("epsilon").is_number()) {
    throw InputError("'epsilon' must be a number");
  }
  spec.epsilon = doc.at("epsilon").get<double>();
  if (!doc.at("mode").is_string()) throw InputError("'mode' must be a string");
  spec.insufficient_context_mode =
      ParseInsufficientContextMode(doc.at("mode").get<std::string>());
  if (!doc.at("lookahead").is_number_integer()) {
    throw InputError("'lookahead' must be an integer");
  }
  spec.lookahead = doc.at("lookahead").get<int>();
  spec.Validate(vocab);
  return ToyModelFile{std::move(vocab), std::move(spec)};
}

nlohmann::json ToyModelToJson(const ToyModelFile& model) {
  nlohmann::json doc;
  nlohmann::json surfaces = nlohmann::json::array();
  for (TokenId t = 0; t < model.vocab.size(); ++t) {
    surfaces.push_back(model.vocab.Surface(t));
  }
  doc["vocab"] = surfaces;
  doc["eos"] = model.vocab.eos_id();
  nlohmann::json mapping = nlohmann::json::object();
  for (const auto& [symbol, targets] : model.spec.mapping) {
    mapping[std::to_string(symbol)] = targets;
  }
  doc["mapping"] = mapping;
  if (!model.spec.decoys.empty()) {
    nlohmann::json decoys = nlohmann::json::object();
    for (const auto& [symbol, decoy] : model.spec.decoys) {
      decoys[std::to_string(symbol)] = {{"tokens", decoy.tokens},
                                        {"weight", decoy.weight}};
    }
    doc["decoys"] = decoys;
  }
  doc["epsilon"] = model.spec.epsilon;
  doc["mode"] = InsufficientContextModeName(model.spec.insufficient_context_mode);
  doc["lookahead"] = model.spec.lookahead;
  return doc;
}

ToyModelFile LoadToyModel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("model file '" + path + "': " + e.what());
  }
  try {
    return ToyModelFromJson(doc);
  } catch (const Error& e) {
    throw InputError("model file '" + path + "': " + e.what());
  }
}

}  // namespace streamdec
