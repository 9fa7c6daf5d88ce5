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

#include "streamdec/decode_session.h"

#include <utility>

namespace streamdec {

std::string AlgorithmName(Algorithm algo) {
  switch (algo) {
    case Algorithm::kBeamSearch:
      return "bs";
    case Algorithm::kBwbs:
      return "bwbs";
    case Algorithm::kIbwbs:
      return "ibwbs";
  }
  return "?";
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "bs") return Algorithm::kBeamSearch;
  if (name == "bwbs") return Algorithm::kBwbs;
  if (name == "ibwbs") return Algorithm::kIbwbs;
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (expected bs|bwbs|ibwbs)");
}

namespace {

void ValidateStream(std::span<const Block> blocks) {
  if (blocks.empty()) throw ConfigError("empty block stream");
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
    if (blocks[i].is_final) {
      throw ConfigError("final block at position " + std::to_string(i) +
                        " is not the last block");
    }
  }
  if (!blocks.back().is_final) {
    throw ConfigError("block stream does not end with a final block");
  }
}

Hypothesis PrefixOf(const Hypothesis& h, std::size_t length) {
  Hypothesis out = h;
  out.Truncate(length);
  out.stopped = false;
  out.finished = false;
  return out;
}

}  // namespace

SessionTranscript DecodeSession(const ModelFactory& factory,
                                std::span<const Block> blocks,
                                const DecodeOptions& options,
                                DecodeObserver* observer) {
  ValidateStream(blocks);
  const SearchConfig& cfg = options.search;
  cfg.Validate();
  options.policy.Validate();
  const bool incremental = options.mode == DecodeMode::kIncremental;
  if (!incremental && options.policy.kind != PolicyKind::kNone) {
    throw ConfigError("re-translation mode does not take a commit policy");
  }

  std::unique_ptr<ModelSession> session = factory.NewSession(options.seed);
  const TokenId eos = session->vocab().eos_id();

  SessionTranscript transcript;
  BeamState state = BeamState::Start();
  PolicyState policy = options.policy;
  policy.committed.clear();
  policy.history.clear();
  double consumed_ms = 0.0;

  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& block = blocks[i];
    session->IngestBlock(block);
    consumed_ms += block.duration_ms;
    const BlockLimits limits{cfg.MaxLength(consumed_ms / 1000.0),
                             block.is_final};

    Hypothesis selected;
    switch (options.algorithm) {
      case Algorithm::kBeamSearch: {
        const Hypothesis start = incremental ? state.committed : Hypothesis{};
        selected = StandardBeamSearch(*session, start, cfg, limits.max_len);
        state.active = {selected};
        state.stopped.clear();
        break;
      }
      case Algorithm::kBwbs:
        state = BwbsBlock(std::move(state), *session, cfg, limits);
        selected = SelectBest(state.active, cfg);
        // Incremental decoding keeps a single prefix; re-translation carries
        // every beam into the next block.
        if (incremental) state.active = {selected};
        break;
      case Algorithm::kIbwbs:
        state = IbwbsBlock(std::move(state), *session, cfg, limits);
        selected = state.active.front();
        break;
    }

    TokenSeq output = selected.tokens;
    if (!output.empty() && output.back() == eos) output.pop_back();

    BlockReport report;
    report.index = static_cast<int>(i);
    report.is_final = block.is_final;
    report.source_consumed_ms = consumed_ms;
    report.state = &state;
    report.selected = output;

    if (incremental) {
      TokenSeq commit;
      if (block.is_final) {
        if (!IsPrefixOf(policy.committed, output)) {
          throw StateError("final output does not extend the committed prefix");
        }
        commit.assign(output.begin() + policy.committed.size(), output.end());
        policy.committed = output;
      } else {
        PolicyOutcome outcome = ApplyPolicy(std::move(policy), output);
        policy = std::move(outcome.state);
        commit = std::move(outcome.commit);
      }
      if (!commit.empty()) transcript.commits.push_back({commit, consumed_ms});
      report.committed = policy.committed;
      report.commit = std::move(commit);
      if (observer != nullptr) observer->OnBlock(report);
      if (!block.is_final) {
        state = BeamState::Start(PrefixOf(selected, policy.committed.size()));
      }
    } else {
      transcript.snapshots.push_back({output, consumed_ms});
      if (observer != nullptr) observer->OnBlock(report);
    }
  }

  transcript.final_output = incremental ? policy.committed
                                        : transcript.snapshots.back().tokens;
  transcript.source_duration_ms = consumed_ms;
  transcript.forward_passes = session->forward_pass_count();
  return transcript;
}

}  // namespace streamdec
