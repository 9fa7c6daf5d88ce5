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

#include "streamdec/search.h"

#include <algorithm>
#include <cmath>

namespace streamdec {

namespace {

struct Candidate {
  double score;
  int parent;
  TokenId token;
  double logprob;
};

// Queries every beam once and returns the best `keep` finite expansions.
std::vector<Hypothesis> Expand(const std::vector<Hypothesis>& beams,
                               ModelSession& session, std::size_t keep) {
  std::vector<Candidate> pool;
  for (std::size_t b = 0; b < beams.size(); ++b) {
    const std::vector<double> logprobs =
        session.NextTokenLogprobs(beams[b].tokens);
    const double base = beams[b].Score();
    for (TokenId t = 0; t < static_cast<TokenId>(logprobs.size()); ++t) {
      if (!std::isfinite(logprobs[t])) continue;
      pool.push_back({base + logprobs[t], static_cast<int>(b), t, logprobs[t]});
    }
  }
  const std::size_t n = std::min(keep, pool.size());
  std::partial_sort(pool.begin(), pool.begin() + n, pool.end(),
                    [](const Candidate& a, const Candidate& b) {
                      if (a.score != b.score) return a.score > b.score;
                      if (a.parent != b.parent) return a.parent < b.parent;
                      return a.token < b.token;
                    });
  std::vector<Hypothesis> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(beams[pool[i].parent].Extended(pool[i].token, pool[i].logprob));
  }
  return out;
}

std::size_t LongestLength(const std::vector<Hypothesis>& beams) {
  std::size_t longest = 0;
  for (const auto& h : beams) longest = std::max(longest, h.size());
  return longest;
}

// Removes the last two tokens, never cutting into the committed prefix.
void DropLastTwo(Hypothesis& h, std::size_t committed_len) {
  const std::size_t target = h.size() >= 2 ? h.size() - 2 : 0;
  h.Truncate(std::max(target, std::min(committed_len, h.size())));
}

void Dedupe(std::vector<Hypothesis>& beams) {
  std::vector<Hypothesis> unique;
  for (auto& h : beams) {
    bool seen = std::any_of(unique.begin(), unique.end(),
                            [&](const Hypothesis& u) { return u.tokens == h.tokens; });
    if (!seen) unique.push_back(std::move(h));
  }
  beams = std::move(unique);
}

BeamState FinishFinalBlock(BeamState state, ModelSession& session,
                           const SearchConfig& cfg, int max_len) {
  Hypothesis best = StandardBeamSearch(session, std::move(state.active), cfg,
                                       max_len);
  best.stopped = false;
  state.active = {std::move(best)};
  state.stopped.clear();
  return state;
}

}  // namespace

BeamState BeamState::Start(Hypothesis committed) {
  BeamState state;
  state.active = {committed};
  state.committed = std::move(committed);
  return state;
}

bool RanksAbove(const Hypothesis& a, const Hypothesis& b,
                const SearchConfig& cfg) {
  if (a.empty() != b.empty()) return !a.empty();
  const double sa = cfg.length_norm ? NormalizedScore(a) : a.Score();
  const double sb = cfg.length_norm ? NormalizedScore(b) : b.Score();
  if (sa != sb) return sa > sb;
  if (a.size() != b.size()) return a.size() > b.size();
  return std::lexicographical_compare(a.tokens.begin(), a.tokens.end(),
                                      b.tokens.begin(), b.tokens.end());
}

const Hypothesis& SelectBest(std::span<const Hypothesis> candidates,
                             const SearchConfig& cfg) {
  if (candidates.empty()) throw StateError("no hypothesis to select from");
  const Hypothesis* best = &candidates.front();
  for (const auto& h : candidates.subspan(1)) {
    if (RanksAbove(h, *best, cfg)) best = &h;
  }
  return *best;
}

Hypothesis StandardBeamSearch(ModelSession& session,
                              std::vector<Hypothesis> start,
                              const SearchConfig& cfg, int max_len) {
  if (start.empty()) throw StateError("beam search needs a start hypothesis");
  const TokenId eos = session.vocab().eos_id();
  std::vector<Hypothesis> finished;
  std::vector<Hypothesis> active;
  for (auto& h : start) {
    if (!h.empty() && h.tokens.back() == eos) {
      h.finished = true;
      finished.push_back(std::move(h));
    } else {
      active.push_back(std::move(h));
    }
  }
  std::vector<Hypothesis> last_active = active;
  const std::size_t width = static_cast<std::size_t>(cfg.beam_size);
  while (!active.empty() && finished.size() < width &&
         LongestLength(active) < static_cast<std::size_t>(std::max(max_len, 0))) {
    std::vector<Hypothesis> next;
    for (auto& h : Expand(active, session, width)) {
      if (h.tokens.back() == eos) {
        h.finished = true;
        finished.push_back(std::move(h));
      } else {
        next.push_back(std::move(h));
      }
    }
    active = std::move(next);
    if (!active.empty()) last_active = active;
  }
  if (!finished.empty()) return SelectBest(finished, cfg);
  return SelectBest(last_active, cfg);
}

Hypothesis StandardBeamSearch(ModelSession& session, const Hypothesis& prefix,
                              const SearchConfig& cfg, int max_len) {
  return StandardBeamSearch(session, std::vector<Hypothesis>{prefix}, cfg,
                            max_len);
}

BeamState BwbsBlock(BeamState state, ModelSession& session,
                    const SearchConfig& cfg, const BlockLimits& limits) {
  if (limits.is_final) {
    return FinishFinalBlock(std::move(state), session, cfg, limits.max_len);
  }
  const TokenId eos = session.vocab().eos_id();
  const std::size_t committed_len = state.committed.size();
  const auto max_len = static_cast<std::size_t>(std::max(limits.max_len, 0));
  while (!state.active.empty() && LongestLength(state.active) < max_len) {
    std::vector<Hypothesis> next =
        Expand(state.active, session, static_cast<std::size_t>(cfg.beam_size));
    if (next.empty()) break;
    state.active = std::move(next);
    const bool triggered =
        std::any_of(state.active.begin(), state.active.end(),
                    [&](const Hypothesis& h) {
                      return DetectStop(h, cfg, eos) != StopReason::kNone;
                    });
    if (triggered) {
      for (auto& h : state.active) DropLastTwo(h, committed_len);
      Dedupe(state.active);
      break;
    }
  }
  state.stopped.clear();
  return state;
}

BeamState IbwbsBlock(BeamState state, ModelSession& session,
                     const SearchConfig& cfg, const BlockLimits& limits) {
  if (limits.is_final) {
    return FinishFinalBlock(std::move(state), session, cfg, limits.max_len);
  }
  const TokenId eos = session.vocab().eos_id();
  const std::size_t committed_len = state.committed.size();
  const auto max_len = static_cast<std::size_t>(std::max(limits.max_len, 0));
  const auto beam_size = static_cast<std::size_t>(cfg.beam_size);
  std::vector<Hypothesis> stopped;
  std::vector<Hypothesis> active = std::move(state.active);
  while (!active.empty() && stopped.size() < beam_size &&
         LongestLength(active) < max_len) {
    std::vector<Hypothesis> next;
    for (auto& h : Expand(active, session, beam_size - stopped.size())) {
      if (DetectStop(h, cfg, eos) != StopReason::kNone) {
        DropLastTwo(h, committed_len);
        h.stopped = true;
        stopped.push_back(std::move(h));
      } else {
        next.push_back(std::move(h));
      }
    }
    active = std::move(next);
  }
  for (auto& h : active) stopped.push_back(std::move(h));

  Hypothesis best = SelectBest(stopped, cfg);
  best.stopped = false;
  state.active = {std::move(best)};
  state.stopped = std::move(stopped);
  return state;
}

}  // namespace streamdec
