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

#include "streamdec/policy.h"

#include <charconv>

namespace streamdec {

PolicyState PolicyState::Hold(int n) {
  PolicyState p;
  p.kind = PolicyKind::kHold;
  p.n = n;
  p.Validate();
  return p;
}

PolicyState PolicyState::LocalAgreement(int n) {
  PolicyState p;
  p.kind = PolicyKind::kLocalAgreement;
  p.n = n;
  p.Validate();
  return p;
}

PolicyState PolicyState::Parse(std::string_view text) {
  if (text == "none") return None();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("policy '" + std::string(text) +
                      "' must be none, hold:N or la:N");
  }
  const std::string_view name = text.substr(0, colon);
  const std::string_view arg = text.substr(colon + 1);
  int n = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
  if (ec != std::errc() || ptr != arg.data() + arg.size()) {
    throw ConfigError("policy parameter '" + std::string(arg) +
                      "' is not an integer");
  }
  if (name == "hold") return Hold(n);
  if (name == "la") return LocalAgreement(n);
  throw ConfigError("unknown policy '" + std::string(name) + "'");
}

void PolicyState::Validate() const {
  switch (kind) {
    case PolicyKind::kNone:
      break;
    case PolicyKind::kHold:
      if (n < 0) throw ConfigError("hold-n needs n >= 0");
      break;
    case PolicyKind::kLocalAgreement:
      if (n < 1) throw ConfigError("local agreement needs n >= 1");
      break;
  }
}

std::string PolicyKindName(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kNone:
      return "none";
    case PolicyKind::kHold:
      return "hold";
    case PolicyKind::kLocalAgreement:
      return "la";
  }
  return "?";
}

std::string PolicyLabel(const PolicyState& policy) {
  if (policy.kind == PolicyKind::kNone) return "none";
  return PolicyKindName(policy.kind) + ":" + std::to_string(policy.n);
}

PolicyOutcome ApplyPolicy(PolicyState state, const TokenSeq& best) {
  if (!IsPrefixOf(state.committed, best)) {
    throw StateError("best hypothesis does not extend the committed prefix");
  }
  TokenSeq candidate;
  switch (state.kind) {
    case PolicyKind::kNone:
      candidate = best;
      break;
    case PolicyKind::kHold: {
      const std::size_t keep =
          best.size() > static_cast<std::size_t>(state.n)
              ? best.size() - static_cast<std::size_t>(state.n)
              : 0;
      candidate.assign(best.begin(), best.begin() + keep);
      break;
    }
    case PolicyKind::kLocalAgreement: {
      const auto needed = static_cast<std::size_t>(state.n - 1);
      if (state.history.size() >= needed) {
        candidate = best;
        for (const auto& previous : state.history) {
          candidate = LongestCommonPrefix(candidate, previous);
        }
      }
      state.history.push_back(best);
      while (state.history.size() > needed) state.history.pop_front();
      break;
    }
  }

  PolicyOutcome out;
  if (candidate.size() > state.committed.size() &&
      IsPrefixOf(state.committed, candidate)) {
    out.commit.assign(candidate.begin() + state.committed.size(),
                      candidate.end());
    state.committed = std::move(candidate);
  }
  out.state = std::move(state);
  return out;
}

}  // namespace streamdec
