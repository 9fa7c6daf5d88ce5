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

#ifndef STREAMDEC_POLICY_H_
#define STREAMDEC_POLICY_H_

#include <deque>
#include <string>
#include <string_view>

#include "streamdec/core.h"

namespace streamdec {

enum class PolicyKind { kNone, kHold, kLocalAgreement };

// Commit policy deciding how much of the current best output becomes final.
//   kNone            commit everything
//   kHold(n)         withhold the last n tokens
//   kLocalAgreement  commit the longest common prefix of the last n outputs
struct PolicyState {
  PolicyKind kind = PolicyKind::kNone;
  int n = 0;
  // Previous best outputs, at most n - 1 of them (local agreement only).
  std::deque<TokenSeq> history;
  TokenSeq committed;

  static PolicyState None() { return {}; }
  static PolicyState Hold(int n);
  static PolicyState LocalAgreement(int n);

  // Parses "none", "hold:N" or "la:N". Throws ConfigError.
  static PolicyState Parse(std::string_view text);

  // Throws ConfigError: hold needs n >= 0, local agreement n >= 1.
  void Validate() const;
};

std::string PolicyKindName(PolicyKind kind);
// "none", "hold:2", "la:2"
std::string PolicyLabel(const PolicyState& policy);

struct PolicyOutcome {
  PolicyState state;
  // Newly committed tokens; never retracts earlier commits.
  TokenSeq commit;
};

// Throws StateError when `best` does not extend the committed prefix.
PolicyOutcome ApplyPolicy(PolicyState state, const TokenSeq& best);

}  // namespace streamdec

#endif  // STREAMDEC_POLICY_H_
