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

#ifndef STREAMDEC_CORPUS_H_
#define STREAMDEC_CORPUS_H_

#include <istream>
#include <string>
#include <vector>

#include "streamdec/core.h"

namespace streamdec {

// One line of the corpus JSONL file:
//   {"id": str, "source": [int], "reference": [int], "block_ms": number}
// block_ms is the duration of one source symbol.
struct CorpusRecord {
  std::string id;
  std::vector<int> source;
  TokenSeq reference;
  double block_ms = 0.0;

  bool operator==(const CorpusRecord&) const = default;
};

// Throws InputError naming the offending line for malformed JSON, schema
// violations and duplicate ids; an input without records is also an error.
std::vector<CorpusRecord> ParseCorpus(std::istream& in);
std::vector<CorpusRecord> LoadCorpus(const std::string& path);

std::string CorpusRecordToJson(const CorpusRecord& record);
void WriteCorpus(const std::vector<CorpusRecord>& corpus, std::ostream& out);

}  // namespace streamdec

#endif  // STREAMDEC_CORPUS_H_
