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

// Streaming simulation: splits a corpus record into timed blocks, drives a
// decode session, records a READ/WRITE trace and scores the result.

#ifndef STREAMDEC_HARNESS_H_
#define STREAMDEC_HARNESS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "streamdec/corpus.h"
#include "streamdec/decode_session.h"
#include "streamdec/model.h"

namespace streamdec {

struct RunConfig {
  Algorithm algorithm = Algorithm::kIbwbs;
  PolicyState policy;
  int beam_size = 6;
  // Source symbols per block; the last block may be shorter.
  int block_symbols = 1;
  // Must match the mode the model factory was built with.
  ContextMode context_mode = ContextMode::kBlockwise;
  // Unset: on for blockwise models, off for full-context models.
  std::optional<bool> repetition_detection;
  int repetition_ngram = 1;
  bool retranslation = false;
  bool length_norm = true;
  double max_len_ratio = 10.0;
  int max_len_offset = 20;
  std::uint64_t seed = 0;

  // Throws ConfigError; local agreement needs n >= 2 here.
  void Validate() const;
  SearchConfig Search() const;
  bool RepetitionDetection() const;
};

enum class TraceKind { kRead, kWrite };

struct TraceEvent {
  TraceKind kind = TraceKind::kRead;
  // READ: {block index}; WRITE: committed token ids.
  std::vector<int> payload;
  double t_ms = 0.0;
};

std::string TraceEventToJson(const TraceEvent& event);
void WriteTrace(const std::vector<TraceEvent>& trace, std::ostream& out);

// Blocks of `block_symbols` symbols lasting `block_ms` per symbol.
std::vector<Block> SplitIntoBlocks(const CorpusRecord& record,
                                   int block_symbols);

struct UtteranceRun {
  SessionTranscript transcript;
  std::vector<TraceEvent> trace;
};

// Throws InputError for source symbols the model does not accept and
// ConfigError for an invalid configuration.
UtteranceRun RunUtterance(const CorpusRecord& record,
                          const ModelFactory& factory, const RunConfig& cfg);

struct UtteranceReport {
  std::string id;
  TokenSeq output;
  double bleu = 0.0;
  // NaN in re-translation mode, which has no commit times.
  double al_ms = 0.0;
  double laal_ms = 0.0;
  std::int64_t forward_passes = 0;
};

struct EvalReport {
  std::string algorithm;
  std::string policy;
  int param = 0;
  // Sorted by id.
  std::vector<UtteranceReport> utterances;
  double bleu = 0.0;
  double al_ms = 0.0;
  double laal_ms = 0.0;
  std::int64_t forward_passes = 0;
};

// Corpus BLEU, mean AL/LAAL over utterances, summed forward passes.
// `jobs` > 1 decodes utterances in parallel; the report does not depend on it.
EvalReport RunCorpus(const std::vector<CorpusRecord>& corpus,
                     const ModelFactory& factory, const RunConfig& cfg,
                     int jobs = 1);

enum class SweepAxis { kHold, kLocalAgreement, kBlockSymbols, kBeamSize };

struct SweepGrid {
  SweepAxis axis = SweepAxis::kHold;
  std::vector<int> values;

  // "hold=0,1,2", "la=2,3", "block=1,2,4", "beam=1,6". Throws ConfigError.
  static SweepGrid Parse(const std::string& text);
};

struct SweepPoint {
  std::string label;
  EvalReport report;
};

// One report per grid value, in ascending value order. Throws ConfigError on
// an empty grid or an invalid point.
std::vector<SweepPoint> Sweep(const std::vector<CorpusRecord>& corpus,
                              const ModelFactory& factory,
                              const RunConfig& base, const SweepGrid& grid,
                              int jobs = 1);

// CSV columns: id,algo,policy,param,bleu,al_ms,laal_ms,fw_passes. Per
// utterance rows are followed by an "ALL" row with the corpus aggregates.
void WriteReportCsv(const EvalReport& report, std::ostream& out);
// One aggregate row per sweep point, id = point label.
void WriteSweepCsv(const std::vector<SweepPoint>& points, std::ostream& out);
nlohmann::ordered_json ReportToJson(const EvalReport& report);

}  // namespace streamdec

#endif  // STREAMDEC_HARNESS_H_
