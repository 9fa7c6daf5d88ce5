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

#include "streamdec/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "streamdec/metrics.h"

namespace streamdec {

namespace {

// FNV-1a, so per-utterance seeds do not depend on the standard library.
std::uint64_t HashId(const std::string& id) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

UtteranceReport Score(const CorpusRecord& record, const UtteranceRun& run,
                      bool incremental) {
  UtteranceReport row;
  row.id = record.id;
  row.output = run.transcript.final_output;
  const TokenSeq hyps[] = {row.output};
  const TokenSeq refs[] = {record.reference};
  row.bleu = CorpusBleu(hyps, refs);
  row.forward_passes = CountForwardPasses(run.transcript);
  if (!incremental) {
    row.al_ms = row.laal_ms = std::numeric_limits<double>::quiet_NaN();
  } else if (row.output.empty()) {
    // Nothing was emitted: charge the whole source duration.
    row.al_ms = row.laal_ms = run.transcript.source_duration_ms;
  } else {
    const LatencyInput input = LatencyInputFromTranscript(
        run.transcript, static_cast<int>(record.reference.size()));
    row.al_ms = AverageLagging(input);
    row.laal_ms = LengthAwareAverageLagging(input);
  }
  return row;
}

void WriteCsvRow(std::ostream& out, const std::string& id,
                 const EvalReport& report, double bleu, double al,
                 double laal, std::int64_t fw) {
  out << id << ',' << report.algorithm << ',' << report.policy << ','
      << report.param << ',' << FormatNumber(bleu) << ',' << FormatNumber(al)
      << ',' << FormatNumber(laal) << ',' << fw << '\n';
}

constexpr const char* kCsvHeader =
    "id,algo,policy,param,bleu,al_ms,laal_ms,fw_passes\n";

}  // namespace

void RunConfig::Validate() const {
  if (beam_size < 1) throw ConfigError("beam size must be >= 1");
  if (block_symbols < 1) throw ConfigError("block size must be >= 1 symbol");
  policy.Validate();
  if (policy.kind == PolicyKind::kLocalAgreement && policy.n < 2) {
    throw ConfigError("local agreement needs n >= 2 to compare contexts");
  }
  if (retranslation && policy.kind != PolicyKind::kNone) {
    throw ConfigError("re-translation mode does not take a commit policy");
  }
  Search().Validate();
}

bool RunConfig::RepetitionDetection() const {
  if (repetition_detection) return *repetition_detection;
  return context_mode == ContextMode::kBlockwise;
}

SearchConfig RunConfig::Search() const {
  SearchConfig search;
  search.beam_size = beam_size;
  search.max_len_ratio = max_len_ratio;
  search.max_len_offset = max_len_offset;
  search.length_norm = length_norm;
  search.repetition_detection = RepetitionDetection();
  search.repetition_ngram = repetition_ngram;
  return search;
}

std::string TraceEventToJson(const TraceEvent& event) {
  nlohmann::ordered_json doc;
  doc["kind"] = event.kind == TraceKind::kRead ? "READ" : "WRITE";
  doc["payload"] = event.payload;
  doc["t_ms"] = event.t_ms;
  return doc.dump();
}

void WriteTrace(const std::vector<TraceEvent>& trace, std::ostream& out) {
  for (const auto& event : trace) out << TraceEventToJson(event) << '\n';
}

std::vector<Block> SplitIntoBlocks(const CorpusRecord& record,
                                   int block_symbols) {
  if (block_symbols < 1) throw ConfigError("block size must be >= 1 symbol");
  std::vector<Block> blocks;
  const auto step = static_cast<std::size_t>(block_symbols);
  for (std::size_t start = 0; start < record.source.size(); start += step) {
    const std::size_t end = std::min(start + step, record.source.size());
    Block block;
    block.symbols.assign(record.source.begin() + start,
                         record.source.begin() + end);
    block.duration_ms = static_cast<double>(end - start) * record.block_ms;
    block.is_final = end == record.source.size();
    blocks.push_back(std::move(block));
  }
  return blocks;
}

UtteranceRun RunUtterance(const CorpusRecord& record,
                          const ModelFactory& factory, const RunConfig& cfg) {
  cfg.Validate();
  for (int symbol : record.source) {
    if (!factory.Accepts(symbol)) {
      throw InputError("record '" + record.id + "': source symbol " +
                       std::to_string(symbol) + " is not covered by the model");
    }
  }
  const std::vector<Block> blocks = SplitIntoBlocks(record, cfg.block_symbols);

  DecodeOptions options;
  options.algorithm = cfg.algorithm;
  options.mode =
      cfg.retranslation ? DecodeMode::kRetranslation : DecodeMode::kIncremental;
  options.policy = cfg.policy;
  options.search = cfg.Search();
  options.seed = cfg.seed ^ HashId(record.id);

  class TraceRecorder : public DecodeObserver {
   public:
    explicit TraceRecorder(std::vector<TraceEvent>* trace) : trace_(trace) {}
    void OnBlock(const BlockReport& r) override {
      trace_->push_back({TraceKind::kRead, {r.index}, r.source_consumed_ms});
      if (!r.commit.empty()) {
        trace_->push_back({TraceKind::kWrite,
                           std::vector<int>(r.commit.begin(), r.commit.end()),
                           r.source_consumed_ms});
      }
    }

   private:
    std::vector<TraceEvent>* trace_;
  };

  UtteranceRun run;
  TraceRecorder recorder(&run.trace);
  run.transcript = DecodeSession(factory, blocks, options, &recorder);
  return run;
}

EvalReport RunCorpus(const std::vector<CorpusRecord>& corpus,
                     const ModelFactory& factory, const RunConfig& cfg,
                     int jobs) {
  if (corpus.empty()) throw InputError("corpus has no records");
  cfg.Validate();
  const bool incremental = !cfg.retranslation;

  std::vector<UtteranceReport> rows(corpus.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      try {
        rows[i] = Score(corpus[i], RunUtterance(corpus[i], factory, cfg),
                        incremental);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads =
      std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(corpus.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus[a].id < corpus[b].id;
  });

  EvalReport report;
  report.algorithm = AlgorithmName(cfg.algorithm);
  report.policy = PolicyKindName(cfg.policy.kind);
  report.param = cfg.policy.n;
  std::vector<TokenSeq> hyps;
  std::vector<TokenSeq> refs;
  double al_sum = 0.0;
  double laal_sum = 0.0;
  for (std::size_t i : order) {
    hyps.push_back(rows[i].output);
    refs.push_back(corpus[i].reference);
    al_sum += rows[i].al_ms;
    laal_sum += rows[i].laal_ms;
    report.forward_passes += rows[i].forward_passes;
    report.utterances.push_back(std::move(rows[i]));
  }
  const auto n = static_cast<double>(corpus.size());
  report.bleu = CorpusBleu(hyps, refs);
  report.al_ms = al_sum / n;
  report.laal_ms = laal_sum / n;
  return report;
}

SweepGrid SweepGrid::Parse(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("grid '" + text + "' must look like axis=v1,v2,...");
  }
  const std::string axis = text.substr(0, eq);
  SweepGrid grid;
  if (axis == "hold") {
    grid.axis = SweepAxis::kHold;
  } else if (axis == "la") {
    grid.axis = SweepAxis::kLocalAgreement;
  } else if (axis == "block") {
    grid.axis = SweepAxis::kBlockSymbols;
  } else if (axis == "beam") {
    grid.axis = SweepAxis::kBeamSize;
  } else {
    throw ConfigError("unknown sweep axis '" + axis +
                      "' (expected hold|la|block|beam)");
  }
  std::stringstream values(text.substr(eq + 1));
  std::string item;
  while (std::getline(values, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) {
      throw ConfigError("grid value '" + item + "' is not an integer");
    }
    grid.values.push_back(v);
  }
  if (grid.values.empty()) throw ConfigError("empty sweep grid");
  return grid;
}

std::vector<SweepPoint> Sweep(const std::vector<CorpusRecord>& corpus,
                              const ModelFactory& factory,
                              const RunConfig& base, const SweepGrid& grid,
                              int jobs) {
  if (grid.values.empty()) throw ConfigError("empty sweep grid");
  std::vector<int> values = grid.values;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<SweepPoint> points;
  for (int v : values) {
    RunConfig cfg = base;
    std::string label;
    switch (grid.axis) {
      case SweepAxis::kHold:
        cfg.policy = PolicyState::Hold(v);
        label = "hold=" + std::to_string(v);
        break;
      case SweepAxis::kLocalAgreement:
        cfg.policy = PolicyState::LocalAgreement(v);
        label = "la=" + std::to_string(v);
        break;
      case SweepAxis::kBlockSymbols:
        cfg.block_symbols = v;
        label = "block=" + std::to_string(v);
        break;
      case SweepAxis::kBeamSize:
        cfg.beam_size = v;
        label = "beam=" + std::to_string(v);
        break;
    }
    cfg.Validate();
    points.push_back({label, RunCorpus(corpus, factory, cfg, jobs)});
  }
  return points;
}

void WriteReportCsv(const EvalReport& report, std::ostream& out) {
  out << kCsvHeader;
  for (const auto& row : report.utterances) {
    WriteCsvRow(out, row.id, report, row.bleu, row.al_ms, row.laal_ms,
                row.forward_passes);
  }
  WriteCsvRow(out, "ALL", report, report.bleu, report.al_ms, report.laal_ms,
              report.forward_passes);
}

void WriteSweepCsv(const std::vector<SweepPoint>& points, std::ostream& out) {
  out << kCsvHeader;
  for (const auto& p : points) {
    WriteCsvRow(out, p.label, p.report, p.report.bleu, p.report.al_ms,
                p.report.laal_ms, p.report.forward_passes);
  }
}

nlohmann::ordered_json ReportToJson(const EvalReport& report) {
  auto number = [](double v) -> nlohmann::ordered_json {
    if (std::isnan(v)) return nullptr;
    return v;
  };
  nlohmann::ordered_json doc;
  doc["algo"] = report.algorithm;
  doc["policy"] = report.policy;
  doc["param"] = report.param;
  doc["utterances"] = report.utterances.size();
  doc["bleu"] = number(report.bleu);
  doc["al_ms"] = number(report.al_ms);
  doc["laal_ms"] = number(report.laal_ms);
  doc["fw_passes"] = report.forward_passes;
  return doc;
}

}  // namespace streamdec
