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

#include "streamdec/cli.h"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "streamdec/corpus.h"
#include "streamdec/harness.h"
#include "streamdec/toy_model.h"

namespace streamdec {

namespace {

struct CommonFlags {
  std::string corpus;
  std::string model;
  std::string algo = "ibwbs";
  std::string policy = "none";
  int beam = 6;
  int block_symbols = 1;
  std::optional<double> block_ms;
  std::string mode = "blockwise";
  bool retranslation = false;
  bool no_repetition_detection = false;
  std::uint64_t seed = 0;
  std::string out;
  int jobs = 1;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--corpus", f.corpus, "Corpus JSONL file")->required();
  cmd->add_option("--model", f.model, "Toy model JSON file")->required();
  cmd->add_option("--algo", f.algo, "bs|bwbs|ibwbs")->capture_default_str();
  cmd->add_option("--policy", f.policy, "none|hold:N|la:N")
      ->capture_default_str();
  cmd->add_option("--beam", f.beam, "Beam size")->capture_default_str();
  cmd->add_option("--block-symbols", f.block_symbols,
                  "Source symbols per block")
      ->capture_default_str();
  cmd->add_option("--block-ms", f.block_ms,
                  "Override the per-symbol duration of every record");
  cmd->add_option("--mode", f.mode, "blockwise|full")->capture_default_str();
  cmd->add_flag("--retranslation", f.retranslation,
                "Re-translation output instead of incremental commits");
  cmd->add_flag("--no-repetition-detection", f.no_repetition_detection,
                "Disable the repetition stop heuristic");
  cmd->add_option("--seed", f.seed, "Session seed")->capture_default_str();
  cmd->add_option("--out", f.out, "Output file (default: stdout)");
  cmd->add_option("--jobs", f.jobs, "Utterances decoded in parallel")
      ->capture_default_str();
}

RunConfig MakeRunConfig(const CommonFlags& f) {
  RunConfig cfg;
  cfg.algorithm = ParseAlgorithm(f.algo);
  cfg.policy = PolicyState::Parse(f.policy);
  cfg.beam_size = f.beam;
  cfg.block_symbols = f.block_symbols;
  cfg.context_mode = ParseContextMode(f.mode);
  if (f.no_repetition_detection) cfg.repetition_detection = false;
  cfg.retranslation = f.retranslation;
  cfg.seed = f.seed;
  if (f.block_ms && !(*f.block_ms > 0.0)) {
    throw ConfigError("--block-ms must be positive");
  }
  cfg.Validate();
  return cfg;
}

struct Inputs {
  std::vector<CorpusRecord> corpus;
  std::shared_ptr<const ModelFactory> factory;
};

Inputs LoadInputs(const CommonFlags& f, const RunConfig& cfg) {
  Inputs in;
  in.corpus = LoadCorpus(f.corpus);
  if (f.block_ms) {
    for (auto& record : in.corpus) record.block_ms = *f.block_ms;
  }
  ToyModelFile model = LoadToyModel(f.model);
  in.factory = MakeToyModel(std::move(model.spec), std::move(model.vocab),
                            cfg.context_mode);
  return in;
}

// Writes to --out when given, else to `out`.
void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Streaming decoding engine and simultaneous-translation "
               "evaluation harness",
               "streamdec"};
  app.require_subcommand(1);

  CommonFlags decode_flags;
  std::string decode_id;
  CLI::App* decode =
      app.add_subcommand("decode", "Decode one utterance and print its trace");
  AddCommonFlags(decode, decode_flags);
  decode->add_option("--id", decode_id, "Record id (default: first record)");

  CommonFlags eval_flags;
  std::string json_out;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a corpus");
  AddCommonFlags(eval, eval_flags);
  eval->add_option("--json-out", json_out, "Also write the JSON aggregate");

  CommonFlags sweep_flags;
  std::string grid_text;
  CLI::App* sweep =
      app.add_subcommand("sweep", "Latency-quality curve over a parameter grid");
  AddCommonFlags(sweep, sweep_flags);
  sweep->add_option("--grid", grid_text, "hold=0,1,2 | la=2,3 | block=1,2,4")
      ->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "streamdec: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (decode->parsed()) {
      const RunConfig cfg = MakeRunConfig(decode_flags);
      Inputs in = LoadInputs(decode_flags, cfg);
      const CorpusRecord* record = &in.corpus.front();
      if (!decode_id.empty()) {
        auto it = std::find_if(
            in.corpus.begin(), in.corpus.end(),
            [&](const CorpusRecord& r) { return r.id == decode_id; });
        if (it == in.corpus.end()) {
          throw InputError("no record with id '" + decode_id + "'");
        }
        record = &*it;
      }
      const UtteranceRun run = RunUtterance(*record, *in.factory, cfg);
      std::ostringstream text;
      WriteTrace(run.trace, text);
      Emit(decode_flags.out, text.str(), out);
    } else if (eval->parsed()) {
      const RunConfig cfg = MakeRunConfig(eval_flags);
      Inputs in = LoadInputs(eval_flags, cfg);
      const EvalReport report =
          RunCorpus(in.corpus, *in.factory, cfg, eval_flags.jobs);
      std::ostringstream text;
      WriteReportCsv(report, text);
      Emit(eval_flags.out, text.str(), out);
      if (!json_out.empty()) {
        Emit(json_out, ReportToJson(report).dump(2) + "\n", out);
      }
    } else if (sweep->parsed()) {
      const RunConfig cfg = MakeRunConfig(sweep_flags);
      const SweepGrid grid = SweepGrid::Parse(grid_text);
      Inputs in = LoadInputs(sweep_flags, cfg);
      const auto points =
          Sweep(in.corpus, *in.factory, cfg, grid, sweep_flags.jobs);
      std::ostringstream text;
      WriteSweepCsv(points, text);
      Emit(sweep_flags.out, text.str(), out);
    }
  } catch (const ConfigError& e) {
    err << "streamdec: config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const InputError& e) {
    err << "streamdec: input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const Error& e) {
    err << "streamdec: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace streamdec
