// Copyright 2026 The Authors.
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


#ifndef QOPT_CLI_H_
#define QOPT_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "qopt/config.h"
#include "qopt/synth.h"

namespace qopt {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitRefusal = 3;

// Ingest, preprocess and label the corpus named by the config.
LabeledCorpus LoadLabeledCorpus(const RunConfig& config, std::ostream& log);

struct SolveOptions {
  bool render = false;
  std::filesystem::path dump_index;
};

// Writes <out>/solutions/<method>.json for every non-firehose method.
void CmdSolve(const RunConfig& config, const SolveOptions& options,
              std::ostream& out, std::ostream& err);

// Writes <out>/report.json, <out>/report.csv and <out>/timings.json.
EvalReport CmdEval(const RunConfig& config, std::ostream& out,
                   std::ostream& err);

// Writes <out>/bench.csv with rows (size, method, solver, seconds,
// objective).
void CmdBench(const RunConfig& config, const std::vector<std::size_t>& sizes,
              std::ostream& out, std::ostream& err);

// Writes a JSON-lines corpus and its labeling hashtag file.
void CmdGenSynth(const SynthConfig& config,
                 const std::filesystem::path& corpus_path,
                 const std::filesystem::path& labels_path, std::ostream& out);

// Full command-line entry point; returns the process exit code.
int RunCli(int argc, char** argv);

}  // namespace qopt

#endif  // QOPT_CLI_H_
