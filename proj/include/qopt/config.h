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


#ifndef QOPT_CONFIG_H_
#define QOPT_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qopt/eval.h"

namespace qopt {

// Everything a CLI run needs. Stored as a JSON object whose keys mirror the
// field names; every field except `corpus` and `labels` has a default.
struct RunConfig {
  std::string corpus;
  std::string labels;
  std::string topic = "topic";
  std::vector<MethodSpec> methods;
  int min_freq = 100;
  bool exclude_labeling = true;
  std::size_t max_features = 0;
  int n_folds = 5;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::size_t p_at_k = 100;
  std::string lang = "en";
  bool train_on_filtered = false;
  std::vector<double> lambda_grid = {0, 0.01, 0.1, 0.25, 0.5, 1, 2, 5};
  double validation_fraction = 0.2;
  TrainingConfig ranker;
  SearchLimits limits;
  std::vector<std::size_t> bench_sizes = {100, 1000};

  // Throws UsageError on invalid values.
  void Validate() const;
  PipelineConfig ToPipelineConfig() const;
};

// Firehose, TopK, CILP, WILP (tuned) and CAILP (tuned), K = 20, greedy.
std::vector<MethodSpec> DefaultMethods();

nlohmann::json ToJson(const RunConfig& config);
nlohmann::json ToJson(const MethodSpec& method);
// Missing keys take defaults; unknown keys are a usage error.
RunConfig RunConfigFromJson(const nlohmann::json& j);
MethodSpec MethodSpecFromJson(const nlohmann::json& j);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// FNV-1a of the canonical JSON dump without out_dir, as 16 hex digits.
std::string ConfigHash(const RunConfig& config);

}  // namespace qopt

#endif  // QOPT_CONFIG_H_
