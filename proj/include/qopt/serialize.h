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


#ifndef QOPT_SERIALIZE_H_
#define QOPT_SERIALIZE_H_

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qopt/eval.h"
#include "qopt/feature_index.h"
#include "qopt/query_engine.h"
#include "qopt/solvers.h"

namespace qopt {

nlohmann::json ToJson(const ObjectiveSpec& spec);
nlohmann::json ToJson(const QuerySolution& solution,
                      const CoverageIndex& index);
nlohmann::json ToJson(const RetrievalResult& result);
nlohmann::json ToJson(const Interval& interval);
// Deterministic report; wall-clock timings are left out.
nlohmann::json ToJson(const EvalReport& report);
nlohmann::json TimingsToJson(const EvalReport& report);

// One row per method: method, avg_retrieved, recall, recall_ci, precision,
// precision_ci, test_avep, test_avep_ci, p@k, p@k_ci. Values are rounded to
// three decimals; a missing interval prints as "n/a". A non-empty
// `config_hash` adds a trailing config_hash column.
void WriteReportCsv(const EvalReport& report, std::ostream& out,
                    const std::string& config_hash = "");

std::string FormatFixed(double value, int decimals);

}  // namespace qopt

#endif  // QOPT_SERIALIZE_H_
