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


#ifndef QOPT_METRICS_H_
#define QOPT_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>

#include "qopt/document.h"
#include "qopt/query_engine.h"

namespace qopt {

struct Stage1Metrics {
  double recall = 0.0;
  double precision = 0.0;
  std::size_t retrieved = 0;
};

// recall = retrieved_pos / num_positives, precision = retrieved_pos /
// retrieved (0 when nothing is retrieved or there are no positives).
Stage1Metrics ComputeStage1(const RetrievalResult& result,
                            std::size_t num_positives);
Stage1Metrics ComputeStage1(const RetrievalResult& result,
                            const LabeledCorpus& corpus);

double F1Score(double precision, double recall);

using IdSet = std::unordered_set<std::string>;

// Sum of precision@r over the ranks r holding a relevant id, divided by
// |relevant|. Relevant documents missing from the ranking count as misses.
// nullopt when `relevant` is empty.
std::optional<double> AveragePrecision(std::span<const std::string> ranking,
                                       const IdSet& relevant);

// Relevant ids among the first min(k, |ranking|) entries, divided by k.
double PrecisionAtK(std::span<const std::string> ranking,
                    const IdSet& relevant, std::size_t k);

struct Interval {
  double mean = 0.0;
  std::optional<double> halfwidth;  // nullopt with fewer than two values
};

// Student-t interval: mean +- t_{(1+level)/2, n-1} * s / sqrt(n).
Interval ConfidenceInterval(std::span<const double> values,
                            double level = 0.95);

}  // namespace qopt

#endif  // QOPT_METRICS_H_
