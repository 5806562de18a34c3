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


#include "qopt/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

namespace qopt {

Stage1Metrics ComputeStage1(const RetrievalResult& result,
                            std::size_t num_positives) {
  Stage1Metrics m;
  m.retrieved = result.retrieved_pos + result.retrieved_neg;
  if (num_positives > 0) {
    m.recall = static_cast<double>(result.retrieved_pos) /
               static_cast<double>(num_positives);
  }
  if (m.retrieved > 0) {
    m.precision = static_cast<double>(result.retrieved_pos) /
                  static_cast<double>(m.retrieved);
  }
  return m;
}

Stage1Metrics ComputeStage1(const RetrievalResult& result,
                            const LabeledCorpus& corpus) {
  return ComputeStage1(result, corpus.positives.size());
}

double F1Score(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0 ? 2 * precision * recall / sum : 0.0;
}

std::optional<double> AveragePrecision(std::span<const std::string> ranking,
                                       const IdSet& relevant) {
  if (relevant.empty()) return std::nullopt;
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    if (relevant.contains(ranking[r])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(r + 1);
    }
  }
  return sum / static_cast<double>(relevant.size());
}

double PrecisionAtK(std::span<const std::string> ranking,
                    const IdSet& relevant, std::size_t k) {
  if (k == 0) return 0.0;
  const std::size_t depth = std::min(k, ranking.size());
  std::size_t hits = 0;
  for (std::size_t r = 0; r < depth; ++r) hits += relevant.contains(ranking[r]);
  return static_cast<double>(hits) / static_cast<double>(k);
}

Interval ConfidenceInterval(std::span<const double> values, double level) {
  Interval interval;
  const std::size_t n = values.size();
  if (n == 0) return interval;
  interval.mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  if (n < 2) return interval;
  double ss = 0.0;
  for (double v : values) ss += (v - interval.mean) * (v - interval.mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double t = boost::math::quantile(dist, 0.5 + level / 2);
  interval.halfwidth = t * sd / std::sqrt(static_cast<double>(n));
  return interval;
}

}  // namespace qopt
