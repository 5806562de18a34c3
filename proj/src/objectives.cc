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


#include "qopt/objectives.h"

#include <algorithm>
#include <cmath>

#include "qopt/errors.h"

namespace qopt {
namespace {

// Entropy (nats) of a two-outcome distribution given by counts.
double BinaryEntropy(double a, double b) {
  const double n = a + b;
  double h = 0.0;
  for (double c : {a, b}) {
    if (c > 0) h -= (c / n) * std::log(c / n);
  }
  return h;
}

}  // namespace

std::string_view ObjectiveKindName(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kCilp:
      return "cilp";
    case ObjectiveKind::kWilp:
      return "wilp";
    case ObjectiveKind::kCailp:
      return "cailp";
  }
  return "?";
}

std::optional<ObjectiveKind> ParseObjectiveKind(std::string_view name) {
  for (auto kind :
       {ObjectiveKind::kCilp, ObjectiveKind::kWilp, ObjectiveKind::kCailp}) {
    if (ObjectiveKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

void ObjectiveSpec::Validate() const {
  if (k < 0) throw UsageError("K must be non-negative");
  if (!(lambda >= 0) || !std::isfinite(lambda)) {
    throw UsageError("lambda must be a finite non-negative number");
  }
  if (char_budget && *char_budget <= 0) {
    throw UsageError("char_budget must be positive");
  }
}

double NmisFromCounts(std::size_t tp, std::size_t fp, std::size_t fn,
                      std::size_t tn) {
  const double n = static_cast<double>(tp + fp + fn + tn);
  if (n == 0) return 0.0;
  const double x1 = static_cast<double>(tp + fp);
  const double x0 = static_cast<double>(fn + tn);
  const double y1 = static_cast<double>(tp + fn);
  const double y0 = static_cast<double>(fp + tn);
  const double hx = BinaryEntropy(x1, x0);
  const double hy = BinaryEntropy(y1, y0);
  const double denom = std::min(hx, hy);
  if (denom <= 0) return 0.0;

  double mi = 0.0;
  auto term = [&](double joint, double rx, double cy) {
    if (joint > 0) mi += (joint / n) * std::log(joint * n / (rx * cy));
  };
  term(static_cast<double>(tp), x1, y1);
  term(static_cast<double>(fp), x1, y0);
  term(static_cast<double>(fn), x0, y1);
  term(static_cast<double>(tn), x0, y0);
  return std::clamp(mi / denom, 0.0, 1.0);
}

double Nmis(const CoverageIndex& index, std::size_t j) {
  const std::size_t tp = index.pos_cov(j).Count();
  const std::size_t fp = index.neg_cov(j).Count();
  return NmisFromCounts(tp, fp, index.n_pos() - tp, index.n_neg() - fp);
}

NmisTable BuildNmisTable(const CoverageIndex& index) {
  std::vector<double> scores(index.num_features());
  for (std::size_t j = 0; j < scores.size(); ++j) scores[j] = Nmis(index, j);
  return NmisTable(std::move(scores));
}

double ObjectiveValue(const ObjectiveSpec& spec, CoverageCount covered,
                      double nmis_sum, std::size_t n_pos, std::size_t n_neg) {
  const double pos_frac =
      n_pos == 0 ? 0.0
                 : static_cast<double>(covered.pos) / static_cast<double>(n_pos);
  switch (spec.kind) {
    case ObjectiveKind::kCilp:
      return static_cast<double>(covered.pos);
    case ObjectiveKind::kWilp:
      return pos_frac + spec.lambda * nmis_sum;
    case ObjectiveKind::kCailp: {
      const double neg_frac = n_neg == 0 ? 0.0
                                         : static_cast<double>(covered.neg) /
                                               static_cast<double>(n_neg);
      return pos_frac - spec.lambda * neg_frac;
    }
  }
  return 0.0;
}

double MarginalGain(const ObjectiveSpec& spec, CoverageCount gain, double nmis,
                    std::size_t n_pos, std::size_t n_neg) {
  return ObjectiveValue(spec, gain, nmis, n_pos, n_neg);
}

double Evaluate(const ObjectiveSpec& spec, const CoverageIndex& index,
                const NmisTable& nmis, std::span<const int> selected) {
  const CoverageCount covered = index.Coverage(selected);
  double nmis_sum = 0.0;
  if (spec.kind == ObjectiveKind::kWilp) {
    std::vector<int> sorted(selected.begin(), selected.end());
    std::sort(sorted.begin(), sorted.end());
    for (int j : sorted) nmis_sum += nmis[j];
  }
  return ObjectiveValue(spec, covered, nmis_sum, index.n_pos(), index.n_neg());
}

}  // namespace qopt
