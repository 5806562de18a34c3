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


#include "qopt/config.h"

#include <cstdio>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "qopt/errors.h"

namespace qopt {
namespace {

using nlohmann::json;

void CheckKeys(const json& j, const std::set<std::string>& allowed,
               const std::string& where) {
  if (!j.is_object()) throw UsageError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw UsageError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void Read(const json& j, const char* key, T& field) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    field = it->get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("config key '") + key + "' has the wrong type");
  }
}

json ToJson(const TrainingConfig& c) {
  return {{"l2", c.l2},
          {"initial_step", c.initial_step},
          {"backtrack", c.backtrack},
          {"armijo", c.armijo},
          {"max_epochs", c.max_epochs},
          {"grad_tol", c.grad_tol},
          {"positive_weight", c.positive_weight}};
}

json ToJson(const SearchLimits& l) {
  return {{"max_features", l.max_features},
          {"max_subsets", l.max_subsets},
          {"max_nodes", l.max_nodes}};
}

}  // namespace

std::vector<MethodSpec> DefaultMethods() {
  std::vector<MethodSpec> methods;
  for (MethodKind kind : {MethodKind::kFirehose, MethodKind::kTopK,
                          MethodKind::kCilp, MethodKind::kWilp,
                          MethodKind::kCailp}) {
    MethodSpec& m = methods.emplace_back();
    m.name = MethodKindName(kind);
    m.kind = kind;
  }
  return methods;
}

json ToJson(const MethodSpec& m) {
  json j = {{"name", m.name},
            {"kind", MethodKindName(m.kind)},
            {"k", m.k},
            {"solver", SolverKindName(m.solver)}};
  j["lambda"] = m.lambda ? json(*m.lambda) : json("tune");
  j["char_budget"] = m.char_budget ? json(*m.char_budget) : json(nullptr);
  return j;
}

MethodSpec MethodSpecFromJson(const json& j) {
  CheckKeys(j, {"name", "kind", "k", "lambda", "char_budget", "solver"},
            "method");
  MethodSpec m;
  std::string kind;
  Read(j, "kind", kind);
  auto parsed = ParseMethodKind(kind);
  if (!parsed) throw UsageError("unknown method kind '" + kind + "'");
  m.kind = *parsed;
  m.name = kind;
  Read(j, "name", m.name);
  Read(j, "k", m.k);
  if (auto it = j.find("lambda"); it != j.end()) {
    if (it->is_string() && it->get<std::string>() == "tune") {
      m.lambda.reset();
    } else if (it->is_number()) {
      m.lambda = it->get<double>();
    } else {
      throw UsageError("method lambda must be a number or \"tune\"");
    }
  }
  if (auto it = j.find("char_budget"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw UsageError("char_budget must be an integer");
    m.char_budget = it->get<int>();
  }
  std::string solver = "greedy";
  Read(j, "solver", solver);
  auto parsed_solver = ParseSolverKind(solver);
  if (!parsed_solver || *parsed_solver == SolverKind::kTopK) {
    throw UsageError("unknown solver '" + solver + "'");
  }
  m.solver = *parsed_solver;
  return m;
}

json ToJson(const RunConfig& c) {
  json methods = json::array();
  for (const MethodSpec& m : c.methods) methods.push_back(ToJson(m));
  return {{"corpus", c.corpus},
          {"labels", c.labels},
          {"topic", c.topic},
          {"methods", methods},
          {"min_freq", c.min_freq},
          {"exclude_labeling", c.exclude_labeling},
          {"max_features", c.max_features},
          {"n_folds", c.n_folds},
          {"seed", c.seed},
          {"out_dir", c.out_dir},
          {"p_at_k", c.p_at_k},
          {"lang", c.lang},
          {"train_on_filtered", c.train_on_filtered},
          {"lambda_grid", c.lambda_grid},
          {"validation_fraction", c.validation_fraction},
          {"ranker", ToJson(c.ranker)},
          {"limits", ToJson(c.limits)},
          {"bench_sizes", c.bench_sizes}};
}

RunConfig RunConfigFromJson(const json& j) {
  CheckKeys(j,
            {"corpus", "labels", "topic", "methods", "min_freq",
             "exclude_labeling", "max_features", "n_folds", "seed", "out_dir",
             "p_at_k", "lang", "train_on_filtered", "lambda_grid",
             "validation_fraction", "ranker", "limits", "bench_sizes"},
            "config");
  RunConfig c;
  Read(j, "corpus", c.corpus);
  Read(j, "labels", c.labels);
  Read(j, "topic", c.topic);
  Read(j, "min_freq", c.min_freq);
  Read(j, "exclude_labeling", c.exclude_labeling);
  Read(j, "max_features", c.max_features);
  Read(j, "n_folds", c.n_folds);
  Read(j, "seed", c.seed);
  Read(j, "out_dir", c.out_dir);
  Read(j, "p_at_k", c.p_at_k);
  Read(j, "lang", c.lang);
  Read(j, "train_on_filtered", c.train_on_filtered);
  Read(j, "lambda_grid", c.lambda_grid);
  Read(j, "validation_fraction", c.validation_fraction);
  Read(j, "bench_sizes", c.bench_sizes);
  if (auto it = j.find("methods"); it != j.end()) {
    if (!it->is_array()) throw UsageError("methods must be an array");
    for (const json& m : *it) c.methods.push_back(MethodSpecFromJson(m));
  } else {
    c.methods = DefaultMethods();
  }
  if (auto it = j.find("ranker"); it != j.end()) {
    CheckKeys(*it,
              {"l2", "initial_step", "backtrack", "armijo", "max_epochs",
               "grad_tol", "positive_weight"},
              "ranker");
    Read(*it, "l2", c.ranker.l2);
    Read(*it, "initial_step", c.ranker.initial_step);
    Read(*it, "backtrack", c.ranker.backtrack);
    Read(*it, "armijo", c.ranker.armijo);
    Read(*it, "max_epochs", c.ranker.max_epochs);
    Read(*it, "grad_tol", c.ranker.grad_tol);
    Read(*it, "positive_weight", c.ranker.positive_weight);
  }
  if (auto it = j.find("limits"); it != j.end()) {
    CheckKeys(*it, {"max_features", "max_subsets", "max_nodes"}, "limits");
    Read(*it, "max_features", c.limits.max_features);
    Read(*it, "max_subsets", c.limits.max_subsets);
    Read(*it, "max_nodes", c.limits.max_nodes);
  }
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file " + path.string() + ": " + e.what());
  }
  return RunConfigFromJson(j);
}

void RunConfig::Validate() const {
  if (corpus.empty()) throw UsageError("no corpus path given");
  if (labels.empty()) throw UsageError("no labeling hashtag file given");
  if (min_freq < 1) throw UsageError("min_freq must be >= 1");
  if (n_folds < 2) throw UsageError("n_folds must be >= 2");
  if (p_at_k < 1) throw UsageError("p_at_k must be >= 1");
  if (methods.empty()) throw UsageError("no methods configured");
  if (lambda_grid.empty()) throw UsageError("lambda_grid is empty");
  for (double l : lambda_grid) {
    if (!(l >= 0)) throw UsageError("lambda_grid values must be >= 0");
  }
  std::set<std::string> names;
  for (const MethodSpec& m : methods) {
    if (!names.insert(m.name).second) {
      throw UsageError("duplicate method name '" + m.name + "'");
    }
    // Names become output file names.
    if (m.name.empty() ||
        m.name.find_first_not_of("abcdefghijklmnopqrstuvwxyz"
                                 "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_.-") !=
            std::string::npos ||
        m.name.front() == '.') {
      throw UsageError("method name '" + m.name +
                       "' must use only letters, digits, '_', '.' and '-'");
    }
    if (m.k < 1) throw UsageError("method '" + m.name + "': K must be >= 1");
    if (m.is_ilp()) m.Objective(m.lambda.value_or(0.0)).Validate();
    if (m.kind == MethodKind::kCailp && m.solver == SolverKind::kLazyGreedy) {
      throw UsageError("method '" + m.name +
                       "': lazy greedy does not support cailp");
    }
    if (m.char_budget && *m.char_budget <= 0) {
      throw UsageError("method '" + m.name + "': char_budget must be positive");
    }
  }
}

PipelineConfig RunConfig::ToPipelineConfig() const {
  PipelineConfig p;
  p.extract.min_freq = min_freq;
  p.extract.exclude_labeling = exclude_labeling;
  p.extract.max_features = max_features;
  p.ranker = ranker;
  p.lambda_grid = lambda_grid;
  p.validation_fraction = validation_fraction;
  p.p_at_k = p_at_k;
  p.train_on_filtered = train_on_filtered;
  p.limits = limits;
  p.seed = seed;
  return p;
}

std::string ConfigHash(const RunConfig& config) {
  // The output directory does not affect results, so it is left out.
  json j = ToJson(config);
  j.erase("out_dir");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qopt
