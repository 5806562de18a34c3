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


#include "qopt/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qopt/corpus.h"
#include "qopt/errors.h"
#include "qopt/feature_index.h"
#include "qopt/objectives.h"
#include "qopt/query_engine.h"
#include "qopt/random.h"
#include "qopt/ranker.h"
#include "qopt/serialize.h"
#include "qopt/solvers.h"

namespace qopt {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw DataError("cannot write " + path.string());
}

void WriteJson(const fs::path& path, const json& j) {
  WriteText(path, j.dump(2) + "\n");
}

TrainingConfig RankerConfigFor(const RunConfig& config,
                               const LabeledCorpus& corpus) {
  TrainingConfig rc = config.ranker;
  if (config.exclude_labeling) {
    rc.excluded_hashtags.insert(corpus.labeling_hashtags.begin(),
                                corpus.labeling_hashtags.end());
  }
  return rc;
}

// Fixed lambda for the method, or the tuned one when `tune_on` is given.
double ResolveLambda(const MethodSpec& method, const LabeledCorpus* tune_on,
                     const PipelineConfig& pc, std::uint64_t seed) {
  if (method.lambda) return *method.lambda;
  if (method.kind == MethodKind::kCilp) return 0.0;
  if (tune_on == nullptr) return 1.0;
  return TuneLambda(method, *tune_on, pc, seed).lambda;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage:
    case ErrorCode::kUnsupported:
      return kExitUsage;
    case ErrorCode::kData:
    case ErrorCode::kNumeric:
      return kExitData;
    case ErrorCode::kSolverRefusal:
      return kExitRefusal;
  }
  return kExitData;
}

}  // namespace

LabeledCorpus LoadLabeledCorpus(const RunConfig& config, std::ostream& log) {
  IngestResult ingested = Ingest(config.corpus);
  const std::size_t n_read = ingested.documents.size();
  if (!ingested.errors.empty()) {
    log << "skipped " << ingested.errors.size() << " malformed record(s)\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(5, ingested.errors.size());
         ++i) {
      log << "  line " << ingested.errors[i].line << ": "
          << ingested.errors[i].message << "\n";
    }
  }
  std::vector<Document> docs =
      Preprocess(std::move(ingested.documents), {.keep_lang = config.lang});
  log << "ingested " << n_read << " record(s), kept " << docs.size()
      << " after preprocessing\n";
  const std::set<std::string> labels = LoadLabelingHashtags(config.labels);
  LabeledCorpus corpus = Label(std::move(docs), labels, config.topic);
  log << "topic '" << corpus.topic << "': " << corpus.positives.size()
      << " positive(s), " << corpus.negatives.size() << " negative(s)\n";
  if (corpus.positives.empty()) {
    throw DataError("no document carries a labeling hashtag");
  }
  if (corpus.negatives.empty()) throw DataError("corpus has no negatives");
  return corpus;
}

void CmdSolve(const RunConfig& config, const SolveOptions& options,
              std::ostream& out, std::ostream& err) {
  config.Validate();
  const std::string hash = ConfigHash(config);
  const LabeledCorpus corpus = LoadLabeledCorpus(config, err);
  const PipelineConfig pc = config.ToPipelineConfig();
  const CoverageIndex index = ExtractFeatures(corpus, pc.extract);
  err << "index: " << index.num_features() << " feature(s)\n";
  if (!options.dump_index.empty()) {
    std::ofstream f(options.dump_index, std::ios::binary);
    index.Save(f);
    if (!f) throw DataError("cannot write " + options.dump_index.string());
  }
  const NmisTable nmis = BuildNmisTable(index);
  const fs::path dir = fs::path(config.out_dir) / "solutions";
  std::optional<RankerModel> ranker;
  json timings = json::object();

  for (const MethodSpec& method : config.methods) {
    if (method.kind == MethodKind::kFirehose) continue;
    QuerySolution solution;
    json lambda = nullptr;
    if (method.kind == MethodKind::kTopK) {
      if (!ranker) ranker = Train(corpus, RankerConfigFor(config, corpus));
      solution = TopKBaseline(ExportWeights(*ranker, index), method.k, index,
                              method.char_budget);
    } else {
      const double l = ResolveLambda(method, &corpus, pc, config.seed);
      if (method.kind != MethodKind::kCilp) lambda = l;
      solution = Solve(method.solver, method.Objective(l), index, nmis,
                       pc.limits);
    }
    const RenderedQuery rendered = RenderQuery(MakeQuery(solution, index));

    json j = ToJson(solution, index);
    timings[method.name] = j["solve_time_ms"];
    j.erase("solve_time_ms");  // keeps the file reproducible
    j["method"] = method.name;
    j["lambda"] = lambda;
    j["rendered_query"] = rendered.text;
    j["warnings"] = rendered.warnings;
    j["config_hash"] = hash;
    WriteJson(dir / (method.name + ".json"), j);

    out << method.name << ": " << solution.selected.size()
        << " keyword(s), objective " << solution.objective_value << "\n";
    if (options.render) out << "  " << rendered.text << "\n";
    for (const std::string& w : rendered.warnings) {
      err << "warning: " << method.name << ": " << w << "\n";
    }
  }
  WriteJson(dir / "timings.json",
            {{"config_hash", hash}, {"solve_time_ms", timings}});
}

EvalReport CmdEval(const RunConfig& config, std::ostream& out,
                   std::ostream& err) {
  config.Validate();
  const std::string hash = ConfigHash(config);
  const LabeledCorpus corpus = LoadLabeledCorpus(config, err);
  const FoldPlan plan = MakeFolds(corpus, config.n_folds, config.seed);
  const EvalReport report =
      RunPipeline(corpus, config.methods, plan, config.ToPipelineConfig());

  const fs::path dir = config.out_dir;
  json j = ToJson(report);
  j["config_hash"] = hash;
  WriteJson(dir / "report.json", j);
  json t = TimingsToJson(report);
  t["config_hash"] = hash;
  WriteJson(dir / "timings.json", t);
  std::ostringstream csv;
  WriteReportCsv(report, csv, hash);
  WriteText(dir / "report.csv", csv.str());

  for (const MethodSummary& m : report.methods) {
    for (const FoldRecord& r : m.folds) {
      if (!r.ok) {
        err << "warning: " << m.method.name << " fold " << r.fold
            << " failed: " << r.error << "\n";
      }
    }
    out << m.method.name << ": retrieved " << FormatFixed(m.avg_retrieved.mean, 1)
        << ", recall " << FormatFixed(m.recall.mean, 3) << ", precision "
        << FormatFixed(m.precision.mean, 3) << ", AveP "
        << FormatFixed(m.avep.mean, 3) << "\n";
  }
  return report;
}

void CmdBench(const RunConfig& config, const std::vector<std::size_t>& sizes,
              std::ostream& out, std::ostream& err) {
  config.Validate();
  if (sizes.empty()) throw UsageError("no bench sizes given");
  if (!std::is_sorted(sizes.begin(), sizes.end())) {
    throw UsageError("bench sizes must be ascending");
  }
  const std::string hash = ConfigHash(config);
  const LabeledCorpus corpus = LoadLabeledCorpus(config, err);
  const std::size_t total = corpus.size();

  // One seeded permutation, so smaller samples nest inside larger ones.
  std::vector<std::size_t> order(total);
  for (std::size_t i = 0; i < total; ++i) order[i] = i;
  Rng rng(config.seed);
  rng.Shuffle(order);

  std::ostringstream csv;
  csv << "size,method,solver,seconds,objective,config_hash\n";
  for (std::size_t size : sizes) {
    if (size > total) {
      throw UsageError("bench size " + std::to_string(size) +
                       " exceeds corpus size " + std::to_string(total));
    }
    std::vector<std::size_t> pick(order.begin(), order.begin() + size);
    std::sort(pick.begin(), pick.end());
    LabeledCorpus sample;
    sample.topic = corpus.topic;
    sample.labeling_hashtags = corpus.labeling_hashtags;
    for (std::size_t p : pick) {
      if (p < corpus.positives.size()) {
        sample.positives.push_back(corpus.positives[p]);
      } else {
        sample.negatives.push_back(corpus.negatives[p - corpus.positives.size()]);
      }
    }
    // The frequency threshold scales with the sample.
    ExtractOptions eo = config.ToPipelineConfig().extract;
    eo.min_freq = std::max(
        1, static_cast<int>(std::llround(static_cast<double>(config.min_freq) *
                                         size / total)));
    const CoverageIndex index = ExtractFeatures(sample, eo);
    const NmisTable nmis = BuildNmisTable(index);

    for (const MethodSpec& method : config.methods) {
      if (!method.is_ilp()) continue;
      const ObjectiveSpec spec = method.Objective(
          ResolveLambda(method, nullptr, {}, config.seed));
      const SolverKind heuristic = method.solver == SolverKind::kExact
                                       ? SolverKind::kGreedy
                                       : method.solver;
      std::vector<QuerySolution> runs;
      runs.push_back(Solve(heuristic, spec, index, nmis, config.limits));
      try {
        runs.push_back(Exact(spec, index, nmis, config.limits));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kSolverRefusal) throw;
        err << "size " << size << ", " << method.name
            << ": exact skipped (" << e.what() << ")\n";
      }
      for (const QuerySolution& s : runs) {
        const double seconds =
            std::chrono::duration<double>(s.solve_time).count();
        csv << size << ',' << method.name << ',' << SolverKindName(s.solver)
            << ',' << FormatFixed(seconds, 6) << ','
            << FormatFixed(s.objective_value, 9) << ',' << hash << '\n';
        out << size << " docs, " << method.name << ", "
            << SolverKindName(s.solver) << ": " << FormatFixed(seconds, 3)
            << " s, objective " << FormatFixed(s.objective_value, 6) << "\n";
      }
    }
  }
  WriteText(fs::path(config.out_dir) / "bench.csv", csv.str());
}

void CmdGenSynth(const SynthConfig& config, const fs::path& corpus_path,
                 const fs::path& labels_path, std::ostream& out) {
  const SynthCorpus synth = GenerateSynthetic(config);
  std::ostringstream docs;
  WriteCorpus(synth.documents, docs);
  WriteText(corpus_path, docs.str());
  std::string labels;
  for (const std::string& tag : synth.labeling_hashtags) labels += tag + "\n";
  WriteText(labels_path, labels);
  out << "wrote " << synth.documents.size() << " document(s) to "
      << corpus_path.string() << " and " << synth.labeling_hashtags.size()
      << " labeling hashtag(s) to " << labels_path.string() << "\n";
}

namespace {

// Command-line values that override the config file when given.
struct Overrides {
  std::string config;
  RunConfig values;
  std::vector<std::string> methods;
  int k = 20;
  std::string solver;
  std::string lambda;
  int char_budget = 0;
  bool keep_labeling = false;
  std::map<std::string, CLI::Option*> given;

  bool Has(const std::string& name) const {
    auto it = given.find(name);
    return it != given.end() && it->second->count() > 0;
  }
};

void AddRunOptions(CLI::App* cmd, Overrides& o) {
  RunConfig& v = o.values;
  cmd->add_option("-c,--config", o.config, "JSON config file");
  o.given["corpus"] = cmd->add_option("--corpus", v.corpus, "JSON-lines corpus");
  o.given["labels"] =
      cmd->add_option("--labels", v.labels, "labeling hashtag file");
  o.given["topic"] = cmd->add_option("--topic", v.topic, "topic name");
  o.given["out"] = cmd->add_option("-o,--out", v.out_dir, "output directory");
  o.given["min_freq"] =
      cmd->add_option("--min-freq", v.min_freq, "minimum feature frequency");
  o.given["max_features"] = cmd->add_option(
      "--max-features", v.max_features, "cap on index size (0: none)");
  o.given["n_folds"] = cmd->add_option("--folds", v.n_folds, "number of folds");
  o.given["seed"] = cmd->add_option("--seed", v.seed, "random seed");
  o.given["p_at_k"] = cmd->add_option("--p-at-k", v.p_at_k, "k for P@k");
  o.given["lang"] =
      cmd->add_option("--lang", v.lang, "language tag to keep (empty: all)");
  o.given["train_on_filtered"] = cmd->add_flag(
      "--train-on-filtered", v.train_on_filtered,
      "train one ranker per method on query-filtered training splits");
  o.given["keep_labeling"] = cmd->add_flag(
      "--keep-labeling-hashtags", o.keep_labeling,
      "allow labeling hashtags as query features");
  o.given["methods"] = cmd->add_option("--methods", o.methods,
                                       "configured method names to run")
                           ->delimiter(',');
  o.given["k"] = cmd->add_option("-k,--k", o.k, "keywords per query");
  o.given["solver"] = cmd->add_option("--solver", o.solver,
                                      "greedy, lazy or exact (ILP methods)")
                          ->check(CLI::IsMember({"greedy", "lazy", "exact"}));
  o.given["lambda"] = cmd->add_option("--lambda", o.lambda,
                                      "lambda for WILP/CAILP, or \"tune\"");
  o.given["char_budget"] =
      cmd->add_option("--char-budget", o.char_budget, "query character budget");
}

RunConfig Resolve(const Overrides& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : LoadRunConfig(o.config);
  if (o.config.empty()) c.methods = DefaultMethods();
  const RunConfig& v = o.values;
  if (o.Has("corpus")) c.corpus = v.corpus;
  if (o.Has("labels")) c.labels = v.labels;
  if (o.Has("topic")) c.topic = v.topic;
  if (o.Has("out")) c.out_dir = v.out_dir;
  if (o.Has("min_freq")) c.min_freq = v.min_freq;
  if (o.Has("max_features")) c.max_features = v.max_features;
  if (o.Has("n_folds")) c.n_folds = v.n_folds;
  if (o.Has("seed")) c.seed = v.seed;
  if (o.Has("p_at_k")) c.p_at_k = v.p_at_k;
  if (o.Has("lang")) c.lang = v.lang;
  if (o.Has("train_on_filtered")) c.train_on_filtered = v.train_on_filtered;
  if (o.Has("keep_labeling")) c.exclude_labeling = !o.keep_labeling;
  if (o.Has("methods")) {
    std::vector<MethodSpec> picked;
    for (const std::string& name : o.methods) {
      auto it = std::find_if(c.methods.begin(), c.methods.end(),
                             [&](const MethodSpec& m) { return m.name == name; });
      if (it == c.methods.end()) {
        throw UsageError("no configured method named '" + name + "'");
      }
      picked.push_back(*it);
    }
    c.methods = picked;
  }
  for (MethodSpec& m : c.methods) {
    if (o.Has("k") && m.kind != MethodKind::kFirehose) m.k = o.k;
    if (!m.is_ilp()) continue;
    if (o.Has("solver")) m.solver = *ParseSolverKind(o.solver);
    if (o.Has("char_budget")) m.char_budget = o.char_budget;
    if (o.Has("lambda") && m.kind != MethodKind::kCilp) {
      if (o.lambda == "tune") {
        m.lambda.reset();
      } else {
        try {
          std::size_t used = 0;
          m.lambda = std::stod(o.lambda, &used);
          if (used != o.lambda.size()) throw std::invalid_argument(o.lambda);
        } catch (const std::logic_error&) {
          throw UsageError("--lambda must be a number or \"tune\"");
        }
      }
    }
  }
  return c;
}

}  // namespace

int RunCli(int argc, char** argv) {
  CLI::App app{"Keyword query optimization toolkit"};
  app.require_subcommand(1);

  Overrides solve_o, eval_o, bench_o;
  SolveOptions solve_options;
  std::string dump_index;
  CLI::App* solve = app.add_subcommand("solve", "solve one query per method");
  AddRunOptions(solve, solve_o);
  solve->add_flag("--render", solve_options.render, "print rendered queries");
  solve->add_option("--dump-index", dump_index, "write the coverage index");

  CLI::App* eval = app.add_subcommand("eval", "cross-validated evaluation");
  AddRunOptions(eval, eval_o);

  std::vector<std::size_t> sizes;
  CLI::App* bench = app.add_subcommand("bench", "solver timing study");
  AddRunOptions(bench, bench_o);
  CLI::Option* sizes_opt =
      bench->add_option("--sizes", sizes, "ascending sample sizes")
          ->delimiter(',');

  SynthConfig synth;
  std::string synth_out = "synth";
  CLI::App* gen = app.add_subcommand("gen-synth", "generate a planted corpus");
  gen->add_option("-o,--out", synth_out, "output directory");
  gen->add_option("--docs", synth.num_docs, "number of documents");
  gen->add_option("--positive-rate", synth.positive_rate, "share of positives")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", synth.seed, "random seed");
  gen->add_option("--topic", synth.topic, "topic name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) {
      solve_options.dump_index = dump_index;
      CmdSolve(Resolve(solve_o), solve_options, std::cout, std::cerr);
    } else if (*eval) {
      CmdEval(Resolve(eval_o), std::cout, std::cerr);
    } else if (*bench) {
      RunConfig c = Resolve(bench_o);
      if (sizes_opt->count() > 0) c.bench_sizes = sizes;
      CmdBench(c, c.bench_sizes, std::cout, std::cerr);
    } else if (*gen) {
      const fs::path dir = synth_out;
      CmdGenSynth(synth, dir / "corpus.jsonl", dir / "labels.txt", std::cout);
      // A ready-to-run config next to the data.
      RunConfig c;
      c.corpus = (dir / "corpus.jsonl").string();
      c.labels = (dir / "labels.txt").string();
      c.topic = synth.topic;
      c.methods = DefaultMethods();
      c.out_dir = (dir / "out").string();
      c.seed = synth.seed;
      // Topic terms are rare at fold scale; the default threshold would
      // drop all of them.
      c.min_freq = 10;
      WriteJson(dir / "config.json", ToJson(c));
      std::cout << "config: " << (dir / "config.json").string() << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace qopt
