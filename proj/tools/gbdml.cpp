// Command-line driver: instance generation, decomposition runs, cut data
// collection, model training/evaluation and the generalization benchmark.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "gbd/collect.hpp"
#include "gbd/d2d.hpp"
#include "gbd/engine.hpp"
#include "gbd/io.hpp"
#include "gbd/ml.hpp"
#include "gbd/report.hpp"
#include "gbd/rng.hpp"
#include "gbd/synthetic.hpp"

namespace fs = std::filesystem;
using namespace gbd;

namespace {

int env_workers() {
  const char* v = std::getenv("GBD_WORKERS");
  if (!v) return 1;
  const int n = std::atoi(v);
  return n > 0 ? n : 1;
}

struct LoadedInstance {
  std::string id;
  std::unique_ptr<Problem> problem;
};

std::vector<LoadedInstance> load_instances(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<LoadedInstance> out;
  for (const fs::path& f : files) {
    LoadedInstance li;
    li.id = f.stem().string();
    li.problem = problem_from_json(read_file(f.string()));
    out.push_back(std::move(li));
  }
  if (out.empty()) throw Error("no instance files under " + dir);
  return out;
}

template <typename F>
void for_each_parallel(std::size_t n, int workers, F&& body) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  std::exception_ptr error;
  std::mutex error_mutex;
  const int count = static_cast<int>(std::min<std::size_t>(workers, n));
  for (int t = 0; t < count; ++t) {
    threads.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

RunMode parse_mode(const std::string& mode) {
  if (mode == "single") return RunMode::SingleCut;
  if (mode == "multi") return RunMode::MultiCut;
  if (mode == "ml-class") return RunMode::MlClassifier;
  if (mode == "ml-reg") return RunMode::MlRegressor;
  throw Error("unknown mode: " + mode);
}

RunResult run_mode(const Problem& problem, RunMode mode, const RunConfig& base) {
  RunConfig config = base;
  config.mode = mode;
  switch (mode) {
    case RunMode::SingleCut:
      return run_single_cut(problem, config);
    case RunMode::MultiCut:
      return run_multi_cut(problem, config);
    default:
      return run_ml_filtered(problem, config);
  }
}

struct BatchOutcome {
  std::vector<RunRecord> records;
  std::vector<RunResult> runs;
  std::vector<std::string> failures;
};

BatchOutcome run_batch(const std::vector<LoadedInstance>& instances,
                       RunMode mode, const std::string& mode_name,
                       const RunConfig& base, int workers) {
  BatchOutcome out;
  out.records.resize(instances.size());
  out.runs.resize(instances.size());
  std::vector<char> failed(instances.size(), 0);
  std::vector<std::string> messages(instances.size());
  for_each_parallel(instances.size(), workers, [&](std::size_t i) {
    try {
      out.runs[i] = run_mode(*instances[i].problem, mode, base);
      out.records[i] = make_record(instances[i].id, mode_name,
                                   mode == RunMode::SingleCut ? 1 : base.pool_size,
                                   out.runs[i]);
    } catch (const std::exception& e) {
      failed[i] = 1;
      messages[i] = instances[i].id + ": " + e.what();
    }
  });
  // Compact out failures, preserving the deterministic instance order.
  BatchOutcome compact;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (failed[i]) {
      compact.failures.push_back(messages[i]);
    } else {
      compact.records.push_back(std::move(out.records[i]));
      compact.runs.push_back(std::move(out.runs[i]));
    }
  }
  return compact;
}

double total_seconds(const Aggregate& a) {
  return a.mean_master_seconds + a.mean_primal_seconds;
}

// Shared by eval and generalize: single-cut + multi-cut baselines, the ML
// mode under test, recognition rates against shadow labels.
std::vector<BenchReport> comparative_bench(
    const std::vector<LoadedInstance>& instances, const TrainedModel& model,
    RunMode ml_mode, const std::string& ml_name, const RunConfig& base,
    int workers, std::vector<std::string>* failures) {
  RunConfig config = base;
  const BatchOutcome single =
      run_batch(instances, RunMode::SingleCut, "single", config, workers);
  const BatchOutcome multi =
      run_batch(instances, RunMode::MultiCut, "multi", config, workers);
  config.model = &model;
  const BatchOutcome ml = run_batch(instances, ml_mode, ml_name, config, workers);

  RecognitionCounts recognition;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < instances.size(); ++i) index[instances[i].id] = i;
  for (std::size_t i = 0; i < ml.records.size(); ++i) {
    recognition +=
        recognition_vs_shadow(*instances[index[ml.records[i].instance_id]].problem,
                              ml.runs[i].log);
  }

  std::vector<BenchReport> reports(3);
  reports[0].mode = "single";
  reports[0].pool_size = 1;
  reports[0].stats = aggregate(single.records);
  reports[1].mode = "multi";
  reports[1].pool_size = base.pool_size;
  reports[1].stats = aggregate(multi.records);
  reports[2].mode = ml_name;
  reports[2].pool_size = base.pool_size;
  reports[2].stats = aggregate(ml.records);
  reports[2].useful_recognition = recognition.useful_rate();
  reports[2].useless_recognition = recognition.useless_rate();
  if (total_seconds(reports[2].stats) > 0.0) {
    reports[2].speedup_vs_multicut =
        total_seconds(reports[1].stats) / total_seconds(reports[2].stats);
  }
  if (reports[1].stats.mean_iterations > 0.0) {
    reports[2].normalized_iterations_vs_multicut =
        reports[2].stats.mean_iterations / reports[1].stats.mean_iterations;
  }
  if (reports[0].stats.mean_cuts > 0.0) {
    reports[2].normalized_cuts_vs_single =
        reports[2].stats.mean_cuts / reports[0].stats.mean_cuts;
  }
  if (failures) {
    for (const auto& batch : {&single, &multi, &ml}) {
      failures->insert(failures->end(), batch->failures.begin(),
                       batch->failures.end());
    }
  }
  return reports;
}

std::string zero_pad(int value, int width) {
  std::string s = std::to_string(value);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benders decomposition toolkit with learned cut filtering"};
  app.require_subcommand(1);
  const int workers = env_workers();

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate instance files");
  std::string gen_kind = "d2d", gen_out, gen_objective = "maxmin";
  int gen_K = 5, gen_L = 3, gen_count = 50, gen_n1 = 3, gen_n2 = 8;
  std::uint64_t gen_seed = 1;
  double gen_infeasible = 0.25;
  D2DParams params;
  gen->add_option("--kind", gen_kind, "d2d | synthetic");
  gen->add_option("--K", gen_K, "cellular user count");
  gen->add_option("--L", gen_L, "D2D pair count");
  gen->add_option("--count", gen_count, "number of instances");
  gen->add_option("--seed", gen_seed, "base seed");
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--objective", gen_objective, "maxmin | sumrate | weighted");
  gen->add_option("--radius", params.cell_radius, "cell radius (m)");
  gen->add_option("--pair-dist", params.pairing_distance, "D2D pairing distance (m)");
  gen->add_option("--pcmax-dbm", params.p_c_max_dbm, "CU power cap (dBm)");
  gen->add_option("--pdmax-dbm", params.p_d_max_dbm, "D2D power cap (dBm)");
  gen->add_option("--rcmin", params.r_c_min, "CU rate floor (bit/s/Hz)");
  gen->add_option("--n1", gen_n1, "synthetic: continuous dimension");
  gen->add_option("--n2", gen_n2, "synthetic: binary dimension");
  gen->add_option("--infeasible-fraction", gen_infeasible,
                  "synthetic: target infeasible share of assignments");

  // ---- solve --------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "run a decomposition mode");
  std::string solve_dir, solve_mode = "multi", solve_model, solve_out;
  bool solve_trace = false, solve_logs = false, solve_no_timing = false;
  RunConfig solve_config;
  solve_config.pool_size = 8;
  solve->add_option("--instances", solve_dir, "instance directory")->required();
  solve->add_option("--mode", solve_mode, "single | multi | ml-class | ml-reg");
  solve->add_option("--S", solve_config.pool_size, "solution pool size");
  solve->add_option("--tol", solve_config.tolerance, "relative gap tolerance");
  solve->add_option("--max-iters", solve_config.max_iterations, "iteration cap");
  solve->add_option("--model", solve_model, "model JSON (ML modes)");
  solve->add_option("--out", solve_out, "output directory")->required();
  solve->add_flag("--trace", solve_trace, "write per-run convergence CSVs");
  solve->add_flag("--logs", solve_logs, "write per-run cut logs");
  solve->add_flag("--no-timing", solve_no_timing,
                  "zero wall-clock columns for byte-stable reports");

  // ---- oracle -------------------------------------------------------------
  auto* oracle_cmd = app.add_subcommand("oracle", "enumeration ground truth");
  std::string oracle_dir, oracle_out;
  long long oracle_cap = 500000;
  oracle_cmd->add_option("--instances", oracle_dir, "instance directory")->required();
  oracle_cmd->add_option("--out", oracle_out, "output CSV")->required();
  oracle_cmd->add_option("--cap", oracle_cap, "max assignments to enumerate");

  // ---- collect ------------------------------------------------------------
  auto* collect = app.add_subcommand("collect", "collect labeled cut data");
  std::string collect_dir, collect_kind = "classifier", collect_out;
  CollectOptions collect_options;
  collect->add_option("--instances", collect_dir, "instance directory")->required();
  collect->add_option("--kind", collect_kind, "classifier | regressor");
  collect->add_option("--S", collect_options.pool_size, "solution pool size");
  collect->add_option("--theta", collect_options.theta, "label ratio threshold");
  collect->add_option("--tol", collect_options.tolerance, "relative gap tolerance");
  collect->add_option("--max-iters", collect_options.max_iterations, "iteration cap");
  collect->add_option("--seed", collect_options.seed, "collection seed");
  collect->add_option("--out", collect_out, "output CSV")->required();

  // ---- train --------------------------------------------------------------
  auto* train = app.add_subcommand("train", "fit a cut model");
  std::string train_data, train_kind = "logreg", train_out, train_roc;
  double train_ratio = 1.0, train_holdout = 0.0;
  std::uint64_t train_seed = 1;
  ClassifierOptions cls_options;
  RegressorOptions reg_options;
  bool no_undersample = false;
  train->add_option("--data", train_data, "dataset CSV")->required();
  train->add_option("--kind", train_kind, "logreg | svm | extratrees | linear");
  train->add_option("--out", train_out, "model JSON")->required();
  train->add_option("--roc", train_roc, "ROC curve CSV (classifiers)");
  train->add_option("--undersample-ratio", train_ratio,
                    "majority:minority ratio after undersampling");
  train->add_flag("--no-undersample", no_undersample, "skip undersampling");
  train->add_option("--weight-useful", cls_options.class_weight_useful,
                    "class weight of useful cuts");
  train->add_option("--weight-useless", cls_options.class_weight_useless,
                    "class weight of useless cuts");
  train->add_option("--holdout", train_holdout,
                    "held-out fraction for the printed metric");
  train->add_option("--trees", reg_options.n_trees, "extra-trees ensemble size");
  train->add_option("--min-leaf", reg_options.min_leaf, "extra-trees leaf size");
  train->add_option("--seed", train_seed, "training seed");

  // ---- eval ---------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "filtered runs vs shadow labels");
  std::string eval_dir, eval_model, eval_mode = "ml-class", eval_out;
  RunConfig eval_config;
  eval_config.pool_size = 8;
  eval->add_option("--instances", eval_dir, "instance directory")->required();
  eval->add_option("--model", eval_model, "model JSON")->required();
  eval->add_option("--mode", eval_mode, "ml-class | ml-reg");
  eval->add_option("--S", eval_config.pool_size, "solution pool size");
  eval->add_option("--tol", eval_config.tolerance, "relative gap tolerance");
  eval->add_option("--max-iters", eval_config.max_iterations, "iteration cap");
  eval->add_option("--out", eval_out, "output directory")->required();

  // ---- generalize ---------------------------------------------------------
  auto* gener = app.add_subcommand(
      "generalize", "evaluate one model across sizes, parameters, objectives");
  std::string gener_model, gener_out;
  std::uint64_t gener_seed = 1;
  int gener_count = 20;
  RunConfig gener_config;
  gener_config.pool_size = 8;
  gener->add_option("--model", gener_model, "model JSON")->required();
  gener->add_option("--out", gener_out, "output directory")->required();
  gener->add_option("--seed", gener_seed, "instance seed base");
  gener->add_option("--count", gener_count, "instances per scenario");
  gener->add_option("--S", gener_config.pool_size, "solution pool size");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      fs::create_directories(gen_out);
      ObjectiveKind objective = ObjectiveKind::MaxMin;
      if (gen_objective == "sumrate") objective = ObjectiveKind::SumRate;
      else if (gen_objective == "weighted") objective = ObjectiveKind::WeightedSumRate;
      else if (gen_objective != "maxmin") throw Error("unknown objective " + gen_objective);
      for (int i = 0; i < gen_count; ++i) {
        const std::uint64_t seed = mix_seed(gen_seed, i);
        std::string id, text;
        if (gen_kind == "d2d") {
          D2DInstance inst = generate_instance(gen_K, gen_L, params, objective, seed);
          id = "d2d-K" + std::to_string(gen_K) + "L" + std::to_string(gen_L) +
               "-" + zero_pad(i, 3);
          inst.id = id;
          text = d2d_to_json(inst);
        } else if (gen_kind == "synthetic") {
          SyntheticInstance inst =
              generate_synthetic(gen_n1, gen_n2, gen_infeasible, seed);
          id = "syn-n" + std::to_string(gen_n2) + "-" + zero_pad(i, 3);
          inst.id = id;
          text = synthetic_to_json(inst);
        } else {
          throw Error("unknown kind " + gen_kind);
        }
        write_file((fs::path(gen_out) / (id + ".json")).string(), text);
      }
      std::cout << "wrote " << gen_count << " " << gen_kind
                << " instances to " << gen_out << "\n";
    }

    if (*solve) {
      fs::create_directories(solve_out);
      const auto instances = load_instances(solve_dir);
      TrainedModel model;
      const RunMode mode = parse_mode(solve_mode);
      if (mode == RunMode::MlClassifier || mode == RunMode::MlRegressor) {
        if (solve_model.empty()) throw Error("--model is required for ML modes");
        model = model_from_json(read_file(solve_model));
        solve_config.model = &model;
      }
      const BatchOutcome batch =
          run_batch(instances, mode, solve_mode, solve_config, workers);
      write_file((fs::path(solve_out) / "runs.csv").string(),
                 records_to_csv(batch.records, !solve_no_timing));
      BenchReport report;
      report.mode = solve_mode;
      report.pool_size = mode == RunMode::SingleCut ? 1 : solve_config.pool_size;
      report.stats = aggregate(batch.records);
      write_file((fs::path(solve_out) / "summary.txt").string(),
                 bench_reports_to_text({report}));
      if (solve_trace || solve_logs) {
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < batch.records.size(); ++i)
          index[batch.records[i].instance_id] = i;
        for (const auto& [id, i] : index) {
          if (solve_trace)
            write_file((fs::path(solve_out) / (id + ".trace.csv")).string(),
                       trace_to_csv(batch.runs[i].trace));
          if (solve_logs)
            write_file((fs::path(solve_out) / (id + ".cuts.csv")).string(),
                       cutlog_to_csv(batch.runs[i].log));
        }
      }
      for (const std::string& f : batch.failures)
        std::cerr << "FAILED " << f << "\n";
      std::cout << bench_reports_to_text({report});
      if (!batch.failures.empty()) return 2;
    }

    if (*oracle_cmd) {
      const auto instances = load_instances(oracle_dir);
      std::string csv = "instance,feasible,objective,y,evaluated\n";
      std::vector<std::string> rows(instances.size());
      for_each_parallel(instances.size(), workers, [&](std::size_t i) {
        const OracleResult r = enumerate_oracle(*instances[i].problem, oracle_cap);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", r.objective);
        rows[i] = instances[i].id + "," + (r.feasible ? "1" : "0") + "," + buf +
                  "," + binary_to_string(r.y) + "," + std::to_string(r.evaluated);
      });
      for (const std::string& row : rows) csv += row + "\n";
      write_file(oracle_out, csv);
      std::cout << "oracle results for " << instances.size()
                << " instances -> " << oracle_out << "\n";
    }

    if (*collect) {
      const auto instances = load_instances(collect_dir);
      std::vector<const Problem*> problems;
      std::vector<std::string> ids;
      for (const auto& li : instances) {
        problems.push_back(li.problem.get());
        ids.push_back(li.id);
      }
      collect_options.workers = workers;
      const CutDataset dataset =
          collect_kind == "classifier"
              ? collect_classifier_data(problems, ids, collect_options)
              : collect_regressor_data(problems, ids, collect_options);
      write_file(collect_out, dataset_to_csv(dataset));
      std::cout << "collected " << dataset.records.size() << " cut records -> "
                << collect_out << "\n";
    }

    if (*train) {
      CutDataset dataset = dataset_from_csv(read_file(train_data));
      // Deterministic split: every 1/holdout-th record is held out.
      CutDataset train_set, holdout_set;
      train_set.kind = holdout_set.kind = dataset.kind;
      const int stride =
          train_holdout > 0.0 ? std::max(2, static_cast<int>(1.0 / train_holdout))
                              : 0;
      for (std::size_t i = 0; i < dataset.records.size(); ++i) {
        if (stride > 0 && i % stride == 0)
          holdout_set.records.push_back(dataset.records[i]);
        else
          train_set.records.push_back(dataset.records[i]);
      }

      TrainedModel model;
      reg_options.seed = train_seed;
      if (train_kind == "logreg" || train_kind == "svm") {
        CutDataset sampled = train_set;
        if (!no_undersample) sampled = undersample(train_set, train_ratio, train_seed);
        model = train_classifier(sampled,
                                 train_kind == "logreg"
                                     ? ModelKind::LogisticRegression
                                     : ModelKind::LinearSVM,
                                 cls_options);
        model.training_seed = train_seed;
        const CutDataset& metric_set =
            holdout_set.records.empty() ? train_set : holdout_set;
        std::vector<double> scores;
        std::vector<int> labels;
        for (const CutRecord& r : metric_set.records) {
          scores.push_back(model.raw_score(r.features));
          labels.push_back(r.label > 0.5 ? 1 : 0);
        }
        const double auc = roc_auc(scores, labels);
        std::cout << "ROC AUC (" << (holdout_set.records.empty() ? "train" : "holdout")
                  << "): " << auc << "\n";
        if (!train_roc.empty()) {
          std::string csv = "fpr,tpr\n";
          for (const auto& [fpr, tpr] : roc_curve(scores, labels)) {
            csv += std::to_string(fpr) + "," + std::to_string(tpr) + "\n";
          }
          write_file(train_roc, csv);
        }
      } else if (train_kind == "extratrees" || train_kind == "linear") {
        model = train_regressor(train_set,
                                train_kind == "extratrees"
                                    ? ModelKind::ExtraTrees
                                    : ModelKind::LinearRegression,
                                reg_options);
        const CutDataset& metric_set =
            holdout_set.records.empty() ? train_set : holdout_set;
        std::vector<double> predicted, actual;
        for (const CutRecord& r : metric_set.records) {
          predicted.push_back(model.predict_value(r.features));
          actual.push_back(r.label);
        }
        const R2Result r2 = r_squared(predicted, actual);
        std::cout << "R^2 (" << (holdout_set.records.empty() ? "train" : "holdout")
                  << "): " << r2.r2 << (r2.perfect_fit ? " (degenerate target)" : "")
                  << "\n";
      } else {
        throw Error("unknown model kind " + train_kind);
      }
      if (!model.converged)
        std::cout << "warning: gradient descent hit the epoch cap\n";
      write_file(train_out, model_to_json(model));
      std::cout << "model -> " << train_out << "\n";
    }

    if (*eval) {
      fs::create_directories(eval_out);
      const auto instances = load_instances(eval_dir);
      const TrainedModel model = model_from_json(read_file(eval_model));
      const RunMode mode = parse_mode(eval_mode);
      if (mode != RunMode::MlClassifier && mode != RunMode::MlRegressor)
        throw Error("eval expects an ML mode");
      eval_config.mode = mode;
      std::vector<std::string> failures;
      const auto reports = comparative_bench(instances, model, mode, eval_mode,
                                             eval_config, workers, &failures);
      write_file((fs::path(eval_out) / "eval.csv").string(),
                 bench_reports_to_csv(reports));
      write_file((fs::path(eval_out) / "eval.txt").string(),
                 bench_reports_to_text(reports));
      for (const std::string& f : failures) std::cerr << "FAILED " << f << "\n";
      std::cout << bench_reports_to_text(reports);
      if (!failures.empty()) return 2;
    }

    if (*gener) {
      fs::create_directories(gener_out);
      const TrainedModel model = model_from_json(read_file(gener_model));
      struct Scenario {
        std::string name;
        int K, L;
        D2DParams params;
        ObjectiveKind objective;
      };
      std::vector<Scenario> scenarios;
      const D2DParams base_params;
      scenarios.push_back({"base-K5L3", 5, 3, base_params, ObjectiveKind::MaxMin});
      scenarios.push_back({"size-K4L2", 4, 2, base_params, ObjectiveKind::MaxMin});
      scenarios.push_back({"size-K6L3", 6, 3, base_params, ObjectiveKind::MaxMin});
      scenarios.push_back({"size-K6L4", 6, 4, base_params, ObjectiveKind::MaxMin});
      {
        D2DParams p = base_params;
        p.cell_radius = 750.0;
        scenarios.push_back({"radius-750", 5, 3, p, ObjectiveKind::MaxMin});
        p = base_params;
        p.p_c_max_dbm = 22.0;
        scenarios.push_back({"pcmax-22dbm", 5, 3, p, ObjectiveKind::MaxMin});
        p = base_params;
        p.r_c_min = 1.5;
        scenarios.push_back({"rcmin-1.5", 5, 3, p, ObjectiveKind::MaxMin});
      }
      scenarios.push_back({"obj-sumrate", 5, 3, base_params, ObjectiveKind::SumRate});
      scenarios.push_back({"obj-weighted", 5, 3, base_params,
                           ObjectiveKind::WeightedSumRate});

      std::string all_text;
      std::vector<BenchReport> all_reports;
      for (const Scenario& sc : scenarios) {
        std::vector<LoadedInstance> instances;
        for (int i = 0; i < gener_count; ++i) {
          LoadedInstance li;
          li.id = sc.name + "-" + zero_pad(i, 3);
          D2DInstance inst = generate_instance(
              sc.K, sc.L, sc.params, sc.objective,
              mix_seed(gener_seed, std::hash<std::string>{}(li.id)));
          inst.id = li.id;
          li.problem = std::make_unique<D2DProblem>(std::move(inst));
          instances.push_back(std::move(li));
        }
        const auto reports = comparative_bench(
            instances, model, RunMode::MlClassifier, "ml-class", gener_config,
            workers, nullptr);
        all_text += "== " + sc.name + " ==\n" + bench_reports_to_text(reports) + "\n";
        BenchReport named = reports[2];
        named.mode = sc.name;
        all_reports.push_back(named);
      }
      write_file((fs::path(gener_out) / "generalize.csv").string(),
                 bench_reports_to_csv(all_reports));
      write_file((fs::path(gener_out) / "generalize.txt").string(), all_text);
      std::cout << all_text;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
