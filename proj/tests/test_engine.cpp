#include <doctest.h>

#include <cmath>

#include "gbd/collect.hpp"
#include "gbd/engine.hpp"
#include "gbd/io.hpp"
#include "gbd/ml.hpp"
#include "gbd/synthetic.hpp"
#include "oracles.hpp"

using namespace gbd;

namespace {

TrainedModel constant_classifier(bool always_useful) {
  TrainedModel model;
  model.kind = ModelKind::LogisticRegression;
  model.feature_mean.assign(kNumFeatures, 0.0);
  model.feature_std.assign(kNumFeatures, 1.0);
  model.weights.assign(kNumFeatures, 0.0);
  model.bias = always_useful ? 50.0 : -50.0;
  return model;
}

// Restricts a synthetic problem's Y to a single assignment via side
// constraints (y_j <= 0 or -y_j <= -1 per coordinate).
class PinnedProblem : public Problem {
 public:
  PinnedProblem(SyntheticInstance inst, BinaryVector only)
      : inner_(std::move(inst)), only_(std::move(only)) {
    const int n = inner_.n_binary();
    for (int j = 0; j < n; ++j) {
      LinearConstraint c;
      c.coeff.assign(n, 0.0);
      if (only_[j]) {
        c.coeff[j] = -1.0;
        c.rhs = -1.0;
      } else {
        c.coeff[j] = 1.0;
        c.rhs = 0.0;
      }
      constraints_.push_back(std::move(c));
    }
  }
  int n_continuous() const override { return inner_.n_continuous(); }
  int n_binary() const override { return inner_.n_binary(); }
  const std::vector<LinearConstraint>& binary_constraints() const override {
    return constraints_;
  }
  SubproblemResult solve_subproblem(const BinaryVector& y) const override {
    return inner_.solve_subproblem(y);
  }

 private:
  SyntheticProblem inner_;
  BinaryVector only_;
  std::vector<LinearConstraint> constraints_;
};

// Every subproblem is "infeasible" with a cut that excludes only its own
// generator; the lower bound therefore never leaves the sentinel.
class AlwaysInfeasibleProblem : public Problem {
 public:
  explicit AlwaysInfeasibleProblem(int n) : n_(n) {}
  int n_continuous() const override { return 0; }
  int n_binary() const override { return n_; }
  const std::vector<LinearConstraint>& binary_constraints() const override {
    return none_;
  }
  SubproblemResult solve_subproblem(const BinaryVector& y) const override {
    SubproblemResult r;
    r.status = PrimalStatus::Infeasible;
    r.objective = kInf;
    r.cut_coeff.assign(n_, 0.0);
    // value 0.5 at y, <= -0.5 anywhere at Hamming distance >= 1
    double ones = 0.0;
    for (int j = 0; j < n_; ++j) {
      r.cut_coeff[j] = y[j] ? 1.0 : -1.0;
      if (y[j]) ones += 1.0;
    }
    r.cut_const = 0.5 - ones;
    return r;
  }

 private:
  int n_;
  std::vector<LinearConstraint> none_;
};

}  // namespace

TEST_CASE("compute_gap handles the documented cases") {
  CHECK(compute_gap(10.0, 10.0) == 0.0);
  CHECK(compute_gap(-5.0, -5.02) == doctest::Approx(0.00398406).epsilon(1e-4));
  CHECK(compute_gap(-5.0, -5.02) < 0.005);
  CHECK(compute_gap(3.0, -kInf) == kInf);
  CHECK(compute_gap(3.0, 0.0) == kInf);
  CHECK(compute_gap(kInf, -2.0) == kInf);
}

TEST_CASE("single feasible assignment converges within two iterations") {
  const SyntheticInstance inst = generate_synthetic(2, 3, 0.0, 5);
  const BinaryVector only{1, 0, 1};
  PinnedProblem problem(inst, only);
  const double expected = solve_primal_synthetic(inst, only).objective;

  RunConfig config;
  config.tolerance = 1e-9;
  const RunResult run = run_single_cut(problem, config);
  CHECK(run.status == RunStatus::Converged);
  CHECK(run.trace.iterations <= 2);
  CHECK(run.objective == doctest::Approx(expected).epsilon(1e-10));
  CHECK(run.trace.ubd.back() ==
        doctest::Approx(run.trace.lbd.back()).epsilon(1e-9));
  CHECK(run.best_y == only);
}

TEST_CASE("multi-cut with a pool of one replays single-cut exactly") {
  const SyntheticInstance inst = generate_synthetic(3, 6, 0.15, 21);
  SyntheticProblem problem(inst);
  RunConfig config;
  config.mode = RunMode::MultiCut;
  config.pool_size = 1;
  const RunResult multi = run_multi_cut(problem, config);
  config.mode = RunMode::SingleCut;
  const RunResult single = run_single_cut(problem, config);
  CHECK(cutlog_to_csv(multi.log) == cutlog_to_csv(single.log));
  CHECK(multi.trace.ubd == single.trace.ubd);
  CHECK(multi.trace.lbd == single.trace.lbd);
}

TEST_CASE("bounds are monotone and ordered in every mode") {
  const SyntheticInstance inst = generate_synthetic(3, 7, 0.2, 31);
  SyntheticProblem problem(inst);
  const TrainedModel keep_all = constant_classifier(true);
  for (int mode = 0; mode < 3; ++mode) {
    RunConfig config;
    config.pool_size = mode == 0 ? 1 : 4;
    RunResult run;
    if (mode == 0) {
      run = run_single_cut(problem, config);
    } else if (mode == 1) {
      config.mode = RunMode::MultiCut;
      run = run_multi_cut(problem, config);
    } else {
      config.mode = RunMode::MlClassifier;
      config.model = &keep_all;
      run = run_ml_filtered(problem, config);
    }
    CHECK(run.status == RunStatus::Converged);
    for (std::size_t i = 1; i < run.trace.ubd.size(); ++i) {
      CHECK(run.trace.ubd[i] <= run.trace.ubd[i - 1]);
      CHECK(run.trace.lbd[i] >= run.trace.lbd[i - 1]);
    }
    for (std::size_t i = 0; i < run.trace.ubd.size(); ++i) {
      if (run.trace.lbd[i] > -kInf) {
        CHECK(run.trace.ubd[i] >=
              run.trace.lbd[i] - 1e-9 * std::fabs(run.trace.lbd[i]));
      }
    }
  }
}

TEST_CASE("pass-through filter replays multi-cut and all-useless replays single-cut") {
  const SyntheticInstance inst = generate_synthetic(2, 6, 0.0, 77);
  SyntheticProblem problem(inst);

  RunConfig multi_config;
  multi_config.mode = RunMode::MultiCut;
  multi_config.pool_size = 4;
  const RunResult multi = run_multi_cut(problem, multi_config);

  const TrainedModel keep_all = constant_classifier(true);
  RunConfig ml_config = multi_config;
  ml_config.mode = RunMode::MlClassifier;
  ml_config.model = &keep_all;
  const RunResult passthrough = run_ml_filtered(problem, ml_config);
  CHECK(cutlog_to_csv(passthrough.log) == cutlog_to_csv(multi.log));
  CHECK(passthrough.trace.lbd == multi.trace.lbd);
  CHECK(passthrough.filter.discarded_optimality == 0);

  const TrainedModel keep_none = constant_classifier(false);
  ml_config.model = &keep_none;
  const RunResult fallback = run_ml_filtered(problem, ml_config);

  RunConfig single_config;
  const RunResult single = run_single_cut(problem, single_config);
  // The fallback path keeps exactly the rank-1 cut each iteration, so the
  // master trajectory (and hence bounds and kept cuts) matches single-cut.
  CHECK(fallback.trace.lbd == single.trace.lbd);
  CHECK(fallback.trace.ubd == single.trace.ubd);
  CHECK(fallback.trace.cumulative_cuts == single.trace.cumulative_cuts);
  CHECK(fallback.filter.fallback_iterations == fallback.trace.iterations);
  std::vector<const Cut*> kept;
  for (const CutLogEntry& e : fallback.log.entries) {
    if (e.kept) kept.push_back(&e.cut);
  }
  REQUIRE(kept.size() == single.log.entries.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    CHECK(kept[i]->gen_y == single.log.entries[i].cut.gen_y);
    CHECK(kept[i]->const_term == single.log.entries[i].cut.const_term);
  }
}

TEST_CASE("runs are deterministic across worker counts") {
  const SyntheticInstance inst = generate_synthetic(3, 8, 0.2, 123);
  SyntheticProblem problem(inst);
  RunConfig config;
  config.mode = RunMode::MultiCut;
  config.pool_size = 6;
  config.workers = 1;
  const RunResult serial = run_multi_cut(problem, config);
  config.workers = 4;
  const RunResult parallel = run_multi_cut(problem, config);
  CHECK(cutlog_to_csv(serial.log) == cutlog_to_csv(parallel.log));
  CHECK(serial.trace.ubd == parallel.trace.ubd);
  CHECK(serial.trace.lbd == parallel.trace.lbd);
}

TEST_CASE("all four modes reach the brute-force optimum on the synthetic family") {
  for (std::uint64_t seed : {201u, 202u, 203u}) {
    const SyntheticInstance inst = generate_synthetic(3, 7, 0.25, seed);
    SyntheticProblem problem(inst);
    const OracleResult oracle = testing::brute_force_optimum(problem);
    REQUIRE(oracle.feasible);

    const TrainedModel keep_all = constant_classifier(true);
    RunConfig config;
    config.pool_size = 4;

    const RunResult single = run_single_cut(problem, config);
    config.mode = RunMode::MultiCut;
    const RunResult multi = run_multi_cut(problem, config);
    config.mode = RunMode::MlClassifier;
    config.model = &keep_all;
    const RunResult ml = run_ml_filtered(problem, config);

    for (const RunResult* run : {&single, &multi, &ml}) {
      CHECK(run->status == RunStatus::Converged);
      CHECK(std::fabs(run->objective - oracle.objective) <=
            0.005 * std::fabs(oracle.objective) + 1e-12);
    }
  }
}

TEST_CASE("master infeasibility surfaces as NoFeasibleDiscrete") {
  SyntheticInstance inst = generate_synthetic(2, 4, 0.0, 55);
  SyntheticRow impossible;
  impossible.x_coeff.assign(2, 0.0);
  impossible.y_coeff.assign(4, -1.0);
  impossible.constant = 4.5;  // needs sum >= 4.5 out of 4 variables
  inst.rows.push_back(impossible);
  SyntheticProblem problem(inst);
  RunConfig config;
  config.mode = RunMode::MultiCut;
  config.pool_size = 2;
  CHECK_THROWS_AS(run_multi_cut(problem, config), NoFeasibleDiscreteError);
}

TEST_CASE("a lower bound stuck at the sentinel raises Unbounded") {
  AlwaysInfeasibleProblem problem(4);
  RunConfig config;
  config.max_iterations = 3;
  CHECK_THROWS_AS(run_single_cut(problem, config), UnboundedError);
}

TEST_CASE("shadow labels match replayed increments on a multi-cut run") {
  const SyntheticInstance inst = generate_synthetic(3, 6, 0.1, 404);
  SyntheticProblem problem(inst);
  RunConfig config;
  config.mode = RunMode::MultiCut;
  config.pool_size = 4;
  const RunResult run = run_multi_cut(problem, config);
  const auto labels = shadow_label(problem, run.log);
  REQUIRE(labels.size() == run.log.entries.size());
  // First cut of every iteration is useful by definition.
  int iteration = 0;
  for (std::size_t i = 0; i < run.log.entries.size(); ++i) {
    if (run.log.entries[i].cut.gen_iteration != iteration) {
      iteration = run.log.entries[i].cut.gen_iteration;
      CHECK(labels[i] == 1);
    }
  }
  // A duplicate regeneration in the same iteration cannot move eta.
  for (std::size_t i = 1; i < run.log.entries.size(); ++i) {
    const CutLogEntry& e = run.log.entries[i];
    const CutLogEntry& prev = run.log.entries[i - 1];
    if (e.cut.gen_iteration == prev.cut.gen_iteration &&
        e.cut.repeat_count > 0 && e.cut.gen_order > 1 &&
        e.cut.gen_y == prev.cut.gen_y) {
      CHECK(labels[i] == 0);
    }
  }
}
