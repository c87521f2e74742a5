#include <doctest.h>

#include <cmath>

#include "gbd/engine.hpp"
#include "gbd/rng.hpp"
#include "gbd/synthetic.hpp"
#include "oracles.hpp"

using namespace gbd;

namespace {

// Hand-built two-variable instance: min x1^2 + x2^2 + d.y - 4 subject to
// one coupling row 0.3 + 0.5 y1 + 0.7 y2 <= x1 + x2. The box-QP splits the
// requirement evenly, so the optimum is s(y)^2/2 + d.y - 4.
SyntheticInstance hand_instance() {
  SyntheticInstance inst;
  inst.n1 = 2;
  inst.n2 = 2;
  inst.quad_weight = {1.0, 1.0};
  inst.lin_y = {-0.9, 0.4};
  inst.objective_offset = -4.0;
  inst.x_max = 1.0;
  SyntheticRow row;
  row.x_coeff = {-1.0, -1.0};
  row.y_coeff = {0.5, 0.7};
  row.constant = 0.3;
  inst.rows.push_back(row);
  inst.id = "hand";
  return inst;
}

double hand_objective(const BinaryVector& y) {
  const double s = 0.3 + 0.5 * y[0] + 0.7 * y[1];
  double obj = s * s / 2.0 - 4.0;
  if (y[0]) obj += -0.9;
  if (y[1]) obj += 0.4;
  return obj;
}

// y = (1,1,1) is the only infeasible assignment: the pure-y row demands
// y1 + y2 + y3 <= 2.5.
SyntheticInstance triple_instance() {
  SyntheticInstance inst;
  inst.n1 = 1;
  inst.n2 = 3;
  inst.quad_weight = {1.0};
  inst.lin_y = {-0.7, -0.5, -0.3};
  inst.objective_offset = -3.0;
  inst.x_max = 1.0;
  SyntheticRow coupling;
  coupling.x_coeff = {-1.0};
  coupling.y_coeff = {0.2, 0.2, 0.2};
  coupling.constant = 0.2;
  inst.rows.push_back(coupling);
  SyntheticRow cap;
  cap.x_coeff = {0.0};
  cap.y_coeff = {1.0, 1.0, 1.0};
  cap.constant = -2.5;
  inst.rows.push_back(cap);
  inst.id = "triple";
  return inst;
}

}  // namespace

TEST_CASE("closed-form oracle agrees with the primal solver on the hand instance") {
  const SyntheticInstance inst = hand_instance();
  for (int mask = 0; mask < 4; ++mask) {
    const BinaryVector y{static_cast<std::uint8_t>(mask & 1),
                         static_cast<std::uint8_t>((mask >> 1) & 1)};
    const SyntheticPrimalResult r = solve_primal_synthetic(inst, y);
    REQUIRE(r.status == PrimalStatus::Feasible);
    CHECK(r.objective == doctest::Approx(hand_objective(y)).epsilon(1e-10));
    // Tightness of the cut at its generator.
    double at = r.cut_const;
    for (int j = 0; j < 2; ++j)
      if (y[j]) at += r.cut_coeff[j];
    CHECK(at == doctest::Approx(r.objective).epsilon(1e-12));
  }
}

TEST_CASE("GBD on the hand instance reaches the enumerated optimum") {
  SyntheticProblem problem(hand_instance());
  double best = kInf;
  for (int mask = 0; mask < 4; ++mask) {
    best = std::min(best, hand_objective({static_cast<std::uint8_t>(mask & 1),
                                          static_cast<std::uint8_t>((mask >> 1) & 1)}));
  }
  RunConfig config;
  config.tolerance = 1e-9;
  const RunResult run = run_single_cut(problem, config);
  CHECK(run.status == RunStatus::Converged);
  CHECK(run.objective == doctest::Approx(best).epsilon(1e-8));
}

TEST_CASE("interior case has zero duals and zero x") {
  SyntheticInstance inst = hand_instance();
  inst.rows[0].constant = -2.0;  // slack for every y
  const SyntheticPrimalResult r = solve_primal_synthetic(inst, {0, 0});
  CHECK(r.x[0] == 0.0);
  CHECK(r.x[1] == 0.0);
  CHECK(r.mu[0] == 0.0);
}

TEST_CASE("active coupling row has a positive dual and complementary slackness") {
  const SyntheticInstance inst = hand_instance();
  const SyntheticPrimalResult r = solve_primal_synthetic(inst, {1, 1});
  REQUIRE(r.status == PrimalStatus::Feasible);
  CHECK(r.mu[0] > 0.0);
  const double slack = 0.3 + 0.5 + 0.7 - r.x[0] - r.x[1];
  CHECK(std::fabs(slack) < 1e-10);  // row tight
  // Stationarity: 2 c_i x_i = mu w_i on interior coordinates.
  for (int i = 0; i < 2; ++i) {
    if (r.x[i] > 0.0 && r.x[i] < inst.x_max) {
      CHECK(2.0 * inst.quad_weight[i] * r.x[i] ==
            doctest::Approx(r.mu[0]).epsilon(1e-9));
    }
  }
}

TEST_CASE("random instances match the dense grid oracle") {
  for (std::uint64_t seed : {11u, 12u, 13u, 14u, 15u}) {
    const SyntheticInstance inst = generate_synthetic(3, 4, 0.2, seed);
    Rng rng(seed);
    for (int trial = 0; trial < 6; ++trial) {
      BinaryVector y(4);
      for (auto& b : y) b = static_cast<std::uint8_t>(rng.next_below(2));
      const SyntheticPrimalResult r = solve_primal_synthetic(inst, y);
      const double grid = testing::synthetic_grid_objective(inst, y, 24);
      if (r.status == PrimalStatus::Feasible) {
        REQUIRE(grid < kInf);
        CHECK(r.objective ==
              doctest::Approx(grid).epsilon(1e-4).scale(std::fabs(grid)));
        CHECK(r.objective <= grid + 1e-9);  // solver at least as good
      } else {
        CHECK(grid == kInf);
      }
    }
  }
}

TEST_CASE("zero infeasible fraction yields runs without feasibility cuts") {
  const SyntheticInstance inst = generate_synthetic(2, 5, 0.0, 99);
  SyntheticProblem problem(inst);
  RunConfig config;
  config.mode = RunMode::MultiCut;
  config.pool_size = 4;
  const RunResult run = run_multi_cut(problem, config);
  CHECK(run.status == RunStatus::Converged);
  for (const CutLogEntry& e : run.log.entries) {
    CHECK(e.cut.kind == CutKind::Optimality);
  }
}

TEST_CASE("the only infeasible assignment is cut once and never reappears") {
  SyntheticProblem problem(triple_instance());
  const BinaryVector bad{1, 1, 1};

  // Ground truth: (1,1,1) infeasible, everything else feasible.
  CHECK(solve_primal_synthetic(problem.instance(), bad).status ==
        PrimalStatus::Infeasible);
  CHECK(solve_primal_synthetic(problem.instance(), {1, 1, 0}).status ==
        PrimalStatus::Feasible);

  RunConfig config;
  config.mode = RunMode::MultiCut;
  config.pool_size = 8;  // wide pool so (1,1,1) is visited early
  config.tolerance = 1e-9;
  const RunResult run = run_multi_cut(problem, config);
  CHECK(run.status == RunStatus::Converged);

  int feas_cuts = 0;
  std::size_t cut_at = 0;
  for (std::size_t i = 0; i < run.log.entries.size(); ++i) {
    const CutLogEntry& e = run.log.entries[i];
    if (e.cut.kind == CutKind::Feasibility) {
      ++feas_cuts;
      cut_at = i;
      CHECK(e.cut.gen_y == bad);
      CHECK(e.cut.value_at(bad) > 0.0);  // generator strictly violated
    }
  }
  CHECK(feas_cuts == 1);
  // Exhaustive replay: (1,1,1) never generates again after its cut, and the
  // master state excludes it from that point on.
  MasterModel master;
  master.n_binary = 3;
  for (std::size_t i = 0; i < run.log.entries.size(); ++i) {
    const CutLogEntry& e = run.log.entries[i];
    if (i > cut_at) CHECK(e.cut.gen_y != bad);
    if (e.kept) master.add(e.cut);
    if (i >= cut_at) CHECK(!master.feasible_at(bad));
  }
  // The run still finds the true optimum among the 7 feasible assignments.
  const OracleResult oracle = testing::brute_force_optimum(problem);
  CHECK(run.objective == doctest::Approx(oracle.objective).epsilon(1e-8));
}

TEST_CASE("generated infeasible fraction is approximately as requested") {
  const SyntheticInstance inst = generate_synthetic(2, 6, 0.25, 4242);
  SyntheticProblem problem(inst);
  int infeasible = 0;
  for (int mask = 0; mask < 64; ++mask) {
    BinaryVector y(6);
    for (int j = 0; j < 6; ++j) y[j] = (mask >> j) & 1;
    if (solve_primal_synthetic(inst, y).status == PrimalStatus::Infeasible)
      ++infeasible;
  }
  const double fraction = infeasible / 64.0;
  CHECK(fraction > 0.05);
  CHECK(fraction < 0.5);
}
