#pragma once

#include <cstdint>
#include <vector>

#include "gbd/master.hpp"
#include "gbd/problem.hpp"
#include "gbd/types.hpp"

namespace gbd {

struct TrainedModel;  // cut-ml; the engine only calls its predictor

enum class RunMode { SingleCut, MultiCut, MlClassifier, MlRegressor };

enum class RunStatus {
  Converged,       // relative gap <= tolerance
  IterationLimit,  // hit max_iterations
  Stalled,         // lower bound made no progress for 50 iterations
};

struct RunConfig {
  RunMode mode = RunMode::SingleCut;
  int pool_size = 1;            // S
  double tolerance = 0.005;     // relative UBD/LBD gap
  int max_iterations = 10000;   // M
  std::uint64_t seed = 0;       // used by randomized collection variants
  const TrainedModel* model = nullptr;  // required for the ML modes
  int workers = 1;              // concurrent subproblem solves per iteration
};

struct BoundsTrace {
  std::vector<double> ubd;  // per iteration, non-increasing
  std::vector<double> lbd;  // per iteration, non-decreasing; -inf until the
                            // first optimality cut reaches the master
  int iterations = 0;
  int cumulative_cuts = 0;  // S_c: cuts actually added to the master
  double master_seconds = 0.0;
  double primal_seconds = 0.0;
};

struct FilterStats {
  int kept_optimality = 0;
  int kept_feasibility = 0;
  int discarded_optimality = 0;
  int discarded_feasibility = 0;
  int fallback_iterations = 0;  // iterations where every cut was judged useless
};

struct RunResult {
  RunStatus status = RunStatus::Converged;
  double objective = kInf;  // final UBD
  BinaryVector best_y;
  std::vector<double> best_x;
  BoundsTrace trace;
  CutLog log;
  FilterStats filter;
};

// |(ubd - lbd) / lbd|; +infinity when lbd is the -infinity sentinel (at or
// below the eta floor) or exactly zero.
double compute_gap(double ubd, double lbd);

RunResult run_single_cut(const Problem& problem, const RunConfig& config);
RunResult run_multi_cut(const Problem& problem, const RunConfig& config);
RunResult run_ml_filtered(const Problem& problem, const RunConfig& config);

// Data-collection variant: a pool of pool_size solutions is requested each
// iteration, one is popped uniformly at random (seeded by config.seed mixed
// with the instance), and a single cut is added.
RunResult run_random_pop(const Problem& problem, const RunConfig& config);

// Replay of a finished run's master sequence. For every iteration the cuts
// are re-applied one at a time in pool order against the master state the
// run actually had (kept cuts only), recording eta after each addition.
struct IterationReplay {
  int iteration = 0;
  double eta_before = kEtaFloor;
  bool before_is_sentinel = true;
  std::vector<double> eta_after;           // one per generated cut
  std::vector<std::size_t> entry_indices;  // into CutLog::entries
};

std::vector<IterationReplay> replay_cut_increments(const Problem& problem,
                                                   const CutLog& log);

}  // namespace gbd
