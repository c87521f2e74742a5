#include "gbd/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "gbd/ml.hpp"
#include "gbd/rng.hpp"

namespace gbd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void parallel_for_n(int n, int workers, const std::function<void(int)>& body) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < n;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  const int count = std::min(workers, n);
  threads.reserve(count);
  for (int t = 0; t < count; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

enum class PopPolicy { All, RandomOne };

struct LoopOptions {
  PopPolicy pop = PopPolicy::All;
  bool filter = false;
};

constexpr int kStallWindow = 50;

RunResult run_loop(const Problem& problem, RunConfig config,
                   const LoopOptions& options) {
  const int n = problem.n_binary();
  MasterModel master;
  master.n_binary = n;
  master.side_constraints = problem.binary_constraints();

  RunResult out;
  Rng pop_rng(mix_seed(config.seed, 0x706f70));  // random-pop stream

  MasterSolution ms;
  auto solve_master_timed = [&](int pool_size) {
    const auto t0 = Clock::now();
    try {
      ms = solve_master(master, pool_size);
    } catch (const MasterInfeasibleError& e) {
      throw NoFeasibleDiscreteError(e.what());
    }
    out.trace.master_seconds += seconds_since(t0);
  };

  // Initial discrete solution: the best (here: lexicographically smallest
  // feasible) y of the cut-free master.
  solve_master_timed(1);
  bool pool_is_sentinel = ms.floor_only;
  std::vector<PoolSolution> pool = ms.pool;

  double ubd = kInf;
  double lbd = -kInf;
  std::map<BinaryVector, int> generations;  // cut dedup key: the generating y
  int stall = 0;
  out.status = RunStatus::IterationLimit;

  for (int i = 0; i < config.max_iterations;) {
    if (compute_gap(ubd, lbd) <= config.tolerance) {
      out.status = RunStatus::Converged;
      break;
    }
    ++i;

    std::vector<PoolSolution> popped;
    if (options.pop == PopPolicy::RandomOne) {
      popped.push_back(pool[pop_rng.next_below(pool.size())]);
    } else {
      popped = pool;  // best first; pool is already rank-ordered
    }

    const int m = static_cast<int>(popped.size());
    std::vector<SubproblemResult> sub(m);
    {
      const auto t0 = Clock::now();
      parallel_for_n(m, config.workers, [&](int s) {
        sub[s] = problem.solve_subproblem(popped[s].y);
      });
      out.trace.primal_seconds += seconds_since(t0);
    }

    // Cut construction follows pool rank order regardless of which worker
    // finished first.
    std::vector<CutLogEntry> entries;
    entries.reserve(m);
    for (int s = 0; s < m; ++s) {
      const SubproblemResult& r = sub[s];
      Cut cut;
      cut.kind = r.status == PrimalStatus::Feasible ? CutKind::Optimality
                                                    : CutKind::Feasibility;
      cut.coeff_y = r.cut_coeff;
      cut.const_term = r.cut_const;
      cut.gen_iteration = i;
      cut.gen_order = popped[s].rank;
      cut.gen_y = popped[s].y;
      cut.repeat_count = generations[popped[s].y]++;
      if (cut.kind == CutKind::Optimality) {
        cut.violation = pool_is_sentinel ? 0.0 : r.objective - popped[s].eta;
      } else {
        cut.violation = cut.value_at(cut.gen_y);
      }

      if (r.status == PrimalStatus::Feasible && r.objective < ubd) {
        ubd = r.objective;
        out.objective = r.objective;
        out.best_y = popped[s].y;
        out.best_x = r.x;
      }

      CutLogEntry entry;
      entry.cut = std::move(cut);
      entry.gen_eta = pool_is_sentinel ? kEtaFloor : popped[s].eta;
      entries.push_back(std::move(entry));
    }

    if (options.filter) {
      // Judge every cut; feasibility cuts are always kept so an excluded y
      // can never re-enter the pool.
      double prev_prediction = -1.0;
      int added = 0;
      for (CutLogEntry& entry : entries) {
        const FeatureVector f = FeatureVector::from_cut(entry.cut);
        const Usefulness u =
            predict_useful(*config.model, f, prev_prediction);
        if (!config.model->is_classifier()) {
          prev_prediction =
              std::clamp(config.model->predict_value(f), 0.0, 1.0);
        }
        entry.judged_useful = u == Usefulness::Useful;
        entry.kept =
            entry.judged_useful || entry.cut.kind == CutKind::Feasibility;
        if (entry.kept) ++added;
      }
      if (added == 0) {
        // Every cut judged useless: fall back to classical GBD and add the
        // cut generated by the optimal master solution.
        entries.front().kept = true;
        ++out.filter.fallback_iterations;
      }
      for (const CutLogEntry& entry : entries) {
        const bool opt = entry.cut.kind == CutKind::Optimality;
        if (entry.kept)
          ++(opt ? out.filter.kept_optimality : out.filter.kept_feasibility);
        else
          ++(opt ? out.filter.discarded_optimality
                 : out.filter.discarded_feasibility);
      }
    }

    for (CutLogEntry& entry : entries) {
      if (entry.kept) {
        master.add(entry.cut);
        ++out.trace.cumulative_cuts;
      }
      out.log.entries.push_back(std::move(entry));
    }

    solve_master_timed(config.pool_size);
    pool = ms.pool;
    pool_is_sentinel = ms.floor_only;
    const double new_lbd = ms.floor_only ? -kInf : ms.eta_star;

    const bool improved =
        (lbd == -kInf && new_lbd > -kInf) ||
        (new_lbd - lbd > 1e-10 * std::max(1.0, std::fabs(lbd)));
    stall = improved ? 0 : stall + 1;
    lbd = std::max(lbd, new_lbd);

    out.trace.ubd.push_back(ubd);
    out.trace.lbd.push_back(lbd);
    out.trace.iterations = i;

    if (stall >= kStallWindow) {
      out.status = RunStatus::Stalled;
      break;
    }
  }

  if (out.status == RunStatus::IterationLimit &&
      compute_gap(ubd, lbd) <= config.tolerance) {
    out.status = RunStatus::Converged;
  }
  if (out.status == RunStatus::IterationLimit && lbd == -kInf) {
    throw UnboundedError(
        "lower bound never left the floor sentinel within the iteration cap");
  }
  return out;
}

}  // namespace

double compute_gap(double ubd, double lbd) {
  if (lbd == 0.0 || lbd == -kInf || lbd <= kEtaFloor) return kInf;
  return std::fabs((ubd - lbd) / lbd);
}

RunResult run_single_cut(const Problem& problem, const RunConfig& config) {
  RunConfig c = config;
  c.mode = RunMode::SingleCut;
  c.pool_size = 1;
  return run_loop(problem, c, {PopPolicy::All, false});
}

RunResult run_multi_cut(const Problem& problem, const RunConfig& config) {
  RunConfig c = config;
  if (c.pool_size < 1) throw Error("pool size must be >= 1");
  return run_loop(problem, c, {PopPolicy::All, false});
}

RunResult run_ml_filtered(const Problem& problem, const RunConfig& config) {
  if (config.model == nullptr) throw Error("ml-filtered run requires a model");
  if (config.model->schema_version != kFeatureSchemaVersion) {
    throw ModelMismatchError("model feature schema version mismatch");
  }
  const bool want_classifier = config.mode != RunMode::MlRegressor;
  if (config.model->is_classifier() != want_classifier) {
    throw ModelMismatchError("model kind does not match run mode");
  }
  return run_loop(problem, config, {PopPolicy::All, true});
}

RunResult run_random_pop(const Problem& problem, const RunConfig& config) {
  return run_loop(problem, config, {PopPolicy::RandomOne, false});
}

std::vector<IterationReplay> replay_cut_increments(const Problem& problem,
                                                   const CutLog& log) {
  MasterModel master;
  master.n_binary = problem.n_binary();
  master.side_constraints = problem.binary_constraints();

  std::vector<IterationReplay> replays;
  std::size_t idx = 0;
  while (idx < log.entries.size()) {
    const int iteration = log.entries[idx].cut.gen_iteration;
    IterationReplay rep;
    rep.iteration = iteration;
    {
      const MasterSolution before = solve_master(master, 1);
      rep.before_is_sentinel = before.floor_only;
      rep.eta_before = before.floor_only ? master.eta_floor : before.eta_star;
    }
    MasterModel probe = master;
    std::size_t end = idx;
    while (end < log.entries.size() &&
           log.entries[end].cut.gen_iteration == iteration) {
      probe.add(log.entries[end].cut);
      const MasterSolution after = solve_master(probe, 1);
      rep.eta_after.push_back(after.floor_only ? probe.eta_floor
                                               : after.eta_star);
      rep.entry_indices.push_back(end);
      ++end;
    }
    // Advance the real state with the cuts the run actually kept.
    for (std::size_t j = idx; j < end; ++j) {
      if (log.entries[j].kept) master.add(log.entries[j].cut);
    }
    replays.push_back(std::move(rep));
    idx = end;
  }
  return replays;
}

}  // namespace gbd
