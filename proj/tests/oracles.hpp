#pragma once

// Independent reference implementations used only by tests. They stay on
// the dumbest correct path (full enumeration, grid search, closed forms) so
// they cannot share a bug with the code under test.

#include <algorithm>
#include <cmath>
#include <vector>

#include "gbd/master.hpp"
#include "gbd/problem.hpp"
#include "gbd/synthetic.hpp"
#include "gbd/types.hpp"

namespace gbd::testing {

// All assignments of Y by direct 2^n enumeration (no pruning).
inline std::vector<BinaryVector> all_feasible_y(const MasterModel& model) {
  std::vector<BinaryVector> out;
  const int n = model.n_binary;
  for (long long mask = 0; mask < (1LL << n); ++mask) {
    BinaryVector y(n, 0);
    for (int j = 0; j < n; ++j) y[j] = (mask >> j) & 1;
    if (model.feasible_at(y)) out.push_back(y);
  }
  return out;
}

// Reference pool: evaluate eta*(y) everywhere, sort by (eta, lex y).
inline MasterSolution enumerate_master(const MasterModel& model, int pool_size) {
  std::vector<PoolSolution> all;
  for (BinaryVector& y : all_feasible_y(model)) {
    PoolSolution s;
    s.eta = model.eta_at(y);
    s.y = std::move(y);
    all.push_back(std::move(s));
  }
  if (all.empty()) throw MasterInfeasibleError("enumeration found no feasible y");
  std::sort(all.begin(), all.end(), [](const PoolSolution& a, const PoolSolution& b) {
    if (a.eta != b.eta) return a.eta < b.eta;
    return a.y < b.y;
  });
  MasterSolution out;
  out.floor_only = model.optimality_cuts.empty();
  if (static_cast<int>(all.size()) > pool_size) all.resize(pool_size);
  for (std::size_t i = 0; i < all.size(); ++i) all[i].rank = static_cast<int>(i) + 1;
  out.pool = std::move(all);
  out.eta_star = out.pool.front().eta;
  return out;
}

// Ground truth for a Problem by brute force over Y.
inline OracleResult brute_force_optimum(const Problem& problem) {
  MasterModel shell;
  shell.n_binary = problem.n_binary();
  shell.side_constraints = problem.binary_constraints();
  OracleResult best;
  for (const BinaryVector& y : all_feasible_y(shell)) {
    ++best.evaluated;
    const SubproblemResult r = problem.solve_subproblem(y);
    if (r.status != PrimalStatus::Feasible) continue;
    if (!best.feasible || r.objective < best.objective) {
      best.feasible = true;
      best.objective = r.objective;
      best.y = y;
    }
  }
  return best;
}

// Grid minimum of the synthetic primal at fixed y (n1 <= 3), refined over
// several rounds by shrinking the search box around the incumbent; the
// problem is convex so the refinement cannot trap.
inline double synthetic_grid_objective(const SyntheticInstance& inst,
                                       const BinaryVector& y, int steps,
                                       int rounds = 6) {
  const int n1 = inst.n1;
  std::vector<double> lo(n1, 0.0), hi(n1, inst.x_max);
  double best = kInf;
  std::vector<double> best_x(n1, inst.x_max);

  for (int round = 0; round < rounds; ++round) {
    std::vector<int> idx(n1, 0);
    bool found = false;
    std::vector<double> round_x(n1, 0.0);
    double round_best = kInf;
    while (true) {
      std::vector<double> x(n1);
      for (int i = 0; i < n1; ++i)
        x[i] = lo[i] + (hi[i] - lo[i]) * static_cast<double>(idx[i]) / steps;
      bool ok = true;
      for (const SyntheticRow& row : inst.rows) {
        double v = row.constant;
        for (int j = 0; j < inst.n2; ++j)
          if (y[j]) v += row.y_coeff[j];
        for (int i = 0; i < n1; ++i) v += row.x_coeff[i] * x[i];
        if (v > 1e-9) {
          ok = false;
          break;
        }
      }
      if (ok) {
        double obj = inst.objective_offset;
        for (int i = 0; i < n1; ++i) obj += inst.quad_weight[i] * x[i] * x[i];
        for (int j = 0; j < inst.n2; ++j)
          if (y[j]) obj += inst.lin_y[j];
        if (obj < round_best) {
          round_best = obj;
          round_x = x;
          found = true;
        }
      }
      int d = 0;
      while (d < n1 && ++idx[d] > steps) idx[d++] = 0;
      if (d == n1) break;
    }
    if (!found) break;  // infeasible y: the first round already saw x_max
    if (round_best < best) {
      best = round_best;
      best_x = round_x;
    }
    for (int i = 0; i < n1; ++i) {
      const double cell = (hi[i] - lo[i]) / steps;
      lo[i] = std::max(0.0, best_x[i] - 2.0 * cell);
      hi[i] = std::min(inst.x_max, best_x[i] + 2.0 * cell);
    }
  }
  return best;
}

}  // namespace gbd::testing
