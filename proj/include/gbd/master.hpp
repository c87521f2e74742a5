#pragma once

#include <vector>

#include "gbd/types.hpp"

namespace gbd {

// Relaxed master problem: minimize eta over binary y subject to the linear
// side-constraints of Y, the optimality cuts eta >= a.y + b and the
// feasibility cuts 0 >= a.y + b.
struct MasterModel {
  int n_binary = 0;
  std::vector<LinearConstraint> side_constraints;
  std::vector<Cut> optimality_cuts;
  std::vector<Cut> feasibility_cuts;
  double eta_floor = kEtaFloor;

  void add(const Cut& cut) {
    (cut.kind == CutKind::Optimality ? optimality_cuts : feasibility_cuts)
        .push_back(cut);
  }

  // eta*(y): max over optimality cuts, or the floor when none exist.
  // Canonical evaluation shared by the search, the enumeration path and the
  // tests, so all of them see bit-identical values.
  double eta_at(const BinaryVector& y) const {
    double eta = eta_floor;
    for (const Cut& c : optimality_cuts) {
      const double v = c.value_at(y);
      if (v > eta) eta = v;
    }
    return eta;
  }

  bool feasible_at(const BinaryVector& y) const {
    for (const LinearConstraint& c : side_constraints)
      if (c.lhs_at(y) > c.rhs + kFeasTol) return false;
    for (const Cut& c : feasibility_cuts)
      if (c.value_at(y) > kFeasTol) return false;
    return true;
  }
};

struct PoolSolution {
  BinaryVector y;
  double eta = 0.0;
  int rank = 1;  // 1-based, rank 1 is an optimal y
};

struct MasterSolution {
  double eta_star = kEtaFloor;
  std::vector<PoolSolution> pool;
  // True when the model had no optimality cuts, i.e. eta_star is the floor
  // sentinel and the lower bound is still -infinity.
  bool floor_only = false;
};

// Exact solve by depth-first branch and bound with an incumbent heap of the
// pool_size best distinct solutions, ordered by (eta, lexicographic y).
// Throws MasterInfeasibleError when no y satisfies the side-constraints and
// feasibility cuts.
MasterSolution branch_and_bound(const MasterModel& model, int pool_size);

// The master entry point used by the engine; delegates to branch_and_bound.
MasterSolution solve_master(const MasterModel& model, int pool_size);

}  // namespace gbd
