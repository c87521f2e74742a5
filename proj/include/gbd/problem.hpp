#pragma once

#include <vector>

#include "gbd/types.hpp"

namespace gbd {

enum class PrimalStatus { Feasible, Infeasible };

// What the engine needs back from one subproblem solve: the objective (an
// upper bound when feasible) and the affine-in-y cut derived from the duals.
// Problem implementations keep their richer per-problem result types and
// adapt them to this view.
struct SubproblemResult {
  PrimalStatus status = PrimalStatus::Feasible;
  double objective = 0.0;            // internal minimization value
  std::vector<double> cut_coeff;     // affine cut, length n_binary
  double cut_const = 0.0;
  std::vector<double> x;             // continuous solution, for reporting
};

// A convex, linearly separable mixed-integer problem seen by the engine:
// binary structure Y as linear side-constraints plus a subproblem solver
// that returns either an optimality or a feasibility cut for a given y.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual int n_continuous() const = 0;
  virtual int n_binary() const = 0;
  virtual const std::vector<LinearConstraint>& binary_constraints() const = 0;

  // Solves the primal with y fixed; on infeasibility falls through to the
  // feasibility-check problem. Must be safe to call concurrently.
  virtual SubproblemResult solve_subproblem(const BinaryVector& y) const = 0;
};

struct OracleResult {
  bool feasible = false;
  double objective = kInf;
  BinaryVector y;
  long long evaluated = 0;
};

// Ground truth by exhaustive enumeration of Y: every assignment satisfying
// the side-constraints is solved and the best feasible one returned.
// Throws TooLargeError when more than max_assignments members of Y exist.
OracleResult enumerate_oracle(const Problem& problem,
                              long long max_assignments = 500000);

}  // namespace gbd
