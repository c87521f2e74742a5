#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gbd/problem.hpp"
#include "gbd/types.hpp"

namespace gbd {

// One constraint row: constant + y_coeff.y + x_coeff.x <= 0. Negative
// x-coefficients let the continuous variables relieve the row; a row with a
// zero x-part is decided by y alone and is the designed source of infeasible
// assignments.
struct SyntheticRow {
  std::vector<double> x_coeff;
  std::vector<double> y_coeff;
  double constant = 0.0;
};

// Separable convex family: minimize sum_i c_i x_i^2 + d.y + offset over
// x in [0, x_max]^n1, y in {0,1}^n2, subject to the rows. Each x coordinate
// appears in at most one row, so every subproblem reduces to independent
// single-multiplier systems with exact duals.
struct SyntheticInstance {
  int n1 = 0;
  int n2 = 0;
  std::vector<double> quad_weight;  // c, strictly positive
  std::vector<double> lin_y;        // d
  double objective_offset = 0.0;    // keeps every optimum strictly negative
  double x_max = 1.0;
  std::vector<SyntheticRow> rows;
  std::uint64_t seed = 0;
  std::string id;
};

struct SyntheticPrimalResult {
  PrimalStatus status = PrimalStatus::Feasible;
  std::vector<double> x;
  double objective = 0.0;
  std::vector<double> mu;      // one multiplier per row (feasible case)
  std::vector<double> lambda;  // normalized row multipliers (infeasible case)
  double alpha = 0.0;          // minimal uniform violation (infeasible case)
  std::vector<double> cut_coeff;
  double cut_const = 0.0;
};

// Builds an instance in which approximately `infeasible_fraction` of the 2^n2
// assignments admit no feasible x, via one coverage row sum_{j in J} y_j >=
// threshold that x cannot relieve.
SyntheticInstance generate_synthetic(int n1, int n2, double infeasible_fraction,
                                     std::uint64_t seed);

SyntheticPrimalResult solve_primal_synthetic(const SyntheticInstance& inst,
                                             const BinaryVector& y);
SyntheticPrimalResult solve_feasibility_synthetic(const SyntheticInstance& inst,
                                                  const BinaryVector& y);

class SyntheticProblem : public Problem {
 public:
  explicit SyntheticProblem(SyntheticInstance inst);

  int n_continuous() const override { return inst_.n1; }
  int n_binary() const override { return inst_.n2; }
  const std::vector<LinearConstraint>& binary_constraints() const override {
    return side_constraints_;
  }
  SubproblemResult solve_subproblem(const BinaryVector& y) const override;

  const SyntheticInstance& instance() const { return inst_; }

 private:
  SyntheticInstance inst_;
  std::vector<LinearConstraint> side_constraints_;  // empty: Y is the hypercube
};

}  // namespace gbd
