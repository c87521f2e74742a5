#include "gbd/problem.hpp"

#include <string>

namespace gbd {

namespace {

// Depth-first walk of Y with prefix pruning on the side-constraints
// (coefficient sums of the free suffix can only add min(0, a)).
void enumerate_assignments(const std::vector<LinearConstraint>& constraints,
                           int n, BinaryVector& y, int depth,
                           std::vector<double>& fixed,
                           std::vector<double>& free_min,
                           std::vector<BinaryVector>& out, long long cap) {
  for (std::size_t c = 0; c < constraints.size(); ++c) {
    if (fixed[c] + free_min[c] > constraints[c].rhs + kFeasTol) return;
  }
  if (depth == n) {
    if (static_cast<long long>(out.size()) >= cap) {
      throw TooLargeError("assignment count exceeds the enumeration cap of " +
                          std::to_string(cap));
    }
    out.push_back(y);
    return;
  }
  for (std::uint8_t v : {std::uint8_t{0}, std::uint8_t{1}}) {
    y[depth] = v;
    for (std::size_t c = 0; c < constraints.size(); ++c) {
      const double a = constraints[c].coeff[depth];
      if (v) fixed[c] += a;
      free_min[c] -= std::min(0.0, a);
    }
    enumerate_assignments(constraints, n, y, depth + 1, fixed, free_min, out,
                          cap);
    for (std::size_t c = 0; c < constraints.size(); ++c) {
      const double a = constraints[c].coeff[depth];
      if (v) fixed[c] -= a;
      free_min[c] += std::min(0.0, a);
    }
  }
  y[depth] = 0;
}

}  // namespace

OracleResult enumerate_oracle(const Problem& problem,
                              long long max_assignments) {
  const auto& constraints = problem.binary_constraints();
  const int n = problem.n_binary();

  std::vector<BinaryVector> assignments;
  BinaryVector y(n, 0);
  std::vector<double> fixed(constraints.size(), 0.0);
  std::vector<double> free_min(constraints.size(), 0.0);
  for (std::size_t c = 0; c < constraints.size(); ++c) {
    for (int j = 0; j < n; ++j) free_min[c] += std::min(0.0, constraints[c].coeff[j]);
  }
  enumerate_assignments(constraints, n, y, 0, fixed, free_min, assignments,
                        max_assignments);

  OracleResult best;
  best.evaluated = static_cast<long long>(assignments.size());
  for (const BinaryVector& a : assignments) {
    const SubproblemResult r = problem.solve_subproblem(a);
    if (r.status != PrimalStatus::Feasible) continue;
    if (!best.feasible || r.objective < best.objective) {
      best.feasible = true;
      best.objective = r.objective;
      best.y = a;
    }
  }
  return best;
}

}  // namespace gbd
