#include "gbd/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gbd/rng.hpp"

namespace gbd {

namespace {

double row_y_part(const SyntheticRow& row, const BinaryVector& y) {
  double v = row.constant;
  for (std::size_t j = 0; j < row.y_coeff.size(); ++j)
    if (y[j]) v += row.y_coeff[j];
  return v;
}

// Best-case row value: x at the upper box corner on every relieving
// coordinate. One x minimizes all rows at once since reliefs are >= 0.
double row_min_value(const SyntheticRow& row, const BinaryVector& y,
                     double x_max) {
  double v = row_y_part(row, y);
  for (double a : row.x_coeff) v += std::min(0.0, a) * x_max;
  return v;
}

// P(Binomial(m, 1/2) < t), the infeasible fraction of a coverage row
// sum of m indicators >= t.
double binomial_below(int m, int t) {
  double total = 0.0;
  double comb = 1.0;  // C(m, 0)
  for (int k = 0; k < t; ++k) {
    if (k > 0) comb = comb * (m - k + 1) / k;
    total += comb;
  }
  return total / std::pow(2.0, m);
}

}  // namespace

SyntheticInstance generate_synthetic(int n1, int n2, double infeasible_fraction,
                                     std::uint64_t seed) {
  if (n1 < 1 || n2 < 1) throw Error("synthetic instance needs n1, n2 >= 1");
  if (infeasible_fraction < 0.0 || infeasible_fraction >= 1.0) {
    throw Error("infeasible_fraction must lie in [0, 1)");
  }
  Rng rng(mix_seed(seed, 0x73796e));

  SyntheticInstance inst;
  inst.n1 = n1;
  inst.n2 = n2;
  inst.seed = seed;
  inst.x_max = 1.0;
  inst.quad_weight.resize(n1);
  for (double& c : inst.quad_weight) c = rng.uniform(0.5, 2.0);
  inst.lin_y.resize(n2);
  for (double& d : inst.lin_y) d = rng.uniform(-1.0, 1.0);

  // Coupling rows over disjoint halves of the x coordinates, constructed so
  // the box always offers at least 10% slack: infeasibility comes only from
  // the coverage row below.
  const int n_rows = n1 >= 2 ? 2 : 1;
  int begin = 0;
  for (int r = 0; r < n_rows; ++r) {
    const int end = r + 1 == n_rows ? n1 : n1 / 2;
    SyntheticRow row;
    row.x_coeff.assign(n1, 0.0);
    row.y_coeff.resize(n2);
    double relief = 0.0;
    for (int i = begin; i < end; ++i) {
      const double w = rng.uniform(0.5, 1.5);
      row.x_coeff[i] = -w;
      relief += w * inst.x_max;
    }
    double load = 0.0;
    for (double& b : row.y_coeff) {
      b = rng.uniform(0.0, 0.8);
      load += b;
    }
    row.constant = rng.uniform(0.1, 0.5);
    load += row.constant;
    if (relief < load / 0.9) {
      const double scale = load / (0.9 * relief);
      for (int i = begin; i < end; ++i) row.x_coeff[i] *= scale;
    }
    inst.rows.push_back(std::move(row));
    begin = end;
  }

  if (infeasible_fraction > 0.0) {
    // Coverage row: sum_{j in J} y_j >= t, i.e. (t - 0.5) - sum y_j <= 0.
    // The half-integer threshold keeps violations at least 0.5 in size.
    int best_m = 1, best_t = 1;
    double best_err = kInf;
    for (int m = 1; m <= n2; ++m) {
      for (int t = 1; t <= m; ++t) {
        const double err =
            std::fabs(binomial_below(m, t) - infeasible_fraction);
        if (err < best_err) {
          best_err = err;
          best_m = m;
          best_t = t;
        }
      }
    }
    std::vector<int> perm(n2);
    std::iota(perm.begin(), perm.end(), 0);
    for (int j = n2 - 1; j > 0; --j) {
      std::swap(perm[j], perm[rng.next_below(j + 1)]);
    }
    SyntheticRow row;
    row.x_coeff.assign(n1, 0.0);
    row.y_coeff.assign(n2, 0.0);
    for (int j = 0; j < best_m; ++j) row.y_coeff[perm[j]] = -1.0;
    row.constant = best_t - 0.5;
    inst.rows.push_back(std::move(row));
  }

  // Offset pushing every achievable objective below -1 so relative gaps are
  // well defined throughout a run.
  double span = 1.0;
  for (double d : inst.lin_y) span += std::fabs(d);
  for (double c : inst.quad_weight) span += c * inst.x_max * inst.x_max;
  inst.objective_offset = -span;
  return inst;
}

SyntheticPrimalResult solve_primal_synthetic(const SyntheticInstance& inst,
                                             const BinaryVector& y) {
  for (const SyntheticRow& row : inst.rows) {
    if (row_min_value(row, y, inst.x_max) > kFeasTol) {
      return solve_feasibility_synthetic(inst, y);
    }
  }

  SyntheticPrimalResult res;
  res.status = PrimalStatus::Feasible;
  res.x.assign(inst.n1, 0.0);
  res.mu.assign(inst.rows.size(), 0.0);

  // Rows have disjoint x supports, so each one is an independent
  // single-constraint quadratic: x_i(mu) = clip(mu w_i / (2 c_i), 0, x_max)
  // with mu found by bisection on the row balance.
  for (std::size_t r = 0; r < inst.rows.size(); ++r) {
    const SyntheticRow& row = inst.rows[r];
    const double need = row_y_part(row, y);
    if (need <= 0.0) continue;  // row slack at x = 0

    double mu_hi = 1.0;
    auto supplied = [&](double mu) {
      double s = 0.0;
      for (int i = 0; i < inst.n1; ++i) {
        if (row.x_coeff[i] >= 0.0) continue;
        const double w = -row.x_coeff[i];
        s += w * std::clamp(mu * w / (2.0 * inst.quad_weight[i]), 0.0,
                            inst.x_max);
      }
      return s;
    };
    while (supplied(mu_hi) < need) mu_hi *= 2.0;
    double lo = 0.0, hi = mu_hi;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (supplied(mid) < need ? lo : hi) = mid;
    }
    const double mu = 0.5 * (lo + hi);
    res.mu[r] = mu;
    for (int i = 0; i < inst.n1; ++i) {
      if (row.x_coeff[i] >= 0.0) continue;
      const double w = -row.x_coeff[i];
      res.x[i] =
          std::clamp(mu * w / (2.0 * inst.quad_weight[i]), 0.0, inst.x_max);
    }
  }

  double obj = inst.objective_offset;
  for (int i = 0; i < inst.n1; ++i)
    obj += inst.quad_weight[i] * res.x[i] * res.x[i];
  for (int j = 0; j < inst.n2; ++j)
    if (y[j]) obj += inst.lin_y[j];
  res.objective = obj;

  // Optimality cut eta >= f(x*, y') + sum_r mu_r row_r(x*, y'), affine in y'.
  res.cut_coeff = inst.lin_y;
  for (std::size_t r = 0; r < inst.rows.size(); ++r) {
    if (res.mu[r] == 0.0) continue;
    for (int j = 0; j < inst.n2; ++j)
      res.cut_coeff[j] += res.mu[r] * inst.rows[r].y_coeff[j];
  }
  // Constant pinned by tightness at the generating y; complementary
  // slackness makes this agree with the algebraic constant to bisection
  // precision.
  double at_gen = 0.0;
  for (int j = 0; j < inst.n2; ++j)
    if (y[j]) at_gen += res.cut_coeff[j];
  res.cut_const = res.objective - at_gen;
  return res;
}

SyntheticPrimalResult solve_feasibility_synthetic(const SyntheticInstance& inst,
                                                  const BinaryVector& y) {
  SyntheticPrimalResult res;
  res.status = PrimalStatus::Infeasible;
  res.lambda.assign(inst.rows.size(), 0.0);

  // One x (upper box corner on all relieving coordinates) minimizes every
  // row simultaneously, so min-max equals max-min and the solution is exact.
  res.x.assign(inst.n1, 0.0);
  for (const SyntheticRow& row : inst.rows) {
    for (int i = 0; i < inst.n1; ++i) {
      if (row.x_coeff[i] < 0.0) res.x[i] = inst.x_max;
    }
  }

  std::size_t worst = 0;
  double alpha = -kInf;
  for (std::size_t r = 0; r < inst.rows.size(); ++r) {
    const double v = row_min_value(inst.rows[r], y, inst.x_max);
    if (v > alpha) {
      alpha = v;
      worst = r;
    }
  }
  res.alpha = alpha;
  res.lambda[worst] = 1.0;
  res.objective = kInf;

  // Feasibility cut 0 >= lambda^T G(x*, y'): the alpha term is dropped so
  // the generating assignment stays strictly violated.
  const SyntheticRow& row = inst.rows[worst];
  res.cut_coeff = row.y_coeff;
  double c0 = row.constant;
  for (int i = 0; i < inst.n1; ++i) c0 += row.x_coeff[i] * res.x[i];
  res.cut_const = c0;
  return res;
}

SyntheticProblem::SyntheticProblem(SyntheticInstance inst)
    : inst_(std::move(inst)) {
  std::vector<int> owner(inst_.n1, -1);
  for (std::size_t r = 0; r < inst_.rows.size(); ++r) {
    for (int i = 0; i < inst_.n1; ++i) {
      if (inst_.rows[r].x_coeff[i] == 0.0) continue;
      if (inst_.rows[r].x_coeff[i] > 0.0)
        throw Error("synthetic rows must use x as relief (x_coeff <= 0)");
      if (owner[i] >= 0)
        throw Error("synthetic rows must have disjoint x supports");
      owner[i] = static_cast<int>(r);
    }
  }
}

SubproblemResult SyntheticProblem::solve_subproblem(
    const BinaryVector& y) const {
  const SyntheticPrimalResult r = solve_primal_synthetic(inst_, y);
  SubproblemResult out;
  out.status = r.status;
  out.objective = r.objective;
  out.cut_coeff = r.cut_coeff;
  out.cut_const = r.cut_const;
  out.x = r.x;
  return out;
}

}  // namespace gbd
