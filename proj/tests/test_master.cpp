#include <doctest.h>

#include <cmath>

#include "gbd/master.hpp"
#include "gbd/rng.hpp"
#include "oracles.hpp"

using namespace gbd;

namespace {

// One-subcarrier-per-pair structure over K subcarriers and L pairs.
std::vector<LinearConstraint> assignment_constraints(int K, int L) {
  std::vector<LinearConstraint> out(K);
  for (int k = 0; k < K; ++k) {
    out[k].coeff.assign(K * L, 0.0);
    for (int l = 0; l < L; ++l) out[k].coeff[k * L + l] = 1.0;
    out[k].rhs = 1.0;
  }
  return out;
}

Cut make_cut(CutKind kind, std::vector<double> coeff, double c0) {
  Cut c;
  c.kind = kind;
  c.coeff_y = std::move(coeff);
  c.const_term = c0;
  return c;
}

MasterModel random_model(Rng& rng, int n, int n_opt, int n_feas) {
  MasterModel m;
  m.n_binary = n;
  for (int i = 0; i < n_opt; ++i) {
    std::vector<double> coeff(n);
    for (double& v : coeff) v = rng.uniform(-3.0, 3.0);
    m.add(make_cut(CutKind::Optimality, std::move(coeff), rng.uniform(-5.0, 5.0)));
  }
  for (int i = 0; i < n_feas; ++i) {
    std::vector<double> coeff(n);
    for (double& v : coeff) v = rng.uniform(-2.0, 2.0);
    // Keep the model feasible: the all-zero assignment must survive.
    m.add(make_cut(CutKind::Feasibility, std::move(coeff), rng.uniform(-3.0, -0.1)));
  }
  return m;
}

}  // namespace

TEST_CASE("cut-free master over assignment constraints enumerates Y") {
  MasterModel m;
  m.n_binary = 2;  // K=2, L=1
  m.side_constraints = assignment_constraints(2, 1);
  const MasterSolution sol = solve_master(m, 10);
  CHECK(sol.pool.size() == 4);  // (L+1)^K
  CHECK(sol.floor_only);
  CHECK(sol.eta_star == m.eta_floor);
}

TEST_CASE("single cut pool ranking breaks ties lexicographically") {
  MasterModel m;
  m.n_binary = 2;
  m.add(make_cut(CutKind::Optimality, {1.0, 0.0}, -2.0));
  const MasterSolution sol = solve_master(m, 2);
  CHECK(sol.eta_star == doctest::Approx(-2.0));
  REQUIRE(sol.pool.size() == 2);
  // Both y with y0 = 0 evaluate to -2; they outrank the eta = -1 solutions.
  CHECK(sol.pool[0].y == BinaryVector{0, 0});
  CHECK(sol.pool[0].eta == doctest::Approx(-2.0));
  CHECK(sol.pool[1].y == BinaryVector{0, 1});
  CHECK(sol.pool[1].eta == doctest::Approx(-2.0));
  CHECK(sol.pool[0].rank == 1);
  CHECK(sol.pool[1].rank == 2);
}

TEST_CASE("all-positive feasibility cut with positive constant prunes everything") {
  MasterModel m;
  m.n_binary = 3;
  m.add(make_cut(CutKind::Feasibility, {1.0, 0.5, 2.0}, 0.5));
  CHECK_THROWS_AS(solve_master(m, 1), MasterInfeasibleError);
}

TEST_CASE("branch and bound equals exhaustive enumeration on random models") {
  Rng rng(20240103);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 10;
    MasterModel m = random_model(rng, n, 1 + static_cast<int>(rng.next_below(12)),
                                 static_cast<int>(rng.next_below(3)));
    const int S = 1 + static_cast<int>(rng.next_below(6));
    MasterSolution ref;
    MasterSolution got;
    bool ref_infeasible = false, got_infeasible = false;
    try {
      ref = testing::enumerate_master(m, S);
    } catch (const MasterInfeasibleError&) {
      ref_infeasible = true;
    }
    try {
      got = branch_and_bound(m, S);
    } catch (const MasterInfeasibleError&) {
      got_infeasible = true;
    }
    REQUIRE(ref_infeasible == got_infeasible);
    if (ref_infeasible) continue;
    REQUIRE(got.pool.size() == ref.pool.size());
    CHECK(got.eta_star == ref.eta_star);
    for (std::size_t i = 0; i < ref.pool.size(); ++i) {
      CHECK(got.pool[i].y == ref.pool[i].y);
      CHECK(got.pool[i].eta == ref.pool[i].eta);
      CHECK(got.pool[i].rank == ref.pool[i].rank);
    }
  }
}

TEST_CASE("adding a cut never decreases eta_star") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    MasterModel m = random_model(rng, 8, 1 + static_cast<int>(rng.next_below(6)), 0);
    const double before = solve_master(m, 1).eta_star;
    std::vector<double> coeff(8);
    for (double& v : coeff) v = rng.uniform(-3.0, 3.0);
    if (rng.uniform() < 0.7) {
      m.add(make_cut(CutKind::Optimality, std::move(coeff), rng.uniform(-5.0, 5.0)));
    } else {
      m.add(make_cut(CutKind::Feasibility, std::move(coeff), rng.uniform(-3.0, -0.1)));
    }
    const double after = solve_master(m, 1).eta_star;
    CHECK(after >= before - 1e-12 * std::max(1.0, std::fabs(before)));
  }
}

TEST_CASE("pool respects the assignment structure") {
  MasterModel m;
  m.n_binary = 6;  // K=3, L=2
  m.side_constraints = assignment_constraints(3, 2);
  m.add(make_cut(CutKind::Optimality, {-1, -2, -3, -4, -5, -6}, 0.0));
  const MasterSolution sol = solve_master(m, 5);
  for (const PoolSolution& p : sol.pool) {
    for (int k = 0; k < 3; ++k) {
      CHECK(p.y[k * 2] + p.y[k * 2 + 1] <= 1);
    }
  }
  // Best assignment takes the most negative coefficient per subcarrier.
  CHECK(sol.eta_star == doctest::Approx(-2.0 - 4.0 - 6.0));
}
