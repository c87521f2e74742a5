#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gbd/problem.hpp"
#include "gbd/types.hpp"

namespace gbd {

enum class ObjectiveKind { MaxMin, SumRate, WeightedSumRate };

// Distance-based path loss in dB; distances below one meter are clamped.
double cellular_path_loss_db(double dist_m);  // 128.1 + 37.6 log10(d[km])
double d2d_path_loss_db(double dist_m);       // 148 + 40 log10(d[km])

struct D2DParams {
  double cell_radius = 500.0;       // m
  double pairing_distance = 50.0;   // m, D2D receiver within this of its tx
  double noise_dbm_per_hz = -174.0;
  double bandwidth_hz = 180e3;
  double p_c_max_dbm = 20.0;
  double p_d_max_dbm = 20.0;
  double r_c_min = 2.0;             // bit/s/Hz
  double shadowing_std_db = 10.0;
};

// Uplink single cell: K cellular users on orthogonal subcarriers, L D2D
// pairs reusing them, at most one pair per subcarrier. The binary vector
// rho is row-major, rho[k*L + l] = 1 when pair l reuses subcarrier k.
struct D2DInstance {
  int K = 0;
  int L = 0;
  ObjectiveKind objective = ObjectiveKind::MaxMin;
  std::vector<double> weights;  // per-pair, WeightedSumRate only
  double sigma2 = 0.0;          // noise power, W
  double p_c_max = 0.0;         // W
  double p_d_max = 0.0;         // W
  double r_c_min = 0.0;         // bit/s/Hz
  double cell_radius = 0.0;     // m
  std::uint64_t seed = 0;
  std::string id;

  std::vector<double> h_cb;  // K:   CU k -> eNB
  std::vector<double> h_db;  // L:   D2D tx l -> eNB
  std::vector<double> h_d;   // L:   D2D tx l -> D2D rx l
  std::vector<double> h_cd;  // K*L: CU k -> D2D rx l

  // geometry, m (eNB at the origin); kept for reference and debugging
  std::vector<double> cu_x, cu_y, tx_x, tx_y, rx_x, rx_y;

  int rho_index(int k, int l) const { return k * L + l; }
  // CU SINR floor 2^Rmin - 1.
  double gamma() const;
};

struct D2DPrimalResult {
  PrimalStatus status = PrimalStatus::Feasible;
  std::vector<double> p_c;  // K, W
  std::vector<double> p_d;  // K*L, W (zero on unassigned links)
  double t = 0.0;           // min pair rate at the optimum
  double objective = 0.0;   // internal minimization value

  // Multipliers of the constraint groups, all >= 0:
  //   mu1 per pair: rate epigraph (max-min objective only)
  //   mu2 per subcarrier: CU-rate floor
  //   mu3 per pair: D2D power budget
  //   mu4 per subcarrier: CU power cap
  std::vector<double> mu1, mu2, mu3, mu4;

  // Feasibility-check outputs (status == Infeasible): normalized multipliers
  // over the 2K rows (CU-rate floors then CU power caps) and the minimal
  // uniform violation.
  std::vector<double> lambda;
  double alpha = 0.0;

  // Per-pair internals consumed by the cut builder.
  std::vector<double> pair_rate;    // W_l: best rate of pair l under rho
  std::vector<double> water_level;  // per-pair budget dual
  std::vector<double> pair_weight;  // objective weight on each pair's rate
};

// Places users uniformly, draws log-normal shadowing and converts path loss
// to linear gains. Geometry is redrawn until every CU can meet its rate
// floor alone (gamma sigma2 / h_cb < P_C_max), so the benchmark family only
// contains instances with feasible primal problems.
D2DInstance generate_instance(int K, int L, const D2DParams& params,
                              ObjectiveKind objective, std::uint64_t seed);

// Fixes rho and solves the continuous allocation exactly: the CU power is
// eliminated through the tight rate floor, each pair then water-fills its
// concave per-subcarrier rate curves by bisection on the budget multiplier,
// and the multipliers of the original constraint groups are recovered from
// stationarity.
D2DPrimalResult solve_primal(const D2DInstance& inst, const BinaryVector& rho);

// l1-style feasibility check; only reachable when some CU cannot meet its
// rate floor even without D2D interference, which generation rules out.
D2DPrimalResult solve_feasibility(const D2DInstance& inst,
                                  const BinaryVector& rho);

// Assembles the affine-in-rho cut from a solved subproblem. Optimality cut
// coefficients follow the dual-weighted constraint terms on assigned links
// and a concave tangent bound on unassigned links; the constant is pinned by
// tightness at the generating assignment and cross-checked against the
// dual expression (DualityGapError beyond 1e-5 relative).
Cut build_cut(const D2DInstance& inst, const D2DPrimalResult& result,
              const BinaryVector& rho_gen, int iteration, int order);

class D2DProblem : public Problem {
 public:
  explicit D2DProblem(D2DInstance inst);

  int n_continuous() const override;
  int n_binary() const override { return inst_.K * inst_.L; }
  const std::vector<LinearConstraint>& binary_constraints() const override {
    return side_constraints_;
  }
  SubproblemResult solve_subproblem(const BinaryVector& y) const override;

  const D2DInstance& instance() const { return inst_; }

 private:
  D2DInstance inst_;
  std::vector<LinearConstraint> side_constraints_;  // one per subcarrier
};

}  // namespace gbd
