#include "gbd/d2d.hpp"

#include <algorithm>
#include <cmath>

#include "gbd/rng.hpp"

namespace gbd {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321214581766;

// Reduced rate curve of link (k, l) once the CU power on subcarrier k is
// pinned to the tight rate floor p_C = gamma (sigma2 + p h_db) / h_cb:
//
//   g(p) = log2((b + (a + c) p) / (b + c p))
//   a = h_d[l]
//   b = sigma2 (1 + gamma h_cd[k,l] / h_cb[k])
//   c = gamma h_cd[k,l] h_db[l] / h_cb[k]
//
// g is increasing and strictly concave (g'' < 0 follows from a b > 0), and
// the CU power cap translates into the box p <= pcap.
struct LinkCurve {
  double a = 0.0, b = 0.0, c = 0.0;
  double pcap = 0.0;

  double rate(double p) const {
    return std::log2((b + (a + c) * p) / (b + c * p));
  }

  double slope(double p) const {
    return (a * b) / (kLn2 * (b + (a + c) * p) * (b + c * p));
  }

  // Inverse of the slope, clipped to [0, pcap]; solves the quadratic
  // c(a+c) p^2 + b(a+2c) p + (b^2 - a b / (w ln2)) = 0 for its positive root.
  double power_at_level(double w) const {
    const double rhs = a * b / (w * kLn2);
    const double c_q = b * b - rhs;
    if (c_q >= 0.0) return 0.0;  // w >= g'(0)
    double p;
    if (c == 0.0) {
      p = -c_q / (b * a);  // linear case: b(a) p + c_q = 0 with a+c = a
    } else {
      const double a_q = c * (a + c);
      const double b_q = b * (a + 2.0 * c);
      const double disc = b_q * b_q - 4.0 * a_q * c_q;
      p = -2.0 * c_q / (b_q + std::sqrt(disc));
    }
    return std::clamp(p, 0.0, pcap);
  }
};

LinkCurve make_curve(const D2DInstance& inst, int k, int l) {
  LinkCurve cur;
  const double gamma = inst.gamma();
  const double ratio = gamma * inst.h_cd[inst.rho_index(k, l)] / inst.h_cb[k];
  cur.a = inst.h_d[l];
  cur.b = inst.sigma2 * (1.0 + ratio);
  cur.c = ratio * inst.h_db[l];
  cur.pcap =
      (inst.p_c_max * inst.h_cb[k] / gamma - inst.sigma2) / inst.h_db[l];
  return cur;
}

struct PairAllocation {
  std::vector<int> subcarriers;
  std::vector<LinkCurve> curves;
  std::vector<double> power;
  double rate = 0.0;         // W_l
  double water_level = 0.0;  // budget multiplier
};

// Budget-constrained concave maximization over the pair's subcarriers:
// p_k(w) = clip(g_k'^{-1}(w), 0, pcap_k), with w bisected until the budget
// is met or zero when the caps already fit.
PairAllocation allocate_pair(const D2DInstance& inst, int l,
                             const BinaryVector& rho) {
  PairAllocation out;
  for (int k = 0; k < inst.K; ++k) {
    if (!rho[inst.rho_index(k, l)]) continue;
    out.subcarriers.push_back(k);
    out.curves.push_back(make_curve(inst, k, l));
  }
  const std::size_t m = out.subcarriers.size();
  out.power.assign(m, 0.0);
  if (m == 0) return out;

  double cap_total = 0.0;
  double w_hi = 0.0;
  for (const LinkCurve& cur : out.curves) {
    cap_total += cur.pcap;
    w_hi = std::max(w_hi, cur.slope(0.0));
  }
  const double budget = inst.p_d_max;

  if (cap_total <= budget) {
    for (std::size_t i = 0; i < m; ++i) out.power[i] = out.curves[i].pcap;
    out.water_level = 0.0;
  } else {
    double lo = 0.0, hi = w_hi;
    auto total_power = [&](double w) {
      double s = 0.0;
      for (const LinkCurve& cur : out.curves) s += cur.power_at_level(w);
      return s;
    };
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (total_power(mid) > budget ? lo : hi) = mid;
    }
    out.water_level = 0.5 * (lo + hi);
    for (std::size_t i = 0; i < m; ++i) {
      out.power[i] = out.curves[i].power_at_level(out.water_level);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    out.rate += out.curves[i].rate(out.power[i]);
  }
  return out;
}

// Partial derivatives of the original two-argument rate
// r(pC, pD) = log2(1 + pD h_d / (sigma2 + pC h_cd)).
double rate_dpd(const D2DInstance& inst, int k, int l, double p_c, double p_d) {
  const double den = inst.sigma2 + p_c * inst.h_cd[inst.rho_index(k, l)];
  return inst.h_d[l] / (kLn2 * (den + p_d * inst.h_d[l]));
}

double rate_dpc(const D2DInstance& inst, int k, int l, double p_c, double p_d) {
  const double h_cd = inst.h_cd[inst.rho_index(k, l)];
  const double den = inst.sigma2 + p_c * h_cd;
  return -p_d * inst.h_d[l] * h_cd / (kLn2 * den * (den + p_d * inst.h_d[l]));
}

bool cu_floor_reachable(const D2DInstance& inst, int k) {
  return inst.gamma() * inst.sigma2 / inst.h_cb[k] < inst.p_c_max;
}

double disc_uniform(Rng& rng, double radius, double cx, double cy, double* x,
                    double* y) {
  const double r = radius * std::sqrt(rng.uniform());
  const double ang = 6.283185307179586476925286766559 * rng.uniform();
  *x = cx + r * std::cos(ang);
  *y = cy + r * std::sin(ang);
  return r;
}

double db_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double path_gain(double dist_m, bool cellular, double shadow_db) {
  const double pl =
      cellular ? cellular_path_loss_db(dist_m) : d2d_path_loss_db(dist_m);
  return std::pow(10.0, -(pl + shadow_db) / 10.0);
}

}  // namespace

double cellular_path_loss_db(double dist_m) {
  return 128.1 + 37.6 * std::log10(std::max(dist_m, 1.0) * 1e-3);
}

double d2d_path_loss_db(double dist_m) {
  return 148.0 + 40.0 * std::log10(std::max(dist_m, 1.0) * 1e-3);
}

double D2DInstance::gamma() const { return std::exp2(r_c_min) - 1.0; }

D2DInstance generate_instance(int K, int L, const D2DParams& params,
                              ObjectiveKind objective, std::uint64_t seed) {
  if (K < 1 || L < 1) throw Error("D2D instance needs K, L >= 1");
  Rng rng(mix_seed(seed, 0xd2d));

  D2DInstance inst;
  inst.K = K;
  inst.L = L;
  inst.objective = objective;
  inst.seed = seed;
  inst.cell_radius = params.cell_radius;
  inst.sigma2 =
      std::pow(10.0, (params.noise_dbm_per_hz - 30.0) / 10.0) * params.bandwidth_hz;
  inst.p_c_max = db_to_watt(params.p_c_max_dbm);
  inst.p_d_max = db_to_watt(params.p_d_max_dbm);
  inst.r_c_min = params.r_c_min;

  // Draw order is part of the file contract: positions (CUs, then tx/rx per
  // pair), then shadowing for CB, DB, D and the CD matrix row-major. The
  // whole geometry is redrawn when a CU cannot reach its rate floor alone.
  for (int attempt = 0;; ++attempt) {
    if (attempt >= 1000) {
      throw Error("could not draw a feasible D2D instance in 1000 attempts");
    }
    inst.cu_x.assign(K, 0.0);
    inst.cu_y.assign(K, 0.0);
    inst.tx_x.assign(L, 0.0);
    inst.tx_y.assign(L, 0.0);
    inst.rx_x.assign(L, 0.0);
    inst.rx_y.assign(L, 0.0);
    for (int k = 0; k < K; ++k) {
      disc_uniform(rng, params.cell_radius, 0.0, 0.0, &inst.cu_x[k], &inst.cu_y[k]);
    }
    for (int l = 0; l < L; ++l) {
      disc_uniform(rng, params.cell_radius, 0.0, 0.0, &inst.tx_x[l], &inst.tx_y[l]);
      disc_uniform(rng, params.pairing_distance, inst.tx_x[l], inst.tx_y[l],
                   &inst.rx_x[l], &inst.rx_y[l]);
    }
    auto dist = [](double ax, double ay, double bx, double by) {
      return std::hypot(ax - bx, ay - by);
    };
    inst.h_cb.assign(K, 0.0);
    inst.h_db.assign(L, 0.0);
    inst.h_d.assign(L, 0.0);
    inst.h_cd.assign(K * L, 0.0);
    for (int k = 0; k < K; ++k) {
      inst.h_cb[k] = path_gain(dist(inst.cu_x[k], inst.cu_y[k], 0.0, 0.0), true,
                               rng.normal(0.0, params.shadowing_std_db));
    }
    for (int l = 0; l < L; ++l) {
      inst.h_db[l] = path_gain(dist(inst.tx_x[l], inst.tx_y[l], 0.0, 0.0), false,
                               rng.normal(0.0, params.shadowing_std_db));
    }
    for (int l = 0; l < L; ++l) {
      inst.h_d[l] = path_gain(
          dist(inst.tx_x[l], inst.tx_y[l], inst.rx_x[l], inst.rx_y[l]), false,
          rng.normal(0.0, params.shadowing_std_db));
    }
    for (int k = 0; k < K; ++k) {
      for (int l = 0; l < L; ++l) {
        inst.h_cd[inst.rho_index(k, l)] = path_gain(
            dist(inst.cu_x[k], inst.cu_y[k], inst.rx_x[l], inst.rx_y[l]), false,
            rng.normal(0.0, params.shadowing_std_db));
      }
    }
    bool ok = true;
    for (int k = 0; k < K && ok; ++k) ok = cu_floor_reachable(inst, k);
    if (ok) break;
  }

  if (objective == ObjectiveKind::WeightedSumRate) {
    inst.weights.assign(L, 0.0);
    for (double& w : inst.weights) {
      do {
        w = rng.uniform();
      } while (w == 0.0);
    }
  }
  return inst;
}

D2DPrimalResult solve_primal(const D2DInstance& inst, const BinaryVector& rho) {
  for (int k = 0; k < inst.K; ++k) {
    if (!cu_floor_reachable(inst, k)) return solve_feasibility(inst, rho);
  }

  D2DPrimalResult res;
  res.status = PrimalStatus::Feasible;
  res.p_c.assign(inst.K, 0.0);
  res.p_d.assign(inst.K * inst.L, 0.0);
  res.mu1.assign(inst.L, 0.0);
  res.mu2.assign(inst.K, 0.0);
  res.mu3.assign(inst.L, 0.0);
  res.mu4.assign(inst.K, 0.0);
  res.pair_rate.assign(inst.L, 0.0);
  res.water_level.assign(inst.L, 0.0);
  res.pair_weight.assign(inst.L, 0.0);

  // Pairs decouple at fixed rho: separate budgets, no cross-pair terms.
  std::vector<PairAllocation> alloc(inst.L);
  for (int l = 0; l < inst.L; ++l) {
    alloc[l] = allocate_pair(inst, l, rho);
    res.pair_rate[l] = alloc[l].rate;
    res.water_level[l] = alloc[l].water_level;
    for (std::size_t i = 0; i < alloc[l].subcarriers.size(); ++i) {
      res.p_d[inst.rho_index(alloc[l].subcarriers[i], l)] = alloc[l].power[i];
    }
  }

  // CU power sits on its rate floor: any surplus only adds interference.
  const double gamma = inst.gamma();
  for (int k = 0; k < inst.K; ++k) {
    double interference = 0.0;
    for (int l = 0; l < inst.L; ++l) {
      if (rho[inst.rho_index(k, l)]) {
        interference += res.p_d[inst.rho_index(k, l)] * inst.h_db[l];
      }
    }
    res.p_c[k] = gamma * (inst.sigma2 + interference) / inst.h_cb[k];
  }

  res.t = kInf;
  for (int l = 0; l < inst.L; ++l) res.t = std::min(res.t, res.pair_rate[l]);

  // Objective weight per pair: the max-min objective prices only the first
  // bottleneck pair, the sum objectives price every pair.
  switch (inst.objective) {
    case ObjectiveKind::MaxMin: {
      int bottleneck = 0;
      for (int l = 1; l < inst.L; ++l) {
        if (res.pair_rate[l] < res.pair_rate[bottleneck]) bottleneck = l;
      }
      res.pair_weight[bottleneck] = 1.0;
      res.mu1 = res.pair_weight;
      break;
    }
    case ObjectiveKind::SumRate:
      res.pair_weight.assign(inst.L, 1.0);
      break;
    case ObjectiveKind::WeightedSumRate:
      res.pair_weight = inst.weights;
      break;
  }

  double value = 0.0;
  for (int l = 0; l < inst.L; ++l) value += res.pair_weight[l] * res.pair_rate[l];
  res.objective = -value;

  for (int l = 0; l < inst.L; ++l) {
    const double u = res.pair_weight[l];
    res.mu3[l] = u * alloc[l].water_level;
    if (u == 0.0) continue;
    for (std::size_t i = 0; i < alloc[l].subcarriers.size(); ++i) {
      const int k = alloc[l].subcarriers[i];
      const double p = alloc[l].power[i];
      if (p <= 0.0) continue;
      const double drdp = rate_dpd(inst, k, l, res.p_c[k], p);
      const double drdc = rate_dpc(inst, k, l, res.p_c[k], p);
      if (p >= alloc[l].curves[i].pcap) {
        // CU power cap active: stationarity in p_d fixes mu2, stationarity
        // in p_c then yields the cap multiplier.
        res.mu2[k] =
            std::max(0.0, (u * drdp - res.mu3[l]) / (gamma * inst.h_db[l]));
        res.mu4[k] = std::max(0.0, u * drdc + res.mu2[k] * inst.h_cb[k]);
      } else {
        // Off the cap, mu4 = 0 and stationarity in p_c gives mu2 directly;
        // this route avoids the cancellation in (dr/dp - water level).
        res.mu2[k] = std::max(0.0, -u * drdc / inst.h_cb[k]);
        res.mu4[k] = 0.0;
      }
    }
  }
  return res;
}

D2DPrimalResult solve_feasibility(const D2DInstance& inst,
                                  const BinaryVector& rho) {
  (void)rho;  // the violation is independent of the assignment
  D2DPrimalResult res;
  res.status = PrimalStatus::Infeasible;
  res.p_c.assign(inst.K, 0.0);
  res.p_d.assign(inst.K * inst.L, 0.0);
  res.lambda.assign(2 * inst.K, 0.0);
  res.objective = kInf;

  // With p_d = 0 and t free, only the CU rate floor and power cap can
  // conflict: per subcarrier the minimal uniform violation is where
  // gamma sigma2 - p h_cb and p - P_C_max cross.
  const double gamma = inst.gamma();
  int worst = 0;
  double alpha = -kInf;
  for (int k = 0; k < inst.K; ++k) {
    const double a_k = (gamma * inst.sigma2 - inst.p_c_max * inst.h_cb[k]) /
                       (1.0 + inst.h_cb[k]);
    res.p_c[k] = (gamma * inst.sigma2 + inst.p_c_max) / (1.0 + inst.h_cb[k]);
    if (a_k > alpha) {
      alpha = a_k;
      worst = k;
    }
  }
  res.alpha = alpha;
  res.lambda[worst] = 1.0 / (1.0 + inst.h_cb[worst]);
  res.lambda[inst.K + worst] = inst.h_cb[worst] / (1.0 + inst.h_cb[worst]);
  res.t = -kInf;
  return res;
}

Cut build_cut(const D2DInstance& inst, const D2DPrimalResult& result,
              const BinaryVector& rho_gen, int iteration, int order) {
  Cut cut;
  cut.gen_iteration = iteration;
  cut.gen_order = order;
  cut.gen_y = rho_gen;
  cut.coeff_y.assign(inst.K * inst.L, 0.0);

  if (result.status == PrimalStatus::Infeasible) {
    // lambda^T G at p_d = 0: no rho dependence survives, the cut pins the
    // constant violation and the master becomes infeasible, as it should
    // for an instance-level conflict.
    cut.kind = CutKind::Feasibility;
    double c0 = 0.0;
    const double gamma = inst.gamma();
    for (int k = 0; k < inst.K; ++k) {
      c0 += result.lambda[k] * (gamma * inst.sigma2 - result.p_c[k] * inst.h_cb[k]);
      c0 += result.lambda[inst.K + k] * (result.p_c[k] - inst.p_c_max);
    }
    cut.const_term = c0;
    return cut;
  }

  cut.kind = CutKind::Optimality;

  // Assigned links take the dual-weighted Lagrangian coefficient
  //   -u_l r_kl(x*) + (gamma mu2_k h_db[l] + mu3_l) p*_kl,
  // the finite difference of mu^T G in rho. Links the subproblem left free
  // (p* = 0 there, so the literal term vanishes) need a completion term for
  // the cut to stay below the primal value when the master moves a priced
  // pair onto subcarriers the generator never used. Per-pair subadditivity
  // makes any per-link ceiling of at least the standalone full-budget rate
  // g(min(B, pcap)) valid; the standalone rates are scaled so the pair's
  // best link carries the whole-band ceiling W_max(l), which keeps the
  // early relaxation as loose as a master that knows nothing beyond the
  // band ceiling while still ranking subcarriers.
  const double gamma = inst.gamma();
  for (int l = 0; l < inst.L; ++l) {
    const double u = result.pair_weight[l];
    if (u == 0.0) continue;
    const BinaryVector everywhere(inst.K * inst.L, 1);
    const double band_ceiling = allocate_pair(inst, l, everywhere).rate;
    std::vector<double> standalone(inst.K, 0.0);
    double standalone_best = 0.0;
    for (int k = 0; k < inst.K; ++k) {
      const LinkCurve cur = make_curve(inst, k, l);
      standalone[k] = cur.rate(std::min(inst.p_d_max, cur.pcap));
      standalone_best = std::max(standalone_best, standalone[k]);
    }
    const double scale =
        standalone_best > 0.0 ? band_ceiling / standalone_best : 1.0;
    for (int k = 0; k < inst.K; ++k) {
      const int j = inst.rho_index(k, l);
      double coeff;
      if (rho_gen[j]) {
        const double p = result.p_d[j];
        const double den = inst.sigma2 + result.p_c[k] * inst.h_cd[j];
        const double rate = std::log2(1.0 + p * inst.h_d[l] / den);
        coeff = -u * rate +
                (gamma * result.mu2[k] * inst.h_db[l] + result.mu3[l]) * p;
      } else {
        coeff = -u * standalone[k] * scale;
      }
      cut.coeff_y[j] = coeff;
    }
  }

  double at_gen = 0.0;
  for (std::size_t j = 0; j < cut.coeff_y.size(); ++j) {
    if (rho_gen[j]) at_gen += cut.coeff_y[j];
  }
  cut.const_term = result.objective - at_gen;

  // Cross-check against the rho-independent Lagrangian terms; complementary
  // slackness makes the two constants agree when the multipliers certify
  // the primal value.
  double dual_const = 0.0;
  for (int k = 0; k < inst.K; ++k) {
    dual_const += result.mu2[k] *
                  (gamma * inst.sigma2 - result.p_c[k] * inst.h_cb[k]);
    dual_const += result.mu4[k] * (result.p_c[k] - inst.p_c_max);
  }
  for (int l = 0; l < inst.L; ++l) {
    dual_const -= result.mu3[l] * inst.p_d_max;
  }
  const double mismatch = std::fabs(cut.const_term - dual_const);
  if (mismatch > 1e-5 * std::max(1.0, std::fabs(result.objective))) {
    throw DualityGapError("optimality cut is not tight at its generator");
  }
  return cut;
}

D2DProblem::D2DProblem(D2DInstance inst) : inst_(std::move(inst)) {
  side_constraints_.resize(inst_.K);
  for (int k = 0; k < inst_.K; ++k) {
    side_constraints_[k].coeff.assign(inst_.K * inst_.L, 0.0);
    for (int l = 0; l < inst_.L; ++l) {
      side_constraints_[k].coeff[inst_.rho_index(k, l)] = 1.0;
    }
    side_constraints_[k].rhs = 1.0;
  }
}

int D2DProblem::n_continuous() const {
  const int base = inst_.K + inst_.K * inst_.L;
  return inst_.objective == ObjectiveKind::MaxMin ? base + 1 : base;
}

SubproblemResult D2DProblem::solve_subproblem(const BinaryVector& y) const {
  const D2DPrimalResult r = solve_primal(inst_, y);
  const Cut cut = build_cut(inst_, r, y, 1, 1);
  SubproblemResult out;
  out.status = r.status;
  out.objective = r.objective;
  out.cut_coeff = cut.coeff_y;
  out.cut_const = cut.const_term;
  out.x = r.p_c;
  out.x.insert(out.x.end(), r.p_d.begin(), r.p_d.end());
  if (inst_.objective == ObjectiveKind::MaxMin) out.x.push_back(r.t);
  return out;
}

}  // namespace gbd
