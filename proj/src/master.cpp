#include "gbd/master.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gbd {

namespace {

// Worse-first ordering for the incumbent heap: larger eta first, then
// lexicographically larger y. The final pool is the reverse of this order.
bool pool_less(const PoolSolution& a, const PoolSolution& b) {
  if (a.eta != b.eta) return a.eta < b.eta;
  return a.y < b.y;
}

struct Row {
  const std::vector<double>* coeff;
  double fixed = 0.0;     // contribution of fixed variables
  double free_min = 0.0;  // sum of min(0, coeff_j) over free variables
};

class PoolSearch {
 public:
  PoolSearch(const MasterModel& model, int pool_size)
      : model_(model), pool_size_(pool_size) {
    const int n = model.n_binary;
    y_.assign(n, 0);

    // Static branching order: variables with the widest coefficient range
    // across all cuts first, ties by index. The range is anchored at zero so
    // a variable that is large in a single cut still ranks high.
    std::vector<double> lo(n, 0.0), hi(n, 0.0);
    auto widen = [&](const std::vector<double>& c) {
      for (int j = 0; j < n && j < static_cast<int>(c.size()); ++j) {
        lo[j] = std::min(lo[j], c[j]);
        hi[j] = std::max(hi[j], c[j]);
      }
    };
    for (const Cut& c : model.optimality_cuts) widen(c.coeff_y);
    for (const Cut& c : model.feasibility_cuts) widen(c.coeff_y);
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return hi[a] - lo[a] > hi[b] - lo[b];
    });

    auto init_rows = [&](auto& rows, const auto& sources) {
      for (const auto& s : sources) {
        Row r;
        r.coeff = coeff_of(s);
        for (int j = 0; j < n; ++j) r.free_min += std::min(0.0, (*r.coeff)[j]);
        rows.push_back(r);
      }
    };
    init_rows(side_, model.side_constraints);
    init_rows(opt_, model.optimality_cuts);
    init_rows(feas_, model.feasibility_cuts);
  }

  MasterSolution run() {
    dive(0);
    MasterSolution out;
    out.floor_only = model_.optimality_cuts.empty();
    if (heap_.empty()) throw MasterInfeasibleError("master problem infeasible");
    std::sort(heap_.begin(), heap_.end(), pool_less);
    for (std::size_t i = 0; i < heap_.size(); ++i) heap_[i].rank = static_cast<int>(i) + 1;
    out.pool = std::move(heap_);
    out.eta_star = out.pool.front().eta;
    return out;
  }

 private:
  static const std::vector<double>* coeff_of(const LinearConstraint& c) { return &c.coeff; }
  static const std::vector<double>* coeff_of(const Cut& c) { return &c.coeff_y; }

  bool prune_infeasible() const {
    for (std::size_t i = 0; i < side_.size(); ++i) {
      if (side_[i].fixed + side_[i].free_min >
          model_.side_constraints[i].rhs + kFeasTol)
        return true;
    }
    for (std::size_t i = 0; i < feas_.size(); ++i) {
      if (model_.feasibility_cuts[i].const_term + feas_[i].fixed +
              feas_[i].free_min > kFeasTol)
        return true;
    }
    return false;
  }

  double node_bound() const {
    if (opt_.empty()) return model_.eta_floor;
    double bound = -kInf;
    for (std::size_t i = 0; i < opt_.size(); ++i) {
      const double v =
          model_.optimality_cuts[i].const_term + opt_[i].fixed + opt_[i].free_min;
      if (v > bound) bound = v;
    }
    return bound;
  }

  bool prune_bound(double bound) const {
    if (static_cast<int>(heap_.size()) < pool_size_) return false;
    const PoolSolution& worst = heap_.front();
    // Strict inequality with a guard keeps equal-eta candidates alive so the
    // lexicographic tie-break matches exhaustive enumeration exactly.
    return bound > worst.eta + 1e-12 * std::max(1.0, std::fabs(worst.eta));
  }

  void offer_leaf() {
    if (!model_.feasible_at(y_)) return;
    PoolSolution cand;
    cand.y = y_;
    cand.eta = model_.eta_at(y_);
    if (static_cast<int>(heap_.size()) == pool_size_) {
      if (!pool_less(cand, heap_.front())) return;
      std::pop_heap(heap_.begin(), heap_.end(), pool_less);
      heap_.back() = std::move(cand);
      std::push_heap(heap_.begin(), heap_.end(), pool_less);
    } else {
      heap_.push_back(std::move(cand));
      std::push_heap(heap_.begin(), heap_.end(), pool_less);
    }
  }

  void fix(int var, std::uint8_t value, int dir) {
    // dir = +1 applies the assignment, dir = -1 undoes it.
    auto touch = [&](std::vector<Row>& rows) {
      for (Row& r : rows) {
        const double a = (*r.coeff)[var];
        if (dir > 0) {
          if (value) r.fixed += a;
          r.free_min -= std::min(0.0, a);
        } else {
          if (value) r.fixed -= a;
          r.free_min += std::min(0.0, a);
        }
      }
    };
    touch(side_);
    touch(opt_);
    touch(feas_);
    y_[var] = dir > 0 ? value : 0;
  }

  void dive(int depth) {
    if (prune_infeasible()) return;
    if (prune_bound(node_bound())) return;
    if (depth == model_.n_binary) {
      offer_leaf();
      return;
    }
    const int var = order_[depth];
    for (std::uint8_t v : {std::uint8_t{0}, std::uint8_t{1}}) {
      fix(var, v, +1);
      dive(depth + 1);
      fix(var, v, -1);
    }
  }

  const MasterModel& model_;
  int pool_size_;
  std::vector<int> order_;
  BinaryVector y_;
  std::vector<Row> side_, opt_, feas_;
  std::vector<PoolSolution> heap_;  // max-heap, worst on top
};

}  // namespace

MasterSolution branch_and_bound(const MasterModel& model, int pool_size) {
  PoolSearch search(model, pool_size);
  return search.run();
}

MasterSolution solve_master(const MasterModel& model, int pool_size) {
  return branch_and_bound(model, pool_size);
}

}  // namespace gbd
