#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gbd/engine.hpp"
#include "gbd/ml.hpp"
#include "gbd/problem.hpp"

namespace gbd {

struct CollectOptions {
  int pool_size = 8;   // S
  double theta = 1.0;  // label threshold on CI ratios (classifier data)
  double tolerance = 0.005;
  int max_iterations = 10000;
  std::uint64_t seed = 0;
  int workers = 1;
};

// Label rule for classifier data: the cut of iteration i is useful when
// CI(i)/CI(i+1) > theta. A cut that moved the lower bound and silenced the
// next step counts as an infinite ratio (useful); a cut that moved nothing
// is useless no matter what follows.
inline bool useful_label(double ci_now, double ci_next, double theta) {
  if (ci_now <= 0.0) return false;
  return ci_next <= 0.0 || ci_now / ci_next > theta;
}

// Classifier samples: per instance a modified run pops one pool solution
// uniformly at random each iteration and adds its single cut. The cut of
// iteration i is labeled per useful_label on consecutive lower-bound
// improvements, and the final cut is always labeled 1.
CutDataset collect_classifier_data(const std::vector<const Problem*>& problems,
                                   const std::vector<std::string>& run_ids,
                                   const CollectOptions& options);

// Regressor samples from plain multi-cut runs: each iteration's master is
// re-solved after every added cut, ACI_s is the cumulative lower-bound gain
// of the first s cuts, CT the full-iteration gain, and the label is
// CR_s = ACI_s / CT (all ones when CT is zero).
CutDataset collect_regressor_data(const std::vector<const Problem*>& problems,
                                  const std::vector<std::string>& run_ids,
                                  const CollectOptions& options);

// Ground-truth usefulness of every logged cut: replay the run's masters and
// mark a cut useful when it strictly raises the master objective given the
// cuts added before it in the same iteration (the first cut of an iteration
// is always useful). Aligned with log.entries.
std::vector<std::uint8_t> shadow_label(const Problem& problem,
                                       const CutLog& log);

struct RecognitionCounts {
  long long useful_total = 0;
  long long useful_correct = 0;
  long long useless_total = 0;
  long long useless_correct = 0;

  double useful_rate() const {
    return useful_total > 0
               ? static_cast<double>(useful_correct) / useful_total
               : 1.0;
  }
  double useless_rate() const {
    return useless_total > 0
               ? static_cast<double>(useless_correct) / useless_total
               : 1.0;
  }
  RecognitionCounts& operator+=(const RecognitionCounts& o) {
    useful_total += o.useful_total;
    useful_correct += o.useful_correct;
    useless_total += o.useless_total;
    useless_correct += o.useless_correct;
    return *this;
  }
};

// Filter verdicts recorded in the log versus shadow ground truth.
RecognitionCounts recognition_vs_shadow(const Problem& problem,
                                        const CutLog& log);

}  // namespace gbd
