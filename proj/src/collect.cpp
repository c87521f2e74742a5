#include "gbd/collect.hpp"

#include <algorithm>
#include <cmath>

#include "gbd/rng.hpp"

namespace gbd {

namespace {

// Lower-bound improvement per iteration from the recorded trace. The step
// out of the -infinity sentinel counts as an infinite improvement, staying
// on the sentinel as none.
std::vector<double> improvements(const BoundsTrace& trace) {
  std::vector<double> ci(trace.lbd.size(), 0.0);
  double prev = -kInf;
  for (std::size_t i = 0; i < trace.lbd.size(); ++i) {
    const double cur = trace.lbd[i];
    if (cur == -kInf) {
      ci[i] = 0.0;
    } else if (prev == -kInf) {
      ci[i] = kInf;
    } else {
      ci[i] = std::max(0.0, cur - prev);
    }
    prev = cur;
  }
  return ci;
}

}  // namespace

CutDataset collect_classifier_data(const std::vector<const Problem*>& problems,
                                   const std::vector<std::string>& run_ids,
                                   const CollectOptions& options) {
  CutDataset dataset;
  dataset.kind = DatasetKind::Classifier;

  for (std::size_t p = 0; p < problems.size(); ++p) {
    RunConfig config;
    config.mode = RunMode::MultiCut;
    config.pool_size = options.pool_size;
    config.tolerance = options.tolerance;
    config.max_iterations = options.max_iterations;
    config.seed = mix_seed(options.seed, p);
    config.workers = options.workers;
    const RunResult run = run_random_pop(*problems[p], config);

    // One cut per iteration; entries align with the trace.
    const std::vector<double> ci = improvements(run.trace);
    for (std::size_t i = 0; i < run.log.entries.size(); ++i) {
      CutRecord rec;
      rec.features = FeatureVector::from_cut(run.log.entries[i].cut);
      rec.run_id = run_ids[p];
      rec.iteration = run.log.entries[i].cut.gen_iteration;
      rec.order = run.log.entries[i].cut.gen_order;
      if (i + 1 < run.log.entries.size()) {
        rec.label = useful_label(ci[i], ci[i + 1], options.theta) ? 1.0 : 0.0;
      } else {
        rec.label = 1.0;  // terminal cut
      }
      dataset.records.push_back(std::move(rec));
    }
  }
  return dataset;
}

CutDataset collect_regressor_data(const std::vector<const Problem*>& problems,
                                  const std::vector<std::string>& run_ids,
                                  const CollectOptions& options) {
  CutDataset dataset;
  dataset.kind = DatasetKind::Regressor;

  for (std::size_t p = 0; p < problems.size(); ++p) {
    RunConfig config;
    config.mode = RunMode::MultiCut;
    config.pool_size = options.pool_size;
    config.tolerance = options.tolerance;
    config.max_iterations = options.max_iterations;
    config.seed = mix_seed(options.seed, p);
    config.workers = options.workers;
    const RunResult run = run_multi_cut(*problems[p], config);

    for (const IterationReplay& rep :
         replay_cut_increments(*problems[p], run.log)) {
      const std::size_t m = rep.eta_after.size();
      // The sentinel start is measured from the eta floor, which drives
      // every ratio to one: such cuts carry no ordering signal.
      const double base = rep.eta_before;
      const double total = rep.eta_after[m - 1] - base;
      for (std::size_t s = 0; s < m; ++s) {
        CutRecord rec;
        const CutLogEntry& entry = run.log.entries[rep.entry_indices[s]];
        rec.features = FeatureVector::from_cut(entry.cut);
        rec.run_id = run_ids[p];
        rec.iteration = entry.cut.gen_iteration;
        rec.order = entry.cut.gen_order;
        rec.label = total > 0.0
                        ? std::clamp((rep.eta_after[s] - base) / total, 0.0, 1.0)
                        : 1.0;
        dataset.records.push_back(std::move(rec));
      }
    }
  }
  return dataset;
}

std::vector<std::uint8_t> shadow_label(const Problem& problem,
                                       const CutLog& log) {
  std::vector<std::uint8_t> useful(log.entries.size(), 0);
  for (const IterationReplay& rep : replay_cut_increments(problem, log)) {
    double prev = rep.eta_before;
    for (std::size_t s = 0; s < rep.eta_after.size(); ++s) {
      const double now = rep.eta_after[s];
      const bool raised = now > prev + 1e-12 * std::max(1.0, std::fabs(now));
      useful[rep.entry_indices[s]] = (s == 0 || raised) ? 1 : 0;
      prev = now;
    }
  }
  return useful;
}

RecognitionCounts recognition_vs_shadow(const Problem& problem,
                                        const CutLog& log) {
  const std::vector<std::uint8_t> truth = shadow_label(problem, log);
  RecognitionCounts counts;
  for (std::size_t i = 0; i < log.entries.size(); ++i) {
    const bool judged = log.entries[i].judged_useful;
    if (truth[i]) {
      ++counts.useful_total;
      if (judged) ++counts.useful_correct;
    } else {
      ++counts.useless_total;
      if (!judged) ++counts.useless_correct;
    }
  }
  return counts;
}

}  // namespace gbd
