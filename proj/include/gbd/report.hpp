#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gbd/engine.hpp"

namespace gbd {

struct RunRecord {
  std::string instance_id;
  std::string mode;
  int pool_size = 1;
  RunStatus status = RunStatus::Converged;
  int iterations = 0;
  int cumulative_cuts = 0;
  double final_ubd = kInf;
  double final_lbd = -kInf;
  double gap = kInf;
  double master_seconds = 0.0;
  double primal_seconds = 0.0;
  FilterStats filter;
};

RunRecord make_record(const std::string& instance_id, const std::string& mode,
                      int pool_size, const RunResult& run);

// One CSV row per run. Wall-clock columns are zeroed when include_timing is
// false so reports can be compared byte for byte across repeats.
std::string records_to_csv(const std::vector<RunRecord>& records,
                           bool include_timing = true);

struct Aggregate {
  int n = 0;
  int converged = 0;
  double mean_iterations = 0.0, median_iterations = 0.0;
  double mean_cuts = 0.0, median_cuts = 0.0;
  double mean_master_seconds = 0.0, median_master_seconds = 0.0;
  double mean_primal_seconds = 0.0, median_primal_seconds = 0.0;
};

Aggregate aggregate(const std::vector<RunRecord>& records);

// Per-mode testing-set summary with the comparison columns filled in when
// the corresponding baseline ran on the same instances.
struct BenchReport {
  std::string mode;
  int pool_size = 1;
  Aggregate stats;
  std::optional<double> useful_recognition;
  std::optional<double> useless_recognition;
  std::optional<double> speedup_vs_multicut;
  std::optional<double> normalized_iterations_vs_multicut;
  std::optional<double> normalized_cuts_vs_single;
};

std::string bench_reports_to_csv(const std::vector<BenchReport>& reports);
std::string bench_reports_to_text(const std::vector<BenchReport>& reports);

}  // namespace gbd
