#include "gbd/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace gbd {

namespace {

const char* status_name(RunStatus status) {
  switch (status) {
    case RunStatus::Converged:
      return "converged";
    case RunStatus::IterationLimit:
      return "iteration-limit";
    case RunStatus::Stalled:
      return "stalled";
  }
  return "unknown";
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string opt(const std::optional<double>& v) {
  return v ? num(*v) : std::string();
}

}  // namespace

RunRecord make_record(const std::string& instance_id, const std::string& mode,
                      int pool_size, const RunResult& run) {
  RunRecord rec;
  rec.instance_id = instance_id;
  rec.mode = mode;
  rec.pool_size = pool_size;
  rec.status = run.status;
  rec.iterations = run.trace.iterations;
  rec.cumulative_cuts = run.trace.cumulative_cuts;
  rec.final_ubd = run.trace.ubd.empty() ? kInf : run.trace.ubd.back();
  rec.final_lbd = run.trace.lbd.empty() ? -kInf : run.trace.lbd.back();
  rec.gap = compute_gap(rec.final_ubd, rec.final_lbd);
  rec.master_seconds = run.trace.master_seconds;
  rec.primal_seconds = run.trace.primal_seconds;
  rec.filter = run.filter;
  return rec;
}

std::string records_to_csv(const std::vector<RunRecord>& records,
                           bool include_timing) {
  std::ostringstream out;
  out << "instance,mode,S,status,iterations,cumulative_cuts,final_ubd,"
         "final_lbd,gap,kept_opt,discarded_opt,kept_feas,discarded_feas,"
         "fallbacks,master_seconds,primal_seconds\n";
  for (const RunRecord& r : records) {
    out << r.instance_id << ',' << r.mode << ',' << r.pool_size << ','
        << status_name(r.status) << ',' << r.iterations << ','
        << r.cumulative_cuts << ',' << num(r.final_ubd) << ','
        << num(r.final_lbd) << ',' << num(r.gap) << ','
        << r.filter.kept_optimality << ',' << r.filter.discarded_optimality
        << ',' << r.filter.kept_feasibility << ','
        << r.filter.discarded_feasibility << ',' << r.filter.fallback_iterations
        << ',' << num(include_timing ? r.master_seconds : 0.0) << ','
        << num(include_timing ? r.primal_seconds : 0.0) << '\n';
  }
  return out.str();
}

Aggregate aggregate(const std::vector<RunRecord>& records) {
  Aggregate agg;
  agg.n = static_cast<int>(records.size());
  if (records.empty()) return agg;
  std::vector<double> iters, cuts, master, primal;
  for (const RunRecord& r : records) {
    if (r.status == RunStatus::Converged) ++agg.converged;
    iters.push_back(r.iterations);
    cuts.push_back(r.cumulative_cuts);
    master.push_back(r.master_seconds);
    primal.push_back(r.primal_seconds);
    agg.mean_iterations += r.iterations;
    agg.mean_cuts += r.cumulative_cuts;
    agg.mean_master_seconds += r.master_seconds;
    agg.mean_primal_seconds += r.primal_seconds;
  }
  agg.mean_iterations /= agg.n;
  agg.mean_cuts /= agg.n;
  agg.mean_master_seconds /= agg.n;
  agg.mean_primal_seconds /= agg.n;
  agg.median_iterations = median(iters);
  agg.median_cuts = median(cuts);
  agg.median_master_seconds = median(master);
  agg.median_primal_seconds = median(primal);
  return agg;
}

std::string bench_reports_to_csv(const std::vector<BenchReport>& reports) {
  std::ostringstream out;
  out << "mode,S,instances,converged,mean_iterations,median_iterations,"
         "mean_cuts,median_cuts,mean_master_seconds,mean_primal_seconds,"
         "useful_recognition,useless_recognition,speedup_vs_multicut,"
         "normalized_iterations_vs_multicut,normalized_cuts_vs_single\n";
  for (const BenchReport& r : reports) {
    out << r.mode << ',' << r.pool_size << ',' << r.stats.n << ','
        << r.stats.converged << ',' << num(r.stats.mean_iterations) << ','
        << num(r.stats.median_iterations) << ',' << num(r.stats.mean_cuts)
        << ',' << num(r.stats.median_cuts) << ','
        << num(r.stats.mean_master_seconds) << ','
        << num(r.stats.mean_primal_seconds) << ',' << opt(r.useful_recognition)
        << ',' << opt(r.useless_recognition) << ','
        << opt(r.speedup_vs_multicut) << ','
        << opt(r.normalized_iterations_vs_multicut) << ','
        << opt(r.normalized_cuts_vs_single) << '\n';
  }
  return out.str();
}

std::string bench_reports_to_text(const std::vector<BenchReport>& reports) {
  std::ostringstream out;
  char line[256];
  out << "mode        S  runs conv  iters(mean/med)  cuts(mean/med)   "
         "master+primal(s)  useful%  useless%  speedup\n";
  for (const BenchReport& r : reports) {
    std::snprintf(line, sizeof(line),
                  "%-10s %2d  %4d %4d  %7.2f/%-7.2f  %7.2f/%-7.2f  %8.3f+%-8.3f",
                  r.mode.c_str(), r.pool_size, r.stats.n, r.stats.converged,
                  r.stats.mean_iterations, r.stats.median_iterations,
                  r.stats.mean_cuts, r.stats.median_cuts,
                  r.stats.mean_master_seconds, r.stats.mean_primal_seconds);
    out << line;
    if (r.useful_recognition)
      out << "  " << static_cast<int>(*r.useful_recognition * 100 + 0.5) << '%';
    else
      out << "    -";
    if (r.useless_recognition)
      out << "  " << static_cast<int>(*r.useless_recognition * 100 + 0.5) << '%';
    else
      out << "    -";
    if (r.speedup_vs_multicut) {
      std::snprintf(line, sizeof(line), "  %.2fx", *r.speedup_vs_multicut);
      out << line;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace gbd
