#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ofs/config.hpp"
#include "ofs/controller.hpp"
#include "ofs/csv.hpp"
#include "ofs/island.hpp"

namespace ofs {

// Everything one experiment produces, in memory; write_outputs() persists it.
struct RunOutput {
    RunSummary summary;
    std::vector<IterationStats> statistics;
    std::vector<ParetoArchive::Entry> front; // canonical order
    std::vector<TaskMetricsRow> metrics;
    double total_wall_s = 0.0;
};

/// Fraction of a task's cycle spent outside pure execution. A cycle shorter
/// than the pure time (clock skew across hosts) clamps to 0 with a warning
/// on stderr. Throws std::invalid_argument unless cycle > 0 and pure >= 0.
double compute_overhead(std::uint64_t cycle_ns, std::uint64_t pure_ns);

/// serial wall time over distributed wall time; throws std::invalid_argument
/// on non-positive input.
double compute_speedup(double serial_wall_s, double distributed_wall_s);

/// Runs the configured experiment on an executor built from cfg.executor.
RunOutput run_experiment(const ExperimentConfig& cfg);
/// Same, but over a caller-owned executor that is already started; the
/// caller also shuts it down. Lets tests wire in arbitrary executors.
RunOutput run_experiment(const ExperimentConfig& cfg, Executor& executor);

/// Writes front.txt, statistics.csv and metrics.csv into dir (created if
/// missing).
void write_outputs(const RunOutput& output, const std::string& dir);

/// For each population size: a serial baseline (one island, sync executor)
/// and a distributed run per the base config, with the same total
/// generation budget; failures are recorded in the row and the sweep
/// continues.
std::vector<ReportRow> run_sweep(const ExperimentConfig& base,
                                 const std::vector<std::size_t>& populations);

/// Renders report rows as an aligned text table.
std::string render_report(const std::vector<ReportRow>& rows);

} // namespace ofs
