#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ofs/island.hpp"

namespace ofs {

struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One line per collected task. Timestamps are nanoseconds since run start
// (monotonic clock), so rows are meaningful across machines and restarts.
struct TaskMetricsRow {
    std::size_t iteration = 0;
    std::uint64_t task_id = 0;
    std::uint64_t created_ns = 0;
    std::uint64_t collected_ns = 0;
    std::uint64_t pure_ns = 0;
    std::string status;            // succeeded | failed
    std::uint64_t cycle_ns = 0;    // collected - created
    double overhead_frac = 0.0;    // (cycle - pure) / cycle, clamped at 0

    bool operator==(const TaskMetricsRow&) const = default;
};

// One line per population size of a sweep.
struct ReportRow {
    std::size_t population = 0;
    double serial_wall_s = 0.0;
    double distributed_wall_s = 0.0;
    double speedup = 0.0;
    double mean_overhead_frac = 0.0;
    std::string status; // "ok" or an error note (commas stripped)

    bool operator==(const ReportRow&) const = default;
};

void write_statistics_csv(std::ostream& out, const std::vector<IterationStats>& stats);
std::vector<IterationStats> read_statistics_csv(std::istream& in);

void write_metrics_csv(std::ostream& out, const std::vector<TaskMetricsRow>& rows);
std::vector<TaskMetricsRow> read_metrics_csv(std::istream& in);

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);
std::vector<ReportRow> read_report_csv(std::istream& in);

} // namespace ofs
