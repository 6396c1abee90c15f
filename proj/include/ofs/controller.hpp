#pragma once

#include <string>
#include <vector>

#include "ofs/task.hpp"

namespace ofs {

// One line per collected task result, in collection order.
struct TaskRecord {
    std::size_t iteration = 0; // iteration during which the task was submitted
    std::uint64_t task_id = 0;
    Clock::time_point created_at{};
    Clock::time_point collected_at{};
    std::chrono::nanoseconds pure_execution_time{0};
    TaskStatus status = TaskStatus::kSucceeded;
};

struct RunSummary {
    std::size_t iterations = 0;
    std::size_t tasks = 0;
    std::vector<TaskRecord> records;
    bool aborted = false;     // executor died mid-run; records hold what finished
    std::string abort_reason;
};

// Drives a strategy to completion over an already-started executor:
// per iteration, drain next_task() into the executor, then collect results
// one at a time, forwarding each to the strategy and advancing when the
// strategy reports the iteration complete. Failure results are forwarded
// like any other; resubmission is the strategy's call. A strategy exception
// aborts the run (executor shut down, exception rethrown); an executor
// exception aborts with a partial summary.
RunSummary controller_run(Strategy& strategy, Executor& executor);

} // namespace ofs
