#include "ofs/controller.hpp"

#include <stdexcept>
#include <unordered_map>

namespace ofs {

namespace {

struct Submitted {
    std::size_t iteration;
    Clock::time_point created_at;
};

} // namespace

RunSummary controller_run(Strategy& strategy, Executor& executor) {
    RunSummary summary;
    std::unordered_map<std::uint64_t, Submitted> in_flight;

    try {
        strategy.init();
        while (!strategy.complete()) {
            while (auto task = strategy.next_task()) {
                const auto id = task->task_id;
                if (!in_flight.emplace(id, Submitted{summary.iterations, task->created_at})
                         .second) {
                    throw std::logic_error("strategy reused task id " + std::to_string(id));
                }
                ++summary.tasks;
                executor.submit(std::move(*task));
            }
            if (in_flight.empty()) {
                // A strategy that emits no tasks must close the iteration
                // itself; anything else is a stall, not a wait.
                if (!strategy.iteration_complete()) {
                    throw std::logic_error("strategy stalled: no tasks and iteration open");
                }
                strategy.advance_iteration();
                ++summary.iterations;
                continue;
            }

            TaskResult result;
            try {
                result = executor.wait_completed();
            } catch (const std::exception& e) {
                summary.aborted = true;
                summary.abort_reason = e.what();
                return summary;
            }

            const auto it = in_flight.find(result.task_id);
            if (it == in_flight.end()) {
                throw std::logic_error("executor returned unknown task id " +
                                       std::to_string(result.task_id));
            }
            TaskRecord record;
            record.iteration = it->second.iteration;
            record.task_id = result.task_id;
            record.created_at = it->second.created_at;
            record.collected_at = result.collected_at;
            record.pure_execution_time = result.pure_execution_time;
            record.status = result.status;
            in_flight.erase(it);

            strategy.on_result(result);
            summary.records.push_back(record);

            if (strategy.iteration_complete()) {
                strategy.advance_iteration();
                ++summary.iterations;
            }
        }
    } catch (...) {
        executor.shutdown();
        throw;
    }
    return summary;
}

} // namespace ofs
