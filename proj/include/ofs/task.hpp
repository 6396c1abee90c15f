#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ofs {

using Bytes = std::vector<std::uint8_t>;
using Clock = std::chrono::steady_clock;

// Unit of work shipped to an executor. The payload is opaque at this layer;
// higher layers serialize whatever they need into it.
struct Task {
    std::uint64_t task_id = 0;
    Bytes payload;
    Clock::time_point created_at{};
};

enum class TaskStatus { kSucceeded, kFailed };

struct TaskResult {
    std::uint64_t task_id = 0;
    TaskStatus status = TaskStatus::kSucceeded;
    Bytes payload;                               // error text when failed
    std::chrono::nanoseconds pure_execution_time{0};
    Clock::time_point collected_at{};
};

/// Creation-to-collection wall time; the distribution overhead numerator
/// includes everything outside pure execution.
std::chrono::nanoseconds measure_task_cycle(const Task& task, const TaskResult& result);

// Supplies tasks iteration by iteration and absorbs their results. Driven
// by a single control flow; implementations need no internal locking.
class Strategy {
  public:
    virtual ~Strategy() = default;
    virtual void init() = 0;
    /// Next task of the current iteration, or nothing when drained.
    virtual std::optional<Task> next_task() = 0;
    /// Receives every result exactly once, failures included. A strategy
    /// that wants a failed task retried emits a replacement from next_task().
    virtual void on_result(const TaskResult& result) = 0;
    virtual bool iteration_complete() const = 0;
    virtual void advance_iteration() = 0;
    /// True once the whole run is finished; next_task() must then stay empty.
    virtual bool complete() const = 0;
};

// Executes tasks with arbitrary internal parallelism. Every submitted task
// surfaces exactly once through wait_completed(), absent shutdown.
class Executor {
  public:
    virtual ~Executor() = default;
    virtual void start() = 0;
    virtual void submit(Task task) = 0;
    /// Blocks until some submitted task finishes. Calling with nothing in
    /// flight is a programming error; implementations may throw or block.
    virtual TaskResult wait_completed() = 0;
    virtual void shutdown() = 0;
};

/// Runs a task and reports payload, status and pure execution time.
using TaskRunner = std::function<TaskResult(const Task&)>;

/// Invokes the runner, converting any exception into a failed TaskResult
/// whose payload carries the error text.
TaskResult run_task_guarded(const TaskRunner& runner, const Task& task);

} // namespace ofs
