#include "ofs/executor.hpp"

#include <stdexcept>
#include <string>

namespace ofs {

std::chrono::nanoseconds measure_task_cycle(const Task& task, const TaskResult& result) {
    if (task.task_id != result.task_id) {
        throw std::invalid_argument("measure_task_cycle: task id mismatch");
    }
    return std::chrono::duration_cast<std::chrono::nanoseconds>(result.collected_at -
                                                                task.created_at);
}

TaskResult run_task_guarded(const TaskRunner& runner, const Task& task) {
    try {
        TaskResult r = runner(task);
        r.task_id = task.task_id;
        return r;
    } catch (const std::exception& e) {
        TaskResult r;
        r.task_id = task.task_id;
        r.status = TaskStatus::kFailed;
        const std::string what = e.what();
        r.payload.assign(what.begin(), what.end());
        return r;
    }
}

// ---- SyncExecutor ---------------------------------------------------------

SyncExecutor::SyncExecutor(TaskRunner runner) : runner_(std::move(runner)) {}

void SyncExecutor::start() { started_ = true; }

void SyncExecutor::submit(Task task) {
    if (!started_ || down_) throw std::runtime_error("executor not accepting tasks");
    queue_.push_back(std::move(task));
}

TaskResult SyncExecutor::wait_completed() {
    if (queue_.empty()) throw std::logic_error("wait_completed with nothing in flight");
    Task task = std::move(queue_.front());
    queue_.pop_front();
    TaskResult r = run_task_guarded(runner_, task);
    r.collected_at = Clock::now();
    return r;
}

void SyncExecutor::shutdown() { down_ = true; }

// ---- PoolExecutor ---------------------------------------------------------

PoolExecutor::PoolExecutor(std::size_t threads, TaskRunner runner)
    : runner_(std::move(runner)), thread_count_(threads) {
    if (threads == 0) throw std::invalid_argument("pool executor needs at least one thread");
}

PoolExecutor::~PoolExecutor() { shutdown(); }

void PoolExecutor::start() {
    std::lock_guard lock(mu_);
    if (started_) return;
    started_ = true;
    for (std::size_t i = 0; i < thread_count_; ++i) {
        threads_.emplace_back([this] { worker_main(); });
    }
}

void PoolExecutor::worker_main() {
    for (;;) {
        Task task;
        {
            std::unique_lock lock(mu_);
            task_cv_.wait(lock, [this] { return down_ || !queue_.empty(); });
            if (queue_.empty()) return; // shutting down
            task = std::move(queue_.front());
            queue_.pop_front();
        }
        TaskResult r = run_task_guarded(runner_, task);
        {
            std::lock_guard lock(mu_);
            r.collected_at = Clock::now();
            completed_.push_back(std::move(r));
        }
        done_cv_.notify_one();
    }
}

void PoolExecutor::submit(Task task) {
    {
        std::lock_guard lock(mu_);
        if (!started_ || down_) throw std::runtime_error("executor not accepting tasks");
        queue_.push_back(std::move(task));
    }
    task_cv_.notify_one();
}

TaskResult PoolExecutor::wait_completed() {
    std::unique_lock lock(mu_);
    done_cv_.wait(lock, [this] { return !completed_.empty(); });
    TaskResult r = std::move(completed_.front());
    completed_.pop_front();
    return r;
}

void PoolExecutor::shutdown() {
    {
        std::lock_guard lock(mu_);
        if (down_) return;
        down_ = true;
    }
    task_cv_.notify_all();
    for (auto& t : threads_) {
        if (t.joinable()) t.join();
    }
    threads_.clear();
}

} // namespace ofs
