#pragma once

#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>
#include <vector>

#include "ofs/task.hpp"

namespace ofs {

// Runs everything in the calling thread. Execution is deferred until
// wait_completed(), so a strategy can finish submitting a whole iteration
// before anything runs; results come back strictly in submission order,
// which makes runs with this executor fully reproducible.
class SyncExecutor : public Executor {
  public:
    explicit SyncExecutor(TaskRunner runner);

    void start() override;
    void submit(Task task) override;
    TaskResult wait_completed() override;
    void shutdown() override;

  private:
    TaskRunner runner_;
    std::deque<Task> queue_;
    bool started_ = false;
    bool down_ = false;
};

// Fixed-size thread pool; tasks run as workers free up, results surface in
// completion order.
class PoolExecutor : public Executor {
  public:
    PoolExecutor(std::size_t threads, TaskRunner runner);
    ~PoolExecutor() override;

    void start() override;
    void submit(Task task) override;
    TaskResult wait_completed() override;
    void shutdown() override;

  private:
    void worker_main();

    TaskRunner runner_;
    std::size_t thread_count_;
    std::vector<std::thread> threads_;
    std::mutex mu_;
    std::condition_variable task_cv_;
    std::condition_variable done_cv_;
    std::deque<Task> queue_;
    std::deque<TaskResult> completed_;
    bool started_ = false;
    bool down_ = false;
};

} // namespace ofs
