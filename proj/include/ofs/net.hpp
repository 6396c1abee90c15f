#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ofs/task.hpp"

namespace ofs {

// ---- wire protocol --------------------------------------------------------
//
// Every message: 4-byte magic "OFS1", 1-byte type, 4-byte big-endian payload
// length, then the payload. Unknown types or a bad magic close the
// connection with an error.

constexpr std::uint32_t kProtocolVersion = 1;
constexpr std::uint16_t kDefaultPort = 7007;
/// Environment variable that overrides the coordinator bind address.
constexpr const char* kBindAddressEnv = "OFS_BIND_ADDR";

enum class MessageType : std::uint8_t {
    kHello = 1, // worker -> coordinator: u32 protocol version, string name
    kTask = 2,  // coordinator -> worker: u64 task id, task payload
    kResult = 3, // worker -> coordinator: u64 id, u8 status, u64 pure ns, payload
    kPing = 4,  // either direction, empty; receiver echoes
    kBye = 5,   // coordinator -> worker: shut down, empty
};

struct WireError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Frame {
    MessageType type{};
    Bytes payload;
};

/// Blocking framed write; throws WireError on socket failure.
void write_frame(int fd, MessageType type, const Bytes& payload);
/// Blocking framed read; empty on clean EOF, WireError on malformed data.
std::optional<Frame> read_frame(int fd);

// ---- coordinator ----------------------------------------------------------

enum class WorkerState { kIdle, kBusy, kLost };

struct WorkerInfo {
    std::string name;
    std::string address;
    WorkerState state = WorkerState::kIdle;
    std::size_t tasks_in_flight = 0;
};

struct TcpExecutorOptions {
    std::string bind_address;  // empty: $OFS_BIND_ADDR, else 0.0.0.0
    std::uint16_t port = 0;    // 0 picks an ephemeral port
    std::chrono::milliseconds ping_interval{5000};
    int max_missed_pings = 3;
};

// Listens for workers and farms submitted tasks out to them, one task per
// worker at a time, FIFO. A worker that hits EOF or stops answering pings
// is marked lost and its in-flight task is requeued; results are
// deduplicated by task id, so re-executed tasks still complete exactly once.
class TcpExecutor : public Executor {
  public:
    explicit TcpExecutor(TcpExecutorOptions options = {});
    ~TcpExecutor() override;

    void start() override;
    void submit(Task task) override;
    TaskResult wait_completed() override;
    void shutdown() override;

    /// Port actually bound (useful with an ephemeral port request).
    std::uint16_t port() const;
    std::vector<WorkerInfo> registry_snapshot() const;
    std::size_t queued_tasks() const;
    std::size_t connected_workers() const;

  private:
    struct Connection;
    void acceptor_main();
    void scheduler_main();
    void reader_main(std::shared_ptr<Connection> conn);
    void mark_lost(Connection& conn); // callers hold mu_
    void try_dispatch();              // callers hold mu_

    TcpExecutorOptions options_;
    mutable std::mutex mu_;
    std::condition_variable sched_cv_;
    std::condition_variable done_cv_;
    std::vector<std::shared_ptr<Connection>> connections_;
    std::deque<Task> queue_;
    std::deque<TaskResult> completed_;
    std::set<std::uint64_t> completed_ids_;
    int listen_fd_ = -1;
    std::uint16_t bound_port_ = 0;
    bool started_ = false;
    bool down_ = false;
    std::thread acceptor_;
    std::thread scheduler_;
};

// ---- worker ---------------------------------------------------------------

struct WorkerOptions {
    std::string name;                              // default: worker-<pid>
    std::chrono::milliseconds initial_backoff{1000};
    std::chrono::milliseconds max_backoff{30000};
    std::atomic<bool>* stop = nullptr;             // optional cooperative stop
};

/// Connects to the coordinator, executes TASK frames with the runner and
/// replies with RESULT frames. On connection loss it reconnects with
/// exponential backoff (reset after a successful connect). Returns when the
/// coordinator says BYE or the stop flag is raised.
void worker_loop(const std::string& host, std::uint16_t port, const TaskRunner& runner,
                 const WorkerOptions& options = {});

} // namespace ofs
