#include "ofs/net.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <map>

#include "ofs/serialize.hpp"

namespace ofs {

namespace {

constexpr char kMagic[4] = {'O', 'F', 'S', '1'};
constexpr std::size_t kMaxFramePayload = std::size_t{1} << 28;

[[noreturn]] void throw_errno(const std::string& what) {
    throw WireError(what + ": " + std::strerror(errno));
}

void send_all(int fd, const std::uint8_t* data, std::size_t len) {
    std::size_t sent = 0;
    while (sent < len) {
        ssize_t n = ::send(fd, data + sent, len - sent, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw_errno("send failed");
        }
        sent += static_cast<std::size_t>(n);
    }
}

// True when len bytes arrived, false on EOF before the first byte.
bool recv_all(int fd, std::uint8_t* data, std::size_t len) {
    std::size_t got = 0;
    while (got < len) {
        ssize_t n = ::recv(fd, data + got, len - got, 0);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw_errno("recv failed");
        }
        if (n == 0) {
            if (got == 0) return false;
            throw WireError("connection closed mid-frame");
        }
        got += static_cast<std::size_t>(n);
    }
    return true;
}

int tcp_connect(const std::string& host, std::uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    const std::string service = std::to_string(port);
    if (::getaddrinfo(host.c_str(), service.c_str(), &hints, &res) != 0) return -1;
    int fd = -1;
    for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
        ::close(fd);
        fd = -1;
    }
    ::freeaddrinfo(res);
    if (fd >= 0) {
        int one = 1;
        ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    }
    return fd;
}

std::string peer_address(int fd) {
    sockaddr_storage addr{};
    socklen_t len = sizeof(addr);
    if (::getpeername(fd, reinterpret_cast<sockaddr*>(&addr), &len) != 0) return "?";
    char host[NI_MAXHOST];
    char serv[NI_MAXSERV];
    if (::getnameinfo(reinterpret_cast<sockaddr*>(&addr), len, host, sizeof(host), serv,
                      sizeof(serv), NI_NUMERICHOST | NI_NUMERICSERV) != 0)
        return "?";
    return std::string(host) + ":" + serv;
}

} // namespace

void write_frame(int fd, MessageType type, const Bytes& payload) {
    if (payload.size() > kMaxFramePayload) throw WireError("frame payload too large");
    Bytes header(9);
    std::memcpy(header.data(), kMagic, 4);
    header[4] = static_cast<std::uint8_t>(type);
    const auto len = static_cast<std::uint32_t>(payload.size());
    header[5] = static_cast<std::uint8_t>(len >> 24);
    header[6] = static_cast<std::uint8_t>(len >> 16);
    header[7] = static_cast<std::uint8_t>(len >> 8);
    header[8] = static_cast<std::uint8_t>(len);
    send_all(fd, header.data(), header.size());
    if (!payload.empty()) send_all(fd, payload.data(), payload.size());
}

std::optional<Frame> read_frame(int fd) {
    std::uint8_t header[9];
    if (!recv_all(fd, header, sizeof(header))) return std::nullopt;
    if (std::memcmp(header, kMagic, 4) != 0) throw WireError("bad frame magic");
    const auto type = static_cast<MessageType>(header[4]);
    switch (type) {
    case MessageType::kHello:
    case MessageType::kTask:
    case MessageType::kResult:
    case MessageType::kPing:
    case MessageType::kBye:
        break;
    default:
        throw WireError("unknown message type " + std::to_string(header[4]));
    }
    const std::uint32_t len = (std::uint32_t{header[5]} << 24) | (std::uint32_t{header[6]} << 16) |
                              (std::uint32_t{header[7]} << 8) | std::uint32_t{header[8]};
    if (len > kMaxFramePayload) throw WireError("frame payload too large");
    Frame frame;
    frame.type = type;
    frame.payload.resize(len);
    if (len > 0 && !recv_all(fd, frame.payload.data(), len)) throw WireError("connection closed mid-frame");
    return frame;
}

// ---- coordinator ----------------------------------------------------------

struct TcpExecutor::Connection {
    int fd = -1;
    std::string name;
    std::string address;
    WorkerState state = WorkerState::kIdle;
    bool helloed = false;
    bool closed = false;
    int missed_pings = 0;
    std::map<std::uint64_t, Task> in_flight;
    std::mutex write_mu;
    std::thread reader;
};

TcpExecutor::TcpExecutor(TcpExecutorOptions options) : options_(std::move(options)) {
    if (options_.bind_address.empty()) {
        const char* env = std::getenv(kBindAddressEnv);
        options_.bind_address = env != nullptr ? env : "0.0.0.0";
    }
}

TcpExecutor::~TcpExecutor() {
    try {
        shutdown();
    } catch (...) {
    }
}

void TcpExecutor::start() {
    std::unique_lock lock(mu_);
    if (started_) throw std::runtime_error("executor already started");
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw_errno("socket failed");
    int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(options_.port);
    if (::inet_pton(AF_INET, options_.bind_address.c_str(), &addr.sin_addr) != 1) {
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw WireError("invalid bind address: " + options_.bind_address);
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        int fd = listen_fd_;
        listen_fd_ = -1;
        ::close(fd);
        throw_errno("bind failed");
    }
    if (::listen(listen_fd_, 16) != 0) {
        int fd = listen_fd_;
        listen_fd_ = -1;
        ::close(fd);
        throw_errno("listen failed");
    }
    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
    bound_port_ = ntohs(bound.sin_port);
    started_ = true;
    down_ = false;
    acceptor_ = std::thread([this] { acceptor_main(); });
    scheduler_ = std::thread([this] { scheduler_main(); });
}

std::uint16_t TcpExecutor::port() const {
    std::lock_guard lock(mu_);
    return bound_port_;
}

std::size_t TcpExecutor::queued_tasks() const {
    std::lock_guard lock(mu_);
    return queue_.size();
}

std::size_t TcpExecutor::connected_workers() const {
    std::lock_guard lock(mu_);
    std::size_t n = 0;
    for (const auto& conn : connections_)
        if (conn->helloed && conn->state != WorkerState::kLost) ++n;
    return n;
}

std::vector<WorkerInfo> TcpExecutor::registry_snapshot() const {
    std::lock_guard lock(mu_);
    std::vector<WorkerInfo> out;
    out.reserve(connections_.size());
    for (const auto& conn : connections_) {
        if (!conn->helloed && conn->state != WorkerState::kLost) continue;
        out.push_back({conn->name, conn->address, conn->state, conn->in_flight.size()});
    }
    return out;
}

void TcpExecutor::submit(Task task) {
    std::lock_guard lock(mu_);
    if (!started_ || down_) throw std::runtime_error("executor is not running");
    queue_.push_back(std::move(task));
    sched_cv_.notify_all();
}

TaskResult TcpExecutor::wait_completed() {
    std::unique_lock lock(mu_);
    done_cv_.wait(lock, [this] { return !completed_.empty() || down_; });
    if (completed_.empty()) throw std::runtime_error("executor shut down while waiting");
    TaskResult result = std::move(completed_.front());
    completed_.pop_front();
    return result;
}

void TcpExecutor::acceptor_main() {
    int lfd;
    {
        std::lock_guard lock(mu_);
        lfd = listen_fd_;
    }
    for (;;) {
        int fd = ::accept(lfd, nullptr, nullptr);
        if (fd < 0) {
            if (errno == EINTR) continue;
            return; // listener closed on shutdown
        }
        int one = 1;
        ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
        auto conn = std::make_shared<Connection>();
        conn->fd = fd;
        conn->address = peer_address(fd);
        std::lock_guard lock(mu_);
        if (down_) {
            ::close(fd);
            return;
        }
        connections_.push_back(conn);
        conn->reader = std::thread([this, conn] { reader_main(conn); });
    }
}

void TcpExecutor::reader_main(std::shared_ptr<Connection> conn) {
    for (;;) {
        std::optional<Frame> frame;
        try {
            frame = read_frame(conn->fd);
        } catch (const WireError&) {
            frame.reset();
        }
        std::unique_lock lock(mu_);
        if (down_) return;
        if (!frame) { // EOF or protocol error: the worker is gone
            mark_lost(*conn);
            return;
        }
        conn->missed_pings = 0;
        switch (frame->type) {
        case MessageType::kHello: {
            ByteReader reader(frame->payload);
            std::uint32_t version = 0;
            std::string name;
            try {
                version = reader.u32();
                name = reader.str();
            } catch (const SerializationError&) {
                mark_lost(*conn);
                return;
            }
            if (version != kProtocolVersion) {
                lock.unlock();
                try {
                    std::lock_guard wl(conn->write_mu);
                    write_frame(conn->fd, MessageType::kBye, {});
                } catch (const WireError&) {
                }
                lock.lock();
                mark_lost(*conn);
                return;
            }
            conn->name = name;
            conn->helloed = true;
            sched_cv_.notify_all();
            break;
        }
        case MessageType::kResult: {
            ByteReader reader(frame->payload);
            TaskResult result;
            try {
                result.task_id = reader.u64();
                result.status = reader.u8() == 0 ? TaskStatus::kSucceeded : TaskStatus::kFailed;
                result.pure_execution_time = std::chrono::nanoseconds(reader.u64());
                result.payload = reader.take_remaining();
            } catch (const SerializationError&) {
                mark_lost(*conn);
                return;
            }
            result.collected_at = Clock::now();
            conn->in_flight.erase(result.task_id);
            if (conn->state == WorkerState::kBusy && conn->in_flight.empty())
                conn->state = WorkerState::kIdle;
            // A task rerun after a worker loss may finish twice; only the
            // first result counts.
            if (completed_ids_.insert(result.task_id).second) {
                completed_.push_back(std::move(result));
                done_cv_.notify_all();
            }
            sched_cv_.notify_all();
            break;
        }
        case MessageType::kPing:
            break; // already reset the missed-ping counter
        case MessageType::kTask:
        case MessageType::kBye:
            mark_lost(*conn); // workers must not send these
            return;
        }
    }
}

void TcpExecutor::mark_lost(Connection& conn) {
    if (conn.state == WorkerState::kLost) return;
    conn.state = WorkerState::kLost;
    // Requeue at the front so recovered tasks do not starve behind new work.
    for (auto it = conn.in_flight.rbegin(); it != conn.in_flight.rend(); ++it)
        queue_.push_front(std::move(it->second));
    conn.in_flight.clear();
    // Only shut the socket down here; the fd is closed in shutdown() after
    // the reader joins, so its number cannot be reused under a live thread.
    if (!conn.closed) {
        conn.closed = true;
        ::shutdown(conn.fd, SHUT_RDWR);
    }
    sched_cv_.notify_all();
}

void TcpExecutor::try_dispatch() {
    while (!queue_.empty()) {
        Connection* target = nullptr;
        std::shared_ptr<Connection> holder;
        for (auto& conn : connections_) {
            if (conn->helloed && conn->state == WorkerState::kIdle) {
                target = conn.get();
                holder = conn;
                break;
            }
        }
        if (target == nullptr) return;
        Task task = std::move(queue_.front());
        queue_.pop_front();
        target->state = WorkerState::kBusy;
        const std::uint64_t id = task.task_id;
        ByteWriter writer;
        writer.u64(id);
        writer.raw(task.payload);
        target->in_flight.emplace(id, std::move(task));
        Bytes wire = writer.take();
        mu_.unlock();
        bool sent = true;
        try {
            std::lock_guard wl(holder->write_mu);
            write_frame(holder->fd, MessageType::kTask, wire);
        } catch (const WireError&) {
            sent = false;
        }
        mu_.lock();
        if (!sent) mark_lost(*holder);
        if (down_) return;
    }
}

void TcpExecutor::scheduler_main() {
    std::unique_lock lock(mu_);
    auto next_ping = std::chrono::steady_clock::now() + options_.ping_interval;
    while (!down_) {
        try_dispatch();
        if (down_) return;
        sched_cv_.wait_until(lock, next_ping);
        if (down_) return;
        const auto now = std::chrono::steady_clock::now();
        if (now < next_ping) continue;
        next_ping = now + options_.ping_interval;
        // Ping sweep: a worker that missed the last max_missed pings (no
        // frame of any kind arrived) is declared lost. Iterate a snapshot;
        // the acceptor may grow the list while the lock is dropped to send.
        const std::vector<std::shared_ptr<Connection>> snapshot(connections_.begin(),
                                                                connections_.end());
        for (const auto& holder : snapshot) {
            Connection* conn = holder.get();
            if (conn->state == WorkerState::kLost) continue;
            if (conn->missed_pings >= options_.max_missed_pings) {
                mark_lost(*conn);
                continue;
            }
            ++conn->missed_pings;
            mu_.unlock();
            bool sent = true;
            try {
                std::lock_guard wl(holder->write_mu);
                write_frame(holder->fd, MessageType::kPing, {});
            } catch (const WireError&) {
                sent = false;
            }
            mu_.lock();
            if (!sent) mark_lost(*conn);
            if (down_) return;
        }
    }
}

void TcpExecutor::shutdown() {
    std::vector<std::shared_ptr<Connection>> connections;
    {
        std::lock_guard lock(mu_);
        if (!started_ || down_) return;
        down_ = true;
        connections = connections_;
        for (auto& conn : connections) {
            if (conn->closed) continue;
            // Best effort: tell live workers to exit before closing.
            try {
                std::lock_guard wl(conn->write_mu);
                write_frame(conn->fd, MessageType::kBye, {});
            } catch (const WireError&) {
            }
            conn->closed = true;
            ::shutdown(conn->fd, SHUT_RDWR);
        }
        if (listen_fd_ >= 0) ::shutdown(listen_fd_, SHUT_RDWR);
        sched_cv_.notify_all();
        done_cv_.notify_all();
    }
    if (acceptor_.joinable()) acceptor_.join();
    if (scheduler_.joinable()) scheduler_.join();
    for (auto& conn : connections)
        if (conn->reader.joinable()) conn->reader.join();
    // All threads are down; now the fds can be released safely.
    std::lock_guard lock(mu_);
    for (auto& conn : connections_)
        if (conn->fd >= 0) {
            ::close(conn->fd);
            conn->fd = -1;
        }
    if (listen_fd_ >= 0) {
        ::close(listen_fd_);
        listen_fd_ = -1;
    }
}

// ---- worker ---------------------------------------------------------------

namespace {

bool sleep_interruptible(std::chrono::milliseconds total, std::atomic<bool>* stop) {
    const auto slice = std::chrono::milliseconds(50);
    auto remaining = total;
    while (remaining.count() > 0) {
        if (stop != nullptr && stop->load()) return false;
        const auto step = remaining < slice ? remaining : slice;
        std::this_thread::sleep_for(step);
        remaining -= step;
    }
    return stop == nullptr || !stop->load();
}

} // namespace

void worker_loop(const std::string& host, std::uint16_t port, const TaskRunner& runner,
                 const WorkerOptions& options) {
    std::string name = options.name;
    if (name.empty()) name = "worker-" + std::to_string(::getpid());
    auto backoff = options.initial_backoff;
    for (;;) {
        if (options.stop != nullptr && options.stop->load()) return;
        int fd = tcp_connect(host, port);
        if (fd < 0) {
            if (!sleep_interruptible(backoff, options.stop)) return;
            backoff = std::min(backoff * 2, options.max_backoff);
            continue;
        }
        backoff = options.initial_backoff;
        try {
            ByteWriter hello;
            hello.u32(kProtocolVersion);
            hello.str(name);
            write_frame(fd, MessageType::kHello, hello.take());
            for (;;) {
                auto frame = read_frame(fd);
                if (!frame) break; // coordinator went away; reconnect
                switch (frame->type) {
                case MessageType::kTask: {
                    ByteReader reader(frame->payload);
                    Task task;
                    task.task_id = reader.u64();
                    task.payload = reader.take_remaining();
                    task.created_at = Clock::now();
                    TaskResult result = run_task_guarded(runner, task);
                    ByteWriter writer;
                    writer.u64(result.task_id);
                    writer.u8(result.status == TaskStatus::kSucceeded ? 0 : 1);
                    writer.u64(static_cast<std::uint64_t>(result.pure_execution_time.count()));
                    writer.raw(result.payload);
                    write_frame(fd, MessageType::kResult, writer.take());
                    break;
                }
                case MessageType::kPing:
                    write_frame(fd, MessageType::kPing, {});
                    break;
                case MessageType::kBye:
                    ::close(fd);
                    return;
                default:
                    throw WireError("unexpected message from coordinator");
                }
                if (options.stop != nullptr && options.stop->load()) {
                    ::close(fd);
                    return;
                }
            }
        } catch (const WireError&) {
            // fall through to reconnect
        }
        ::close(fd);
        if (!sleep_interruptible(backoff, options.stop)) return;
        backoff = std::min(backoff * 2, options.max_backoff);
    }
}

} // namespace ofs
