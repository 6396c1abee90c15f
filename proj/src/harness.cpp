#include "ofs/harness.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "ofs/executor.hpp"
#include "ofs/net.hpp"

namespace ofs {

double compute_overhead(std::uint64_t cycle_ns, std::uint64_t pure_ns) {
    if (cycle_ns == 0) throw std::invalid_argument("overhead: cycle time must be positive");
    if (pure_ns > cycle_ns) {
        std::cerr << "warning: task cycle (" << cycle_ns << " ns) shorter than pure time ("
                  << pure_ns << " ns); clamping overhead to 0\n";
        return 0.0;
    }
    return static_cast<double>(cycle_ns - pure_ns) / static_cast<double>(cycle_ns);
}

double compute_speedup(double serial_wall_s, double distributed_wall_s) {
    if (serial_wall_s <= 0.0 || distributed_wall_s <= 0.0) {
        throw std::invalid_argument("speedup: wall times must be positive");
    }
    return serial_wall_s / distributed_wall_s;
}

namespace {

StrategyConfig to_strategy_config(const ExperimentConfig& cfg) {
    StrategyConfig out;
    out.problem = make_problem(cfg.problem, cfg.eval_cost_us);
    out.total_individuals = cfg.total_individuals;
    out.island_count = cfg.island_count;
    out.iterations = cfg.iterations;
    out.generations_per_iteration = cfg.generations_per_iteration;
    out.migration_count = cfg.migration_count;
    out.engine.topology_spec = cfg.topology;
    out.engine.crossover_probability = cfg.crossover_probability;
    out.engine.crossover_eta = cfg.crossover_eta;
    out.engine.mutation_probability = cfg.mutation_probability;
    out.engine.mutation_eta = cfg.mutation_eta;
    out.engine.archive_capacity = cfg.island_archive_capacity;
    out.global_archive_capacity = cfg.global_archive_capacity;
    out.seed = cfg.seed;
    return out;
}

std::vector<TaskMetricsRow> to_metrics_rows(const std::vector<TaskRecord>& records,
                                            Clock::time_point run_start) {
    std::vector<TaskMetricsRow> rows;
    rows.reserve(records.size());
    for (const auto& record : records) {
        TaskMetricsRow row;
        row.iteration = record.iteration;
        row.task_id = record.task_id;
        const auto since = [&](Clock::time_point t) -> std::uint64_t {
            const auto delta =
                std::chrono::duration_cast<std::chrono::nanoseconds>(t - run_start).count();
            return delta > 0 ? static_cast<std::uint64_t>(delta) : 0;
        };
        row.created_ns = since(record.created_at);
        row.collected_ns = since(record.collected_at);
        row.pure_ns = static_cast<std::uint64_t>(record.pure_execution_time.count());
        row.status = record.status == TaskStatus::kSucceeded ? "succeeded" : "failed";
        row.cycle_ns = row.collected_ns > row.created_ns ? row.collected_ns - row.created_ns : 0;
        row.overhead_frac = row.cycle_ns == 0 ? 0.0 : compute_overhead(row.cycle_ns, row.pure_ns);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

RunOutput run_experiment(const ExperimentConfig& cfg, Executor& executor) {
    cfg.validate();
    IslandStrategy strategy(to_strategy_config(cfg));
    const auto run_start = Clock::now();
    RunSummary summary = controller_run(strategy, executor);
    RunOutput out;
    out.total_wall_s = std::chrono::duration<double>(Clock::now() - run_start).count();
    out.statistics = strategy.statistics();
    out.front = canonical_sorted(strategy.global_front().entries());
    out.metrics = to_metrics_rows(summary.records, run_start);
    out.summary = std::move(summary);
    return out;
}

RunOutput run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const ExecutorSpec spec = parse_executor_spec(cfg.executor);
    std::unique_ptr<Executor> executor;
    switch (spec.kind) {
    case ExecutorSpec::Kind::kSync:
        executor = std::make_unique<SyncExecutor>(run_island_task);
        break;
    case ExecutorSpec::Kind::kPool:
        executor = std::make_unique<PoolExecutor>(spec.threads, run_island_task);
        break;
    case ExecutorSpec::Kind::kTcp: {
        TcpExecutorOptions options;
        options.bind_address = spec.host;
        options.port = spec.port;
        executor = std::make_unique<TcpExecutor>(options);
        break;
    }
    }
    executor->start();
    try {
        RunOutput out = run_experiment(cfg, *executor);
        executor->shutdown();
        return out;
    } catch (...) {
        executor->shutdown();
        throw;
    }
}

void write_outputs(const RunOutput& output, const std::string& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream front(dir + "/front.txt");
        if (!front) throw std::runtime_error("cannot write " + dir + "/front.txt");
        front << "# non-dominated front: one point per line, objectives space-separated\n";
        std::vector<Objectives> points;
        points.reserve(output.front.size());
        for (const auto& entry : output.front) points.push_back(entry.objectives);
        write_front(front, points);
    }
    {
        std::ofstream stats(dir + "/statistics.csv");
        if (!stats) throw std::runtime_error("cannot write " + dir + "/statistics.csv");
        write_statistics_csv(stats, output.statistics);
    }
    {
        std::ofstream metrics(dir + "/metrics.csv");
        if (!metrics) throw std::runtime_error("cannot write " + dir + "/metrics.csv");
        write_metrics_csv(metrics, output.metrics);
    }
}

std::vector<ReportRow> run_sweep(const ExperimentConfig& base,
                                 const std::vector<std::size_t>& populations) {
    std::vector<ReportRow> rows;
    for (const std::size_t population : populations) {
        ReportRow row;
        row.population = population;
        try {
            ExperimentConfig serial = base;
            serial.total_individuals = population;
            serial.island_count = 1;
            serial.executor = "sync";
            serial.migration_count = 0; // one island exchanges with nobody

            ExperimentConfig distributed = base;
            distributed.total_individuals = population;

            const RunOutput serial_out = run_experiment(serial);
            if (serial_out.summary.aborted) {
                throw std::runtime_error("serial run aborted: " + serial_out.summary.abort_reason);
            }
            const RunOutput distributed_out = run_experiment(distributed);
            if (distributed_out.summary.aborted) {
                throw std::runtime_error("distributed run aborted: " +
                                         distributed_out.summary.abort_reason);
            }
            row.serial_wall_s = serial_out.total_wall_s;
            row.distributed_wall_s = distributed_out.total_wall_s;
            row.speedup = compute_speedup(row.serial_wall_s, row.distributed_wall_s);
            double overhead_sum = 0.0;
            for (const auto& metric : distributed_out.metrics) {
                overhead_sum += metric.overhead_frac;
            }
            row.mean_overhead_frac = distributed_out.metrics.empty()
                                         ? 0.0
                                         : overhead_sum / distributed_out.metrics.size();
            row.status = "ok";
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_report(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    out << std::left << std::setw(12) << "population" << std::right << std::setw(14)
        << "serial_s" << std::setw(16) << "distributed_s" << std::setw(10) << "speedup"
        << std::setw(12) << "overhead" << "  status\n";
    for (const auto& row : rows) {
        out << std::left << std::setw(12) << row.population << std::right << std::fixed
            << std::setprecision(3) << std::setw(14) << row.serial_wall_s << std::setw(16)
            << row.distributed_wall_s << std::setw(10) << row.speedup << std::setw(12)
            << row.mean_overhead_frac << "  " << row.status << '\n';
        out.unsetf(std::ios::fixed);
    }
    return out.str();
}

} // namespace ofs
