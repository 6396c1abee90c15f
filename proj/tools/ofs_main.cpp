#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ofs/config.hpp"
#include "ofs/csv.hpp"
#include "ofs/harness.hpp"
#include "ofs/island.hpp"
#include "ofs/net.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

std::vector<std::size_t> parse_population_list(const std::string& csv) {
    std::vector<std::size_t> out;
    std::stringstream in(csv);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        if (cell.empty()) throw ofs::ConfigError("sweep: empty population entry");
        std::size_t used = 0;
        unsigned long long value = 0;
        try {
            value = std::stoull(cell, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != cell.size() || value == 0) {
            throw ofs::ConfigError("sweep: bad population '" + cell + "'");
        }
        out.push_back(static_cast<std::size_t>(value));
    }
    if (out.empty()) throw ofs::ConfigError("sweep: population list is empty");
    return out;
}

int cmd_run(const std::string& config_path, const std::optional<std::uint64_t>& seed,
            const std::optional<std::string>& executor, const std::optional<std::string>& out_dir) {
    ofs::ExperimentConfig cfg;
    try {
        cfg = ofs::parse_config_file(config_path);
        if (seed.has_value()) cfg.seed = *seed;
        if (executor.has_value()) cfg.executor = *executor;
        if (out_dir.has_value()) cfg.out_dir = *out_dir;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    try {
        const ofs::RunOutput output = ofs::run_experiment(cfg);
        ofs::write_outputs(output, cfg.out_dir);
        if (output.summary.aborted) {
            std::cerr << "error: run aborted: " << output.summary.abort_reason
                      << " (partial outputs in " << cfg.out_dir << ")\n";
            return kExitRuntime;
        }
        std::cout << "completed " << output.summary.iterations << " iterations, "
                  << output.summary.tasks << " tasks, front size " << output.front.size()
                  << ", wall " << output.total_wall_s << " s; outputs in " << cfg.out_dir << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

int cmd_sweep(const std::string& config_path, const std::string& populations_csv) {
    ofs::ExperimentConfig cfg;
    std::vector<std::size_t> populations;
    try {
        cfg = ofs::parse_config_file(config_path);
        populations = parse_population_list(populations_csv);
        for (const std::size_t population : populations) {
            ofs::ExperimentConfig probe = cfg;
            probe.total_individuals = population;
            probe.validate();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    try {
        const auto rows = ofs::run_sweep(cfg, populations);
        std::filesystem::create_directories(cfg.out_dir);
        const std::string path = cfg.out_dir + "/report.csv";
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        ofs::write_report_csv(out, rows);
        std::cout << ofs::render_report(rows) << "report written to " << path << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

int cmd_worker(const std::string& connect, const std::string& name) {
    std::string host;
    std::uint16_t port = 0;
    try {
        const ofs::ExecutorSpec spec = ofs::parse_executor_spec("tcp:" + connect);
        host = spec.host;
        port = spec.port;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    try {
        ofs::WorkerOptions options;
        options.name = name;
        ofs::worker_loop(host, port, ofs::run_island_task, options);
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

int cmd_report(const std::string& dir) {
    try {
        const std::string report_path = dir + "/report.csv";
        if (std::filesystem::exists(report_path)) {
            std::ifstream in(report_path);
            std::cout << ofs::render_report(ofs::read_report_csv(in));
            return kExitOk;
        }
        const std::string stats_path = dir + "/statistics.csv";
        const std::string metrics_path = dir + "/metrics.csv";
        if (!std::filesystem::exists(stats_path) && !std::filesystem::exists(metrics_path)) {
            std::cerr << "error: no report.csv, statistics.csv or metrics.csv in " << dir << '\n';
            return kExitConfig;
        }
        if (std::filesystem::exists(stats_path)) {
            std::ifstream in(stats_path);
            const auto stats = ofs::read_statistics_csv(in);
            std::cout << "iterations recorded: " << stats.size() << '\n';
            if (!stats.empty()) {
                const auto& last = stats.back();
                std::cout << "final front size:    " << last.front_size << '\n'
                          << "final quality:       " << ofs::format_double(last.hypervolume_or_gd)
                          << '\n'
                          << "total wall time:     " << ofs::format_double(last.wall_time_s)
                          << " s\n";
            }
        }
        if (std::filesystem::exists(metrics_path)) {
            std::ifstream in(metrics_path);
            const auto metrics = ofs::read_metrics_csv(in);
            std::size_t failed = 0;
            double overhead_sum = 0.0;
            for (const auto& row : metrics) {
                if (row.status != "succeeded") ++failed;
                overhead_sum += row.overhead_frac;
            }
            std::cout << "tasks executed:      " << metrics.size() << " (" << failed
                      << " failed)\n";
            if (!metrics.empty()) {
                std::cout << "mean task overhead:  "
                          << ofs::format_double(overhead_sum / metrics.size()) << '\n';
            }
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Island-model multi-objective evolution over local or TCP executors"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> executor;
    std::optional<std::string> out_dir;
    auto* run = app.add_subcommand("run", "Run one experiment from a config file");
    run->add_option("--config", config_path, "key=value config file")->required();
    run->add_option("--seed", seed, "override the master seed");
    run->add_option("--executor", executor, "override: sync | pool:<n> | tcp:<host>:<port>");
    run->add_option("--out", out_dir, "override the output directory");

    std::string sweep_config;
    std::string populations;
    auto* sweep = app.add_subcommand("sweep", "Serial-vs-distributed comparison over population sizes");
    sweep->add_option("--config", sweep_config, "key=value config file")->required();
    sweep->add_option("--populations", populations, "comma-separated population sizes")->required();

    std::string connect;
    std::string worker_name;
    auto* worker = app.add_subcommand("worker", "Serve tasks for a remote coordinator");
    worker->add_option("--connect", connect, "coordinator <host>:<port>")->required();
    worker->add_option("--name", worker_name, "worker name shown in the registry");

    std::string report_dir;
    auto* report = app.add_subcommand("report", "Summarize emitted CSVs as text");
    report->add_option("--in", report_dir, "directory holding run or sweep outputs")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (run->parsed()) return cmd_run(config_path, seed, executor, out_dir);
    if (sweep->parsed()) return cmd_sweep(sweep_config, populations);
    if (worker->parsed()) return cmd_worker(connect, worker_name);
    if (report->parsed()) return cmd_report(report_dir);
    return kExitConfig;
}
