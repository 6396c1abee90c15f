#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ofs/csv.hpp"
#include "ofs/executor.hpp"
#include "ofs/harness.hpp"

using namespace ofs;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::mt19937_64 rng(std::random_device{}());
        path = fs::temp_directory_path() /
               ("ofs_test_" + std::to_string(rng()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.problem = "zdt1";
    cfg.total_individuals = 12;
    cfg.island_count = 3;
    cfg.iterations = 3;
    cfg.generations_per_iteration = 2;
    cfg.migration_count = 1;
    cfg.seed = 9;
    return cfg;
}

double mean_overhead(const std::vector<TaskMetricsRow>& rows) {
    REQUIRE(!rows.empty());
    double sum = 0.0;
    for (const auto& row : rows) sum += row.overhead_frac;
    return sum / static_cast<double>(rows.size());
}

} // namespace

// ---------------------------------------------------------------------------
// config parsing
// ---------------------------------------------------------------------------

TEST_CASE("every config key parses, with comments and stray whitespace") {
    const std::string text =
        "# experiment description\n"
        "problem = zdt3\n"
        "eval_cost_us=250   # inline note\n"
        "  total_individuals = 200  \n"
        "island_count=4\n"
        "\n"
        "iterations = 7\n"
        "generations_per_iteration = 3\n"
        "migration_count = 2\n"
        "topology = smallworld:k=2,p=0.1\n"
        "crossover_probability = 0.8\n"
        "crossover_eta = 10\n"
        "mutation_probability = 0.05\n"
        "mutation_eta = 30\n"
        "island_archive_capacity = 0\n"
        "global_archive_capacity = 500\n"
        "executor = pool:4\n"
        "seed = 42\n"
        "out_dir = results/run1\n";
    const ExperimentConfig cfg = parse_config_text(text);
    CHECK(cfg.problem == "zdt3");
    CHECK(cfg.eval_cost_us == 250);
    CHECK(cfg.total_individuals == 200);
    CHECK(cfg.island_count == 4);
    CHECK(cfg.iterations == 7);
    CHECK(cfg.generations_per_iteration == 3);
    CHECK(cfg.migration_count == 2);
    CHECK(cfg.topology == "smallworld:k=2,p=0.1");
    CHECK(cfg.crossover_probability == 0.8);
    CHECK(cfg.crossover_eta == 10.0);
    CHECK(cfg.mutation_probability == 0.05);
    CHECK(cfg.mutation_eta == 30.0);
    CHECK(cfg.island_archive_capacity == 0);
    CHECK(cfg.global_archive_capacity == 500);
    CHECK(cfg.executor == "pool:4");
    CHECK(cfg.seed == 42);
    CHECK(cfg.out_dir == "results/run1");
    cfg.validate(); // and the whole thing is coherent
}

TEST_CASE("an empty config keeps the documented defaults") {
    const ExperimentConfig cfg = parse_config_text("# nothing but comments\n\n");
    CHECK(cfg.problem == "zdt1");
    CHECK(cfg.total_individuals == 100);
    CHECK(cfg.island_count == 10);
    CHECK(cfg.iterations == 100);
    CHECK(cfg.generations_per_iteration == 10);
    CHECK(cfg.migration_count == 5);
    CHECK(cfg.executor == "sync");
    CHECK(cfg.mutation_probability < 0.0); // sentinel: derive from genome length
    cfg.validate();
}

TEST_CASE("config errors carry the offending line") {
    CHECK_THROWS_AS(parse_config_text("no_such_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("just some words\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("seed = not_a_number\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("eval_cost_us = 12.5\n"), ConfigError);
    try {
        parse_config_text("problem = zdt1\nmystery = 3\n");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
        CHECK(std::string(e.what()).find("mystery") != std::string::npos);
    }
}

TEST_CASE("config files load from disk and missing paths are reported") {
    TempDir dir;
    const fs::path file = dir.path / "exp.cfg";
    {
        std::ofstream out(file);
        out << "problem = zdt2\nseed = 7\n";
    }
    const ExperimentConfig cfg = parse_config_file(file.string());
    CHECK(cfg.problem == "zdt2");
    CHECK(cfg.seed == 7);
    CHECK_THROWS_AS(parse_config_file((dir.path / "absent.cfg").string()), ConfigError);
}

TEST_CASE("executor specs parse into their three kinds") {
    const ExecutorSpec sync = parse_executor_spec("sync");
    CHECK(sync.kind == ExecutorSpec::Kind::kSync);

    const ExecutorSpec pool = parse_executor_spec("pool:6");
    CHECK(pool.kind == ExecutorSpec::Kind::kPool);
    CHECK(pool.threads == 6);

    const ExecutorSpec tcp = parse_executor_spec("tcp:example.host:7007");
    CHECK(tcp.kind == ExecutorSpec::Kind::kTcp);
    CHECK(tcp.host == "example.host");
    CHECK(tcp.port == 7007);

    // The last colon splits host and port, so bare IPv6 addresses work.
    const ExecutorSpec v6 = parse_executor_spec("tcp:::1:9000");
    CHECK(v6.host == "::1");
    CHECK(v6.port == 9000);

    const ExecutorSpec ephemeral = parse_executor_spec("tcp:127.0.0.1:0");
    CHECK(ephemeral.port == 0);
}

TEST_CASE("bad executor specs are rejected") {
    for (const char* bad : {"", "none", "pool", "pool:", "pool:0", "pool:-2", "pool:x",
                            "tcp:", "tcp:hostonly", "tcp:host:", "tcp:host:notaport",
                            "tcp:host:70000", "sync:1"}) {
        CHECK_THROWS_AS(parse_executor_spec(bad), ConfigError);
    }
}

TEST_CASE("validate rejects each inconsistent field") {
    auto expect_invalid = [](ExperimentConfig cfg) {
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    };
    ExperimentConfig cfg = tiny_config();
    cfg.validate(); // baseline is fine

    { auto c = cfg; c.island_count = 0; expect_invalid(c); }
    { auto c = cfg; c.total_individuals = 0; expect_invalid(c); }
    { auto c = cfg; c.total_individuals = 2; expect_invalid(c); } // fewer than islands
    { auto c = cfg; c.migration_count = 5; expect_invalid(c); }   // islands hold 4
    { auto c = cfg; c.generations_per_iteration = 0; expect_invalid(c); }
    { auto c = cfg; c.eval_cost_us = -1; expect_invalid(c); }
    { auto c = cfg; c.island_archive_capacity = -2; expect_invalid(c); }
    { auto c = cfg; c.global_archive_capacity = -2; expect_invalid(c); }
    { auto c = cfg; c.out_dir = ""; expect_invalid(c); }
    { auto c = cfg; c.problem = "no_such_problem"; expect_invalid(c); }
    { auto c = cfg; c.topology = "dodecahedron"; expect_invalid(c); }
    { auto c = cfg; c.executor = "pool:zero"; expect_invalid(c); }
    { auto c = cfg; c.crossover_probability = 1.5; expect_invalid(c); }
    { auto c = cfg; c.mutation_eta = -3.0; expect_invalid(c); }
}

TEST_CASE("validate checks explicit topology dimensions against island sizes") {
    ExperimentConfig cfg = tiny_config();
    cfg.total_individuals = 100;
    cfg.island_count = 1;
    cfg.migration_count = 0;
    cfg.topology = "lattice:4x25";
    cfg.validate(); // one island of exactly 100

    cfg.island_count = 2; // islands of 50 cannot host a 4x25 lattice
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

// ---------------------------------------------------------------------------
// csv round-trips
// ---------------------------------------------------------------------------

TEST_CASE("statistics rows survive a write/read cycle exactly") {
    std::vector<IterationStats> stats;
    for (std::size_t i = 0; i < 3; ++i) {
        IterationStats row;
        row.iteration = i;
        row.front_size = 5 + i;
        row.hypervolume_or_gd = 0.1 * static_cast<double>(i) + 0.001234567890123;
        row.objective_min = {0.0, -1.5};
        row.objective_max = {1.0 / 3.0, 2.25};
        row.wall_time_s = 0.5 * static_cast<double>(i + 1);
        stats.push_back(row);
    }
    std::stringstream io;
    write_statistics_csv(io, stats);
    const std::string first_line = io.str().substr(0, io.str().find('\n'));
    CHECK(first_line ==
          "iteration,front_size,hypervolume_or_gd,obj0_min,obj0_max,obj1_min,obj1_max,"
          "wall_time_s");
    CHECK(read_statistics_csv(io) == stats);
}

TEST_CASE("statistics with three objectives widen the header") {
    IterationStats row;
    row.iteration = 0;
    row.front_size = 4;
    row.hypervolume_or_gd = 0.25;
    row.objective_min = {0.0, 0.1, 0.2};
    row.objective_max = {1.0, 1.1, 1.2};
    row.wall_time_s = 2.0;
    std::stringstream io;
    write_statistics_csv(io, {row});
    CHECK(io.str().find("obj2_min,obj2_max") != std::string::npos);
    const auto back = read_statistics_csv(io);
    REQUIRE(back.size() == 1);
    CHECK(back[0] == row);
}

TEST_CASE("an empty statistics file is just the header") {
    std::stringstream io;
    write_statistics_csv(io, {});
    CHECK(read_statistics_csv(io).empty());
}

TEST_CASE("task metrics rows survive a write/read cycle exactly") {
    std::vector<TaskMetricsRow> rows;
    TaskMetricsRow row;
    row.iteration = 2;
    row.task_id = 17;
    row.created_ns = 1'000'000;
    row.collected_ns = 5'500'000;
    row.pure_ns = 3'000'000;
    row.status = "succeeded";
    row.cycle_ns = 4'500'000;
    row.overhead_frac = 1.0 / 3.0;
    rows.push_back(row);
    row.task_id = 18;
    row.status = "failed";
    rows.push_back(row);
    std::stringstream io;
    write_metrics_csv(io, rows);
    CHECK(read_metrics_csv(io) == rows);
}

TEST_CASE("report rows survive a write/read cycle, with status sanitized") {
    std::vector<ReportRow> rows;
    ReportRow ok;
    ok.population = 100;
    ok.serial_wall_s = 12.5;
    ok.distributed_wall_s = 5.0;
    ok.speedup = 2.5;
    ok.mean_overhead_frac = 0.125;
    ok.status = "ok";
    rows.push_back(ok);
    ReportRow bad;
    bad.population = 500;
    bad.status = "error: boom, with\nnewline";
    rows.push_back(bad);

    std::stringstream io;
    write_report_csv(io, rows);
    const auto back = read_report_csv(io);
    REQUIRE(back.size() == 2);
    CHECK(back[0] == rows[0]);
    CHECK(back[1].population == 500);
    CHECK(back[1].status.find(',') == std::string::npos);
    CHECK(back[1].status.find('\n') == std::string::npos);
    CHECK(back[1].status.find("boom") != std::string::npos);
}

TEST_CASE("malformed csv input raises descriptive errors") {
    {
        std::stringstream io("not,a,header\n");
        CHECK_THROWS_AS(read_statistics_csv(io), CsvError);
    }
    {
        std::stringstream io; // truncated row
        io << "iteration,front_size,hypervolume_or_gd,obj0_min,obj0_max,wall_time_s\n"
           << "0,5,0.5,0.1\n";
        CHECK_THROWS_AS(read_statistics_csv(io), CsvError);
    }
    {
        std::stringstream io;
        io << "iteration,front_size,hypervolume_or_gd,obj0_min,obj0_max,wall_time_s\n"
           << "0,five,0.5,0.1,0.9,1.0\n";
        CHECK_THROWS_AS(read_statistics_csv(io), CsvError);
    }
    {
        std::stringstream io("wrong\n");
        CHECK_THROWS_AS(read_metrics_csv(io), CsvError);
    }
    {
        std::stringstream io("population,serial_wall_s\n");
        CHECK_THROWS_AS(read_report_csv(io), CsvError);
    }
    {
        std::stringstream io; // empty stream entirely
        CHECK_THROWS_AS(read_statistics_csv(io), CsvError);
    }
}

// ---------------------------------------------------------------------------
// derived quantities
// ---------------------------------------------------------------------------

TEST_CASE("overhead is the cycle fraction spent outside pure execution") {
    CHECK(compute_overhead(100, 15) == doctest::Approx(0.85));
    CHECK(compute_overhead(100, 95) == doctest::Approx(0.05));
    CHECK(compute_overhead(100, 100) == 0.0);
    CHECK(compute_overhead(1, 0) == 1.0);
    CHECK(compute_overhead(100, 130) == 0.0); // cross-host clock skew clamps
    CHECK_THROWS_AS(compute_overhead(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(compute_overhead(0, 10), std::invalid_argument);
}

TEST_CASE("speedup divides serial by distributed wall time") {
    CHECK(compute_speedup(200.0, 100.0) == doctest::Approx(2.0));
    CHECK(compute_speedup(1.0, 1.0) == doctest::Approx(1.0));
    CHECK(compute_speedup(0.5, 1.0) == doctest::Approx(0.5)); // slowdowns show as < 1
    CHECK_THROWS_AS(compute_speedup(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(compute_speedup(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(compute_speedup(-1.0, 1.0), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// whole experiments
// ---------------------------------------------------------------------------

TEST_CASE("a serial experiment produces consistent outputs end to end") {
    const ExperimentConfig cfg = tiny_config();
    const RunOutput output = run_experiment(cfg);

    CHECK(output.summary.iterations == 3);
    CHECK(output.summary.tasks == 9);
    CHECK(output.total_wall_s > 0.0);

    REQUIRE(!output.front.empty());
    CHECK(output.front == canonical_sorted(output.front)); // already canonical

    REQUIRE(output.statistics.size() == 3);
    for (std::size_t i = 1; i < output.statistics.size(); ++i) {
        CHECK(output.statistics[i].wall_time_s >= output.statistics[i - 1].wall_time_s);
    }

    REQUIRE(output.metrics.size() == 9);
    std::set<std::uint64_t> ids;
    std::size_t first_iteration_rows = 0;
    for (const auto& row : output.metrics) {
        ids.insert(row.task_id);
        CHECK(row.status == "succeeded");
        CHECK(row.collected_ns >= row.created_ns);
        CHECK(row.cycle_ns == row.collected_ns - row.created_ns);
        CHECK(row.pure_ns > 0);
        CHECK(row.overhead_frac >= 0.0);
        CHECK(row.overhead_frac <= 1.0);
        if (row.iteration == 0) ++first_iteration_rows;
    }
    CHECK(ids.size() == 9); // one row per task, ids unique
    CHECK(first_iteration_rows == 3); // one task per island per iteration
}

TEST_CASE("the same config and seed reproduce the same front bytes") {
    const ExperimentConfig cfg = tiny_config();
    TempDir dir_a;
    TempDir dir_b;
    write_outputs(run_experiment(cfg), (dir_a.path / "run").string());
    write_outputs(run_experiment(cfg), (dir_b.path / "run").string());
    const std::string front_a = slurp(dir_a.path / "run" / "front.txt");
    CHECK(front_a == slurp(dir_b.path / "run" / "front.txt"));
    CHECK(front_a.rfind("#", 0) == 0); // leading comment names the layout
}

TEST_CASE("a caller-owned pool executor yields the same front as sync") {
    const ExperimentConfig cfg = tiny_config();
    const RunOutput serial = run_experiment(cfg);

    PoolExecutor pool(3, run_island_task);
    pool.start();
    const RunOutput pooled = run_experiment(cfg, pool);
    pool.shutdown();

    CHECK(pooled.front == serial.front);
    REQUIRE(pooled.statistics.size() == serial.statistics.size());
    for (std::size_t i = 0; i < serial.statistics.size(); ++i) {
        CHECK(pooled.statistics[i].front_size == serial.statistics[i].front_size);
        CHECK(pooled.statistics[i].hypervolume_or_gd ==
              serial.statistics[i].hypervolume_or_gd);
    }
}

TEST_CASE("written outputs read back as the in-memory run") {
    const ExperimentConfig cfg = tiny_config();
    const RunOutput output = run_experiment(cfg);
    TempDir dir;
    const fs::path nested = dir.path / "a" / "b";
    write_outputs(output, nested.string());

    std::ifstream front_in(nested / "front.txt");
    const auto points = read_front(front_in);
    REQUIRE(points.size() == output.front.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(points[i] == output.front[i].objectives);
    }

    std::ifstream stats_in(nested / "statistics.csv");
    CHECK(read_statistics_csv(stats_in) == output.statistics);

    std::ifstream metrics_in(nested / "metrics.csv");
    CHECK(read_metrics_csv(metrics_in) == output.metrics);
}

TEST_CASE("heavier evaluations shrink the overhead fraction") {
    ExperimentConfig cfg = tiny_config();
    cfg.island_count = 2;
    cfg.total_individuals = 8;
    cfg.iterations = 2;
    cfg.migration_count = 1;
    cfg.executor = "pool:2";

    ExperimentConfig heavy = cfg;
    heavy.eval_cost_us = 2000;

    const double light_overhead = mean_overhead(run_experiment(cfg).metrics);
    const double heavy_overhead = mean_overhead(run_experiment(heavy).metrics);
    CHECK(heavy_overhead < light_overhead);
    CHECK(heavy_overhead < 0.5); // 24 ms of real work dwarfs dispatch cost
}

// ---------------------------------------------------------------------------
// sweeps and reports
// ---------------------------------------------------------------------------

TEST_CASE("a sweep produces one row per population with matched budgets") {
    ExperimentConfig base = tiny_config();
    base.island_count = 2;
    base.iterations = 2;
    base.migration_count = 1;
    base.eval_cost_us = 200;
    base.executor = "pool:2";

    const auto rows = run_sweep(base, {8, 12});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].population == 8);
    CHECK(rows[1].population == 12);
    for (const auto& row : rows) {
        CHECK(row.status == "ok");
        CHECK(row.serial_wall_s > 0.0);
        CHECK(row.distributed_wall_s > 0.0);
        CHECK(row.speedup ==
              doctest::Approx(row.serial_wall_s / row.distributed_wall_s));
        CHECK(row.mean_overhead_frac >= 0.0);
        CHECK(row.mean_overhead_frac <= 1.0);
    }
}

TEST_CASE("a failing sweep entry is recorded and the sweep continues") {
    ExperimentConfig base = tiny_config();
    base.island_count = 2;
    base.iterations = 1;
    base.migration_count = 0;
    const auto rows = run_sweep(base, {1, 8}); // one individual cannot fill 2 islands
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].population == 1);
    CHECK(rows[0].status.rfind("error", 0) == 0);
    CHECK(rows[1].status == "ok");
}

TEST_CASE("the rendered report is an aligned human-readable table") {
    ReportRow row;
    row.population = 100;
    row.serial_wall_s = 10.0;
    row.distributed_wall_s = 4.0;
    row.speedup = 2.5;
    row.mean_overhead_frac = 0.2;
    row.status = "ok";
    const std::string text = render_report({row});
    CHECK(text.find("population") != std::string::npos);
    CHECK(text.find("speedup") != std::string::npos);
    CHECK(text.find("100") != std::string::npos);
    CHECK(text.find("2.5") != std::string::npos);
}
