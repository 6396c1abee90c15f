#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ofs/core.hpp"
#include "ofs/engine.hpp"
#include "ofs/metrics.hpp"
#include "ofs/problems.hpp"
#include "ofs/rng.hpp"
#include "ofs/task.hpp"

namespace ofs {

// ---- task payloads --------------------------------------------------------

// One island's evolution segment: build the engine from the seeds, run it
// for `generations`, return the local front and the final population.
struct IslandTask {
    std::uint32_t island_id = 0;
    std::string problem_name;
    std::uint32_t eval_cost_us = 0;
    std::uint64_t topology_seed = 0; // fixed per island across iterations
    std::uint64_t engine_seed = 0;   // fresh per (island, iteration)
    std::uint32_t generations = 0;
    EngineParams params; // population_size is this island's size
    // Post-migration genomes; absent on the first iteration (the island
    // seeds itself). Workers re-evaluate, so genes are all that travels.
    std::optional<std::vector<Genome>> injected;

    bool operator==(const IslandTask&) const = default;
};

struct IslandResult {
    std::uint32_t island_id = 0;
    std::uint64_t evaluation_count = 0;
    std::vector<ParetoArchive::Entry> front;
    std::vector<Individual> final_population; // node id = position

    bool operator==(const IslandResult&) const = default;
};

Bytes serialize_island_task(const IslandTask& task);
IslandTask deserialize_island_task(const Bytes& payload);
Bytes serialize_island_result(const IslandResult& result);
IslandResult deserialize_island_result(const Bytes& payload);

/// TaskRunner body executed coordinator-side or on a remote worker.
TaskResult run_island_task(const Task& task);

// ---- strategy building blocks ---------------------------------------------

/// Splits a population across islands as evenly as possible, larger islands
/// first. Throws std::invalid_argument when total < islands or islands == 0.
std::vector<std::size_t> partition(std::size_t total_individuals, std::size_t island_count);

struct MigrationPlan {
    // replacements[island] lists (node id, migrant) pairs; node ids are
    // distinct within an island.
    std::vector<std::vector<std::pair<int, Individual>>> replacements;
};

// Selects migrants per island uniformly from the global archive, skipping
// entries whose objectives the island itself contributed in the latest
// merge. Migrants land on distinct nodes whose occupants are dominated by
// some archive member; when those run out, on random other nodes.
MigrationPlan plan_migration(const std::vector<ParetoArchive::Entry>& global_front,
                             const std::vector<std::vector<ParetoArchive::Entry>>& island_fronts,
                             const std::vector<std::vector<Individual>>& final_populations,
                             std::size_t migration_count, Rng& rng);

struct IterationStats {
    std::size_t iteration = 0;
    std::size_t front_size = 0;
    // 2-objective problems report hypervolume against the problem's
    // reference point; others report generational distance to the analytic
    // front.
    double hypervolume_or_gd = 0.0;
    Objectives objective_min;
    Objectives objective_max;
    double wall_time_s = 0.0;

    bool operator==(const IterationStats&) const = default;
};

struct StrategyConfig {
    Problem problem;
    std::size_t total_individuals = 100;
    std::size_t island_count = 10;
    std::size_t iterations = 100; // macro-iterations (merge + migrate each)
    std::size_t generations_per_iteration = 10;
    std::size_t migration_count = 5;
    EngineParams engine;               // population_size is set per island
    long global_archive_capacity = -1; // -1: total_individuals, 0: unbounded
    std::uint64_t seed = 0;

    void validate() const; // throws std::invalid_argument on bad values
};

// Runs the population as islands: each macro-iteration farms one evolution
// segment per island out as a task, merges the returned fronts into the
// global archive in island order (so results may arrive in any order),
// records statistics, and migrates archive members between islands.
class IslandStrategy : public Strategy {
  public:
    explicit IslandStrategy(StrategyConfig cfg);

    void init() override;
    std::optional<Task> next_task() override;
    void on_result(const TaskResult& result) override;
    bool iteration_complete() const override;
    void advance_iteration() override;
    bool complete() const override;

    const ParetoArchive& global_front() const { return global_; }
    const std::vector<IterationStats>& statistics() const { return stats_; }
    const std::vector<std::size_t>& island_sizes() const { return sizes_; }
    std::size_t current_iteration() const { return iteration_; }

  private:
    Task make_task(std::size_t island);

    StrategyConfig cfg_;
    std::vector<std::size_t> sizes_;
    Rng rng_; // migration randomness only
    ParetoArchive global_;
    std::vector<IterationStats> stats_;

    std::size_t iteration_ = 0;
    bool complete_ = false;
    std::deque<std::size_t> pending_;                    // islands awaiting dispatch
    std::map<std::uint64_t, std::size_t> outstanding_;   // task id -> island
    std::vector<std::optional<IslandResult>> arrived_;   // buffered per island
    std::vector<std::size_t> attempts_;                  // per island, this iteration
    std::vector<std::optional<std::vector<Genome>>> populations_; // next injection
    std::uint64_t next_task_id_ = 1;
    Clock::time_point run_start_{};
};

} // namespace ofs
