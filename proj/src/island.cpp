#include "ofs/island.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

#include "ofs/serialize.hpp"

namespace ofs {

// ---- codecs ---------------------------------------------------------------

namespace {

void write_params(ByteWriter& w, const EngineParams& params) {
    w.u64(params.population_size);
    w.str(params.topology_spec);
    w.f64(params.crossover_probability);
    w.f64(params.crossover_eta);
    w.f64(params.mutation_probability);
    w.f64(params.mutation_eta);
    w.u64(static_cast<std::uint64_t>(params.archive_capacity));
}

EngineParams read_params(ByteReader& r) {
    EngineParams params;
    params.population_size = r.u64();
    params.topology_spec = r.str();
    params.crossover_probability = r.f64();
    params.crossover_eta = r.f64();
    params.mutation_probability = r.f64();
    params.mutation_eta = r.f64();
    params.archive_capacity = static_cast<long>(r.u64());
    return params;
}

void write_vectors(ByteWriter& w, const std::vector<std::vector<double>>& rows) {
    w.u64(rows.size());
    for (const auto& row : rows) {
        w.u64(row.size());
        for (double v : row) w.f64(v);
    }
}

std::vector<std::vector<double>> read_vectors(ByteReader& r) {
    std::vector<std::vector<double>> rows(r.u64());
    for (auto& row : rows) {
        row.resize(r.u64());
        for (auto& v : row) v = r.f64();
    }
    return rows;
}

} // namespace

Bytes serialize_island_task(const IslandTask& task) {
    ByteWriter w;
    w.u32(task.island_id);
    w.str(task.problem_name);
    w.u32(task.eval_cost_us);
    w.u64(task.topology_seed);
    w.u64(task.engine_seed);
    w.u32(task.generations);
    write_params(w, task.params);
    w.u8(task.injected.has_value() ? 1 : 0);
    if (task.injected.has_value()) write_vectors(w, *task.injected);
    return w.take();
}

IslandTask deserialize_island_task(const Bytes& payload) {
    ByteReader r(payload);
    IslandTask task;
    task.island_id = r.u32();
    task.problem_name = r.str();
    task.eval_cost_us = r.u32();
    task.topology_seed = r.u64();
    task.engine_seed = r.u64();
    task.generations = r.u32();
    task.params = read_params(r);
    if (r.u8() != 0) task.injected = read_vectors(r);
    r.expect_end();
    return task;
}

Bytes serialize_island_result(const IslandResult& result) {
    ByteWriter w;
    w.u32(result.island_id);
    w.u64(result.evaluation_count);
    w.u64(result.front.size());
    for (const auto& entry : result.front) {
        w.u64(entry.genome.size());
        for (double v : entry.genome) w.f64(v);
        w.u64(entry.objectives.size());
        for (double v : entry.objectives) w.f64(v);
    }
    w.u64(result.final_population.size());
    for (const auto& ind : result.final_population) {
        w.u64(ind.genome.size());
        for (double v : ind.genome) w.f64(v);
        w.u64(ind.objectives.size());
        for (double v : ind.objectives) w.f64(v);
    }
    return w.take();
}

IslandResult deserialize_island_result(const Bytes& payload) {
    ByteReader r(payload);
    IslandResult result;
    result.island_id = r.u32();
    result.evaluation_count = r.u64();
    result.front.resize(r.u64());
    for (auto& entry : result.front) {
        entry.genome.resize(r.u64());
        for (auto& v : entry.genome) v = r.f64();
        entry.objectives.resize(r.u64());
        for (auto& v : entry.objectives) v = r.f64();
    }
    result.final_population.resize(r.u64());
    for (std::size_t i = 0; i < result.final_population.size(); ++i) {
        auto& ind = result.final_population[i];
        ind.genome.resize(r.u64());
        for (auto& v : ind.genome) v = r.f64();
        ind.objectives.resize(r.u64());
        for (auto& v : ind.objectives) v = r.f64();
        ind.node_id = static_cast<int>(i);
    }
    r.expect_end();
    return result;
}

TaskResult run_island_task(const Task& task) {
    const auto start = Clock::now();
    const IslandTask spec = deserialize_island_task(task.payload);
    Problem problem = make_problem(spec.problem_name, spec.eval_cost_us);
    DiffusionEngine engine(std::move(problem), spec.params, spec.engine_seed,
                           spec.topology_seed);
    if (spec.injected.has_value()) {
        engine.initialize(*spec.injected);
    } else {
        engine.initialize();
    }
    engine.evolve_run(spec.generations);

    IslandResult out;
    out.island_id = spec.island_id;
    out.evaluation_count = engine.evaluation_count();
    out.front = engine.archive().entries();
    out.final_population = engine.population();

    TaskResult result;
    result.task_id = task.task_id;
    result.status = TaskStatus::kSucceeded;
    result.payload = serialize_island_result(out);
    result.pure_execution_time =
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    return result;
}

// ---- partition ------------------------------------------------------------

std::vector<std::size_t> partition(std::size_t total_individuals, std::size_t island_count) {
    if (island_count == 0) throw std::invalid_argument("partition: island_count must be positive");
    if (total_individuals < island_count) {
        throw std::invalid_argument("partition: more islands than individuals");
    }
    const std::size_t base = total_individuals / island_count;
    const std::size_t extra = total_individuals % island_count;
    std::vector<std::size_t> sizes(island_count, base);
    for (std::size_t i = 0; i < extra; ++i) ++sizes[i];
    return sizes;
}

// ---- migration ------------------------------------------------------------

namespace {

// Draws `count` distinct indices from [0, n) in random order.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, Rng& rng) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::size_t> picked;
    picked.reserve(count);
    for (std::size_t j = 0; j < count && j < n; ++j) {
        const std::size_t k = j + rng.uniform_index(n - j);
        std::swap(pool[j], pool[k]);
        picked.push_back(pool[j]);
    }
    return picked;
}

} // namespace

MigrationPlan plan_migration(const std::vector<ParetoArchive::Entry>& global_front,
                             const std::vector<std::vector<ParetoArchive::Entry>>& island_fronts,
                             const std::vector<std::vector<Individual>>& final_populations,
                             std::size_t migration_count, Rng& rng) {
    if (island_fronts.size() != final_populations.size()) {
        throw std::invalid_argument("plan_migration: front/population count mismatch");
    }
    const std::size_t islands = final_populations.size();
    MigrationPlan plan;
    plan.replacements.resize(islands);
    if (migration_count == 0 || islands <= 1) return plan; // nothing to exchange
    for (const auto& population : final_populations) {
        if (migration_count > population.size()) {
            throw std::invalid_argument("plan_migration: migration_count exceeds island size");
        }
    }

    for (std::size_t i = 0; i < islands; ++i) {
        // Foreign-only source: skip whatever this island just contributed.
        std::set<Objectives> own;
        for (const auto& entry : island_fronts[i]) own.insert(entry.objectives);
        std::vector<const ParetoArchive::Entry*> candidates;
        for (const auto& entry : global_front) {
            if (own.count(entry.objectives) == 0) candidates.push_back(&entry);
        }
        if (candidates.empty()) continue;
        const std::size_t count = std::min(migration_count, candidates.size());
        const auto chosen = sample_without_replacement(candidates.size(), count, rng);

        // Prefer landing sites whose occupants are dominated by the archive.
        const auto& population = final_populations[i];
        std::vector<std::size_t> dominated;
        std::vector<std::size_t> rest;
        for (std::size_t n = 0; n < population.size(); ++n) {
            const bool is_dominated =
                std::any_of(global_front.begin(), global_front.end(), [&](const auto& entry) {
                    return dominates(entry.objectives, population[n].objectives);
                });
            (is_dominated ? dominated : rest).push_back(n);
        }
        std::vector<std::size_t> targets;
        for (std::size_t idx : sample_without_replacement(dominated.size(),
                                                          std::min(count, dominated.size()), rng))
            targets.push_back(dominated[idx]);
        if (targets.size() < count) {
            for (std::size_t idx :
                 sample_without_replacement(rest.size(), count - targets.size(), rng))
                targets.push_back(rest[idx]);
        }

        for (std::size_t j = 0; j < count; ++j) {
            Individual migrant;
            migrant.genome = candidates[chosen[j]]->genome;
            migrant.objectives = candidates[chosen[j]]->objectives;
            migrant.node_id = static_cast<int>(targets[j]);
            plan.replacements[i].emplace_back(static_cast<int>(targets[j]), std::move(migrant));
        }
    }
    return plan;
}

// ---- strategy -------------------------------------------------------------

void StrategyConfig::validate() const {
    if (island_count == 0) throw std::invalid_argument("strategy: island_count must be positive");
    if (total_individuals < island_count) {
        throw std::invalid_argument("strategy: more islands than individuals");
    }
    if (generations_per_iteration == 0) {
        throw std::invalid_argument("strategy: generations_per_iteration must be positive");
    }
    const std::size_t min_island = total_individuals / island_count;
    if (migration_count > min_island) {
        throw std::invalid_argument("strategy: migration_count exceeds the smallest island");
    }
    if (global_archive_capacity < -1) {
        throw std::invalid_argument("strategy: global_archive_capacity must be -1, 0, or positive");
    }
    EngineParams probe = engine;
    probe.population_size = min_island; // per-island size is set at dispatch
    probe.validate();
}

namespace {

std::size_t resolve_global_capacity(const StrategyConfig& cfg) {
    if (cfg.global_archive_capacity < 0) return cfg.total_individuals;
    return static_cast<std::size_t>(cfg.global_archive_capacity);
}

constexpr std::size_t kMaxTaskAttempts = 3;

} // namespace

IslandStrategy::IslandStrategy(StrategyConfig cfg)
    : cfg_(std::move(cfg)),
      sizes_(partition(cfg_.total_individuals, cfg_.island_count)),
      rng_(derive_seed(cfg_.seed, seed_salt::kStrategy, 0, 0)),
      global_(resolve_global_capacity(cfg_)) {
    cfg_.validate();
}

void IslandStrategy::init() {
    iteration_ = 0;
    complete_ = cfg_.iterations == 0;
    stats_.clear();
    global_ = ParetoArchive(resolve_global_capacity(cfg_));
    rng_ = Rng(derive_seed(cfg_.seed, seed_salt::kStrategy, 0, 0));
    pending_.clear();
    outstanding_.clear();
    arrived_.assign(cfg_.island_count, std::nullopt);
    attempts_.assign(cfg_.island_count, 0);
    populations_.assign(cfg_.island_count, std::nullopt);
    next_task_id_ = 1;
    run_start_ = Clock::now();
    if (!complete_) {
        for (std::size_t i = 0; i < cfg_.island_count; ++i) pending_.push_back(i);
    }
}

Task IslandStrategy::make_task(std::size_t island) {
    IslandTask spec;
    spec.island_id = static_cast<std::uint32_t>(island);
    spec.problem_name = cfg_.problem.name;
    spec.eval_cost_us = static_cast<std::uint32_t>(cfg_.problem.eval_cost_us);
    spec.topology_seed = derive_seed(cfg_.seed, seed_salt::kTopology, island, 0);
    spec.engine_seed = derive_seed(cfg_.seed, seed_salt::kEngine, island, iteration_);
    spec.generations = static_cast<std::uint32_t>(cfg_.generations_per_iteration);
    spec.params = cfg_.engine;
    spec.params.population_size = sizes_[island];
    spec.injected = populations_[island];

    Task task;
    task.task_id = next_task_id_++;
    task.payload = serialize_island_task(spec);
    task.created_at = Clock::now();
    outstanding_.emplace(task.task_id, island);
    ++attempts_[island];
    return task;
}

std::optional<Task> IslandStrategy::next_task() {
    if (complete_ || pending_.empty()) return std::nullopt;
    const std::size_t island = pending_.front();
    pending_.pop_front();
    return make_task(island);
}

void IslandStrategy::on_result(const TaskResult& result) {
    const auto it = outstanding_.find(result.task_id);
    if (it == outstanding_.end()) {
        throw std::logic_error("strategy: result for an unknown task id");
    }
    const std::size_t island = it->second;
    outstanding_.erase(it);
    if (result.status == TaskStatus::kFailed) {
        const std::string error(result.payload.begin(), result.payload.end());
        if (attempts_[island] >= kMaxTaskAttempts) {
            throw std::runtime_error("strategy: island " + std::to_string(island) +
                                     " failed " + std::to_string(attempts_[island]) +
                                     " times, last error: " + error);
        }
        pending_.push_back(island); // emit a replacement task next drain
        return;
    }
    IslandResult decoded = deserialize_island_result(result.payload);
    if (decoded.island_id != island) {
        throw std::logic_error("strategy: result routed to the wrong island");
    }
    if (arrived_[island].has_value()) {
        throw std::logic_error("strategy: duplicate result for island " + std::to_string(island));
    }
    arrived_[island] = std::move(decoded);
}

bool IslandStrategy::iteration_complete() const {
    if (complete_) return false;
    if (!pending_.empty() || !outstanding_.empty()) return false;
    return std::all_of(arrived_.begin(), arrived_.end(),
                       [](const auto& slot) { return slot.has_value(); });
}

void IslandStrategy::advance_iteration() {
    if (!iteration_complete()) {
        throw std::logic_error("strategy: advance_iteration before all islands reported");
    }
    // Merge in island order regardless of arrival order, so every executor
    // yields the same global archive. The fronts stay around untouched: they
    // are the per-island exclusion sets for migration.
    std::vector<std::vector<ParetoArchive::Entry>> fronts(cfg_.island_count);
    std::vector<std::vector<Individual>> populations(cfg_.island_count);
    for (std::size_t i = 0; i < cfg_.island_count; ++i) {
        fronts[i] = std::move(arrived_[i]->front);
        populations[i] = std::move(arrived_[i]->final_population);
        for (const auto& entry : fronts[i]) {
            if (entry.objectives.size() != cfg_.problem.objective_count) {
                throw std::invalid_argument("strategy: island front dimension mismatch");
            }
            global_.insert(entry);
        }
    }

    if (!global_.empty()) {
        IterationStats record;
        record.iteration = iteration_;
        record.front_size = global_.size();
        const auto points = global_.objective_points();
        record.objective_min = points.front();
        record.objective_max = points.front();
        for (const auto& p : points) {
            for (std::size_t k = 0; k < p.size(); ++k) {
                record.objective_min[k] = std::min(record.objective_min[k], p[k]);
                record.objective_max[k] = std::max(record.objective_max[k], p[k]);
            }
        }
        if (cfg_.problem.objective_count == 2 && !cfg_.problem.hv_reference.empty()) {
            record.hypervolume_or_gd = hypervolume_2d(points, cfg_.problem.hv_reference);
        } else {
            record.hypervolume_or_gd =
                generational_distance(points, cfg_.problem.true_front(1000));
        }
        record.wall_time_s =
            std::chrono::duration<double>(Clock::now() - run_start_).count();
        stats_.push_back(std::move(record));
    }

    if (cfg_.migration_count > 0 && cfg_.island_count > 1) {
        const auto plan = plan_migration(canonical_sorted(global_.entries()), fronts,
                                         populations, cfg_.migration_count, rng_);
        for (std::size_t i = 0; i < cfg_.island_count; ++i) {
            for (const auto& [node, migrant] : plan.replacements[i]) {
                populations[i][static_cast<std::size_t>(node)].genome = migrant.genome;
            }
        }
    }
    for (std::size_t i = 0; i < cfg_.island_count; ++i) {
        std::vector<Genome> genomes;
        genomes.reserve(populations[i].size());
        for (auto& ind : populations[i]) genomes.push_back(std::move(ind.genome));
        populations_[i] = std::move(genomes);
    }

    arrived_.assign(cfg_.island_count, std::nullopt);
    attempts_.assign(cfg_.island_count, 0);
    ++iteration_;
    if (iteration_ >= cfg_.iterations) {
        complete_ = true;
    } else {
        for (std::size_t i = 0; i < cfg_.island_count; ++i) pending_.push_back(i);
    }
}

bool IslandStrategy::complete() const { return complete_; }

} // namespace ofs
