#include "ofs/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ofs {

void EngineParams::validate() const {
    if (population_size == 0) throw std::invalid_argument("engine: population_size must be positive");
    if (crossover_probability < 0.0 || crossover_probability > 1.0) {
        throw std::invalid_argument("engine: crossover_probability must be in [0, 1]");
    }
    if (mutation_probability > 1.0) {
        throw std::invalid_argument("engine: mutation_probability must be <= 1");
    }
    if (crossover_eta < 0.0 || mutation_eta < 0.0) {
        throw std::invalid_argument("engine: distribution indices must be non-negative");
    }
    if (archive_capacity < -1) {
        throw std::invalid_argument("engine: archive_capacity must be -1, 0, or positive");
    }
}

namespace {

std::size_t resolve_capacity(const EngineParams& params) {
    if (params.archive_capacity < 0) return params.population_size;
    return static_cast<std::size_t>(params.archive_capacity);
}

EngineParams validated(EngineParams params) {
    params.validate();
    return params;
}

} // namespace

DiffusionEngine::DiffusionEngine(Problem problem, EngineParams params, std::uint64_t seed)
    : DiffusionEngine(std::move(problem), std::move(params), seed,
                      derive_seed(seed, seed_salt::kTopology, 0, 0)) {}

DiffusionEngine::DiffusionEngine(Problem problem, EngineParams params, std::uint64_t seed,
                                 std::uint64_t topology_seed)
    : problem_(std::move(problem)),
      params_(validated(std::move(params))),
      rng_(seed),
      topology_(make_topology(params_.topology_spec, params_.population_size, topology_seed)),
      archive_(resolve_capacity(params_)) {
    mutation_rate_ = params_.mutation_probability >= 0.0
                         ? params_.mutation_probability
                         : 1.0 / static_cast<double>(problem_.genome_length);
}

Objectives DiffusionEngine::evaluate(const Genome& genome) {
    ++evaluation_count_;
    return problem_.evaluate(genome);
}

void DiffusionEngine::initialize() {
    std::vector<Genome> genomes;
    genomes.reserve(params_.population_size);
    for (std::size_t i = 0; i < params_.population_size; ++i) {
        Genome g(problem_.genome_length);
        for (std::size_t k = 0; k < g.size(); ++k) {
            g[k] = rng_.uniform(problem_.lower[k], problem_.upper[k]);
        }
        genomes.push_back(std::move(g));
    }
    initialize(std::move(genomes));
}

void DiffusionEngine::initialize(std::vector<Genome> genomes) {
    if (genomes.size() != params_.population_size) {
        throw std::invalid_argument("engine: initial population size mismatch");
    }
    population_.clear();
    population_.reserve(genomes.size());
    for (std::size_t i = 0; i < genomes.size(); ++i) {
        Individual ind;
        ind.genome = std::move(genomes[i]);
        ind.objectives = evaluate(ind.genome);
        ind.node_id = static_cast<int>(i);
        archive_.insert(ind);
        population_.push_back(std::move(ind));
    }
    generation_ = 0;
}

const Individual& DiffusionEngine::tournament(int node) {
    const auto& neighbors = topology_.neighborhood(node);
    // Closed neighborhood: the resident competes alongside its neighbors.
    const std::size_t pool = neighbors.size() + 1;
    auto pick = [&](std::size_t slot) -> const Individual& {
        return slot == neighbors.size()
                   ? population_[static_cast<std::size_t>(node)]
                   : population_[static_cast<std::size_t>(neighbors[slot])];
    };
    const std::size_t a = rng_.uniform_index(pool);
    const std::size_t b = rng_.uniform_index(pool);
    const Individual& ia = pick(a);
    const Individual& ib = pick(b);
    if (a == b) return ia;
    if (dominates(ia.objectives, ib.objectives)) return ia;
    if (dominates(ib.objectives, ia.objectives)) return ib;
    return rng_.coin() ? ia : ib;
}

Genome DiffusionEngine::crossover(const Genome& a, const Genome& b) {
    Genome child(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double u = rng_.uniform01();
        const double beta = u < 0.5
                                ? std::pow(2.0 * u, 1.0 / (params_.crossover_eta + 1.0))
                                : std::pow(1.0 / (2.0 * (1.0 - u)),
                                           1.0 / (params_.crossover_eta + 1.0));
        const double v = 0.5 * ((1.0 + beta) * a[k] + (1.0 - beta) * b[k]);
        child[k] = std::clamp(v, problem_.lower[k], problem_.upper[k]);
    }
    return child;
}

void DiffusionEngine::mutate(Genome& genome) {
    for (std::size_t k = 0; k < genome.size(); ++k) {
        if (rng_.uniform01() >= mutation_rate_) continue;
        const double lo = problem_.lower[k];
        const double hi = problem_.upper[k];
        const double u = rng_.uniform01();
        double v = genome[k];
        if (u < 0.5) {
            const double delta = std::pow(2.0 * u, 1.0 / (params_.mutation_eta + 1.0)) - 1.0;
            v += delta * (v - lo);
        } else {
            const double delta = 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (params_.mutation_eta + 1.0));
            v += delta * (hi - v);
        }
        genome[k] = std::clamp(v, lo, hi);
    }
}

void DiffusionEngine::evolve_step() {
    if (population_.empty()) throw std::logic_error("engine: evolve_step before initialize");
    std::vector<Individual> next = population_;
    for (std::size_t i = 0; i < population_.size(); ++i) {
        const int node = static_cast<int>(i);
        const Individual& p1 = tournament(node);
        const Individual& p2 = tournament(node);
        Genome child_genome = rng_.uniform01() < params_.crossover_probability
                                  ? crossover(p1.genome, p2.genome)
                                  : p1.genome;
        mutate(child_genome);
        Individual child;
        child.genome = std::move(child_genome);
        child.objectives = evaluate(child.genome);
        child.node_id = node;
        archive_.insert(child);
        const Individual& occupant = population_[i];
        if (dominates(child.objectives, occupant.objectives)) {
            next[i] = std::move(child);
        } else if (dominates(occupant.objectives, child.objectives)) {
            // resident survives
        } else if (rng_.coin()) {
            next[i] = std::move(child);
        }
    }
    population_ = std::move(next);
    ++generation_;
}

void DiffusionEngine::evolve_run(std::size_t generations) {
    for (std::size_t g = 0; g < generations; ++g) evolve_step();
}

std::vector<Genome> DiffusionEngine::population_genomes() const {
    std::vector<Genome> out;
    out.reserve(population_.size());
    for (const auto& ind : population_) out.push_back(ind.genome);
    return out;
}

} // namespace ofs
