#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ofs/core.hpp"
#include "ofs/problems.hpp"
#include "ofs/rng.hpp"
#include "ofs/topology.hpp"

namespace ofs {

struct EngineParams {
    std::size_t population_size = 100;
    std::string topology_spec = "lattice";
    double crossover_probability = 0.9;
    double crossover_eta = 15.0;        // simulated binary crossover spread index
    double mutation_probability = -1.0; // < 0 selects 1 / genome_length
    double mutation_eta = 20.0;         // polynomial mutation spread index
    long archive_capacity = -1;         // -1: population_size, 0: unbounded

    void validate() const; // throws std::invalid_argument on bad values

    bool operator==(const EngineParams&) const = default;
};

// Population scattered over a network: each individual lives on one node and
// mates only within its closed neighborhood. Generations are synchronous --
// every child is bred against the previous generation, then all replacements
// land at once. Every evaluated child is also offered to a bounded archive
// of non-dominated solutions, which is the engine's actual output.
//
// All stochastic choices flow from the seed through one generator in a fixed
// order, so a given (seed, params, initial genomes) triple reproduces
// bit-identical runs anywhere this code compiles.
class DiffusionEngine {
public:
    DiffusionEngine(Problem problem, EngineParams params, std::uint64_t seed);
    // Variant with an independent topology seed: an island keeps its network
    // fixed across evolution segments while the evolution seed changes.
    DiffusionEngine(Problem problem, EngineParams params, std::uint64_t seed,
                    std::uint64_t topology_seed);

    void initialize();                            // random initial population
    void initialize(std::vector<Genome> genomes); // seeded population, re-evaluated here

    void evolve_step(); // one synchronous generation
    void evolve_run(std::size_t generations);

    const std::vector<Individual>& population() const { return population_; }
    const ParetoArchive& archive() const { return archive_; }
    const NetworkTopology& topology() const { return topology_; }
    const Problem& problem() const { return problem_; }
    const EngineParams& params() const { return params_; }
    std::size_t generation() const { return generation_; }
    std::size_t evaluation_count() const { return evaluation_count_; }

    std::vector<Genome> population_genomes() const;

private:
    Objectives evaluate(const Genome& genome);
    // Binary tournament over {node} + its neighbors; non-dominated ties are
    // settled by coin flip.
    const Individual& tournament(int node);
    Genome crossover(const Genome& a, const Genome& b);
    void mutate(Genome& genome);

    Problem problem_;
    EngineParams params_;
    Rng rng_;
    NetworkTopology topology_;
    std::vector<Individual> population_;
    ParetoArchive archive_;
    std::size_t generation_ = 0;
    std::size_t evaluation_count_ = 0;
    double mutation_rate_ = 0.0;
};

} // namespace ofs
