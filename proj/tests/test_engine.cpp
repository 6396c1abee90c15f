#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ofs/engine.hpp"
#include "ofs/metrics.hpp"

using namespace ofs;

namespace {

EngineParams small_params(std::size_t pop, const std::string& topo = "lattice") {
    EngineParams p;
    p.population_size = pop;
    p.topology_spec = topo;
    return p;
}

bool in_bounds(const Problem& prob, const Genome& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] < prob.lower[i] || g[i] > prob.upper[i]) return false;
    }
    return true;
}

} // namespace

TEST_CASE("initialization fills every node with an evaluated individual") {
    DiffusionEngine e(make_problem("zdt1"), small_params(100, "lattice:10x10:wrap"), 42);
    e.initialize();
    REQUIRE(e.population().size() == 100);
    for (int i = 0; i < 100; ++i) {
        const auto& ind = e.population()[static_cast<std::size_t>(i)];
        CHECK(ind.node_id == i);
        CHECK(ind.evaluated());
        CHECK(in_bounds(e.problem(), ind.genome));
    }
    CHECK(e.generation() == 0);
    CHECK(e.evaluation_count() == 100);
    CHECK(!e.archive().empty());
}

TEST_CASE("same seed reproduces the initial population and whole runs") {
    auto run = [](std::uint64_t seed) {
        DiffusionEngine e(make_problem("zdt1"), small_params(36), seed);
        e.initialize();
        e.evolve_run(15);
        return e;
    };
    auto a = run(7);
    auto b = run(7);
    CHECK(a.population() == b.population());
    CHECK(a.archive().entries() == b.archive().entries());
    auto c = run(8);
    CHECK_FALSE(a.population() == c.population());
}

TEST_CASE("zero generations returns the initial state") {
    DiffusionEngine e(make_problem("zdt2"), small_params(25), 3);
    e.initialize();
    const auto pop0 = e.population();
    const auto arch0 = e.archive().entries();
    e.evolve_run(0);
    CHECK(e.population() == pop0);
    CHECK(e.archive().entries() == arch0);
    CHECK(e.generation() == 0);
}

TEST_CASE("single isolated node still evolves") {
    DiffusionEngine e(make_problem("zdt1"), small_params(1, "lattice:1x1"), 5);
    e.initialize();
    e.evolve_run(10);
    CHECK(e.population().size() == 1);
    CHECK(e.generation() == 10);
    CHECK(in_bounds(e.problem(), e.population()[0].genome));
    CHECK(e.evaluation_count() == 11);
}

TEST_CASE("bounds hold after every step, including negative bounds") {
    DiffusionEngine e(make_problem("zdt4"), small_params(30), 11);
    e.initialize();
    for (int step = 0; step < 20; ++step) {
        e.evolve_step();
        for (const auto& ind : e.population()) {
            CHECK(in_bounds(e.problem(), ind.genome));
        }
    }
}

TEST_CASE("population size and node assignment are constant") {
    DiffusionEngine e(make_problem("dtlz2"), small_params(24, "smallworld:k=4,p=0.2"), 13);
    e.initialize();
    for (int step = 0; step < 10; ++step) {
        e.evolve_step();
        REQUIRE(e.population().size() == 24);
        for (int i = 0; i < 24; ++i) {
            CHECK(e.population()[static_cast<std::size_t>(i)].node_id == i);
        }
    }
}

TEST_CASE("replacement never installs a dominated child") {
    DiffusionEngine e(make_problem("zdt1"), small_params(49), 17);
    e.initialize();
    for (int step = 0; step < 15; ++step) {
        const auto before = e.population();
        e.evolve_step();
        for (std::size_t i = 0; i < before.size(); ++i) {
            CHECK_FALSE(
                dominates(before[i].objectives, e.population()[i].objectives));
        }
    }
}

TEST_CASE("archive hypervolume is non-decreasing with an unbounded archive") {
    auto params = small_params(100, "lattice:10x10:wrap");
    params.archive_capacity = 0;
    DiffusionEngine e(make_problem("zdt1"), params, 19);
    e.initialize();
    // Generous reference so even the random initial front has positive
    // volume and the check is never vacuous.
    const Objectives ref{12.0, 12.0};
    double prev = hypervolume_2d(e.archive().objective_points(), ref);
    CHECK(prev > 0.0);
    for (int step = 0; step < 50; ++step) {
        e.evolve_step();
        const double hv = hypervolume_2d(e.archive().objective_points(), ref);
        CHECK(hv >= prev - 1e-12);
        prev = hv;
    }
}

TEST_CASE("archive capacity defaults to the population size") {
    DiffusionEngine e(make_problem("zdt1"), small_params(16), 23);
    e.initialize();
    e.evolve_run(30);
    CHECK(e.archive().capacity() == 16);
    CHECK(e.archive().size() <= 16);
}

TEST_CASE("injected initial population is honored and re-evaluated") {
    auto prob = make_problem("zdt1");
    std::vector<Genome> seeds(9, Genome(30, 0.25));
    DiffusionEngine e(prob, small_params(9), 29);
    e.initialize(seeds);
    for (const auto& ind : e.population()) {
        CHECK(ind.genome == Genome(30, 0.25));
        CHECK(ind.objectives == prob.evaluate(Genome(30, 0.25)));
    }
    // Same seed, same injected genomes -> identical continuation.
    DiffusionEngine f(prob, small_params(9), 29);
    f.initialize(seeds);
    e.evolve_run(5);
    f.evolve_run(5);
    CHECK(e.population() == f.population());
}

TEST_CASE("engine contract violations") {
    DiffusionEngine e(make_problem("zdt1"), small_params(9), 1);
    CHECK_THROWS_AS(e.evolve_step(), std::logic_error);
    CHECK_THROWS_AS(e.initialize(std::vector<Genome>(8, Genome(30, 0.5))),
                    std::invalid_argument);

    auto bad = small_params(10);
    bad.crossover_probability = 1.5;
    CHECK_THROWS_AS(DiffusionEngine(make_problem("zdt1"), bad, 1), std::invalid_argument);
    bad = small_params(10);
    bad.mutation_probability = 2.0;
    CHECK_THROWS_AS(DiffusionEngine(make_problem("zdt1"), bad, 1), std::invalid_argument);
    bad = small_params(0);
    CHECK_THROWS_AS(DiffusionEngine(make_problem("zdt1"), bad, 1), std::invalid_argument);
}

TEST_CASE("evaluation count tracks init plus one child per node per step") {
    DiffusionEngine e(make_problem("zdt1"), small_params(25), 31);
    e.initialize();
    e.evolve_run(4);
    CHECK(e.evaluation_count() == 25 * 5);
}

TEST_CASE("engine moves the front toward the optimum on zdt1") {
    // The dominance-plus-coin-flip replacement gives gentle selection
    // pressure, so expect steady rather than dramatic progress. The run is
    // bit-deterministic, which keeps this check stable.
    auto params = small_params(100, "lattice:10x10:wrap");
    params.archive_capacity = 0;
    DiffusionEngine e(make_problem("zdt1"), params, 37);
    e.initialize();
    const auto ref = e.problem().true_front(500);
    const double gd0 = generational_distance(e.archive().objective_points(), ref);
    const double hv0 = hypervolume_2d(e.archive().objective_points(), {12.0, 12.0});
    e.evolve_run(100);
    const double gd1 = generational_distance(e.archive().objective_points(), ref);
    const double hv1 = hypervolume_2d(e.archive().objective_points(), {12.0, 12.0});
    CHECK(gd1 < gd0 * 0.9);
    CHECK(hv1 > hv0);
}

TEST_CASE("engine runs every benchmark without violating invariants") {
    for (const auto& name : problem_names()) {
        DiffusionEngine e(make_problem(name), small_params(16, "lattice:4x4:wrap"), 41);
        e.initialize();
        e.evolve_run(5);
        CHECK(e.generation() == 5);
        for (const auto& ind : e.population()) {
            CHECK(in_bounds(e.problem(), ind.genome));
            CHECK(ind.evaluated());
        }
        const auto& entries = e.archive().entries();
        for (std::size_t i = 0; i < entries.size(); ++i) {
            for (std::size_t j = 0; j < entries.size(); ++j) {
                if (i != j) {
                    CHECK_FALSE(dominates(entries[i].objectives, entries[j].objectives));
                }
            }
        }
    }
}

TEST_CASE("different topologies drive different but valid runs") {
    for (const char* spec : {"lattice:6x6", "lattice:6x6:wrap", "smallworld:k=4,p=0.1",
                             "scalefree:m0=3,m=2", "random:p=0.15"}) {
        DiffusionEngine e(make_problem("zdt1"), small_params(36, spec), 43);
        e.initialize();
        e.evolve_run(8);
        CHECK(e.topology().node_count() == 36);
        CHECK(!e.archive().empty());
    }
}
