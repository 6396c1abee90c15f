#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "ofs/core.hpp"

namespace ofs {

// Benchmark objective function with a known optimum surface. Genes are
// real-valued within per-dimension bounds; bitstring benchmarks decode a
// gene as 1 when it is >= 0.5.
struct Problem {
    std::string name;
    std::size_t genome_length = 0;
    std::size_t objective_count = 0;
    std::vector<double> lower;  // per-gene lower bounds
    std::vector<double> upper;  // per-gene upper bounds
    Objectives hv_reference;    // hypervolume reference point (two-objective benchmarks)
    long eval_cost_us = 0;      // synthetic per-evaluation cost, in microseconds

    // Bounds-checked evaluation; burns eval_cost_us of CPU first when set.
    Objectives evaluate(const Genome& genome) const;

    // Evenly sampled points on the analytic optimum front. Benchmarks with a
    // discrete front ignore `count` and return every point.
    std::vector<Objectives> true_front(std::size_t count) const;

    Objectives (*raw_eval)(const Genome&) = nullptr;
    std::vector<Objectives> (*raw_front)(std::size_t) = nullptr;
};

// Known names: zdt1..zdt6, dtlz1..dtlz6 (case-insensitive).
Problem make_problem(const std::string& name, long eval_cost_us = 0);
std::vector<std::string> problem_names();

// Spin for the given duration without yielding, so the cost behaves like a
// CPU-bound objective function rather than a sleep.
void busy_wait(std::chrono::microseconds duration);

} // namespace ofs
