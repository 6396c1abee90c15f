#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ofs {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key=value experiment description. Every field has a keyword of the
// same name; '#' starts a comment; unknown keys are errors.
struct ExperimentConfig {
    std::string problem = "zdt1";
    long eval_cost_us = 0;           // synthetic per-evaluation cost
    std::size_t total_individuals = 100;
    std::size_t island_count = 10;
    std::size_t iterations = 100;    // macro-iterations (merge + migrate each)
    std::size_t generations_per_iteration = 10;
    std::size_t migration_count = 5;
    std::string topology = "lattice";
    double crossover_probability = 0.9;
    double crossover_eta = 15.0;
    double mutation_probability = -1.0; // < 0 selects 1 / genome_length
    double mutation_eta = 20.0;
    long island_archive_capacity = -1;  // -1: island size, 0: unbounded
    long global_archive_capacity = -1;  // -1: total_individuals, 0: unbounded
    std::string executor = "sync";      // sync | pool:<n> | tcp:<host>:<port>
    std::uint64_t seed = 0;
    std::string out_dir = "out";

    void validate() const; // throws ConfigError
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

struct ExecutorSpec {
    enum class Kind { kSync, kPool, kTcp };
    Kind kind = Kind::kSync;
    std::size_t threads = 0;   // pool
    std::string host;          // tcp bind address
    std::uint16_t port = 0;    // tcp
};

/// Parses "sync", "pool:<n>" or "tcp:<host>:<port>"; throws ConfigError.
ExecutorSpec parse_executor_spec(const std::string& spec);

} // namespace ofs
