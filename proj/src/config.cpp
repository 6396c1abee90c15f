#include "ofs/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ofs/island.hpp"
#include "ofs/problems.hpp"
#include "ofs/topology.hpp"

namespace ofs {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto result = std::from_chars(first, last, out);
    if (result.ec != std::errc{} || result.ptr != last) {
        throw ConfigError("config: bad value for " + key + ": '" + value + "'");
    }
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing junk");
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: bad value for " + key + ": '" + value + "'");
    }
}

void apply(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "problem") {
        cfg.problem = value;
    } else if (key == "eval_cost_us") {
        cfg.eval_cost_us = parse_number<long>(key, value);
    } else if (key == "total_individuals") {
        cfg.total_individuals = parse_number<std::size_t>(key, value);
    } else if (key == "island_count") {
        cfg.island_count = parse_number<std::size_t>(key, value);
    } else if (key == "iterations") {
        cfg.iterations = parse_number<std::size_t>(key, value);
    } else if (key == "generations_per_iteration") {
        cfg.generations_per_iteration = parse_number<std::size_t>(key, value);
    } else if (key == "migration_count") {
        cfg.migration_count = parse_number<std::size_t>(key, value);
    } else if (key == "topology") {
        cfg.topology = value;
    } else if (key == "crossover_probability") {
        cfg.crossover_probability = parse_double(key, value);
    } else if (key == "crossover_eta") {
        cfg.crossover_eta = parse_double(key, value);
    } else if (key == "mutation_probability") {
        cfg.mutation_probability = parse_double(key, value);
    } else if (key == "mutation_eta") {
        cfg.mutation_eta = parse_double(key, value);
    } else if (key == "island_archive_capacity") {
        cfg.island_archive_capacity = parse_number<long>(key, value);
    } else if (key == "global_archive_capacity") {
        cfg.global_archive_capacity = parse_number<long>(key, value);
    } else if (key == "executor") {
        cfg.executor = value;
    } else if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "out_dir") {
        cfg.out_dir = value;
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(line_no) +
                              " is not of the form key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config: line " + std::to_string(line_no) + " has an empty key");
        }
        try {
            apply(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("config: line " + std::to_string(line_no) + ": " +
                              (std::string(e.what()).rfind("config: ", 0) == 0
                                   ? std::string(e.what()).substr(8)
                                   : std::string(e.what())));
        }
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

ExecutorSpec parse_executor_spec(const std::string& spec) {
    ExecutorSpec out;
    if (spec == "sync") {
        out.kind = ExecutorSpec::Kind::kSync;
        return out;
    }
    if (spec.rfind("pool:", 0) == 0) {
        out.kind = ExecutorSpec::Kind::kPool;
        out.threads = parse_number<std::size_t>("executor", spec.substr(5));
        if (out.threads == 0) throw ConfigError("config: pool executor needs >= 1 thread");
        return out;
    }
    if (spec.rfind("tcp:", 0) == 0) {
        out.kind = ExecutorSpec::Kind::kTcp;
        const std::string rest = spec.substr(4);
        const auto colon = rest.rfind(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == rest.size()) {
            throw ConfigError("config: tcp executor spec must be tcp:<host>:<port>");
        }
        out.host = rest.substr(0, colon);
        out.port = parse_number<std::uint16_t>("executor", rest.substr(colon + 1));
        return out;
    }
    throw ConfigError("config: unknown executor '" + spec + "'");
}

void ExperimentConfig::validate() const {
    if (total_individuals == 0) throw ConfigError("config: total_individuals must be positive");
    if (island_count == 0) throw ConfigError("config: island_count must be positive");
    if (total_individuals < island_count) {
        throw ConfigError("config: total_individuals must be >= island_count");
    }
    if (generations_per_iteration == 0) {
        throw ConfigError("config: generations_per_iteration must be positive");
    }
    if (migration_count > total_individuals / island_count) {
        throw ConfigError("config: migration_count exceeds the smallest island");
    }
    if (eval_cost_us < 0) throw ConfigError("config: eval_cost_us must be >= 0");
    if (island_archive_capacity < -1 || global_archive_capacity < -1) {
        throw ConfigError("config: archive capacities must be -1, 0, or positive");
    }
    if (out_dir.empty()) throw ConfigError("config: out_dir must not be empty");
    try {
        make_problem(problem);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    try {
        // Exercise the topology grammar on both island sizes the partition
        // can produce (they differ by at most one node).
        const auto sizes = partition(total_individuals, island_count);
        make_topology(topology, sizes.front(), 1);
        if (sizes.back() != sizes.front()) make_topology(topology, sizes.back(), 1);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: bad topology: ") + e.what());
    }
    parse_executor_spec(executor);
    EngineParams probe;
    probe.population_size = total_individuals / island_count;
    probe.topology_spec = topology;
    probe.crossover_probability = crossover_probability;
    probe.crossover_eta = crossover_eta;
    probe.mutation_probability = mutation_probability;
    probe.mutation_eta = mutation_eta;
    probe.archive_capacity = island_archive_capacity;
    try {
        probe.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

} // namespace ofs
