#include "ofs/topology.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ofs {

void NetworkTopology::check_node(int node) const {
    if (node < 0 || static_cast<std::size_t>(node) >= adjacency_.size()) {
        throw std::invalid_argument("topology: node id out of range");
    }
}

void NetworkTopology::add_edge(int i, int j) {
    check_node(i);
    check_node(j);
    if (i == j) throw std::invalid_argument("topology: self-loop");
    if (has_edge(i, j)) throw std::invalid_argument("topology: duplicate edge");
    auto& ai = adjacency_[static_cast<std::size_t>(i)];
    auto& aj = adjacency_[static_cast<std::size_t>(j)];
    ai.insert(std::lower_bound(ai.begin(), ai.end(), j), j);
    aj.insert(std::lower_bound(aj.begin(), aj.end(), i), i);
    ++edge_count_;
}

void NetworkTopology::remove_edge(int i, int j) {
    check_node(i);
    check_node(j);
    if (!has_edge(i, j)) throw std::invalid_argument("topology: edge not present");
    auto& ai = adjacency_[static_cast<std::size_t>(i)];
    auto& aj = adjacency_[static_cast<std::size_t>(j)];
    ai.erase(std::lower_bound(ai.begin(), ai.end(), j));
    aj.erase(std::lower_bound(aj.begin(), aj.end(), i));
    --edge_count_;
}

bool NetworkTopology::has_edge(int i, int j) const {
    check_node(i);
    check_node(j);
    const auto& ai = adjacency_[static_cast<std::size_t>(i)];
    return std::binary_search(ai.begin(), ai.end(), j);
}

const std::vector<int>& NetworkTopology::neighborhood(int node) const {
    check_node(node);
    return adjacency_[static_cast<std::size_t>(node)];
}

void NetworkTopology::dump(std::ostream& out) const {
    out << "n " << node_count() << '\n';
    for (std::size_t i = 0; i < adjacency_.size(); ++i) {
        for (int j : adjacency_[i]) {
            if (static_cast<std::size_t>(j) > i) out << "e " << i << ' ' << j << '\n';
        }
    }
}

NetworkTopology NetworkTopology::parse(std::istream& in) {
    std::string tag;
    std::size_t n = 0;
    if (!(in >> tag >> n) || tag != "n") {
        throw std::runtime_error("topology parse: expected 'n <count>' header");
    }
    NetworkTopology topo(n);
    int i = 0;
    int j = 0;
    while (in >> tag >> i >> j) {
        if (tag != "e") throw std::runtime_error("topology parse: expected 'e <i> <j>'");
        topo.add_edge(i, j);
    }
    return topo;
}

NetworkTopology lattice_2d(int rows, int cols, bool wrap) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("lattice_2d: rows and cols must be positive");
    NetworkTopology topo(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int dr[] = {-1, 1, 0, 0};
            const int dc[] = {0, 0, -1, 1};
            for (int d = 0; d < 4; ++d) {
                int nr = r + dr[d];
                int nc = c + dc[d];
                if (wrap) {
                    nr = (nr + rows) % rows;
                    nc = (nc + cols) % cols;
                } else if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) {
                    continue;
                }
                const int a = id(r, c);
                const int b = id(nr, nc);
                // Wrapping a 1- or 2-wide dimension folds neighbors together.
                if (a == b || topo.has_edge(a, b)) continue;
                if (a < b) topo.add_edge(a, b);
            }
        }
    }
    return topo;
}

NetworkTopology small_world(int n, int k, double p, Rng& rng) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("small_world: k must be even and >= 2");
    if (n <= k) throw std::invalid_argument("small_world: requires n > k");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("small_world: p must be in [0, 1]");
    NetworkTopology topo(static_cast<std::size_t>(n));
    for (int j = 1; j <= k / 2; ++j) {
        for (int i = 0; i < n; ++i) topo.add_edge(i, (i + j) % n);
    }
    // Standard Watts-Strogatz pass: rewire each original ring edge's far
    // endpoint with probability p, keeping the edge when the node is
    // already connected to everyone else.
    for (int j = 1; j <= k / 2; ++j) {
        for (int i = 0; i < n; ++i) {
            if (rng.uniform01() >= p) continue;
            const int old_target = (i + j) % n;
            if (!topo.has_edge(i, old_target)) continue; // already rewired away
            if (topo.degree(i) >= static_cast<std::size_t>(n - 1)) continue;
            int target = i;
            do {
                target = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n)));
            } while (target == i || topo.has_edge(i, target));
            topo.remove_edge(i, old_target);
            topo.add_edge(i, target);
        }
    }
    return topo;
}

NetworkTopology scale_free(int n, int m0, int m, Rng& rng) {
    if (!(n >= m0 && m0 >= m && m >= 1)) {
        throw std::invalid_argument("scale_free: requires n >= m0 >= m >= 1");
    }
    NetworkTopology topo(static_cast<std::size_t>(n));
    std::vector<double> degree(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < m0; ++i) {
        for (int j = i + 1; j < m0; ++j) {
            topo.add_edge(i, j);
            degree[static_cast<std::size_t>(i)] += 1;
            degree[static_cast<std::size_t>(j)] += 1;
        }
    }
    for (int v = m0; v < n; ++v) {
        std::vector<double> weight(degree.begin(), degree.begin() + v);
        for (int e = 0; e < m; ++e) {
            double total = 0.0;
            for (double w : weight) total += w;
            int pick = -1;
            if (total <= 0.0) {
                // Happens only for degenerate seeds (m0 == 1): fall back to
                // uniform choice among unconnected candidates.
                do {
                    pick = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(v)));
                } while (weight[static_cast<std::size_t>(pick)] < 0.0);
            } else {
                double r = rng.uniform01() * total;
                for (int c = 0; c < v; ++c) {
                    const double w = weight[static_cast<std::size_t>(c)];
                    if (w <= 0.0) continue;
                    r -= w;
                    if (r <= 0.0) {
                        pick = c;
                        break;
                    }
                }
                if (pick < 0) { // numeric edge: take last positive-weight candidate
                    for (int c = v - 1; c >= 0; --c) {
                        if (weight[static_cast<std::size_t>(c)] > 0.0) {
                            pick = c;
                            break;
                        }
                    }
                }
            }
            topo.add_edge(v, pick);
            weight[static_cast<std::size_t>(pick)] = -1.0; // without replacement
            degree[static_cast<std::size_t>(pick)] += 1;
            degree[static_cast<std::size_t>(v)] += 1;
        }
    }
    return topo;
}

NetworkTopology random_graph(int n, double p, Rng& rng) {
    if (n < 0) throw std::invalid_argument("random_graph: n must be non-negative");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("random_graph: p must be in [0, 1]");
    NetworkTopology topo(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (p >= 1.0 || rng.uniform01() < p) topo.add_edge(i, j);
        }
    }
    return topo;
}

namespace {

std::map<std::string, double> parse_params(const std::string& text, const std::string& spec) {
    std::map<std::string, double> params;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("topology spec '" + spec + "': expected key=value, got '" + item + "'");
        }
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        double v = 0;
        auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
        if (ec != std::errc{} || ptr != val.data() + val.size()) {
            throw std::invalid_argument("topology spec '" + spec + "': bad number '" + val + "'");
        }
        params[key] = v;
    }
    return params;
}

std::pair<int, int> auto_factor(std::size_t n) {
    int best = 1;
    for (int r = 1; static_cast<std::size_t>(r) * static_cast<std::size_t>(r) <= n; ++r) {
        if (n % static_cast<std::size_t>(r) == 0) best = r;
    }
    return {best, static_cast<int>(n / static_cast<std::size_t>(best))};
}

} // namespace

NetworkTopology make_topology(const std::string& spec, std::size_t node_count, std::uint64_t seed) {
    if (node_count == 0) throw std::invalid_argument("make_topology: node_count must be positive");
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.empty()) throw std::invalid_argument("make_topology: empty spec");
    const std::string& kind = parts[0];
    Rng rng(seed);

    if (kind == "lattice") {
        bool wrap = false;
        int rows = -1;
        int cols = -1;
        for (std::size_t i = 1; i < parts.size(); ++i) {
            if (parts[i] == "wrap") {
                wrap = true;
                continue;
            }
            const auto x = parts[i].find('x');
            if (x == std::string::npos) {
                throw std::invalid_argument("topology spec '" + spec + "': expected RxC or wrap");
            }
            rows = std::stoi(parts[i].substr(0, x));
            cols = std::stoi(parts[i].substr(x + 1));
        }
        if (rows < 0) {
            auto [r, c] = auto_factor(node_count);
            rows = r;
            cols = c;
        } else if (static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) != node_count) {
            throw std::invalid_argument("topology spec '" + spec + "': " + std::to_string(rows) + "x" +
                                        std::to_string(cols) + " does not match population size " +
                                        std::to_string(node_count));
        }
        return lattice_2d(rows, cols, wrap);
    }
    if (kind == "smallworld") {
        auto params = parse_params(parts.size() > 1 ? parts[1] : "", spec);
        const int k = params.count("k") ? static_cast<int>(params["k"]) : 4;
        const double p = params.count("p") ? params["p"] : 0.1;
        return small_world(static_cast<int>(node_count), k, p, rng);
    }
    if (kind == "scalefree") {
        auto params = parse_params(parts.size() > 1 ? parts[1] : "", spec);
        const int m0 = params.count("m0") ? static_cast<int>(params["m0"]) : 3;
        const int m = params.count("m") ? static_cast<int>(params["m"]) : 2;
        return scale_free(static_cast<int>(node_count), m0, m, rng);
    }
    if (kind == "random") {
        auto params = parse_params(parts.size() > 1 ? parts[1] : "", spec);
        const double p = params.count("p") ? params["p"] : 0.1;
        return random_graph(static_cast<int>(node_count), p, rng);
    }
    throw std::invalid_argument("make_topology: unknown topology kind '" + kind + "'");
}

} // namespace ofs
