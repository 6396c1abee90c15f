#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ofs/rng.hpp"

namespace ofs {

/// Undirected simple graph over nodes [0, node_count). Adjacency lists
/// are kept sorted; no self-loops, no duplicate edges.
class NetworkTopology {
  public:
    explicit NetworkTopology(std::size_t node_count) : adjacency_(node_count) {}

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    void add_edge(int i, int j);
    void remove_edge(int i, int j);
    bool has_edge(int i, int j) const;

    /// Sorted neighbor ids of `node`, excluding the node itself.
    const std::vector<int>& neighborhood(int node) const;
    std::size_t degree(int node) const { return neighborhood(node).size(); }

    /// Text dump: "n <count>" then one "e <i> <j>" line per edge, i < j.
    void dump(std::ostream& out) const;
    static NetworkTopology parse(std::istream& in);

    bool operator==(const NetworkTopology&) const = default;

  private:
    void check_node(int node) const;

    std::vector<std::vector<int>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Von Neumann (4-neighbor) lattice; toroidal when wrap is set.
/// Degenerate rows/cols fold duplicate neighbors into single edges.
NetworkTopology lattice_2d(int rows, int cols, bool wrap);

/// Watts-Strogatz ring of n nodes with k nearest neighbors (k even,
/// k < n); each original edge is rewired with probability p avoiding
/// self-loops and duplicates. Edge count is always n*k/2.
NetworkTopology small_world(int n, int k, double p, Rng& rng);

/// Barabasi-Albert preferential attachment: seed clique of m0 nodes,
/// then each new node attaches m edges sampled proportionally to degree
/// without replacement. Requires n >= m0 >= m >= 1.
NetworkTopology scale_free(int n, int m0, int m, Rng& rng);

/// Erdos-Renyi G(n, p).
NetworkTopology random_graph(int n, double p, Rng& rng);

/// Textual topology spec, instantiated per island at a given size:
///   lattice[:RxC][:wrap]        explicit dims must match the size;
///                               without dims the size is auto-factored
///   smallworld[:k=K,p=P]        defaults k=4, p=0.1
///   scalefree[:m0=M0,m=M]       defaults m0=3, m=2
///   random[:p=P]                default p=0.1
NetworkTopology make_topology(const std::string& spec, std::size_t node_count, std::uint64_t seed);

} // namespace ofs
