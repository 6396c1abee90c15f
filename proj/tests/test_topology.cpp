#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ofs/rng.hpp"
#include "ofs/topology.hpp"

using namespace ofs;

namespace {

void check_symmetric(const NetworkTopology& t) {
    std::size_t degree_sum = 0;
    for (std::size_t i = 0; i < t.node_count(); ++i) {
        const int node = static_cast<int>(i);
        degree_sum += t.degree(node);
        for (int j : t.neighborhood(node)) {
            CHECK(t.has_edge(j, node));
            CHECK(j != node);
        }
        auto adj = t.neighborhood(node);
        CHECK(std::is_sorted(adj.begin(), adj.end()));
        CHECK(std::adjacent_find(adj.begin(), adj.end()) == adj.end());
    }
    CHECK(degree_sum == 2 * t.edge_count());
}

} // namespace

TEST_CASE("edge bookkeeping and bounds") {
    NetworkTopology t(4);
    t.add_edge(0, 1);
    t.add_edge(2, 1);
    CHECK(t.edge_count() == 2);
    CHECK(t.has_edge(1, 0));
    CHECK(t.has_edge(1, 2));
    CHECK(t.neighborhood(1) == std::vector<int>{0, 2});
    CHECK_THROWS_AS(t.add_edge(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(t.add_edge(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(t.add_edge(0, 4), std::invalid_argument);
    CHECK_THROWS_AS((void)t.neighborhood(-1), std::invalid_argument);
    t.remove_edge(1, 0);
    CHECK(t.edge_count() == 1);
    CHECK_FALSE(t.has_edge(0, 1));
    CHECK_THROWS_AS(t.remove_edge(0, 3), std::invalid_argument);
}

TEST_CASE("lattice degrees") {
    SUBCASE("3x3 torus: all degree 4") {
        auto t = lattice_2d(3, 3, true);
        check_symmetric(t);
        for (int i = 0; i < 9; ++i) CHECK(t.degree(i) == 4);
        CHECK(t.edge_count() == 18);
        // Node 0 of the torus: right 1, left 2, down 3, up 6.
        CHECK(t.neighborhood(0) == std::vector<int>{1, 2, 3, 6});
    }
    SUBCASE("1x1: single node, no edges") {
        auto t = lattice_2d(1, 1, false);
        CHECK(t.node_count() == 1);
        CHECK(t.edge_count() == 0);
        CHECK(t.neighborhood(0).empty());
    }
    SUBCASE("2x2 open grid: all degree 2") {
        auto t = lattice_2d(2, 2, false);
        check_symmetric(t);
        for (int i = 0; i < 4; ++i) CHECK(t.degree(i) == 2);
    }
    SUBCASE("4x5 open grid: corner 2, edge 3, interior 4") {
        auto t = lattice_2d(4, 5, false);
        check_symmetric(t);
        CHECK(t.degree(0) == 2);  // corner
        CHECK(t.degree(1) == 3);  // top edge
        CHECK(t.degree(6) == 4);  // interior
        CHECK(t.edge_count() == 4 * 4 + 3 * 5); // horizontal + vertical runs
    }
    SUBCASE("wrapping a 2-wide dimension folds the duplicate edge") {
        auto t = lattice_2d(2, 5, true);
        check_symmetric(t);
        // Vertical wrap edges coincide with the plain vertical edges.
        for (int i = 0; i < 10; ++i) CHECK(t.degree(i) == 3);
    }
}

TEST_CASE("small world generator") {
    SUBCASE("p=0 is the exact ring lattice") {
        Rng rng(1);
        auto t = small_world(10, 4, 0.0, rng);
        check_symmetric(t);
        for (int i = 0; i < 10; ++i) CHECK(t.degree(i) == 4);
        CHECK(t.edge_count() == 20);
        CHECK(t.neighborhood(0) == std::vector<int>{1, 2, 8, 9});
    }
    SUBCASE("p=1 keeps edge count nk/2") {
        Rng rng(2);
        auto t = small_world(10, 4, 1.0, rng);
        check_symmetric(t);
        CHECK(t.edge_count() == 20);
    }
    SUBCASE("same seed gives identical adjacency") {
        Rng r1(77);
        Rng r2(77);
        CHECK(small_world(30, 6, 0.2, r1) == small_world(30, 6, 0.2, r2));
    }
    SUBCASE("preconditions") {
        Rng rng(3);
        CHECK_THROWS_AS(small_world(10, 3, 0.1, rng), std::invalid_argument); // odd k
        CHECK_THROWS_AS(small_world(4, 4, 0.1, rng), std::invalid_argument);  // n <= k
        CHECK_THROWS_AS(small_world(10, 4, 1.5, rng), std::invalid_argument);
    }
}

TEST_CASE("scale free generator") {
    SUBCASE("closed-form edge count") {
        Rng rng(5);
        auto t = scale_free(50, 3, 2, rng);
        check_symmetric(t);
        CHECK(t.edge_count() == 3 + 47 * 2);
    }
    SUBCASE("n = m0 gives the bare clique") {
        Rng rng(6);
        auto t = scale_free(3, 3, 1, rng);
        CHECK(t.edge_count() == 3);
        for (int i = 0; i < 3; ++i) CHECK(t.degree(i) == 2);
    }
    SUBCASE("heavy tail: max degree well above the mean") {
        Rng rng(7);
        auto t = scale_free(200, 3, 2, rng);
        std::size_t max_deg = 0;
        for (int i = 0; i < 200; ++i) max_deg = std::max(max_deg, t.degree(i));
        const double mean = 2.0 * static_cast<double>(t.edge_count()) / 200.0;
        CHECK(static_cast<double>(max_deg) > mean * 3.0);
    }
    SUBCASE("preconditions") {
        Rng rng(8);
        CHECK_THROWS_AS(scale_free(2, 3, 2, rng), std::invalid_argument);
        CHECK_THROWS_AS(scale_free(10, 2, 3, rng), std::invalid_argument);
        CHECK_THROWS_AS(scale_free(10, 2, 0, rng), std::invalid_argument);
    }
}

TEST_CASE("random graph generator") {
    Rng rng(9);
    CHECK(random_graph(10, 0.0, rng).edge_count() == 0);
    auto complete = random_graph(10, 1.0, rng);
    CHECK(complete.edge_count() == 45);
    CHECK(complete.neighborhood(2) == std::vector<int>{0, 1, 3, 4, 5, 6, 7, 8, 9});

    // Edge count within 4 sigma of the binomial mean.
    auto t = random_graph(100, 0.1, rng);
    check_symmetric(t);
    const double mean = 4950 * 0.1;
    const double sigma = std::sqrt(4950 * 0.1 * 0.9);
    CHECK(static_cast<double>(t.edge_count()) > mean - 4 * sigma);
    CHECK(static_cast<double>(t.edge_count()) < mean + 4 * sigma);

    CHECK_THROWS_AS(random_graph(10, -0.1, rng), std::invalid_argument);
}

TEST_CASE("dump and parse round-trip") {
    Rng rng(10);
    auto t = small_world(20, 4, 0.3, rng);
    std::stringstream ss;
    t.dump(ss);
    auto back = NetworkTopology::parse(ss);
    CHECK(back == t);

    std::stringstream empty_graph;
    NetworkTopology(3).dump(empty_graph);
    CHECK(empty_graph.str() == "n 3\n");
    CHECK(NetworkTopology::parse(empty_graph).node_count() == 3);

    std::stringstream bad;
    bad << "x 3\n";
    CHECK_THROWS_AS(NetworkTopology::parse(bad), std::runtime_error);
}

TEST_CASE("make_topology spec strings") {
    SUBCASE("lattice auto-factors the population size") {
        auto t = make_topology("lattice", 12, 1);
        CHECK(t.node_count() == 12);
        // 3x4 grid: corners exist, so some degree-2 nodes.
        CHECK(t.degree(0) == 2);
    }
    SUBCASE("explicit dimensions and wrap") {
        auto t = make_topology("lattice:3x3:wrap", 9, 1);
        for (int i = 0; i < 9; ++i) CHECK(t.degree(i) == 4);
        CHECK_THROWS_AS(make_topology("lattice:3x3", 10, 1), std::invalid_argument);
    }
    SUBCASE("prime sizes degrade to a path") {
        auto t = make_topology("lattice", 7, 1);
        CHECK(t.edge_count() == 6);
    }
    SUBCASE("smallworld defaults and parameters") {
        auto t = make_topology("smallworld", 30, 5);
        CHECK(t.edge_count() == 30 * 4 / 2);
        auto t6 = make_topology("smallworld:k=6,p=0.5", 30, 5);
        CHECK(t6.edge_count() == 30 * 6 / 2);
    }
    SUBCASE("scalefree defaults") {
        auto t = make_topology("scalefree", 40, 5);
        CHECK(t.edge_count() == 3 + 37 * 2);
        auto t2 = make_topology("scalefree:m0=4,m=1", 40, 5);
        CHECK(t2.edge_count() == 6 + 36);
    }
    SUBCASE("random respects p") {
        CHECK(make_topology("random:p=1", 10, 5).edge_count() == 45);
    }
    SUBCASE("same seed same graph, different seed differs") {
        auto a = make_topology("smallworld:k=4,p=0.3", 40, 11);
        auto b = make_topology("smallworld:k=4,p=0.3", 40, 11);
        auto c = make_topology("smallworld:k=4,p=0.3", 40, 12);
        CHECK(a == b);
        CHECK_FALSE(a == c);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(make_topology("banana", 10, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_topology("smallworld:k=four", 10, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_topology("", 10, 1), std::invalid_argument);
    }
}
