#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "netcover/graph.hpp"
#include "oracle.hpp"

using namespace netcover;

namespace {

Network k3() { return Network(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}); }

Network path(int nodes, double len = 1.0) {
    std::vector<std::tuple<NodeId, NodeId, double>> e;
    for (int i = 0; i + 1 < nodes; ++i) e.push_back({i, i + 1, len});
    return Network(nodes, std::move(e));
}

Network random_net(std::mt19937_64& rng, int n) {
    for (;;) {
        std::vector<std::tuple<NodeId, NodeId, double>> e;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if ((rng() % 100) < 40)
                    e.push_back({i, j, 0.25 + (rng() % 1000) / 500.0});
        if (e.empty()) continue;
        try {
            return Network(n, std::move(e));
        } catch (const std::invalid_argument&) {
        }
    }
}

}  // namespace

TEST_CASE("network construction validates input") {
    CHECK_THROWS_AS(Network(2, {{0, 0, 1.0}}), std::invalid_argument);   // self-loop
    CHECK_THROWS_AS(Network(2, {{0, 1, 0.0}}), std::invalid_argument);   // zero length
    CHECK_THROWS_AS(Network(2, {{0, 1, -1.0}}), std::invalid_argument);  // negative length
    CHECK_THROWS_AS(Network(4, {{0, 1, 1.0}, {2, 3, 1.0}}), std::invalid_argument);  // split
    CHECK_THROWS_AS(Network(2, {{0, 5, 1.0}}), std::invalid_argument);   // bad id
    CHECK_THROWS_AS(Network(1, {}), std::invalid_argument);              // no edge

    Network pll(2, {{0, 1, 1.0}, {1, 0, 2.0}});  // parallel edges are fine
    CHECK(pll.edge_count() == 2);
    CHECK(pll.edge(1).a == 0);  // endpoints stored in node order
}

TEST_CASE("node distances on small graphs") {
    Network g = k3();
    CHECK(node_distance(g, 0, 1) == Catch::Approx(1.0));
    CHECK(node_distance(g, 0, 0) == 0.0);
    Network p8 = path(8);
    CHECK(node_distance(p8, 0, 7) == Catch::Approx(7.0));
}

TEST_CASE("point distances follow the two-route formula") {
    Network g = k3();
    // v = node 1, p interior of edge (0,2) at offset 0.5
    CHECK(point_distance(g, 1, PointOnNetwork::on_edge(1, 0.5)) == Catch::Approx(1.5));
    CHECK(point_distance(g, 0, PointOnNetwork::on_edge(0, 0.3)) == Catch::Approx(0.3));
    CHECK(point_distance(g, 0, PointOnNetwork::at_node(0)) == 0.0);
    CHECK_THROWS_AS(point_distance(g, 0, PointOnNetwork::on_edge(0, 2.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(point_distance(g, 9, PointOnNetwork::at_node(0)), std::invalid_argument);
}

TEST_CASE("distances match Floyd-Warshall and simple-path enumeration") {
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 12; ++rep) {
        Network g = random_net(rng, 4 + static_cast<int>(rng() % 5));  // up to 8 nodes
        auto fw = oracle::floyd_warshall(g);
        for (NodeId s = 0; s < g.node_count(); ++s) {
            auto d = distances_from_node(g, s);
            for (NodeId t = 0; t < g.node_count(); ++t) {
                CHECK(d[t] == Catch::Approx(fw[s][t]).margin(1e-12));
                CHECK(d[t] == Catch::Approx(oracle::simple_paths_min(g, s, t)).margin(1e-12));
            }
        }
    }
}

TEST_CASE("triangle inequality and symmetry hold") {
    std::mt19937_64 rng(7);
    Network g = random_net(rng, 7);
    std::vector<std::vector<double>> d(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) d[v] = distances_from_node(g, v);
    for (NodeId s = 0; s < g.node_count(); ++s)
        for (NodeId t = 0; t < g.node_count(); ++t) {
            CHECK(d[s][t] == Catch::Approx(d[t][s]));
            for (NodeId u = 0; u < g.node_count(); ++u)
                CHECK(d[s][t] <= d[s][u] + d[u][t] + 1e-9);
        }
}

TEST_CASE("interior point distance is piecewise linear with one peak") {
    std::mt19937_64 rng(11);
    Network g = random_net(rng, 6);
    auto fw = oracle::floyd_warshall(g);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (const auto& e : g.edges()) {
            double peak = (fw[v][e.b] + e.length - fw[v][e.a]) / 2.0;  // Q_{v e}
            CHECK(peak >= -1e-9);
            CHECK(peak <= e.length + 1e-9);
            auto dv = [&](double q) {
                return std::min(fw[v][e.a] + q, fw[v][e.b] + e.length - q);
            };
            double prev = dv(0.0);
            bool decreasing = false;
            for (int i = 1; i <= 24; ++i) {
                double q = e.length * i / 24.0;
                double cur = dv(q);
                if (cur < prev - 1e-12) decreasing = true;
                if (decreasing) CHECK(cur <= prev + 1e-12);  // never rises again
                if (q <= peak + 1e-9 && !decreasing) CHECK(cur >= prev - 1e-12);
                prev = cur;
            }
        }
    }
}

TEST_CASE("graph file round trip and loader errors") {
    Network g = k3();
    std::ostringstream out;
    save_network(g, out);
    std::istringstream in(out.str());
    Network g2 = load_network(in);
    REQUIRE(g2.node_count() == 3);
    REQUIRE(g2.edge_count() == 3);
    for (EdgeId e = 0; e < 3; ++e) CHECK(g2.edge(e).length == g.edge(e).length);

    std::istringstream bad("2 1\n0 0 1.0\n");
    CHECK_THROWS(load_network(bad));
    std::istringstream trunc("3 2\n0 1 1.0\n");
    CHECK_THROWS(load_network(trunc));
}

TEST_CASE("canonicalization collapses edge ends to nodes") {
    Network g = k3();
    CHECK(g.canonical(PointOnNetwork::on_edge(0, 0.0)).is_node());
    CHECK(g.canonical(PointOnNetwork::on_edge(0, 1.0)).node == g.edge(0).b);
    CHECK_FALSE(g.canonical(PointOnNetwork::on_edge(0, 0.5)).is_node());
}
