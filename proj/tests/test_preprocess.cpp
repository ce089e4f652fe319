#include <catch_amalgamated.hpp>

#include <random>

#include "netcover/preprocess.hpp"
#include "netcover/verify.hpp"
#include "oracle.hpp"

using namespace netcover;

namespace {

Network path3() { return Network(3, {{0, 1, 1.0}, {1, 2, 1.0}}); }
Network k3() { return Network(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}); }

}  // namespace

TEST_CASE("degree-two contraction merges a path into one edge") {
    auto [net, rep] = contract_degree_two(path3());
    CHECK(net.node_count() == 2);
    CHECK(net.edge_count() == 1);
    CHECK(net.edge(0).length == Catch::Approx(2.0));
    CHECK(rep.result_length == Catch::Approx(rep.original_length));
    CHECK(rep.chains[0].size() == 2);
}

TEST_CASE("contracting a triangle stops before self-loops") {
    // One contraction is legal (it creates a parallel edge); after that every
    // remaining degree-two node would self-loop, so the 2-node 2-edge
    // multigraph is the fixed point.
    auto [net, rep] = contract_degree_two(k3());
    CHECK(net.node_count() == 2);
    REQUIRE(net.edge_count() == 2);
    std::vector<double> lens{net.edge(0).length, net.edge(1).length};
    std::sort(lens.begin(), lens.end());
    CHECK(lens[0] == Catch::Approx(1.0));
    CHECK(lens[1] == Catch::Approx(2.0));
    CHECK(rep.result_length == Catch::Approx(3.0));
}

TEST_CASE("a star has no degree-two node to contract") {
    Network star(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
    auto [net, rep] = contract_degree_two(star);
    CHECK(net.node_count() == 4);
    CHECK(net.edge_count() == 3);
    (void)rep;
}

TEST_CASE("assumption subdivision splits into equal ceil(l/delta) pieces") {
    SECTION("length 3.5, delta 1") {
        Network g(2, {{0, 1, 3.5}});
        auto [net, rep] = subdivide_for_assumption(g, 1.0);
        REQUIRE(net.edge_count() == 4);
        for (const auto& e : net.edges()) CHECK(e.length == Catch::Approx(0.875));
        CHECK(rep.result_nodes == 5);
    }
    SECTION("length 0.9, delta 1 stays") {
        Network g(2, {{0, 1, 0.9}});
        auto [net, rep] = subdivide_for_assumption(g, 1.0);
        CHECK(net.edge_count() == 1);
        (void)rep;
    }
    SECTION("length 2.0, delta 1 gives two unit pieces") {
        Network g(2, {{0, 1, 2.0}});
        auto [net, rep] = subdivide_for_assumption(g, 1.0);
        REQUIRE(net.edge_count() == 2);
        for (const auto& e : net.edges()) CHECK(e.length == Catch::Approx(1.0));
        (void)rep;
    }
}

TEST_CASE("reduced subdivision handles the three length regimes") {
    SECTION("delta < l <= 2 delta becomes two halves") {
        Network g(2, {{0, 1, 1.5}});
        auto [net, rep] = subdivide_for_reduced(g, 1.0);
        REQUIRE(net.edge_count() == 2);
        for (const auto& e : net.edges()) CHECK(e.length == Catch::Approx(0.75));
        (void)rep;
    }
    SECTION("long edges stay") {
        Network g(2, {{0, 1, 5.0}});
        auto [net, rep] = subdivide_for_reduced(g, 1.0);
        CHECK(net.edge_count() == 1);
        (void)rep;
    }
    SECTION("boundary l = 2 delta is subdivided, not long") {
        Network g(2, {{0, 1, 2.0}});
        auto [net, rep] = subdivide_for_reduced(g, 1.0);
        REQUIRE(net.edge_count() == 2);
        for (const auto& e : net.edges()) CHECK(e.length == Catch::Approx(1.0));
        (void)rep;
    }
    SECTION("exact multiples of 2 delta get a delta piece cut off") {
        Network g(2, {{0, 1, 4.0}});
        auto [net, rep] = subdivide_for_reduced(g, 1.0);
        REQUIRE(net.edge_count() == 2);
        std::vector<double> lens{net.edge(0).length, net.edge(1).length};
        std::sort(lens.begin(), lens.end());
        CHECK(lens[0] == Catch::Approx(1.0));
        CHECK(lens[1] == Catch::Approx(3.0));
        CHECK(rep.result_length == Catch::Approx(4.0));
    }
}

TEST_CASE("transformations conserve total length") {
    std::mt19937_64 rng(5);
    for (int rep_i = 0; rep_i < 10; ++rep_i) {
        int n = 4 + static_cast<int>(rng() % 6);
        std::vector<std::tuple<NodeId, NodeId, double>> e;
        for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 0.3 + (rng() % 1000) / 250.0});
        for (int i = 0; i + 2 < n; i += 2) e.push_back({i, i + 2, 0.3 + (rng() % 1000) / 250.0});
        Network g(n, std::move(e));
        double total = g.total_length();
        for (double delta : {0.7, 1.3}) {
            auto [a, ra] = subdivide_for_assumption(g, delta);
            CHECK(std::abs(a.total_length() - total) <= 1e-9 * total);
            auto [r, rr] = subdivide_for_reduced(g, delta);
            CHECK(std::abs(r.total_length() - total) <= 1e-9 * total);
            (void)ra;
            (void)rr;
        }
        auto [c, rc] = contract_degree_two(g);
        CHECK(std::abs(c.total_length() - total) <= 1e-9 * total);
        (void)rc;
    }
}

namespace {

// Exhaustive minimum-cardinality cover over a fixed candidate point list,
// evaluated on the assumption-subdivided version of `net`.
int fixed_candidate_optimum(const Network& net, double delta,
                            const std::vector<PointOnNetwork>& cands) {
    auto [vnet, rep] = subdivide_for_assumption(net, delta);
    const int nc = static_cast<int>(cands.size());
    std::vector<std::vector<double>> dist(nc);
    std::vector<std::vector<EdgeId>> hosts(nc);
    for (int c = 0; c < nc; ++c) {
        PointOnNetwork p = map_to_subdivided(net, vnet, rep, net.canonical(cands[c]));
        dist[c] = distances_from_point(vnet, p);
        if (!p.is_node()) hosts[c] = {p.edge};
    }
    std::vector<double> best(vnet.node_count(), kInf);
    std::vector<int> host_count(vnet.edge_count(), 0);
    auto feasible = [&]() {
        for (const auto& e : vnet.edges()) {
            if (host_count[e.id] > 0) continue;
            double ra = std::max(delta - best[e.a], 0.0);
            double rb = std::max(delta - best[e.b], 0.0);
            if (ra + rb < e.length - kTol) return false;
        }
        return true;
    };
    std::function<bool(int, int)> search = [&](int start, int remaining) -> bool {
        if (remaining == 0) return feasible();
        for (int c = start; c <= nc - remaining; ++c) {
            std::vector<double> saved = best;
            for (size_t v = 0; v < best.size(); ++v) best[v] = std::min(best[v], dist[c][v]);
            for (EdgeId e : hosts[c]) ++host_count[e];
            if (search(c + 1, remaining - 1)) return true;
            for (EdgeId e : hosts[c]) --host_count[e];
            best = saved;
        }
        return false;
    };
    for (int k = 1; k <= nc; ++k)
        if (search(0, k)) return k;
    return -1;
}

}  // namespace

TEST_CASE("grid optimum is invariant under the transformations") {
    std::mt19937_64 rng(19);
    for (int rep_i = 0; rep_i < 10; ++rep_i) {
        int n = 4 + static_cast<int>(rng() % 3);
        std::vector<std::tuple<NodeId, NodeId, double>> e;
        for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 0.4 + (rng() % 100) / 60.0});
        if (rng() % 2) e.push_back({0, n - 1, 0.4 + (rng() % 100) / 60.0});
        Network g(n, std::move(e));
        double delta = 0.9;

        // One shared candidate list on the input continuum.
        std::vector<PointOnNetwork> cands;
        for (NodeId v = 0; v < g.node_count(); ++v) cands.push_back(PointOnNetwork::at_node(v));
        for (const auto& ed : g.edges()) {
            cands.push_back(PointOnNetwork::on_edge(ed.id, ed.length / 2));
            for (double off = 0.3; off < ed.length - kTol; off += 0.3)
                cands.push_back(PointOnNetwork::on_edge(ed.id, off));
        }

        int base = fixed_candidate_optimum(g, delta, cands);
        REQUIRE(base > 0);

        auto [a, ra] = subdivide_for_assumption(g, delta);
        std::vector<PointOnNetwork> in_a;
        for (const auto& p : cands) in_a.push_back(map_to_subdivided(g, a, ra, p));
        CHECK(fixed_candidate_optimum(a, delta, in_a) == base);

        auto [r, rr] = subdivide_for_reduced(g, delta);
        std::vector<PointOnNetwork> in_r;
        for (const auto& p : cands) in_r.push_back(map_to_subdivided(g, r, rr, p));
        CHECK(fixed_candidate_optimum(r, delta, in_r) == base);

        auto [c, rc] = contract_degree_two(g);
        std::vector<PointOnNetwork> in_c;
        for (const auto& p : cands) in_c.push_back(map_to_contracted(g, c, rc, p));
        CHECK(fixed_candidate_optimum(c, delta, in_c) == base);
    }
}

TEST_CASE("subdivision point mapping round-trips") {
    Network g(2, {{0, 1, 3.5}});
    auto [net, rep] = subdivide_for_assumption(g, 1.0);
    for (double off : {0.1, 0.9, 1.75, 3.4}) {
        PointOnNetwork p = PointOnNetwork::on_edge(0, off);
        PointOnNetwork sub = map_to_subdivided(g, net, rep, p);
        PointOnNetwork back = map_to_source(g, net, rep, sub);
        REQUIRE_FALSE(back.is_node());
        CHECK(back.offset == Catch::Approx(off));
    }
    // New subdivision nodes map to interior source points.
    PointOnNetwork cut = map_to_source(g, net, rep, PointOnNetwork::at_node(2));
    REQUIRE_FALSE(cut.is_node());
    CHECK(cut.offset == Catch::Approx(0.875));
}

TEST_CASE("contraction point mapping walks the chain") {
    auto [net, rep] = contract_degree_two(path3());
    PointOnNetwork mid = map_to_precontraction(path3(), net, rep, PointOnNetwork::on_edge(0, 1.5));
    REQUIRE_FALSE(mid.is_node());
    CHECK(point_distance(path3(), 0, mid) == Catch::Approx(1.5));
    PointOnNetwork node = map_to_precontraction(path3(), net, rep, PointOnNetwork::at_node(1));
    REQUIRE(node.is_node());
    CHECK(node.node == 2);
}
