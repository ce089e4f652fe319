#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "netcover/covers.hpp"
#include "netcover/formulations.hpp"
#include "netcover/preprocess.hpp"
#include "netcover/solver.hpp"

namespace netcover {

struct Placement {
    std::vector<PointOnNetwork> points;
    Variant source_variant = Variant::SF;
    long long objective_claimed = -1;
};

// Facility placement from MILP variable values. Long edges decode as the
// periodic chain q + 2*delta*k with floor(l/2delta)+1-u points.
inline Placement decode(const ModelSpec& model, const SolveResult& result, const Network& net,
                        double delta) {
    if (!result.has_incumbent) throw std::invalid_argument("decode: result has no incumbent");
    Placement out;
    out.objective_claimed = std::llround(result.incumbent);

    auto value = [&](const std::string& name) {
        auto it = result.values.find(name);
        return it == result.values.end() ? 0.0 : it->second;
    };

    std::set<PointOnNetwork> points;
    for (const auto& v : model.variables()) {
        if (v.entity.kind == VarEntity::Kind::NodeFacility && value(v.name) >= 0.5) {
            points.insert(PointOnNetwork::at_node(v.entity.node));
        } else if (v.entity.kind == VarEntity::Kind::EdgeFacility && value(v.name) >= 0.5) {
            EdgeId e = v.entity.edge;
            const Edge& ed = net.edge(e);
            double q = value("q_e" + std::to_string(e));
            if (ed.length > 2.0 * delta * (1.0 + kTol)) {
                auto [k, tail] = detail::long_edge_layout(ed.length, delta);
                (void)tail;
                long long u = std::llround(value("u_e" + std::to_string(e)));
                long long count = k + 1 - u;
                for (long long j = 0; j < count; ++j) {
                    double off = std::min(q + 2.0 * delta * j, ed.length);
                    points.insert(net.canonical(PointOnNetwork::on_edge(e, off)));
                }
            } else {
                if (q > ed.length + 1e-6)
                    throw std::runtime_error("decode: coordinate exceeds edge length");
                points.insert(net.canonical(PointOnNetwork::on_edge(e, std::min(q, ed.length))));
            }
        }
    }
    out.points.assign(points.begin(), points.end());
    return out;
}

struct CoverCheck {
    bool ok = false;
    EdgeId witness_edge = -1;
    double uncovered_lo = 0.0;  // offsets on the witness edge
    double uncovered_hi = 0.0;
};

// Exact delta-cover test. An edge hosting an interior facility is covered
// outright when it satisfies the length assumption; an edge without one is
// covered iff the endpoint residuals add up to its length (true for any
// length). A long edge hosting an interior facility cannot be decided
// edge-wise, so the caller must verify on the subdivided network.
inline CoverCheck is_cover(const Network& net, double delta, const Placement& placement) {
    std::vector<std::vector<double>> fac_dist;
    std::vector<char> hosted(net.edge_count(), 0);
    for (const auto& raw : placement.points) {
        PointOnNetwork p = net.canonical(raw);
        fac_dist.push_back(distances_from_point(net, p));
        if (!p.is_node()) {
            if (net.edge(p.edge).length > delta * (1.0 + kTol))
                throw std::invalid_argument(
                    "interior facility on an edge longer than delta; verify on the subdivided "
                    "network");
            hosted[p.edge] = 1;
        }
    }
    CoverCheck check;
    for (const auto& e : net.edges()) {
        if (hosted[e.id]) continue;
        double ma = kInf, mb = kInf;
        for (const auto& d : fac_dist) {
            ma = std::min(ma, d[e.a]);
            mb = std::min(mb, d[e.b]);
        }
        double ra = std::max(delta - ma, 0.0);
        double rb = std::max(delta - mb, 0.0);
        if (ra + rb >= e.length - kTol) continue;
        check.ok = false;
        check.witness_edge = e.id;
        check.uncovered_lo = ra;
        check.uncovered_hi = e.length - rb;
        return check;
    }
    check.ok = true;
    return check;
}

struct BruteForceResult {
    int optimum = -1;
    Placement placement;  // in input-network coordinates
};

// Grid-restricted exhaustive oracle: candidates are the nodes, edge
// midpoints and uniform grid steps; subsets are tried by increasing
// cardinality with the exact cover test.
inline BruteForceResult brute_force_optimum(const Network& net, double delta, double grid_step,
                                            int max_candidates = 60) {
    if (!(grid_step > 0)) throw std::invalid_argument("grid step must be positive");
    auto [vnet, rep] = subdivide_for_assumption(net, delta);

    std::vector<PointOnNetwork> cands;
    std::set<PointOnNetwork> seen;
    auto push = [&](PointOnNetwork p) {
        p = net.canonical(p);
        if (seen.insert(p).second) cands.push_back(p);
    };
    for (NodeId v = 0; v < net.node_count(); ++v) push(PointOnNetwork::at_node(v));
    for (const auto& e : net.edges()) {
        push(PointOnNetwork::on_edge(e.id, e.length / 2.0));
        for (double off = grid_step; off < e.length - kTol; off += grid_step)
            push(PointOnNetwork::on_edge(e.id, off));
    }
    if (static_cast<int>(cands.size()) > max_candidates)
        throw std::runtime_error("brute_force_optimum: candidate grid too large (" +
                                 std::to_string(cands.size()) + " > " +
                                 std::to_string(max_candidates) + ")");

    const int nc = static_cast<int>(cands.size());
    const int nv = vnet.node_count();
    std::vector<std::vector<double>> dist(nc);
    std::vector<std::vector<EdgeId>> hosts(nc);
    for (int c = 0; c < nc; ++c) {
        PointOnNetwork p = map_to_subdivided(net, vnet, rep, cands[c]);
        dist[c] = distances_from_point(vnet, p);
        if (p.is_node())
            hosts[c] = vnet.incident(p.node);
        else
            hosts[c] = {p.edge};
    }

    std::vector<int> chosen;
    std::vector<double> best(nv, kInf);
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
            for (int v = 0; v < nv; ++v) best[v] = std::min(best[v], dist[c][v]);
            for (EdgeId e : hosts[c]) ++host_count[e];
            chosen.push_back(c);
            if (search(c + 1, remaining - 1)) return true;
            chosen.pop_back();
            for (EdgeId e : hosts[c]) --host_count[e];
            best = saved;
        }
        return false;
    };

    for (int k = 1; k <= nc; ++k) {
        if (search(0, k)) {
            BruteForceResult res;
            res.optimum = k;
            for (int c : chosen) res.placement.points.push_back(cands[c]);
            res.placement.objective_claimed = k;
            return res;
        }
    }
    throw std::runtime_error("brute_force_optimum: grid admits no cover; refine grid_step");
}

}  // namespace netcover
