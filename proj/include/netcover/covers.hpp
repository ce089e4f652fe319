#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "netcover/graph.hpp"

namespace netcover {

// Which edge-length regime the cover computation accepts: Assumption1
// requires l <= delta everywhere; Reduced additionally admits long edges
// (l > 2*delta) but nothing in between.
enum class LengthRule { Assumption1, Reduced };

inline void check_length_rule(const Network& net, double delta, LengthRule rule) {
    for (const auto& e : net.edges()) {
        if (e.length <= delta * (1.0 + kTol)) continue;
        if (rule == LengthRule::Reduced && e.length > 2.0 * delta * (1.0 + kTol)) continue;
        throw std::invalid_argument(
            rule == LengthRule::Assumption1
                ? "edge length exceeds delta; subdivide the network first"
                : "edge length in (delta, 2*delta]; run the reduced subdivision first");
    }
}

struct CoverCounters {
    long long heap_pops = 0;
    long long relaxations = 0;
    long long mutual_calls = 0;
    long long undetermined_checks = 0;

    CoverCounters& operator+=(const CoverCounters& o) {
        heap_pops += o.heap_pops;
        relaxations += o.relaxations;
        mutual_calls += o.mutual_calls;
        undetermined_checks += o.undetermined_checks;
        return *this;
    }
};

// Output of the single-source delta-cover search.
struct NodeCoverResult {
    NodeId source = -1;
    std::vector<double> dist;      // +inf sentinel where d(source,v) > delta
    std::vector<NodeId> prev;      // predecessors; computed but unused downstream
    std::vector<NodeId> nodes;     // V(source), sorted
    std::vector<EdgeId> edges;     // potential covers E(source), sorted
    std::vector<EdgeId> complete;  // Ec(source), sorted
    CoverCounters counters;
};

// Pruned label-setting search from `s`. Edges fully reachable through the
// popped endpoint (d(s,u)+l <= delta) are complete immediately; edges seen
// only with longer labels stay undetermined until the final two-side test
// (delta-d_a) + (delta-d_b) >= l.
inline NodeCoverResult node_cover(const Network& net, double delta, NodeId s,
                                  LengthRule rule = LengthRule::Assumption1) {
    if (s < 0 || s >= net.node_count()) throw std::invalid_argument("unknown node id");
    if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
    check_length_rule(net, delta, rule);

    NodeCoverResult res;
    res.source = s;
    res.dist.assign(net.node_count(), kInf);
    res.prev.assign(net.node_count(), -1);
    std::vector<char> done(net.node_count(), 0);
    std::vector<char> potential(net.edge_count(), 0);
    std::vector<char> complete(net.edge_count(), 0);
    std::vector<char> undetermined(net.edge_count(), 0);

    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    res.dist[s] = 0.0;
    heap.push({0.0, s});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = 1;
        ++res.counters.heap_pops;
        if (d > delta + kTol) break;
        for (EdgeId eid : net.incident(u)) {
            const Edge& e = net.edge(eid);
            NodeId v = e.other(u);
            if (done[v]) continue;
            potential[eid] = 1;
            ++res.counters.relaxations;
            double l = d + e.length;
            if (l < res.dist[v]) {
                res.dist[v] = l;
                res.prev[v] = u;
                heap.push({l, v});
            }
            if (l <= delta + kTol) {
                complete[eid] = 1;  // whole edge reachable through u
            } else {
                undetermined[eid] = 1;
            }
        }
    }

    for (NodeId v = 0; v < net.node_count(); ++v) {
        if (res.dist[v] <= delta + kTol)
            res.nodes.push_back(v);
        else
            res.dist[v] = kInf;
    }
    for (EdgeId eid = 0; eid < net.edge_count(); ++eid) {
        if (!undetermined[eid] || complete[eid]) continue;
        ++res.counters.undetermined_checks;
        const Edge& e = net.edge(eid);
        double da = res.dist[e.a], db = res.dist[e.b];
        if (da < kInf && db < kInf && (delta - da) + (delta - db) >= e.length - kTol)
            complete[eid] = 1;
    }
    for (EdgeId eid = 0; eid < net.edge_count(); ++eid) {
        if (potential[eid]) res.edges.push_back(eid);
        if (complete[eid]) res.complete.push_back(eid);
    }
    return res;
}

// All cover sets the formulations consume, as produced by the network
// processing algorithm.
struct CoverData {
    double delta = 0.0;
    LengthRule rule = LengthRule::Assumption1;
    std::vector<NodeCoverResult> per_node;  // indexed by source node

    std::vector<std::vector<NodeId>> edge_complete_nodes;  // Vc(e)
    std::vector<std::vector<EdgeId>> edge_complete_edges;  // Ec(e)
    std::vector<std::vector<NodeId>> node_partial_nodes;   // Vp(v)
    std::vector<std::vector<EdgeId>> node_partial_edges;   // Ep(v)
    // EIp(v): (edge, end) pairs, end is 'a' or 'b'.
    std::vector<std::vector<std::pair<EdgeId, char>>> node_partial_edge_ends;
    CoverCounters counters;

    // Truncated distance: +inf when d(v,u) > delta.
    double dist(NodeId v, NodeId u) const { return per_node.at(v).dist.at(u); }
};

// Two-breakpoint test deciding e' in Ec(e), valid when e' completely covers
// both endpoints of e.
inline bool mutual(const Network& net, double delta, EdgeId e_id, EdgeId ep_id,
                   const CoverData& data) {
    const Edge& e = net.edge(e_id);
    const Edge& ep = net.edge(ep_id);
    const double lp = ep.length;
    const double d_aa = data.dist(e.a, ep.a), d_ab = data.dist(e.a, ep.b);
    const double d_ba = data.dist(e.b, ep.a), d_bb = data.dist(e.b, ep.b);
    if (d_aa == kInf || d_ab == kInf || d_ba == kInf || d_bb == kInf)
        throw std::logic_error("mutual: precondition violated (e' must cover both endpoints)");
    auto r = [&](double da, double db, double q) {
        return delta - std::min(da + q, db + lp - q);
    };
    const double q1 = (d_ab + lp - d_aa) / 2.0;
    const double q2 = (d_bb + lp - d_ba) / 2.0;
    for (double q : {q1, q2}) {
        if (r(d_aa, d_ab, q) + r(d_ba, d_bb, q) < e.length - kTol) return false;
    }
    return true;
}

// Network processing: runs node_cover for every node, derives the complete
// cover sets, then the partial cover sets with the end-dominance filter.
inline CoverData process_network(const Network& net, double delta,
                                 LengthRule rule = LengthRule::Assumption1) {
    check_length_rule(net, delta, rule);
    const int n = net.node_count();
    const int m = net.edge_count();

    CoverData data;
    data.delta = delta;
    data.rule = rule;
    data.per_node.reserve(n);
    for (NodeId v = 0; v < n; ++v) {
        data.per_node.push_back(node_cover(net, delta, v, rule));
        data.counters += data.per_node.back().counters;
    }

    std::vector<char> is_long(m, 0);
    for (const auto& e : net.edges())
        if (e.length > 2.0 * delta * (1.0 + kTol)) is_long[e.id] = 1;

    std::vector<std::vector<char>> node_complete(n, std::vector<char>(m, 0));
    for (NodeId v = 0; v < n; ++v)
        for (EdgeId e : data.per_node[v].complete) node_complete[v][e] = 1;

    data.edge_complete_nodes.assign(m, {});
    for (EdgeId e = 0; e < m; ++e) {
        for (NodeId v = 0; v < n; ++v)
            if (node_complete[v][e]) data.edge_complete_nodes[e].push_back(v);
    }

    std::vector<std::vector<char>> edge_complete(m, std::vector<char>(m, 0));
    for (EdgeId e = 0; e < m; ++e)
        if (!is_long[e]) edge_complete[e][e] = 1;  // e in Ec(e), unreachable by the e < e' loop
    for (EdgeId e = 0; e < m; ++e) {
        const Edge& ed = net.edge(e);
        for (EdgeId ep = e + 1; ep < m; ++ep) {
            if (!node_complete[ed.a][ep] || !node_complete[ed.b][ep]) continue;
            ++data.counters.mutual_calls;
            if (mutual(net, delta, e, ep, data)) {
                edge_complete[e][ep] = 1;
                edge_complete[ep][e] = 1;
            }
        }
    }
    data.edge_complete_edges.assign(m, {});
    for (EdgeId e = 0; e < m; ++e)
        for (EdgeId ep = 0; ep < m; ++ep)
            if (edge_complete[e][ep]) data.edge_complete_edges[e].push_back(ep);

    data.node_partial_nodes.assign(n, {});
    for (NodeId v = 0; v < n; ++v) {
        for (NodeId u : data.per_node[v].nodes) {
            for (EdgeId e : net.incident(v)) {
                if (!node_complete[u][e]) {
                    data.node_partial_nodes[v].push_back(u);
                    break;
                }
            }
        }
    }

    data.node_partial_edges.assign(n, {});
    data.node_partial_edge_ends.assign(n, {});
    for (NodeId v = 0; v < n; ++v) {
        for (EdgeId ep : data.per_node[v].edges) {
            bool partial = false;
            for (EdgeId e : net.incident(v)) {
                if (!edge_complete[e][ep]) {
                    partial = true;
                    break;
                }
            }
            if (!partial) continue;
            data.node_partial_edges[v].push_back(ep);
            const Edge& eped = net.edge(ep);
            double da = data.dist(v, eped.a), db = data.dist(v, eped.b);
            if (da <= delta + kTol && da <= db + eped.length + kTol)
                data.node_partial_edge_ends[v].push_back({ep, 'a'});
            if (db <= delta + kTol && db <= da + eped.length + kTol)
                data.node_partial_edge_ends[v].push_back({ep, 'b'});
        }
    }
    return data;
}

// Operation counters for empirical scaling checks.
inline CoverCounters complexity_probe(const Network& net, double delta,
                                      LengthRule rule = LengthRule::Assumption1) {
    return process_network(net, delta, rule).counters;
}

}  // namespace netcover
