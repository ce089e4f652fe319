#pragma once

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include "netcover/graph.hpp"

namespace netcover {

// One source edge traversed by a contracted edge, entered at node `from`
// (a source-network node id).
struct ChainLink {
    EdgeId edge = -1;
    NodeId from = -1;
};

// Where a result edge lives on its source edge: the result edge's a-endpoint
// sits at source offset `off_a`, its b-endpoint at `off_b`. off_a > off_b
// means the piece runs against the source edge's own orientation.
struct EdgeInterval {
    EdgeId source = -1;
    double off_a = 0.0;
    double off_b = 0.0;
};

struct PreprocessReport {
    enum class Kind { Contraction, Subdivision };
    Kind kind = Kind::Subdivision;

    int original_nodes = 0;
    int original_edges = 0;
    int result_nodes = 0;
    int result_edges = 0;
    double original_length = 0.0;
    double result_length = 0.0;

    // Subdivision only.
    std::vector<EdgeInterval> intervals;                  // per result edge
    std::vector<std::vector<EdgeId>> pieces_of;           // per source edge, result pieces in offset order
    std::vector<std::pair<EdgeId, double>> new_node_pos;  // result nodes >= original_nodes

    // Contraction only.
    std::vector<std::vector<ChainLink>> chains;  // per result edge, walked from its a-endpoint
    std::vector<NodeId> node_map;                // source node -> result node, -1 if removed
    std::vector<NodeId> result_node_source;      // result node -> source node
};

namespace detail {

// Split edges at the interior offsets returned by `cuts(edge)`; offsets must
// be strictly increasing within (0, length).
template <typename CutFn>
std::pair<Network, PreprocessReport> subdivide_with(const Network& net, CutFn cuts) {
    PreprocessReport rep;
    rep.kind = PreprocessReport::Kind::Subdivision;
    rep.original_nodes = net.node_count();
    rep.original_edges = net.edge_count();
    rep.original_length = net.total_length();
    rep.pieces_of.resize(net.edge_count());

    int next_node = net.node_count();
    std::vector<std::tuple<NodeId, NodeId, double>> out_edges;
    // Emitted in the same order the Network constructor assigns edge ids.
    std::vector<EdgeInterval> intervals;
    for (const auto& e : net.edges()) {
        std::vector<double> cs = cuts(e);
        std::vector<double> bounds{0.0};
        bounds.insert(bounds.end(), cs.begin(), cs.end());
        bounds.push_back(e.length);
        std::vector<NodeId> pts{e.a};
        for (size_t i = 1; i + 1 < bounds.size(); ++i) {
            rep.new_node_pos.push_back({e.id, bounds[i]});
            pts.push_back(next_node++);
        }
        pts.push_back(e.b);
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            EdgeId out_id = static_cast<EdgeId>(out_edges.size());
            out_edges.emplace_back(pts[i], pts[i + 1], bounds[i + 1] - bounds[i]);
            EdgeInterval iv;
            iv.source = e.id;
            // Endpoints are reordered a <= b by the Network constructor.
            if (pts[i] <= pts[i + 1]) {
                iv.off_a = bounds[i];
                iv.off_b = bounds[i + 1];
            } else {
                iv.off_a = bounds[i + 1];
                iv.off_b = bounds[i];
            }
            intervals.push_back(iv);
            rep.pieces_of[e.id].push_back(out_id);
        }
    }
    Network out(next_node, std::move(out_edges));
    rep.intervals = std::move(intervals);
    rep.result_nodes = out.node_count();
    rep.result_edges = out.edge_count();
    rep.result_length = out.total_length();
    return {std::move(out), std::move(rep)};
}

}  // namespace detail

// Enforce Assumption "l_e <= delta": each longer edge is split into
// ceil(l/delta) equal pieces.
inline std::pair<Network, PreprocessReport> subdivide_for_assumption(const Network& net,
                                                                     double delta) {
    if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
    auto cuts = [&](const Edge& e) {
        std::vector<double> cs;
        if (e.length <= delta * (1.0 + kTol)) return cs;
        int pieces = static_cast<int>(std::ceil(e.length / delta - kTol));
        double step = e.length / pieces;
        for (int i = 1; i < pieces; ++i) cs.push_back(i * step);
        return cs;
    };
    return detail::subdivide_with(net, cuts);
}

// Prepare a network for the reduced model: afterwards every edge satisfies
// l <= delta or l > 2*delta. Edges with delta < l <= 2*delta become two
// halves. A long edge whose length is an exact multiple of 2*delta gets a
// delta-piece cut off so its tail length stays in (0, 2*delta); the periodic
// facility count along such an edge is otherwise ambiguous.
inline std::pair<Network, PreprocessReport> subdivide_for_reduced(const Network& net,
                                                                  double delta) {
    if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
    auto cuts = [&](const Edge& e) {
        std::vector<double> cs;
        if (e.length <= delta * (1.0 + kTol)) return cs;
        if (e.length <= 2.0 * delta * (1.0 + kTol)) {
            cs.push_back(e.length / 2.0);
            return cs;
        }
        double ratio = e.length / (2.0 * delta);
        if (std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, ratio))
            cs.push_back(delta);
        return cs;
    };
    return detail::subdivide_with(net, cuts);
}

// Delete degree-two nodes, concatenating their incident edges, unless the
// concatenation would form a self-loop. Nodes are processed in ascending id
// until no further deletion applies; surviving nodes are reindexed densely
// in the original order. Parallel edges may appear.
inline std::pair<Network, PreprocessReport> contract_degree_two(const Network& net) {
    struct WorkEdge {
        NodeId u, v;
        std::vector<ChainLink> links;  // walked from u
        bool alive = true;
    };
    std::vector<WorkEdge> work;
    work.reserve(net.edge_count());
    std::vector<std::vector<int>> adj(net.node_count());
    for (const auto& e : net.edges()) {
        WorkEdge w;
        w.u = e.a;
        w.v = e.b;
        w.links = {{e.id, e.a}};
        adj[e.a].push_back(static_cast<int>(work.size()));
        adj[e.b].push_back(static_cast<int>(work.size()));
        work.push_back(std::move(w));
    }
    std::vector<char> removed(net.node_count(), 0);

    auto reversed = [&](const std::vector<ChainLink>& links) {
        std::vector<ChainLink> out;
        out.reserve(links.size());
        for (auto it = links.rbegin(); it != links.rend(); ++it)
            out.push_back({it->edge, net.edge(it->edge).other(it->from)});
        return out;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId v = 0; v < net.node_count(); ++v) {
            if (removed[v] || adj[v].size() != 2) continue;
            int i1 = adj[v][0], i2 = adj[v][1];
            if (i1 == i2) continue;
            WorkEdge& e1 = work[i1];
            WorkEdge& e2 = work[i2];
            NodeId x = e1.u == v ? e1.v : e1.u;
            NodeId y = e2.u == v ? e2.v : e2.u;
            if (x == y) continue;  // would self-loop

            WorkEdge merged;
            merged.u = x;
            merged.v = y;
            merged.links = e1.u == x ? e1.links : reversed(e1.links);
            auto tail = e2.u == v ? e2.links : reversed(e2.links);
            merged.links.insert(merged.links.end(), tail.begin(), tail.end());
            e1.alive = e2.alive = false;
            removed[v] = 1;
            adj[v].clear();
            int idx = static_cast<int>(work.size());
            auto drop = [&](NodeId n, int w) {
                auto& list = adj[n];
                list.erase(std::remove(list.begin(), list.end(), w), list.end());
            };
            drop(x, i1);
            drop(x, i2);
            drop(y, i1);
            drop(y, i2);
            adj[x].push_back(idx);
            adj[y].push_back(idx);
            work.push_back(std::move(merged));
            changed = true;
        }
    }

    PreprocessReport rep;
    rep.kind = PreprocessReport::Kind::Contraction;
    rep.original_nodes = net.node_count();
    rep.original_edges = net.edge_count();
    rep.original_length = net.total_length();
    rep.node_map.assign(net.node_count(), -1);
    for (NodeId v = 0; v < net.node_count(); ++v) {
        if (!removed[v]) {
            rep.node_map[v] = static_cast<NodeId>(rep.result_node_source.size());
            rep.result_node_source.push_back(v);
        }
    }

    std::vector<std::tuple<NodeId, NodeId, double>> out_edges;
    std::vector<std::vector<ChainLink>> chains;
    for (const auto& w : work) {
        if (!w.alive) continue;
        double len = 0.0;
        for (const auto& link : w.links) len += net.edge(link.edge).length;
        NodeId nu = rep.node_map[w.u], nv = rep.node_map[w.v];
        out_edges.emplace_back(nu, nv, len);
        // Chains are stored from the result edge's a-endpoint (min new id).
        chains.push_back(nu <= nv ? w.links : reversed(w.links));
    }
    Network out(static_cast<int>(rep.result_node_source.size()), std::move(out_edges));
    rep.chains = std::move(chains);
    rep.result_nodes = out.node_count();
    rep.result_edges = out.edge_count();
    rep.result_length = out.total_length();
    return {std::move(out), std::move(rep)};
}

// --- point mapping through a subdivision report ---

inline PointOnNetwork map_to_source(const Network& src, const Network& sub,
                                    const PreprocessReport& rep, PointOnNetwork p) {
    if (rep.kind != PreprocessReport::Kind::Subdivision)
        throw std::logic_error("mapping requires a subdivision report");
    p = sub.canonical(p);
    if (p.is_node()) {
        if (p.node < rep.original_nodes) return PointOnNetwork::at_node(p.node);
        const auto& [e, off] = rep.new_node_pos.at(p.node - rep.original_nodes);
        return src.canonical(PointOnNetwork::on_edge(e, off));
    }
    const EdgeInterval& iv = rep.intervals.at(p.edge);
    double off = iv.off_a + (iv.off_b >= iv.off_a ? p.offset : -p.offset);
    return src.canonical(PointOnNetwork::on_edge(iv.source, off));
}

inline PointOnNetwork map_to_subdivided(const Network& src, const Network& sub,
                                        const PreprocessReport& rep, PointOnNetwork p) {
    if (rep.kind != PreprocessReport::Kind::Subdivision)
        throw std::logic_error("mapping requires a subdivision report");
    p = src.canonical(p);
    if (p.is_node()) return PointOnNetwork::at_node(p.node);
    for (EdgeId piece : rep.pieces_of.at(p.edge)) {
        const EdgeInterval& iv = rep.intervals.at(piece);
        double lo = std::min(iv.off_a, iv.off_b), hi = std::max(iv.off_a, iv.off_b);
        if (p.offset < lo - kTol || p.offset > hi + kTol) continue;
        double local = iv.off_b >= iv.off_a ? p.offset - iv.off_a : iv.off_a - p.offset;
        local = std::clamp(local, 0.0, sub.edge(piece).length);
        return sub.canonical(PointOnNetwork::on_edge(piece, local));
    }
    throw std::logic_error("offset not covered by any piece");
}

// Map a point of the source network onto the contracted one. Removed
// degree-two nodes become interior points of the surviving edge.
inline PointOnNetwork map_to_contracted(const Network& src, const Network& contracted,
                                        const PreprocessReport& rep, PointOnNetwork p) {
    if (rep.kind != PreprocessReport::Kind::Contraction)
        throw std::logic_error("mapping requires a contraction report");
    p = src.canonical(p);
    if (p.is_node() && rep.node_map.at(p.node) >= 0)
        return PointOnNetwork::at_node(rep.node_map[p.node]);
    for (EdgeId r = 0; r < contracted.edge_count(); ++r) {
        double acc = 0.0;
        for (const ChainLink& link : rep.chains[r]) {
            const Edge& e = src.edge(link.edge);
            if (!p.is_node() && p.edge == link.edge) {
                double local = link.from == e.a ? p.offset : e.length - p.offset;
                return contracted.canonical(PointOnNetwork::on_edge(r, acc + local));
            }
            if (p.is_node() && acc > 0.0 && p.node == link.from)
                return contracted.canonical(PointOnNetwork::on_edge(r, acc));
            acc += e.length;
        }
    }
    throw std::logic_error("point not located on any contracted chain");
}

// Map a point on the contracted network back to the network it was built
// from, walking the recorded edge chain.
inline PointOnNetwork map_to_precontraction(const Network& src, const Network& contracted,
                                            const PreprocessReport& rep, PointOnNetwork p) {
    if (rep.kind != PreprocessReport::Kind::Contraction)
        throw std::logic_error("mapping requires a contraction report");
    p = contracted.canonical(p);
    if (p.is_node()) return PointOnNetwork::at_node(rep.result_node_source.at(p.node));
    double remaining = p.offset;
    for (const ChainLink& link : rep.chains.at(p.edge)) {
        const Edge& e = src.edge(link.edge);
        if (remaining <= e.length + kTol) {
            double off = link.from == e.a ? remaining : e.length - remaining;
            off = std::clamp(off, 0.0, e.length);
            return src.canonical(PointOnNetwork::on_edge(e.id, off));
        }
        remaining -= e.length;
    }
    const ChainLink& last = rep.chains.at(p.edge).back();
    const Edge& e = src.edge(last.edge);
    return PointOnNetwork::at_node(e.other(last.from));
}

}  // namespace netcover
