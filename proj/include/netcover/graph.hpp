#pragma once

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "netcover/common.hpp"

namespace netcover {

struct Edge {
    EdgeId id = -1;
    NodeId a = -1;  // a <= b in the node order
    NodeId b = -1;
    double length = 0.0;

    NodeId other(NodeId v) const { return v == a ? b : a; }
};

// Undirected connected multigraph with positive edge lengths. Nodes are
// 0..n-1 (the total node order is the id order). Parallel edges are allowed,
// self-loops are not. Immutable after construction.
class Network {
public:
    Network(int node_count, std::vector<std::tuple<NodeId, NodeId, double>> edge_list) {
        if (node_count < 1) throw std::invalid_argument("network needs at least one node");
        if (edge_list.empty()) throw std::invalid_argument("network needs at least one edge");
        node_count_ = node_count;
        adjacency_.resize(node_count_);
        edges_.reserve(edge_list.size());
        for (const auto& [u, v, len] : edge_list) {
            if (u < 0 || u >= node_count_ || v < 0 || v >= node_count_)
                throw std::invalid_argument("edge endpoint out of range");
            if (u == v) throw std::invalid_argument("self-loops are not allowed");
            if (!(len > 0.0)) throw std::invalid_argument("edge lengths must be positive");
            Edge e;
            e.id = static_cast<EdgeId>(edges_.size());
            e.a = std::min(u, v);
            e.b = std::max(u, v);
            e.length = len;
            adjacency_[e.a].push_back(e.id);
            adjacency_[e.b].push_back(e.id);
            edges_.push_back(e);
        }
        if (!connected()) throw std::invalid_argument("network must be connected");
    }

    int node_count() const { return node_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    const std::vector<EdgeId>& incident(NodeId v) const { return adjacency_.at(v); }
    int degree(NodeId v) const { return static_cast<int>(adjacency_.at(v).size()); }

    double total_length() const {
        double s = 0.0;
        for (const auto& e : edges_) s += e.length;
        return s;
    }
    double mean_edge_length() const { return total_length() / edge_count(); }
    double max_edge_length() const {
        double m = 0.0;
        for (const auto& e : edges_) m = std::max(m, e.length);
        return m;
    }

    void check_point(const PointOnNetwork& p) const {
        if (p.is_node()) {
            if (p.node >= node_count_) throw std::invalid_argument("unknown node id");
            return;
        }
        if (p.edge < 0 || p.edge >= edge_count()) throw std::invalid_argument("unknown edge id");
        const double l = edges_[p.edge].length;
        if (p.offset < -kTol || p.offset > l + kTol)
            throw std::invalid_argument("edge offset out of range");
    }

    // Offsets within kTol of an edge end collapse to the node form.
    PointOnNetwork canonical(PointOnNetwork p) const {
        check_point(p);
        if (p.is_node()) return p;
        const Edge& e = edges_[p.edge];
        if (p.offset <= kTol) return PointOnNetwork::at_node(e.a);
        if (p.offset >= e.length - kTol) return PointOnNetwork::at_node(e.b);
        return p;
    }

private:
    bool connected() const {
        std::vector<char> seen(node_count_, 0);
        std::vector<NodeId> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            for (EdgeId eid : adjacency_[u]) {
                NodeId w = edges_[eid].other(u);
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        return reached == node_count_;
    }

    int node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> adjacency_;
};

struct DijkstraRun {
    std::vector<double> dist;    // +inf where unreached
    std::vector<NodeId> prev;    // -1 where unknown
    long long heap_pops = 0;
    long long relaxations = 0;
};

namespace detail {

// Binary-heap label-setting search seeded with (node, initial distance)
// pairs. Nodes whose final label exceeds `limit` are left at +inf.
inline DijkstraRun multi_source_dijkstra(const Network& net,
                                         const std::vector<std::pair<NodeId, double>>& sources,
                                         double limit) {
    DijkstraRun run;
    run.dist.assign(net.node_count(), kInf);
    run.prev.assign(net.node_count(), -1);
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    for (const auto& [s, d0] : sources) {
        if (d0 < run.dist[s]) {
            run.dist[s] = d0;
            heap.push({d0, s});
        }
    }
    std::vector<char> done(net.node_count(), 0);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = 1;
        ++run.heap_pops;
        if (d > limit + kTol) break;
        for (EdgeId eid : net.incident(u)) {
            const Edge& e = net.edge(eid);
            NodeId v = e.other(u);
            if (done[v]) continue;
            ++run.relaxations;
            double l = d + e.length;
            if (l < run.dist[v]) {
                run.dist[v] = l;
                run.prev[v] = u;
                heap.push({l, v});
            }
        }
    }
    if (limit < kInf) {
        for (auto& d : run.dist)
            if (d > limit + kTol) d = kInf;
    }
    return run;
}

}  // namespace detail

// Exact shortest-path distances from a node to every node.
inline std::vector<double> distances_from_node(const Network& net, NodeId s, double limit = kInf) {
    if (s < 0 || s >= net.node_count()) throw std::invalid_argument("unknown node id");
    return detail::multi_source_dijkstra(net, {{s, 0.0}}, limit).dist;
}

inline double node_distance(const Network& net, NodeId s, NodeId t) {
    if (t < 0 || t >= net.node_count()) throw std::invalid_argument("unknown node id");
    return distances_from_node(net, s)[t];
}

// Distances from an arbitrary point of the continuum to every node. For an
// interior edge point the search is seeded from both endpoints.
inline std::vector<double> distances_from_point(const Network& net, const PointOnNetwork& p,
                                                double limit = kInf) {
    net.check_point(p);
    PointOnNetwork q = net.canonical(p);
    if (q.is_node()) return detail::multi_source_dijkstra(net, {{q.node, 0.0}}, limit).dist;
    const Edge& e = net.edge(q.edge);
    return detail::multi_source_dijkstra(
               net, {{e.a, q.offset}, {e.b, e.length - q.offset}}, limit)
        .dist;
}

// d_v(q) = min{ d(v,v'_a)+q, d(v,v'_b)+l-q } for p interior to an edge;
// plain node distance when p is a node.
inline double point_distance(const Network& net, NodeId v, const PointOnNetwork& p) {
    net.check_point(p);
    PointOnNetwork q = net.canonical(p);
    if (q.is_node()) return node_distance(net, v, q.node);
    const Edge& e = net.edge(q.edge);
    auto dist = distances_from_node(net, v);
    return std::min(dist[e.a] + q.offset, dist[e.b] + e.length - q.offset);
}

// Graph file format: line 1 "n m", then m lines "a b length" (0-based ids).
inline Network load_network(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m)) throw std::runtime_error("graph file: failed to read header");
    std::vector<std::tuple<NodeId, NodeId, double>> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i) {
        int a, b;
        double len;
        if (!(in >> a >> b >> len))
            throw std::runtime_error("graph file: failed to read edge " + std::to_string(i));
        edges.emplace_back(a, b, len);
    }
    return Network(n, std::move(edges));
}

inline Network load_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return load_network(in);
}

inline void save_network(const Network& net, std::ostream& out) {
    out << net.node_count() << ' ' << net.edge_count() << '\n';
    out.precision(17);
    for (const auto& e : net.edges()) out << e.a << ' ' << e.b << ' ' << e.length << '\n';
}

inline void save_network_file(const Network& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    save_network(net, out);
}

}  // namespace netcover
