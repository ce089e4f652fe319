#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace netcover {

using NodeId = int;
using EdgeId = int;

// Comparison tolerance for radius tests and tie detection. All "<= delta"
// tests are evaluated as "<= delta + kTol".
inline constexpr double kTol = 1e-9;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool leq_tol(double a, double b, double tol = kTol) { return a <= b + tol; }
inline bool geq_tol(double a, double b, double tol = kTol) { return a + tol >= b; }

// A point of the network continuum: either a node, or an interior point of
// an edge at `offset` from the edge's a-endpoint.
struct PointOnNetwork {
    NodeId node = -1;  // >= 0 iff this is a node point
    EdgeId edge = -1;
    double offset = 0.0;

    static PointOnNetwork at_node(NodeId v) {
        PointOnNetwork p;
        p.node = v;
        return p;
    }
    static PointOnNetwork on_edge(EdgeId e, double offset) {
        PointOnNetwork p;
        p.edge = e;
        p.offset = offset;
        return p;
    }
    bool is_node() const { return node >= 0; }

    bool operator==(const PointOnNetwork& o) const {
        if (is_node() != o.is_node()) return false;
        if (is_node()) return node == o.node;
        return edge == o.edge && offset == o.offset;
    }
    bool operator<(const PointOnNetwork& o) const {
        if (is_node() != o.is_node()) return is_node();
        if (is_node()) return node < o.node;
        if (edge != o.edge) return edge < o.edge;
        return offset < o.offset;
    }
};

}  // namespace netcover
