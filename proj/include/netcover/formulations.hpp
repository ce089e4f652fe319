#pragma once

#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "netcover/covers.hpp"
#include "netcover/model.hpp"

namespace netcover {

enum class Variant { F0, F, SF, RF, SFD };

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::F0: return "F0";
        case Variant::F: return "F";
        case Variant::SF: return "SF";
        case Variant::RF: return "RF";
        case Variant::SFD: return "SFD";
    }
    return "?";
}

inline Variant parse_variant(const std::string& s) {
    if (s == "F0") return Variant::F0;
    if (s == "F") return Variant::F;
    if (s == "SF") return Variant::SF;
    if (s == "RF") return Variant::RF;
    if (s == "SFD") return Variant::SFD;
    throw std::invalid_argument("unknown variant: " + s);
}

struct VariantConfig {
    Variant variant = Variant::SF;
    bool use_cover_delimitation = true;
    bool use_strengthening = true;
    bool long_edge_mode = false;
    bool fix_edge_vars_to_zero = false;

    static VariantConfig make(Variant v) {
        VariantConfig c;
        c.variant = v;
        switch (v) {
            case Variant::F0:
                c.use_cover_delimitation = false;
                c.use_strengthening = false;
                break;
            case Variant::F:
                c.use_strengthening = false;
                break;
            case Variant::SF:
                break;
            case Variant::RF:
                c.long_edge_mode = true;
                break;
            case Variant::SFD:
                c.fix_edge_vars_to_zero = true;
                break;
        }
        return c;
    }
};

// Big-M and residual-cap constants per constraint index.
struct BigMTable {
    std::vector<double> U;       // U_v = max incident edge length
    std::vector<double> M_node;  // M_v
    std::map<std::pair<NodeId, NodeId>, double> M_pair, delta_pair;
    std::map<std::tuple<NodeId, EdgeId, char>, double> M_end, delta_end;
};

namespace detail {

inline std::vector<char> long_edges(const Network& net, double delta, bool enabled) {
    std::vector<char> mask(net.edge_count(), 0);
    if (!enabled) return mask;
    for (const auto& e : net.edges())
        if (e.length > 2.0 * delta * (1.0 + kTol)) mask[e.id] = 1;
    return mask;
}

// Number of whole 2*delta pieces before the tail, and the tail length.
// Exact multiples of 2*delta are rejected: subdivide_for_reduced removes
// them, and the periodic layout is ill-defined there.
inline std::pair<long long, double> long_edge_layout(double length, double delta) {
    double ratio = length / (2.0 * delta);
    long long k = static_cast<long long>(std::floor(ratio + kTol));
    double tail = length - 2.0 * delta * k;
    if (tail <= 2.0 * delta * 1e-9 || k < 1)
        throw std::invalid_argument(
            "long edge length is a multiple of 2*delta; run subdivide_for_reduced first");
    return {k, tail};
}

inline std::vector<double> node_caps(const Network& net) {
    std::vector<double> u(net.node_count(), 0.0);
    for (const auto& e : net.edges()) {
        u[e.a] = std::max(u[e.a], e.length);
        u[e.b] = std::max(u[e.b], e.length);
    }
    return u;
}

}  // namespace detail

// Tightened constants: M_v = U_v, M_vv' = max{0, U_v + d(v,v') - delta},
// M_ve'i' = max{0, U_v + max_q tau - delta}, with the residual constraints
// using delta_vv' / delta_ve'i' in place of delta.
inline BigMTable tighten_bigM(const Network& net, double delta, const CoverData& covers) {
    BigMTable t;
    t.U = detail::node_caps(net);
    t.M_node = t.U;
    auto lng = detail::long_edges(net, delta, covers.rule == LengthRule::Reduced);
    for (NodeId v = 0; v < net.node_count(); ++v) {
        for (NodeId u : covers.node_partial_nodes[v]) {
            double d = covers.dist(v, u);
            t.delta_pair[{v, u}] = std::min(t.U[v] + d, delta);
            t.M_pair[{v, u}] = std::max(0.0, t.U[v] + d - delta);
        }
        for (auto [e, end] : covers.node_partial_edge_ends[v]) {
            const Edge& ed = net.edge(e);
            double d = covers.dist(v, end == 'a' ? ed.a : ed.b);
            double max_tau = d + (lng[e] ? 2.0 * delta : ed.length);
            t.delta_end[{v, e, end}] = std::min(t.U[v] + max_tau, delta);
            t.M_end[{v, e, end}] = std::max(0.0, t.U[v] + max_tau - delta);
        }
    }
    return t;
}

namespace detail {

struct BuildContext {
    const Network& net;
    double delta;
    const CoverData* covers;
    VariantConfig cfg;
    std::vector<char> lng;
    // Index sets actually used (for F0 these are the trivial relaxations).
    std::vector<std::vector<NodeId>> vp;
    std::vector<std::vector<std::pair<EdgeId, char>>> eip;
    // Distance accessor (full table for F0, truncated table otherwise).
    std::vector<std::vector<double>> full_dist;

    double dist(NodeId v, NodeId u) const {
        return covers ? covers->dist(v, u) : full_dist[v][u];
    }
};

inline std::string nname(const char* p, NodeId v) { return std::string(p) + "n" + std::to_string(v); }
inline std::string ename(const char* p, EdgeId e) { return std::string(p) + "e" + std::to_string(e); }

}  // namespace detail

// Builds the base MILP over the index sets of `covers` (families 2b-2n).
// F0 passes covers = nullptr and gets the undelimited model with trivial
// bound constants; SFD additionally fixes all edge facility variables to 0;
// long-edge mode (RF) swaps in the periodic layout for edges with
// l > 2*delta. Strengthened variants get tightened constants here and the
// valid inequalities via add_valid_inequalities().
inline ModelSpec build_base(const Network& net, double delta, const CoverData* covers,
                            const VariantConfig& cfg) {
    if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
    check_length_rule(net, delta,
                      cfg.long_edge_mode ? LengthRule::Reduced : LengthRule::Assumption1);
    if (cfg.use_cover_delimitation && covers == nullptr)
        throw std::invalid_argument("cover data required for delimited variants");

    const int n = net.node_count();
    const int m = net.edge_count();
    detail::BuildContext ctx{net,
                             delta,
                             cfg.use_cover_delimitation ? covers : nullptr,
                             cfg,
                             detail::long_edges(net, delta, cfg.long_edge_mode),
                             {},
                             {},
                             {}};

    double radius = 0.0;  // r(N), used by the F0 bound constants only
    if (!cfg.use_cover_delimitation) {
        ctx.full_dist.resize(n);
        for (NodeId v = 0; v < n; ++v) {
            ctx.full_dist[v] = distances_from_node(net, v);
            for (double d : ctx.full_dist[v]) radius = std::max(radius, d);
        }
        ctx.vp.assign(n, {});
        ctx.eip.assign(n, {});
        for (NodeId v = 0; v < n; ++v) {
            for (NodeId u = 0; u < n; ++u) ctx.vp[v].push_back(u);
            for (EdgeId e = 0; e < m; ++e) {
                ctx.eip[v].push_back({e, 'a'});
                ctx.eip[v].push_back({e, 'b'});
            }
        }
    } else {
        ctx.vp = covers->node_partial_nodes;
        ctx.eip = covers->node_partial_edge_ends;
    }

    BigMTable tight;
    if (cfg.use_strengthening) tight = tighten_bigM(net, delta, *covers);

    auto M_node = [&](NodeId v) {
        return cfg.use_strengthening ? tight.M_node[v] : delta;
    };
    auto M_pair = [&](NodeId v, NodeId u) {
        if (cfg.use_strengthening) return tight.M_pair.at({v, u});
        return cfg.use_cover_delimitation ? delta : radius;
    };
    auto delta_pair = [&](NodeId v, NodeId u) {
        return cfg.use_strengthening ? tight.delta_pair.at({v, u}) : delta;
    };
    auto M_end = [&](NodeId v, EdgeId e, char end) {
        if (cfg.use_strengthening) return tight.M_end.at({v, e, end});
        return (cfg.use_cover_delimitation ? delta : radius) + net.edge(e).length;
    };
    auto delta_end = [&](NodeId v, EdgeId e, char end) {
        return cfg.use_strengthening ? tight.delta_end.at({v, e, end}) : delta;
    };

    ModelSpec model;
    model.name = std::string("netcover ") + variant_name(cfg.variant);

    // Variables, canonical order.
    std::vector<int> y_n(n), x_n(n), r_n(n), y_e(m), w_e(m), q_e(m);
    std::vector<int> u_e(m, -1);
    for (NodeId v = 0; v < n; ++v)
        y_n[v] = model.add_variable(detail::nname("y_", v), VarKind::Binary, 0, 1,
                                    {VarEntity::Kind::NodeFacility, v});
    for (EdgeId e = 0; e < m; ++e)
        y_e[e] = model.add_variable(detail::ename("y_", e), VarKind::Binary, 0, 1,
                                    {VarEntity::Kind::EdgeFacility, -1, e});
    for (EdgeId e = 0; e < m; ++e)
        w_e[e] = model.add_variable(detail::ename("w_", e), VarKind::Binary, 0, 1,
                                    {VarEntity::Kind::CompleteCover, -1, e});
    for (NodeId v = 0; v < n; ++v)
        x_n[v] = model.add_variable(detail::nname("x_", v), VarKind::Binary, 0, 1,
                                    {VarEntity::Kind::AllCovered, v});
    for (EdgeId e = 0; e < m; ++e) {
        double ub = ctx.lng[e] ? 2.0 * delta : net.edge(e).length;
        q_e[e] = model.add_variable(detail::ename("q_", e), VarKind::Continuous, 0, ub,
                                    {VarEntity::Kind::Coordinate, -1, e});
    }
    for (NodeId v = 0; v < n; ++v)
        r_n[v] = model.add_variable(detail::nname("r_", v), VarKind::Continuous, 0, kInf,
                                    {VarEntity::Kind::Residual, v});
    for (EdgeId e = 0; e < m; ++e) {
        if (!ctx.lng[e]) continue;
        u_e[e] = model.add_variable(detail::ename("u_", e), VarKind::Binary, 0, 1,
                                    {VarEntity::Kind::LongLayout, -1, e});
    }
    std::vector<std::vector<int>> z_node(n);  // parallel to ctx.vp
    std::vector<std::vector<int>> z_end(n);   // parallel to ctx.eip
    for (NodeId v = 0; v < n; ++v) {
        for (NodeId u : ctx.vp[v]) {
            VarEntity ent{VarEntity::Kind::ServeNode, v};
            ent.other = u;
            z_node[v].push_back(model.add_variable(
                detail::nname("z_", v) + "_n" + std::to_string(u), VarKind::Binary, 0, 1, ent));
        }
        for (auto [e, end] : ctx.eip[v]) {
            VarEntity ent{VarEntity::Kind::ServeEdgeEnd, v, e};
            ent.end = end;
            z_end[v].push_back(model.add_variable(
                detail::nname("z_", v) + "_e" + std::to_string(e) + end, VarKind::Binary, 0, 1,
                ent));
        }
    }

    // Variable fixings per variant.
    if (!cfg.use_cover_delimitation) {
        for (EdgeId e = 0; e < m; ++e) model.fix_variable(w_e[e], 0);
        for (NodeId v = 0; v < n; ++v) model.fix_variable(x_n[v], 0);
    }
    if (cfg.fix_edge_vars_to_zero)
        for (EdgeId e = 0; e < m; ++e) model.fix_variable(y_e[e], 0);
    for (EdgeId e = 0; e < m; ++e) {
        if (!ctx.lng[e]) continue;
        model.fix_variable(y_e[e], 1);
        model.fix_variable(w_e[e], 0);
    }

    // Objective.
    for (NodeId v = 0; v < n; ++v) model.add_objective_term(y_n[v], 1.0);
    for (EdgeId e = 0; e < m; ++e) {
        if (!ctx.lng[e]) {
            model.add_objective_term(y_e[e], 1.0);
        } else {
            auto [k, tail] = detail::long_edge_layout(net.edge(e).length, delta);
            (void)tail;
            model.add_objective_constant(static_cast<double>(k + 1));  // ceil(l / 2 delta)
            model.add_objective_term(u_e[e], -1.0);
        }
    }

    // Complete-cover families (dropped for F0).
    if (cfg.use_cover_delimitation) {
        for (EdgeId e = 0; e < m; ++e) {
            if (ctx.lng[e]) continue;
            for (NodeId f : covers->edge_complete_nodes[e])
                model.add_constraint(detail::ename("cc1_", e) + "_n" + std::to_string(f),
                                     {{1, w_e[e]}, {-1, y_n[f]}}, Sense::Ge, 0);
            for (EdgeId f : covers->edge_complete_edges[e])
                model.add_constraint(detail::ename("cc1_", e) + "_e" + std::to_string(f),
                                     {{1, w_e[e]}, {-1, y_e[f]}}, Sense::Ge, 0);
            std::vector<Term> sum{{1, w_e[e]}};
            for (NodeId f : covers->edge_complete_nodes[e]) sum.push_back({-1, y_n[f]});
            for (EdgeId f : covers->edge_complete_edges[e]) sum.push_back({-1, y_e[f]});
            model.add_constraint(detail::ename("cc2_", e), std::move(sum), Sense::Le, 0);
        }
        for (NodeId v = 0; v < n; ++v) {
            std::vector<Term> lo{{1, x_n[v]}};
            for (EdgeId e : net.incident(v)) lo.push_back({-1, w_e[e]});
            model.add_constraint(detail::nname("xlo_", v), std::move(lo), Sense::Ge,
                                 1.0 - net.degree(v));
            for (EdgeId e : net.incident(v))
                model.add_constraint(detail::nname("xup_", v) + "_e" + std::to_string(e),
                                     {{1, x_n[v]}, {-1, w_e[e]}}, Sense::Le, 0);
        }
    }

    // Node/edge facility exclusion (replaced by neighborhood inequalities in
    // the strengthened variants).
    if (!cfg.use_strengthening) {
        for (EdgeId e = 0; e < m; ++e) {
            if (ctx.lng[e]) continue;
            const Edge& ed = net.edge(e);
            model.add_constraint(detail::ename("pair_", e) + "a", {{1, y_n[ed.a]}, {1, y_e[e]}},
                                 Sense::Le, 1);
            model.add_constraint(detail::ename("pair_", e) + "b", {{1, y_n[ed.b]}, {1, y_e[e]}},
                                 Sense::Le, 1);
        }
    }

    // Coordinates and covering.
    for (EdgeId e = 0; e < m; ++e) {
        if (ctx.lng[e]) continue;
        model.add_constraint(detail::ename("coord_", e),
                             {{1, q_e[e]}, {-net.edge(e).length, y_e[e]}}, Sense::Le, 0);
    }
    for (EdgeId e = 0; e < m; ++e) {
        if (ctx.lng[e]) continue;
        const Edge& ed = net.edge(e);
        model.add_constraint(detail::ename("cover_", e),
                             {{1, r_n[ed.a]}, {1, r_n[ed.b]}, {ed.length, w_e[e]}}, Sense::Ge,
                             ed.length);
    }

    // Serving choice and indicator links.
    for (NodeId v = 0; v < n; ++v) {
        std::vector<Term> sum{{1, x_n[v]}};
        for (int zv : z_node[v]) sum.push_back({1, zv});
        for (int zv : z_end[v]) sum.push_back({1, zv});
        model.add_constraint(detail::nname("serve_", v), std::move(sum), Sense::Eq, 1);
        for (size_t i = 0; i < ctx.vp[v].size(); ++i)
            model.add_constraint(detail::nname("zlnkn_", v) + "_n" + std::to_string(ctx.vp[v][i]),
                                 {{1, z_node[v][i]}, {-1, y_n[ctx.vp[v][i]]}}, Sense::Le, 0);
        for (size_t i = 0; i < ctx.eip[v].size(); ++i) {
            auto [e, end] = ctx.eip[v][i];
            if (ctx.lng[e]) continue;  // y_e is fixed to 1 there
            model.add_constraint(
                detail::nname("zlnke_", v) + "_e" + std::to_string(e) + end,
                {{1, z_end[v][i]}, {-1, y_e[e]}}, Sense::Le, 0);
        }
    }

    // Residual bounds.
    for (NodeId v = 0; v < n; ++v)
        model.add_constraint(detail::nname("rres_", v), {{1, r_n[v]}, {M_node(v), x_n[v]}},
                             Sense::Le, M_node(v));
    for (NodeId v = 0; v < n; ++v) {
        for (size_t i = 0; i < ctx.vp[v].size(); ++i) {
            NodeId u = ctx.vp[v][i];
            double M = M_pair(v, u), dl = delta_pair(v, u), d = ctx.dist(v, u);
            model.add_constraint(detail::nname("rnode_", v) + "_n" + std::to_string(u),
                                 {{1, r_n[v]}, {M, z_node[v][i]}}, Sense::Le, M + dl - d);
        }
        for (size_t i = 0; i < ctx.eip[v].size(); ++i) {
            auto [e, end] = ctx.eip[v][i];
            const Edge& ed = net.edge(e);
            double d = ctx.dist(v, end == 'a' ? ed.a : ed.b);
            double M = M_end(v, e, end), dl = delta_end(v, e, end);
            std::vector<Term> terms{{1, r_n[v]}, {M, z_end[v][i]}};
            double rhs = M + dl - d;
            if (end == 'a') {
                terms.push_back({1, q_e[e]});
            } else if (!ctx.lng[e]) {
                terms.push_back({-1, q_e[e]});
                rhs -= ed.length;
            } else {
                auto [k, tail] = detail::long_edge_layout(ed.length, delta);
                (void)k;
                terms.push_back({-1, q_e[e]});
                terms.push_back({2.0 * delta, u_e[e]});
                rhs -= tail;
            }
            model.add_constraint(detail::nname("redge_", v) + "_e" + std::to_string(e) + end,
                                 std::move(terms), Sense::Le, rhs);
        }
    }

    // Long-edge layout: q range indicator, head and tail coverage.
    for (EdgeId e = 0; e < m; ++e) {
        if (!ctx.lng[e]) continue;
        const Edge& ed = net.edge(e);
        auto [k, tail] = detail::long_edge_layout(ed.length, delta);
        (void)k;
        model.add_constraint(detail::ename("ubound1_", e),
                             {{1, q_e[e]}, {tail - 2.0 * delta, u_e[e]}}, Sense::Le, tail);
        model.add_constraint(detail::ename("ubound2_", e), {{1, q_e[e]}, {-tail, u_e[e]}},
                             Sense::Ge, 0);
        model.add_constraint(detail::ename("head_", e), {{1, r_n[ed.a]}, {-1, q_e[e]}}, Sense::Ge,
                             -delta);
        model.add_constraint(detail::ename("tail_", e),
                             {{1, r_n[ed.b]}, {1, q_e[e]}, {-2.0 * delta, u_e[e]}}, Sense::Ge,
                             tail - delta);
    }

    return model;
}

// Leaf variable elimination plus the neighborhood inequalities, which
// replace the pairwise node/edge exclusion rows. Leaf fixing is skipped for
// long incident edges (their facility chain is structural) and when the
// unique neighbor is itself a leaf (two-node network: some candidate must
// survive).
inline void add_valid_inequalities(ModelSpec& model, const Network& net, double delta,
                                   bool long_edge_mode) {
    auto lng = detail::long_edges(net, delta, long_edge_mode);
    model.remove_constraints("pair_");
    for (NodeId v = 0; v < net.node_count(); ++v) {
        std::vector<Term> sum;
        for (EdgeId e : net.incident(v))
            if (!lng[e]) sum.push_back({1, model.var(detail::ename("y_", e))});
        sum.push_back({1, model.var(detail::nname("y_", v))});
        model.add_constraint(detail::nname("nbhd_", v), std::move(sum), Sense::Le, 1);
    }
    for (NodeId v = 0; v < net.node_count(); ++v) {
        if (net.degree(v) != 1) continue;
        EdgeId e = net.incident(v)[0];
        if (lng[e]) continue;
        NodeId nb = net.edge(e).other(v);
        if (net.degree(nb) == 1) continue;
        model.fix_variable(model.var(detail::nname("y_", v)), 0);
        model.fix_variable(model.var(detail::ename("y_", e)), 0);
    }
}

// Reduced formulation: expects the degree-two-free network already passed
// through subdivide_for_reduced.
inline ModelSpec build_reduced(const Network& net, double delta, const CoverData& covers,
                               const VariantConfig& cfg) {
    if (!cfg.long_edge_mode) throw std::invalid_argument("build_reduced needs long_edge_mode");
    ModelSpec model = build_base(net, delta, &covers, cfg);
    add_valid_inequalities(model, net, delta, true);
    return model;
}

// One-stop builder for a named variant. `covers` may be null for F0 only.
inline ModelSpec build_variant(const Network& net, double delta, const CoverData* covers,
                               Variant variant) {
    VariantConfig cfg = VariantConfig::make(variant);
    ModelSpec model = build_base(net, delta, covers, cfg);
    if (cfg.use_strengthening) add_valid_inequalities(model, net, delta, cfg.long_edge_mode);
    return model;
}

}  // namespace netcover
