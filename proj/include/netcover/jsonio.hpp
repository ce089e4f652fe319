#pragma once

#include <json.hpp>

#include "netcover/bench.hpp"
#include "netcover/covers.hpp"
#include "netcover/preprocess.hpp"
#include "netcover/verify.hpp"

namespace netcover {

using nlohmann::json;

inline json point_to_json(const PointOnNetwork& p) {
    if (p.is_node()) return json{{"node", p.node}};
    return json{{"edge", p.edge}, {"offset", p.offset}};
}

inline PointOnNetwork point_from_json(const json& j) {
    if (j.contains("node")) return PointOnNetwork::at_node(j.at("node").get<NodeId>());
    return PointOnNetwork::on_edge(j.at("edge").get<EdgeId>(), j.at("offset").get<double>());
}

inline json placement_to_json(const Placement& p) {
    json arr = json::array();
    for (const auto& pt : p.points) arr.push_back(point_to_json(pt));
    return arr;
}

inline Placement placement_from_json(const json& j, const Network& net) {
    Placement p;
    for (const auto& item : j) {
        PointOnNetwork pt = point_from_json(item);
        net.check_point(pt);
        p.points.push_back(net.canonical(pt));
    }
    p.objective_claimed = static_cast<long long>(p.points.size());
    return p;
}

inline json cover_data_to_json(const Network& net, const CoverData& data) {
    json j;
    j["delta"] = data.delta;
    j["nodes"] = net.node_count();
    json edges = json::array();
    for (const auto& e : net.edges())
        edges.push_back({{"id", e.id}, {"a", e.a}, {"b", e.b}, {"length", e.length}});
    j["edges"] = edges;
    j["node_potential_nodes"] = json::array();
    j["node_potential_edges"] = json::array();
    j["node_complete_edges"] = json::array();
    for (const auto& r : data.per_node) {
        j["node_potential_nodes"].push_back(r.nodes);
        j["node_potential_edges"].push_back(r.edges);
        j["node_complete_edges"].push_back(r.complete);
    }
    j["edge_complete_nodes"] = data.edge_complete_nodes;
    j["edge_complete_edges"] = data.edge_complete_edges;
    j["node_partial_nodes"] = data.node_partial_nodes;
    j["node_partial_edges"] = data.node_partial_edges;
    json eip = json::array();
    for (const auto& list : data.node_partial_edge_ends) {
        json row = json::array();
        for (auto [e, end] : list) row.push_back({e, std::string(1, end)});
        eip.push_back(row);
    }
    j["node_partial_edge_ends"] = eip;
    json dist = json::array();
    for (NodeId v = 0; v < net.node_count(); ++v)
        for (NodeId u : data.per_node[v].nodes)
            dist.push_back({v, u, data.dist(v, u)});
    j["dist"] = dist;
    return j;
}

inline json report_to_json(const PreprocessReport& rep) {
    json j;
    j["kind"] = rep.kind == PreprocessReport::Kind::Contraction ? "contraction" : "subdivision";
    j["original"] = {{"nodes", rep.original_nodes}, {"edges", rep.original_edges}};
    j["result"] = {{"nodes", rep.result_nodes}, {"edges", rep.result_edges}};
    j["original_length"] = rep.original_length;
    j["result_length"] = rep.result_length;
    if (rep.kind == PreprocessReport::Kind::Subdivision) {
        json m = json::array();
        for (size_t e = 0; e < rep.intervals.size(); ++e) {
            const auto& iv = rep.intervals[e];
            m.push_back({{"edge", e},
                         {"source", iv.source},
                         {"off_a", iv.off_a},
                         {"off_b", iv.off_b}});
        }
        j["mapping"] = m;
    } else {
        json m = json::array();
        for (size_t e = 0; e < rep.chains.size(); ++e) {
            json chain = json::array();
            for (const auto& link : rep.chains[e]) chain.push_back(link.edge);
            m.push_back({{"edge", e}, {"sources", chain}});
        }
        j["mapping"] = m;
    }
    return j;
}

inline json bench_manifest(const InstanceSet& set, const std::vector<Variant>& variants,
                           const BenchOptions& opt) {
    json j;
    j["set"] = set.name;
    j["radius_policy"] = radius_policy_name(set.policy);
    j["time_limit"] = opt.time_limit;
    j["abs_gap"] = opt.abs_gap;
    j["workers"] = opt.workers;
    json vs = json::array();
    for (Variant v : variants) vs.push_back(variant_name(v));
    j["variants"] = vs;
    json inst = json::array();
    for (size_t i = 0; i < set.specs.size(); ++i) {
        const auto& s = set.specs[i];
        inst.push_back({{"name", s.name},
                        {"n", set.networks[i].node_count()},
                        {"m", set.networks[i].edge_count()},
                        {"p", s.p},
                        {"seed", s.seed}});
    }
    j["instances"] = inst;
    return j;
}

}  // namespace netcover
