#pragma once

#include <chrono>
#include <optional>

#include "netcover/covers.hpp"
#include "netcover/formulations.hpp"
#include "netcover/instances.hpp"
#include "netcover/preprocess.hpp"
#include "netcover/solver.hpp"
#include "netcover/verify.hpp"

namespace netcover {

// One end-to-end run: preprocess, build, solve, decode, verify.
struct PipelineOutcome {
    Variant variant = Variant::SF;
    double delta = 0.0;
    Network solved_net;  // network the model was built on
    ModelSpec model;
    SolveResult result;
    Placement placement;  // in solved_net coordinates (when an incumbent exists)
    CoverCheck verification;
    bool affected = false;  // incumbent decoded and verified as a cover
    bool solved = false;    // affected and proved optimal
    int n_sd = 0;           // nodes of the assumption-subdivided network
    double preprocess_seconds = 0.0;
    std::vector<PointOnNetwork> points_original;  // placement in input coordinates

    PipelineOutcome(Network net) : solved_net(std::move(net)) {}
};

// Runs a variant on an input network. Preprocessing follows the benchmark
// protocol: degree-two contraction, then the subdivision the variant needs
// (reduced for RF, edge-length assumption otherwise). Verification always
// happens on the assumption-subdivided continuum.
inline PipelineOutcome run_pipeline(const Network& original, double delta, Variant variant,
                                    const SolveOptions& opt = {}, bool contract = true) {
    auto t0 = std::chrono::steady_clock::now();
    Network netc = original;
    PreprocessReport repc;
    if (contract) {
        auto [c, r] = contract_degree_two(original);
        netc = std::move(c);
        repc = std::move(r);
    }

    auto [nets, reps] = subdivide_for_assumption(netc, delta);
    const bool reduced = variant == Variant::RF;
    Network built = nets;
    PreprocessReport rep_built = reps;
    if (reduced) {
        auto [nr, rr] = subdivide_for_reduced(netc, delta);
        built = std::move(nr);
        rep_built = std::move(rr);
    }

    std::optional<CoverData> covers;
    if (variant != Variant::F0)
        covers = process_network(built, delta,
                                 reduced ? LengthRule::Reduced : LengthRule::Assumption1);

    PipelineOutcome out(built);
    out.variant = variant;
    out.delta = delta;
    out.n_sd = nets.node_count();
    out.model = build_variant(built, delta, covers ? &*covers : nullptr, variant);
    out.preprocess_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    out.result = solve(out.model, opt);
    if (out.result.has_incumbent) {
        out.placement = decode(out.model, out.result, built, delta);
        out.placement.source_variant = variant;
        if (reduced) {
            auto [vnet, vrep] = subdivide_for_assumption(built, delta);
            Placement mapped = out.placement;
            for (auto& p : mapped.points) p = map_to_subdivided(built, vnet, vrep, p);
            out.verification = is_cover(vnet, delta, mapped);
        } else {
            out.verification = is_cover(built, delta, out.placement);
        }
        out.affected = out.verification.ok;
        out.solved = out.affected && out.result.status == SolveStatus::Optimal;

        for (const auto& p : out.placement.points) {
            PointOnNetwork q = map_to_source(netc, built, rep_built, p);
            if (contract) q = map_to_precontraction(original, netc, repc, q);
            out.points_original.push_back(q);
        }
    }
    return out;
}

}  // namespace netcover
