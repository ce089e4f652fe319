#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "netcover/graph.hpp"

namespace netcover {

enum class RadiusPolicy { Small, Large };

inline RadiusPolicy parse_radius_policy(const std::string& s) {
    if (s == "small") return RadiusPolicy::Small;
    if (s == "large") return RadiusPolicy::Large;
    throw std::invalid_argument("unknown radius policy: " + s);
}

inline const char* radius_policy_name(RadiusPolicy p) {
    return p == RadiusPolicy::Small ? "small" : "large";
}

// Small: the instance's average edge length. Large: twice that.
inline double radius_for(const Network& net, RadiusPolicy policy) {
    double mean = net.mean_edge_length();
    return policy == RadiusPolicy::Large ? 2.0 * mean : mean;
}

namespace detail {

// Uniform [0,1) drawn directly from the generator output, so results do not
// depend on the standard library's distribution implementation.
inline double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

// G(n,p) sample with edge lengths uniform in [0.5, 1.5), resampled with a
// derived seed until connected (cap 1000 attempts).
inline Network gen_random(int n, double p, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_random: n must be at least 2");
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("gen_random: p must be in (0, 1]");
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * attempt);
        std::vector<std::tuple<NodeId, NodeId, double>> edges;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (detail::next_unit(rng) < p)
                    edges.emplace_back(i, j, 0.5 + detail::next_unit(rng));
            }
        }
        if (edges.empty()) continue;
        try {
            return Network(n, std::move(edges));
        } catch (const std::invalid_argument&) {
            continue;  // disconnected; resample
        }
    }
    throw std::runtime_error("gen_random: no connected sample in 1000 attempts");
}

struct InstanceSpec {
    std::string name;
    int n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
};

struct InstanceSet {
    std::string name;
    RadiusPolicy policy = RadiusPolicy::Small;
    std::vector<Network> networks;
    std::vector<InstanceSpec> specs;  // parallel to networks
};

// The benchmark families: random_A uses n in {10,15,20}, random_B uses
// n in {25,30,40}; four edge probabilities each.
inline InstanceSet make_random_set(const std::string& name, const std::vector<int>& sizes,
                                   RadiusPolicy policy, std::uint64_t base_seed) {
    InstanceSet set;
    set.name = name;
    set.policy = policy;
    for (int n : sizes) {
        for (double p : {0.1, 0.2, 0.3, 0.4}) {
            std::uint64_t seed = base_seed + 1000ull * n + static_cast<std::uint64_t>(p * 100);
            InstanceSpec spec;
            spec.n = n;
            spec.p = p;
            spec.seed = seed;
            spec.name = name + "_n" + std::to_string(n) + "_p" +
                        std::to_string(static_cast<int>(p * 10 + 0.5));
            set.networks.push_back(gen_random(n, p, seed));
            set.specs.push_back(spec);
        }
    }
    return set;
}

inline InstanceSet make_random_a(RadiusPolicy policy, std::uint64_t base_seed = 7) {
    return make_random_set("random_A", {10, 15, 20}, policy, base_seed);
}

inline InstanceSet make_random_b(RadiusPolicy policy, std::uint64_t base_seed = 7) {
    return make_random_set("random_B", {25, 30, 40}, policy, base_seed);
}

}  // namespace netcover
