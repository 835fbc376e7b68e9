#pragma once

// Brute-force references for the combinatorial parts of the planner.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "flexplan/topology.hpp"
#include "flexplan/transceiver.hpp"

namespace flexplan::oracle {

/// Minimum total bandwidth over every count vector (n_1..n_k) with
/// sum n_i * rate_i >= demand. Vectors are enumerated config by config;
/// once the demand is covered the remaining counts stay zero, since adding
/// lightpaths to a covering set only adds bandwidth.
inline double min_cover_bandwidth(long long demand, const std::vector<TrxConfig>& configs) {
    if (demand <= 0) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, long long, double)> rec = [&](std::size_t i, long long covered, double bw) {
        if (covered >= demand) {
            best = std::min(best, bw);
            return;
        }
        if (i == configs.size()) return;
        const long long r = configs[i].data_rate_gbps;
        const long long most = (demand - covered + r - 1) / r;
        for (long long n = 0; n <= most; ++n) {
            rec(i + 1, covered + n * r, bw + static_cast<double>(n) * configs[i].bandwidth_ghz);
        }
    };
    rec(0, 0, 0.0);
    return best;
}

/// Fewest regenerators on a linear chain such that every segment obeys
/// both limits. Tries every subset of intermediate nodes. Returns -1 when
/// no subset works.
inline int min_regenerators(const std::vector<double>& link_lengths, double max_km, int max_intermediate) {
    const std::size_t inner = link_lengths.size() - 1;
    int best = -1;
    for (unsigned mask = 0; mask < (1u << inner); ++mask) {
        const int count = __builtin_popcount(mask);
        if (best >= 0 && count >= best) continue;
        bool ok = true;
        double len = 0.0;
        int links = 0;
        for (std::size_t i = 0; i < link_lengths.size() && ok; ++i) {
            len += link_lengths[i];
            ++links;
            const bool cut = i == inner || (mask >> i) & 1u;
            if (cut) {
                ok = len <= max_km + 1e-9 && links - 1 <= max_intermediate;
                len = 0.0;
                links = 0;
            }
        }
        if (ok) best = count;
    }
    return best;
}

struct PathCandidate {
    double length = 0.0;
    std::vector<std::string> walk;
};

/// Every simple path between two nodes, by depth-first enumeration.
inline std::vector<PathCandidate> all_simple_paths(const NetworkTopology& topo, const std::string& src,
                                                   const std::string& dst) {
    std::vector<PathCandidate> out;
    std::vector<std::string> walk{src};
    std::function<void(double)> dfs = [&](double length) {
        const std::string at = walk.back();
        if (at == dst) {
            out.push_back({length, walk});
            return;
        }
        for (const auto& link : topo.links()) {
            if (link.endpoints[0] != at && link.endpoints[1] != at) continue;
            const std::string next = link.endpoints[0] == at ? link.endpoints[1] : link.endpoints[0];
            if (std::find(walk.begin(), walk.end(), next) != walk.end()) continue;
            walk.push_back(next);
            dfs(length + link.length_km());
            walk.pop_back();
        }
    };
    dfs(0.0);
    return out;
}

}  // namespace flexplan::oracle
