#pragma once

#include <string>
#include <vector>

namespace flexplan {

/// A simple path through the topology.
struct Route {
    std::vector<std::string> links;
    std::vector<std::string> node_walk;
    double length_km = 0.0;
    int hop_count = 0;  // intermediate nodes

    const std::string& source() const { return node_walk.front(); }
    const std::string& destination() const { return node_walk.back(); }
    bool operator==(const Route&) const = default;
};

}  // namespace flexplan
