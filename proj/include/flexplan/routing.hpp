#pragma once

#include <string>
#include <vector>

#include "flexplan/route.hpp"
#include "flexplan/topology.hpp"
#include "flexplan/traffic.hpp"

namespace flexplan {

struct ReachLimits {
    double max_length_km = 600.0;
    int max_intermediate_nodes = 4;
};

struct RouteSegment {
    Route route;
    TrafficDemand demand;
};

struct RegeneratedDemand {
    std::string original_id;
    std::vector<RouteSegment> segments;
    std::vector<std::string> regen_nodes;
};

/// Build a Route from a link sequence starting at `source`.
Route make_route(const NetworkTopology& topology, std::vector<std::string> link_ids, const std::string& source);

/// Minimum-length simple path. Equal-length candidates (within 1e-9 km) are
/// ordered by lexicographic comparison of their node-id walks, so the result
/// is a total function of the topology. Throws RoutingInfeasible when the
/// pair is disconnected.
Route shortest_route(const NetworkTopology& topology, const std::string& source, const std::string& destination);

bool within_limits(const Route& route, const ReachLimits& limits);

/// Greedy farthest-feasible split: each segment is extended link by link
/// until the next link would break a limit, then a regenerator is placed at
/// the current node. Every segment carries the original per-period rates.
RegeneratedDemand place_regenerators(const NetworkTopology& topology, const TrafficDemand& demand,
                                     const Route& route, const ReachLimits& limits);

/// Sub-route covering links [first, last).
Route subroute(const NetworkTopology& topology, const Route& route, std::size_t first, std::size_t last);

}  // namespace flexplan
