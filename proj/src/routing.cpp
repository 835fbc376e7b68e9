#include "flexplan/routing.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "flexplan/errors.hpp"

namespace flexplan {

namespace {

constexpr double kLengthTieKm = 1e-9;

struct Label {
    double length = 0.0;
    std::vector<std::string> walk;
    std::vector<std::string> links;
};

// Strict "a is preferable to b".
bool better(const Label& a, const Label& b) {
    if (a.length < b.length - kLengthTieKm) return true;
    if (b.length < a.length - kLengthTieKm) return false;
    if (a.walk != b.walk) return a.walk < b.walk;
    return a.links < b.links;
}

struct LabelOrder {
    bool operator()(const Label& a, const Label& b) const { return better(a, b); }
};

}  // namespace

Route make_route(const NetworkTopology& topology, std::vector<std::string> link_ids, const std::string& source) {
    Route r;
    r.node_walk = trace_walk(topology, link_ids, source);
    r.length_km = 0.0;
    for (const auto& id : link_ids) r.length_km += topology.link(id).length_km();
    r.links = std::move(link_ids);
    r.hop_count = std::max(0, static_cast<int>(r.node_walk.size()) - 2);
    std::set<std::string> seen(r.node_walk.begin(), r.node_walk.end());
    if (seen.size() != r.node_walk.size()) throw ValidationError("route revisits a node");
    return r;
}

Route shortest_route(const NetworkTopology& topology, const std::string& source, const std::string& destination) {
    if (!topology.has_node(source)) throw ValidationError("unknown node " + source);
    if (!topology.has_node(destination)) throw ValidationError("unknown node " + destination);
    if (source == destination) throw RoutingInfeasible("source equals destination (" + source + ")");

    std::map<std::string, Label> best;
    std::set<std::string> settled;
    std::set<Label, LabelOrder> frontier;

    Label start{0.0, {source}, {}};
    best[source] = start;
    frontier.insert(start);

    while (!frontier.empty()) {
        Label cur = *frontier.begin();
        frontier.erase(frontier.begin());
        const std::string& node = cur.walk.back();
        if (!settled.insert(node).second) continue;
        if (node == destination) break;

        for (std::size_t li : topology.incident(node)) {
            const Link& link = topology.links()[li];
            const std::string& next = link.other_end(node);
            if (settled.contains(next)) continue;
            if (std::find(cur.walk.begin(), cur.walk.end(), next) != cur.walk.end()) continue;

            Label cand = cur;
            cand.length += link.length_km();
            cand.walk.push_back(next);
            cand.links.push_back(link.id);

            auto it = best.find(next);
            if (it == best.end() || better(cand, it->second)) {
                if (it != best.end()) frontier.erase(it->second);
                best[next] = cand;
                frontier.insert(std::move(cand));
            }
        }
    }

    auto it = best.find(destination);
    if (it == best.end()) throw RoutingInfeasible("no path between " + source + " and " + destination);
    return make_route(topology, it->second.links, source);
}

bool within_limits(const Route& route, const ReachLimits& limits) {
    return route.length_km <= limits.max_length_km + kLengthTieKm && route.hop_count <= limits.max_intermediate_nodes;
}

Route subroute(const NetworkTopology& topology, const Route& route, std::size_t first, std::size_t last) {
    std::vector<std::string> links(route.links.begin() + static_cast<std::ptrdiff_t>(first),
                                   route.links.begin() + static_cast<std::ptrdiff_t>(last));
    return make_route(topology, std::move(links), route.node_walk.at(first));
}

RegeneratedDemand place_regenerators(const NetworkTopology& topology, const TrafficDemand& demand,
                                     const Route& route, const ReachLimits& limits) {
    if (limits.max_length_km <= 0.0 || limits.max_intermediate_nodes <= 0) {
        throw ValidationError("reach limits must be positive");
    }
    if (route.links.empty()) throw ValidationError("demand " + demand.id + " has an empty route");

    RegeneratedDemand out;
    out.original_id = demand.id;

    std::vector<std::size_t> cuts;  // link indices at which a new segment starts
    std::size_t seg_start = 0;
    double seg_length = 0.0;
    for (std::size_t i = 0; i < route.links.size(); ++i) {
        const double len = topology.link(route.links[i]).length_km();
        if (len > limits.max_length_km + kLengthTieKm) {
            throw RegenerationInfeasible("link " + route.links[i] + " (" + std::to_string(len) +
                                         " km) alone exceeds the reach limit of demand " + demand.id);
        }
        const auto links_in_seg = static_cast<int>(i - seg_start);  // before adding link i
        const bool too_long = seg_length + len > limits.max_length_km + kLengthTieKm;
        const bool too_many_hops = links_in_seg > limits.max_intermediate_nodes;  // adding i makes links_in_seg intermediates
        if (i > seg_start && (too_long || too_many_hops)) {
            cuts.push_back(i);
            seg_start = i;
            seg_length = 0.0;
        }
        seg_length += len;
    }

    std::size_t first = 0;
    cuts.push_back(route.links.size());
    for (std::size_t cut : cuts) {
        Route seg = subroute(topology, route, first, cut);
        TrafficDemand d = demand;
        if (cuts.size() > 1) d.id = demand.id + "#" + std::to_string(out.segments.size());
        d.source = seg.source();
        d.destination = seg.destination();
        if (first != 0) out.regen_nodes.push_back(seg.source());
        out.segments.push_back({std::move(seg), std::move(d)});
        first = cut;
    }
    return out;
}

}  // namespace flexplan
