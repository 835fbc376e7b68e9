#include "flexplan/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>

#include "flexplan/errors.hpp"
#include "json_fields.hpp"

namespace flexplan {

using detail::join_path;
using nlohmann::json;

double Link::length_km() const {
    double total = 0.0;
    for (const auto& s : spans) total += s.fiber.length_km;
    return total;
}

bool Link::connects(const std::string& a, const std::string& b) const {
    return (endpoints[0] == a && endpoints[1] == b) || (endpoints[0] == b && endpoints[1] == a);
}

const std::string& Link::other_end(const std::string& node) const {
    if (endpoints[0] == node) return endpoints[1];
    if (endpoints[1] == node) return endpoints[0];
    throw ValidationError("node " + node + " is not an endpoint of link " + id);
}

NetworkTopology::NetworkTopology(std::vector<Node> nodes, std::vector<Link> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!node_index_.emplace(nodes_[i].id, i).second) {
            throw ValidationError("duplicate node id " + nodes_[i].id);
        }
        incident_[nodes_[i].id];
    }
    for (std::size_t i = 0; i < links_.size(); ++i) {
        const Link& l = links_[i];
        if (!link_index_.emplace(l.id, i).second) throw ValidationError("duplicate link id " + l.id);
        for (const auto& end : l.endpoints) {
            if (!node_index_.contains(end)) {
                throw ValidationError("link " + l.id + " references unknown node " + end);
            }
        }
        if (l.endpoints[0] == l.endpoints[1]) throw ValidationError("link " + l.id + " is a self-loop");
        if (l.spans.empty()) throw ValidationError("link " + l.id + " has no spans");
        incident_[l.endpoints[0]].push_back(i);
        incident_[l.endpoints[1]].push_back(i);
    }
    if (!connected()) warnings_.push_back("topology graph is not connected");
}

bool NetworkTopology::has_node(const std::string& id) const { return node_index_.contains(id); }

const Node& NetworkTopology::node(const std::string& id) const {
    auto it = node_index_.find(id);
    if (it == node_index_.end()) throw ValidationError("unknown node " + id);
    return nodes_[it->second];
}

const Link& NetworkTopology::link(const std::string& id) const {
    auto it = link_index_.find(id);
    if (it == link_index_.end()) throw ValidationError("unknown link " + id);
    return links_[it->second];
}

const std::vector<std::size_t>& NetworkTopology::incident(const std::string& node) const {
    auto it = incident_.find(node);
    if (it == incident_.end()) throw ValidationError("unknown node " + node);
    return it->second;
}

bool NetworkTopology::connected() const {
    if (nodes_.empty()) return true;
    std::set<std::string> seen{nodes_.front().id};
    std::queue<std::string> frontier;
    frontier.push(nodes_.front().id);
    while (!frontier.empty()) {
        std::string n = frontier.front();
        frontier.pop();
        for (std::size_t li : incident_.at(n)) {
            const std::string& next = links_[li].other_end(n);
            if (seen.insert(next).second) frontier.push(next);
        }
    }
    return seen.size() == nodes_.size();
}

double beta2_from_dispersion(double dispersion_ps_nm_km) {
    constexpr double c = 299792458.0;      // m/s
    constexpr double lambda = 1550e-9;     // m
    const double d_si = dispersion_ps_nm_km * 1e-6;  // s/m²
    const double beta2_si = -d_si * lambda * lambda / (2.0 * std::numbers::pi * c);  // s²/m
    return beta2_si * 1e27;  // ps²/km
}

namespace {

Span parse_span(const json& doc, const std::string& path) {
    Span span;
    span.fiber.length_km = detail::require_number(doc, "length_km", path);
    if (span.fiber.length_km <= 0.0) {
        throw SchemaError(join_path(path, "length_km"), "span length must be positive");
    }
    span.fiber.attenuation_db_per_km = detail::require_number(doc, "attenuation_db_per_km", path);
    if (span.fiber.attenuation_db_per_km <= 0.0) {
        throw SchemaError(join_path(path, "attenuation_db_per_km"), "attenuation must be positive");
    }
    const bool has_beta2 = doc.contains("beta2_ps2_per_km");
    const bool has_d = doc.contains("dispersion_ps_nm_km");
    if (has_beta2 == has_d) {
        throw SchemaError(path, "exactly one of beta2_ps2_per_km or dispersion_ps_nm_km is required");
    }
    span.fiber.beta2_ps2_per_km =
        has_beta2 ? detail::require_number(doc, "beta2_ps2_per_km", path)
                  : beta2_from_dispersion(detail::require_number(doc, "dispersion_ps_nm_km", path));
    span.fiber.gamma_per_w_km = detail::require_number(doc, "gamma_per_w_km", path);
    if (span.fiber.gamma_per_w_km < 0.0) {
        throw SchemaError(join_path(path, "gamma_per_w_km"), "nonlinear coefficient must be >= 0");
    }
    span.amplifier.noise_figure_db = detail::require_number(doc, "amp_noise_figure_db", path);
    if (span.amplifier.noise_figure_db <= 0.0) {
        throw SchemaError(join_path(path, "amp_noise_figure_db"), "noise figure must be positive");
    }
    span.amplifier.gain_db = span.fiber.loss_db();
    return span;
}

}  // namespace

NetworkTopology load_topology(const json& doc) {
    detail::require_schema_version(doc, 1);

    std::vector<Node> nodes;
    std::set<std::string> node_ids;
    const json& jnodes = detail::require_array(doc, "nodes", "");
    for (std::size_t i = 0; i < jnodes.size(); ++i) {
        const std::string path = join_path("/nodes", i);
        Node n;
        n.id = detail::require_string(jnodes[i], "id", path);
        n.name = jnodes[i].contains("name") ? detail::require_string(jnodes[i], "name", path) : n.id;
        n.add_drop = detail::optional_bool(jnodes[i], "add_drop", path, true);
        if (!node_ids.insert(n.id).second) throw SchemaError(join_path(path, "id"), "duplicate node id " + n.id);
        nodes.push_back(std::move(n));
    }

    std::vector<Link> links;
    std::set<std::string> link_ids;
    const json& jlinks = detail::require_array(doc, "links", "");
    for (std::size_t i = 0; i < jlinks.size(); ++i) {
        const std::string path = join_path("/links", i);
        const json& jl = jlinks[i];
        Link l;
        l.id = detail::require_string(jl, "id", path);
        if (!link_ids.insert(l.id).second) throw SchemaError(join_path(path, "id"), "duplicate link id " + l.id);

        const json& ends = detail::require_array(jl, "endpoints", path);
        if (ends.size() != 2) throw SchemaError(join_path(path, "endpoints"), "expected two endpoints");
        for (std::size_t e = 0; e < 2; ++e) {
            const std::string epath = join_path(join_path(path, "endpoints"), e);
            if (!ends[e].is_string()) throw SchemaError(epath, "expected a node id");
            l.endpoints[e] = ends[e].get<std::string>();
            if (!node_ids.contains(l.endpoints[e])) {
                throw SchemaError(epath, "dangling reference to unknown node \"" + l.endpoints[e] + "\"");
            }
        }
        if (l.endpoints[0] == l.endpoints[1]) {
            throw SchemaError(join_path(path, "endpoints"), "self-loop link");
        }

        const json& jspans = detail::require_array(jl, "spans", path);
        if (jspans.empty()) throw SchemaError(join_path(path, "spans"), "link needs at least one span");
        for (std::size_t s = 0; s < jspans.size(); ++s) {
            l.spans.push_back(parse_span(jspans[s], join_path(join_path(path, "spans"), s)));
        }
        links.push_back(std::move(l));
    }
    return NetworkTopology(std::move(nodes), std::move(links));
}

NetworkTopology load_topology_file(const std::filesystem::path& path) {
    return load_topology(detail::read_json_file(path));
}

json topology_to_json(const NetworkTopology& topology) {
    json doc;
    doc["schema_version"] = 1;
    doc["nodes"] = json::array();
    for (const auto& n : topology.nodes()) {
        doc["nodes"].push_back({{"id", n.id}, {"name", n.name}, {"add_drop", n.add_drop}});
    }
    doc["links"] = json::array();
    for (const auto& l : topology.links()) {
        json spans = json::array();
        for (const auto& s : l.spans) {
            spans.push_back({{"length_km", s.fiber.length_km},
                             {"attenuation_db_per_km", s.fiber.attenuation_db_per_km},
                             {"beta2_ps2_per_km", s.fiber.beta2_ps2_per_km},
                             {"gamma_per_w_km", s.fiber.gamma_per_w_km},
                             {"amp_noise_figure_db", s.amplifier.noise_figure_db}});
        }
        doc["links"].push_back({{"id", l.id}, {"endpoints", {l.endpoints[0], l.endpoints[1]}}, {"spans", spans}});
    }
    return doc;
}

double link_loss(const Link& link) {
    double total = 0.0;
    for (const auto& s : link.spans) total += s.fiber.loss_db();
    return total;
}

std::vector<std::string> trace_walk(const NetworkTopology& topology, std::span<const std::string> link_ids,
                                    std::optional<std::string> start) {
    if (link_ids.empty()) {
        if (start) return {*start};
        throw ValidationError("empty route");
    }
    const Link& first = topology.link(link_ids[0]);
    std::string current;
    if (start) {
        current = *start;
        first.other_end(current);  // validates
    } else if (link_ids.size() == 1) {
        current = first.endpoints[0];
    } else {
        const Link& second = topology.link(link_ids[1]);
        const bool e0_shared = second.endpoints[0] == first.endpoints[0] || second.endpoints[1] == first.endpoints[0];
        current = e0_shared ? first.endpoints[1] : first.endpoints[0];
    }
    std::vector<std::string> walk{current};
    for (const auto& id : link_ids) {
        const Link& l = topology.link(id);
        if (l.endpoints[0] != current && l.endpoints[1] != current) {
            throw ValidationError("non-contiguous route: link " + id + " does not touch node " + current);
        }
        current = l.other_end(current);
        walk.push_back(current);
    }
    return walk;
}

double path_length(const NetworkTopology& topology, std::span<const std::string> link_ids) {
    trace_walk(topology, link_ids);
    double total = 0.0;
    for (const auto& id : link_ids) total += topology.link(id).length_km();
    return total;
}

std::vector<Span> spans_along(const NetworkTopology& topology, std::span<const std::string> link_ids) {
    std::vector<Span> out;
    for (const auto& id : link_ids) {
        const auto& spans = topology.link(id).spans;
        out.insert(out.end(), spans.begin(), spans.end());
    }
    return out;
}

}  // namespace flexplan
