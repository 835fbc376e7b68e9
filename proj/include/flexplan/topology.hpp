#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace flexplan {

struct Node {
    std::string id;
    std::string name;
    bool add_drop = true;

    bool operator==(const Node&) const = default;
};

struct FiberSpan {
    double length_km = 0.0;
    double attenuation_db_per_km = 0.0;
    double beta2_ps2_per_km = 0.0;   // sign preserved
    double gamma_per_w_km = 0.0;

    double loss_db() const { return length_km * attenuation_db_per_km; }
    bool operator==(const FiberSpan&) const = default;
};

struct Amplifier {
    double noise_figure_db = 0.0;
    double gain_db = 0.0;  // normalized to the preceding span loss on load

    bool operator==(const Amplifier&) const = default;
};

/// One fiber section followed by its in-line amplifier.
struct Span {
    FiberSpan fiber;
    Amplifier amplifier;

    bool operator==(const Span&) const = default;
};

struct Link {
    std::string id;
    std::array<std::string, 2> endpoints;
    std::vector<Span> spans;

    double length_km() const;
    bool connects(const std::string& a, const std::string& b) const;
    /// Endpoint opposite to `node`; throws if `node` is not an endpoint.
    const std::string& other_end(const std::string& node) const;

    bool operator==(const Link&) const = default;
};

/// Immutable after construction. Links are bidirectional.
class NetworkTopology {
public:
    NetworkTopology() = default;
    NetworkTopology(std::vector<Node> nodes, std::vector<Link> links);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Link>& links() const { return links_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    bool has_node(const std::string& id) const;
    const Node& node(const std::string& id) const;
    const Link& link(const std::string& id) const;
    /// Indices into links() of every link incident to `node`.
    const std::vector<std::size_t>& incident(const std::string& node) const;
    bool connected() const;

    bool operator==(const NetworkTopology& o) const {
        return nodes_ == o.nodes_ && links_ == o.links_;
    }

private:
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    std::unordered_map<std::string, std::size_t> node_index_;
    std::unordered_map<std::string, std::size_t> link_index_;
    std::unordered_map<std::string, std::vector<std::size_t>> incident_;
    std::vector<std::string> warnings_;
};

/// β2 [ps²/km] from D [ps/(nm·km)] at 1550 nm.
double beta2_from_dispersion(double dispersion_ps_nm_km);

NetworkTopology load_topology(const nlohmann::json& document);
NetworkTopology load_topology_file(const std::filesystem::path& path);
nlohmann::json topology_to_json(const NetworkTopology& topology);

double link_loss(const Link& link);

/// Total length of a contiguous walk over `link_ids`. Throws ValidationError
/// when consecutive links do not share a node.
double path_length(const NetworkTopology& topology, std::span<const std::string> link_ids);

/// Node walk traced by `link_ids`; `start` disambiguates single-link routes.
std::vector<std::string> trace_walk(const NetworkTopology& topology,
                                    std::span<const std::string> link_ids,
                                    std::optional<std::string> start = std::nullopt);

/// Every span along the links, in order of traversal.
std::vector<Span> spans_along(const NetworkTopology& topology, std::span<const std::string> link_ids);

}  // namespace flexplan
