#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "flexplan/route.hpp"

namespace flexplan {

/// Data rates are whole Gbps throughout the engine.
using Gbps = std::int64_t;

struct TrafficDemand {
    std::string id;
    std::string source;
    std::string destination;
    std::vector<Gbps> rate_by_period;

    bool operator==(const TrafficDemand&) const = default;
};

struct Jitter {
    Gbps max_gbps = 0;
    std::uint64_t seed = 0;
};

struct DemandSpec {
    std::string id;
    std::string source;
    std::string destination;
    double base_rate_gbps = 0.0;
    double growth_factor = 1.0;
    std::optional<Jitter> jitter;
};

/// Declarative multiplicative growth: rate(p) = base * growth^p, optionally
/// with a seeded bounded integer jitter.
struct GrowthModel {
    std::vector<DemandSpec> demands;
    std::size_t periods = 0;
    bool growth_only = true;
};

/// Demands sharing (source, destination, node walk).
struct GroupKey {
    std::string source;
    std::string destination;
    std::vector<std::string> node_walk;

    std::string str() const;
    auto operator<=>(const GroupKey&) const = default;
};

struct GroupedDemand {
    GroupKey key;
    Route route;
    std::vector<std::string> member_ids;
    std::vector<Gbps> rate_by_period;
};

std::vector<TrafficDemand> generate_periods(const GrowthModel& model);

/// Partition routed demands by key; rates are summed per period. Output is
/// sorted by key and members by id, so the partition is order-independent.
std::vector<GroupedDemand> group_demands(const std::vector<std::pair<TrafficDemand, Route>>& routed);

/// Parse a traffic scenario document. `default_seed` seeds jitter blocks that
/// carry no seed of their own.
GrowthModel load_growth_model(const nlohmann::json& document, std::uint64_t default_seed = 0);
GrowthModel load_growth_model_file(const std::filesystem::path& path, std::uint64_t default_seed = 0);

Gbps total_rate(const std::vector<TrafficDemand>& demands, std::size_t period);

}  // namespace flexplan
