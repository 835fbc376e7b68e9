#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "flexplan/traffic.hpp"

namespace flexplan {

struct GsnrBound;

/// One operating mode of a bandwidth-variable transceiver.
struct TrxConfig {
    std::string id;
    Gbps data_rate_gbps = 0;
    double bandwidth_ghz = 0.0;
    double symbol_rate_gbd = 0.0;
    std::string modulation;
    double min_osnr_db = 0.0;  // at 12.5 GHz reference bandwidth

    bool operator==(const TrxConfig&) const = default;
};

struct Catalog {
    std::vector<TrxConfig> configs;
    double margin_db = 1.0;
    std::vector<std::string> warnings;
};

struct Allocation {
    std::string group_key;
    std::size_t period = 0;
    std::vector<TrxConfig> lightpaths;  // sorted by config id
    double total_bandwidth_ghz = 0.0;
    Gbps total_rate_gbps = 0;

    std::size_t size() const { return lightpaths.size(); }
};

Catalog load_catalog(const nlohmann::json& document);
Catalog load_catalog_file(const std::filesystem::path& path);

/// Configs with min_osnr + margin <= route_osnr, in catalog order.
std::vector<TrxConfig> filter_by_osnr(const Catalog& catalog, double route_osnr_db);

/// Configs with min_osnr + margin <= bound.lower_db, in input order.
std::vector<TrxConfig> filter_by_gsnr(std::span<const TrxConfig> configs, const GsnrBound& bound, double margin_db);

/// (fewest, most) lightpaths needed: ceil(rate / max rate), ceil(rate / min rate).
std::pair<std::size_t, std::size_t> lp_count_bounds(Gbps group_rate, std::span<const TrxConfig> admissible);

/// Bandwidth-minimal multiset of admissible configs whose rates sum to at
/// least `rate`. The sum must cover the demand; a multiset falling short is
/// never returned. Ties go to fewer lightpaths, then smaller rate overshoot,
/// then the lexicographically smaller sorted id list.
/// Throws DemandBlocked when `admissible` is empty and rate > 0.
std::vector<TrxConfig> min_bandwidth_multiset(Gbps rate, std::span<const TrxConfig> admissible);

Allocation allocate(const GroupedDemand& group, std::size_t period, std::span<const TrxConfig> admissible);

/// Lightpaths to add on top of `existing` so the group rate of `period` is
/// covered. Existing lightpaths are never touched; only the delta is returned.
Allocation incremental_allocate(const GroupedDemand& group, std::size_t period, std::span<const TrxConfig> admissible,
                                const Allocation& existing);

/// Strict total order used by the solver's tie-break ladder.
bool allocation_better(std::span<const TrxConfig> a, std::span<const TrxConfig> b, Gbps rate);

}  // namespace flexplan
