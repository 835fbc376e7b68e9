#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flexplan/qot.hpp"
#include "flexplan/routing.hpp"
#include "flexplan/spectrum.hpp"
#include "flexplan/topology.hpp"
#include "flexplan/traffic.hpp"
#include "flexplan/transceiver.hpp"

namespace flexplan {

struct RegenerationSettings {
    bool enabled = false;
    ReachLimits limits;
};

struct ScenarioConfig {
    std::filesystem::path topology_path;
    std::filesystem::path traffic_path;
    std::filesystem::path catalog_path;
    std::optional<std::size_t> periods;  // falls back to the traffic file
    RegenerationSettings regeneration;
    QotSettings qot;
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 0;
    std::optional<double> margin_db;     // overrides the catalog margin
    bool dump_spectrum = false;
};

/// Relative paths inside the document resolve against `base_dir`.
ScenarioConfig parse_scenario(const nlohmann::json& document, const std::filesystem::path& base_dir);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Fully loaded and cross-validated inputs of one run.
struct Scenario {
    ScenarioConfig config;
    NetworkTopology topology;
    std::vector<TrafficDemand> demands;
    Catalog catalog;
    std::vector<std::string> warnings;
};

/// Loads every referenced file and checks cross-references (demand
/// endpoints exist, period counts agree). Throws on any configuration error.
Scenario load_inputs(const ScenarioConfig& config);

struct LightpathRecord {
    std::string id;
    std::string config_id;
    Gbps data_rate_gbps = 0;
    double bandwidth_ghz = 0.0;
    int start_slot = 0;
    int end_slot = 0;
};

enum class GroupStatus { Served, BlockedQot, BlockedSpectrum };

struct GroupPeriodRecord {
    std::string group_key;
    std::size_t period = 0;
    Gbps rate_gbps = 0;
    std::optional<GsnrBound> bound;
    std::vector<std::string> admissible;
    std::vector<LightpathRecord> added;
    Gbps deployed_rate_gbps = 0;
    std::size_t deployed_lightpaths = 0;
    GroupStatus status = GroupStatus::Served;
};

struct GroupInfo {
    GroupKey key;
    Route route;
    std::vector<std::string> member_ids;
    std::vector<Gbps> rate_by_period;
    double route_osnr_db = 0.0;
    std::vector<std::string> admissible_by_osnr;
};

struct DemandInfo {
    std::string id;
    std::string source;
    std::string destination;
    bool routed = false;
    std::vector<std::string> node_walk;
    std::vector<std::string> regen_nodes;
    std::vector<std::string> segment_ids;
    std::vector<std::string> segment_groups;
};

struct PeriodMetrics {
    std::size_t period = 0;
    Gbps requested_gbps = 0;
    Gbps served_gbps = 0;
    Gbps blocked_gbps = 0;
    std::size_t trx_count = 0;
    std::size_t lightpaths = 0;
    std::size_t regen_count = 0;
    int eq_wavelengths_50ghz = 0;
    bool c_band_overflow = false;
    long gn_evaluations = 0;
    std::size_t groups_bounded = 0;
    std::vector<std::string> spectrum_violations;
};

struct PlanResult {
    bool regeneration_enabled = false;
    std::vector<PeriodMetrics> periods;
    std::vector<GroupInfo> groups;
    std::vector<DemandInfo> demands;
    std::vector<GroupPeriodRecord> records;
    SpectrumGrid spectrum;
    std::vector<std::string> warnings;
};

/// Route, regenerate and group once; then per period bound GSNR, allocate
/// incrementally and assign spectrum. Blocked demands never abort the run.
PlanResult run_plan(const Scenario& scenario);
PlanResult run_plan(const ScenarioConfig& config);

struct RelativeDifference {
    std::size_t period = 0;
    double throughput = 0.0;
    double trx_count = 0.0;
    double wavelengths = 0.0;
};

/// Per period (a - b) / b of served throughput, TRX count and equivalent
/// wavelengths. 0/0 is reported as 0 and x/0 as +/-inf.
std::vector<RelativeDifference> compare_runs(const std::vector<PeriodMetrics>& a, const std::vector<PeriodMetrics>& b);
std::vector<RelativeDifference> compare_runs(const PlanResult& a, const PlanResult& b);

/// Writes summary.csv and allocations.json (and spectrum.json when asked).
void emit_report(const PlanResult& result, const std::filesystem::path& directory, bool dump_spectrum = false);

std::string summary_csv(const PlanResult& result);
nlohmann::json allocations_json(const PlanResult& result);
std::vector<PeriodMetrics> read_summary_csv(const std::filesystem::path& path);
std::string comparison_csv(const std::vector<RelativeDifference>& diffs);

std::string to_string(GroupStatus status);

}  // namespace flexplan
