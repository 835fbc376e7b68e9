#include "flexplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "flexplan/errors.hpp"
#include "json_fields.hpp"

namespace flexplan {

using detail::join_path;
using nlohmann::json;

namespace {

void check_band_width(const BandWindow& band, const std::string& path) {
    const double slots = (band.end_thz - band.start_thz) * 1e3 / kSlotWidthGhz;
    if (std::abs(slots - kSlotsPerBand) > 1e-6) {
        throw SchemaError(path, "band must span exactly 384 slots of 12.5 GHz");
    }
}

}  // namespace

ScenarioConfig parse_scenario(const json& doc, const std::filesystem::path& base_dir) {
    detail::require_schema_version(doc, 1);
    ScenarioConfig cfg;
    auto resolve = [&](const std::string& key) {
        std::filesystem::path p = detail::require_string(doc, key, "");
        return p.is_absolute() ? p : base_dir / p;
    };
    cfg.topology_path = resolve("topology");
    cfg.traffic_path = resolve("traffic");
    cfg.catalog_path = resolve("catalog");
    if (doc.contains("periods")) {
        const std::int64_t p = detail::require_integer(doc, "periods", "");
        if (p <= 0) throw SchemaError("/periods", "period count must be positive");
        cfg.periods = static_cast<std::size_t>(p);
    }
    if (doc.contains("seed")) cfg.seed = static_cast<std::uint64_t>(detail::require_integer(doc, "seed", ""));
    if (doc.contains("output_dir")) {
        std::filesystem::path out = detail::require_string(doc, "output_dir", "");
        cfg.output_dir = out.is_absolute() ? out : base_dir / out;
    }
    if (doc.contains("margin_db")) cfg.margin_db = detail::require_number(doc, "margin_db", "");

    if (doc.contains("regeneration")) {
        const json& r = doc.at("regeneration");
        cfg.regeneration.enabled = detail::optional_bool(r, "enabled", "/regeneration", false);
        cfg.regeneration.limits.max_length_km =
            detail::optional_number(r, "max_length_km", "/regeneration", cfg.regeneration.limits.max_length_km);
        if (r.contains("max_intermediate_nodes")) {
            cfg.regeneration.limits.max_intermediate_nodes =
                static_cast<int>(detail::require_integer(r, "max_intermediate_nodes", "/regeneration"));
        }
        if (cfg.regeneration.limits.max_length_km <= 0.0) {
            throw SchemaError("/regeneration/max_length_km", "must be positive");
        }
        if (cfg.regeneration.limits.max_intermediate_nodes <= 0) {
            throw SchemaError("/regeneration/max_intermediate_nodes", "must be positive");
        }
    }

    if (doc.contains("qot")) {
        const json& q = doc.at("qot");
        QotSettings& s = cfg.qot;
        s.launch_power_dbm = detail::optional_number(q, "launch_power_dbm", "/qot", s.launch_power_dbm);
        s.reference_bandwidth_ghz = detail::optional_number(q, "reference_bandwidth_ghz", "/qot", 12.5);
        if (std::abs(s.reference_bandwidth_ghz - 12.5) > 1e-9) {
            throw SchemaError("/qot/reference_bandwidth_ghz", "all SNRs are referenced to 12.5 GHz");
        }
        s.quadrature.rel_tol = detail::optional_number(q, "quadrature_rel_tol", "/qot", s.quadrature.rel_tol);
        if (s.quadrature.rel_tol <= 0.0) throw SchemaError("/qot/quadrature_rel_tol", "must be positive");
        if (q.contains("band")) {
            const json& b = q.at("band");
            const std::string path = "/qot/band";
            s.c_band.start_thz = detail::optional_number(b, "c_start_thz", path, s.c_band.start_thz);
            s.c_band.end_thz = detail::optional_number(b, "c_end_thz", path, s.c_band.end_thz);
            s.l_enabled = detail::optional_bool(b, "l_enabled", path, false);
            s.l_band.start_thz = detail::optional_number(b, "l_start_thz", path, s.l_band.start_thz);
            s.l_band.end_thz = detail::optional_number(b, "l_end_thz", path, s.l_band.end_thz);
            check_band_width(s.c_band, path);
            if (s.l_enabled) check_band_width(s.l_band, path);
        }
        s.placement_center_thz = (s.c_band.start_thz + s.c_band.end_thz) / 2.0;
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    return parse_scenario(detail::read_json_file(path), path.parent_path());
}

Scenario load_inputs(const ScenarioConfig& config) {
    Scenario sc;
    sc.config = config;
    sc.topology = load_topology_file(config.topology_path);
    sc.catalog = load_catalog_file(config.catalog_path);
    if (config.margin_db) {
        if (*config.margin_db < 0.0) throw ValidationError("margin must be >= 0");
        sc.catalog.margin_db = *config.margin_db;
    }
    GrowthModel model = load_growth_model_file(config.traffic_path, config.seed);
    if (config.periods) model.periods = *config.periods;
    sc.demands = generate_periods(model);

    std::set<std::string> ids;
    for (const auto& d : sc.demands) {
        if (!ids.insert(d.id).second) throw ValidationError("duplicate demand id " + d.id);
        if (d.id.find('#') != std::string::npos) throw ValidationError("demand id " + d.id + " may not contain '#'");
        for (const auto* n : {&d.source, &d.destination}) {
            if (!sc.topology.has_node(*n)) throw ValidationError("demand " + d.id + " references unknown node " + *n);
        }
    }
    sc.warnings = sc.topology.warnings();
    sc.warnings.insert(sc.warnings.end(), sc.catalog.warnings.begin(), sc.catalog.warnings.end());
    return sc;
}

namespace {

struct GroupState {
    const GroupedDemand* group = nullptr;
    std::vector<Span> spans;
    std::vector<TrxConfig> admissible_by_osnr;
    Allocation deployed;
    std::size_t lightpath_counter = 0;
};

}  // namespace

PlanResult run_plan(const Scenario& sc) {
    const ScenarioConfig& cfg = sc.config;
    const std::size_t periods = sc.demands.empty() ? cfg.periods.value_or(1) : sc.demands.front().rate_by_period.size();

    PlanResult result;
    result.regeneration_enabled = cfg.regeneration.enabled;
    result.warnings = sc.warnings;

    // Routing and regeneration happen once, before the first period.
    std::vector<std::pair<TrafficDemand, Route>> routed;
    for (const auto& d : sc.demands) {
        DemandInfo info{d.id, d.source, d.destination, false, {}, {}, {}, {}};
        Route route;
        try {
            route = shortest_route(sc.topology, d.source, d.destination);
        } catch (const RoutingInfeasible& e) {
            result.warnings.push_back("demand " + d.id + " is unroutable: " + e.what());
            result.demands.push_back(std::move(info));
            continue;
        }
        info.routed = true;
        info.node_walk = route.node_walk;

        std::vector<RouteSegment> segments;
        if (cfg.regeneration.enabled) {
            try {
                RegeneratedDemand rd = place_regenerators(sc.topology, d, route, cfg.regeneration.limits);
                segments = std::move(rd.segments);
                info.regen_nodes = std::move(rd.regen_nodes);
            } catch (const RegenerationInfeasible& e) {
                result.warnings.push_back("demand " + d.id + " kept transparent: " + e.what());
                segments = {{route, d}};
            }
        } else {
            segments = {{route, d}};
        }
        for (auto& seg : segments) {
            info.segment_ids.push_back(seg.demand.id);
            info.segment_groups.push_back(GroupKey{seg.demand.source, seg.demand.destination, seg.route.node_walk}.str());
            routed.emplace_back(std::move(seg.demand), std::move(seg.route));
        }
        result.demands.push_back(std::move(info));
    }

    const std::vector<GroupedDemand> groups = group_demands(routed);
    std::map<std::string, const TrafficDemand*> segment_demand;
    for (const auto& r : routed) segment_demand[r.first.id] = &r.first;

    Catalog catalog = sc.catalog;
    GnEngine engine(cfg.qot);
    std::vector<GroupState> states(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        GroupState& st = states[g];
        st.group = &groups[g];
        st.spans = spans_along(sc.topology, groups[g].route.links);
        const double osnr = ase_osnr(st.spans, cfg.qot.launch_power_dbm, cfg.qot.reference_bandwidth_ghz,
                                     cfg.qot.route_osnr_frequency_thz);
        st.admissible_by_osnr = filter_by_osnr(catalog, osnr);
        st.deployed.group_key = groups[g].key.str();

        GroupInfo gi{groups[g].key, groups[g].route, groups[g].member_ids, groups[g].rate_by_period, osnr, {}};
        for (const auto& c : st.admissible_by_osnr) gi.admissible_by_osnr.push_back(c.id);
        result.groups.push_back(std::move(gi));
    }

    // Spectrum is assigned in a fixed order: larger first-period groups first.
    std::vector<std::size_t> order(groups.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Gbps ra = groups[a].rate_by_period.front(), rb = groups[b].rate_by_period.front();
        if (ra != rb) return ra > rb;
        return groups[a].key < groups[b].key;
    });

    std::vector<std::string> link_ids;
    for (const auto& l : sc.topology.links()) link_ids.push_back(l.id);
    result.spectrum = SpectrumGrid(link_ids, cfg.qot.l_enabled);

    std::size_t regen_count = 0;
    for (const auto& d : result.demands) regen_count += d.regen_nodes.size();

    std::size_t total_lightpaths = 0;
    for (std::size_t p = 0; p < periods; ++p) {
        engine.reset_counter();
        PeriodMetrics m;
        m.period = p;

        // GSNR bounds depend only on the synthetic placements, never on the
        // live spectrum, so they are computed ahead of the assignment phase.
        std::vector<std::optional<GsnrBound>> bounds(groups.size());
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (states[g].admissible_by_osnr.empty()) continue;
            try {
                bounds[g] = gsnr_bounds(groups[g], states[g].admissible_by_osnr, p, states[g].spans, engine);
                ++m.groups_bounded;
            } catch (const BoundUnavailable& e) {
                result.warnings.push_back("period " + std::to_string(p + 1) + ": " + e.what());
            }
        }

        for (std::size_t g : order) {
            GroupState& st = states[g];
            GroupPeriodRecord rec;
            rec.group_key = groups[g].key.str();
            rec.period = p;
            rec.rate_gbps = groups[g].rate_by_period[p];
            rec.bound = bounds[g];

            std::vector<TrxConfig> admissible;
            if (bounds[g]) admissible = filter_by_gsnr(st.admissible_by_osnr, *bounds[g], catalog.margin_db);
            for (const auto& c : admissible) rec.admissible.push_back(c.id);

            const Gbps residual = std::max<Gbps>(0, rec.rate_gbps - st.deployed.total_rate_gbps);
            if (residual > 0 && admissible.empty()) {
                rec.status = GroupStatus::BlockedQot;
            } else if (residual > 0) {
                const Allocation delta = incremental_allocate(groups[g], p, admissible, st.deployed);
                for (const auto& lp : delta.lightpaths) {
                    const std::string lp_id = rec.group_key + "/" + std::to_string(st.lightpath_counter);
                    try {
                        MediaChannel mc = result.spectrum.assign_first_fit(groups[g].route.links, slots_needed(lp), lp_id,
                                                                           lp.id, rec.group_key);
                        ++st.lightpath_counter;
                        rec.added.push_back({lp_id, lp.id, lp.data_rate_gbps, lp.bandwidth_ghz, mc.start, mc.end});
                        st.deployed.lightpaths.push_back(lp);
                        st.deployed.total_rate_gbps += lp.data_rate_gbps;
                        st.deployed.total_bandwidth_ghz += lp.bandwidth_ghz;
                        ++total_lightpaths;
                    } catch (const SpectrumBlocked&) {
                        rec.status = GroupStatus::BlockedSpectrum;
                    }
                }
            }
            rec.deployed_rate_gbps = st.deployed.total_rate_gbps;
            rec.deployed_lightpaths = st.deployed.lightpaths.size();
            result.records.push_back(std::move(rec));
        }

        // Served traffic: deployed group capacity is handed to members in
        // demand-id order; a regenerated demand is served at the minimum over
        // its segments.
        std::map<std::string, Gbps> share;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            Gbps capacity = states[g].deployed.total_rate_gbps;
            for (const auto& member : groups[g].member_ids) {
                const Gbps want = segment_demand.at(member)->rate_by_period[p];
                const Gbps got = std::min(want, capacity);
                share[member] = got;
                capacity -= got;
            }
        }
        for (std::size_t i = 0; i < sc.demands.size(); ++i) {
            const TrafficDemand& d = sc.demands[i];
            const DemandInfo& info = result.demands[i];
            m.requested_gbps += d.rate_by_period[p];
            if (!info.routed) continue;
            Gbps served = d.rate_by_period[p];
            for (const auto& seg : info.segment_ids) served = std::min(served, share.at(seg));
            m.served_gbps += served;
        }
        m.blocked_gbps = m.requested_gbps - m.served_gbps;

        m.lightpaths = total_lightpaths;
        m.trx_count = 2 * total_lightpaths;
        m.regen_count = regen_count;
        const SpectrumMetrics sm = occupied_range_metrics(result.spectrum);
        m.eq_wavelengths_50ghz = sm.equivalent_50ghz_wavelengths;
        m.c_band_overflow = sm.c_band_overflow;
        m.gn_evaluations = engine.evaluations();
        m.spectrum_violations = result.spectrum.verify();
        result.periods.push_back(std::move(m));
    }
    return result;
}

PlanResult run_plan(const ScenarioConfig& config) { return run_plan(load_inputs(config)); }

std::vector<RelativeDifference> compare_runs(const std::vector<PeriodMetrics>& a, const std::vector<PeriodMetrics>& b) {
    if (a.size() != b.size()) throw ValidationError("runs cover a different number of periods");
    auto rel = [](double x, double y) {
        if (y == 0.0) return x == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), x);
        return (x - y) / y;
    };
    std::vector<RelativeDifference> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.push_back({a[i].period, rel(static_cast<double>(a[i].served_gbps), static_cast<double>(b[i].served_gbps)),
                       rel(static_cast<double>(a[i].trx_count), static_cast<double>(b[i].trx_count)),
                       rel(a[i].eq_wavelengths_50ghz, b[i].eq_wavelengths_50ghz)});
    }
    return out;
}

std::vector<RelativeDifference> compare_runs(const PlanResult& a, const PlanResult& b) {
    return compare_runs(a.periods, b.periods);
}

}  // namespace flexplan
