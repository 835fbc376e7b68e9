#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "flexplan/errors.hpp"
#include "flexplan/planner.hpp"

namespace flexplan {

using nlohmann::json;

namespace {

constexpr const char* kSummaryHeader =
    "period,requested_gbps,served_gbps,blocked_gbps,trx_count,regen_count,eq_wavelengths_50ghz";

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("failed writing " + path.string());
}

std::string format_ratio(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string to_string(GroupStatus status) {
    switch (status) {
        case GroupStatus::Served: return "served";
        case GroupStatus::BlockedQot: return "blocked-qot";
        case GroupStatus::BlockedSpectrum: return "blocked-spectrum";
    }
    return "unknown";
}

std::string summary_csv(const PlanResult& result) {
    std::ostringstream out;
    out << kSummaryHeader << '\n';
    for (const auto& m : result.periods) {
        out << (m.period + 1) << ',' << m.requested_gbps << ',' << m.served_gbps << ',' << m.blocked_gbps << ','
            << m.trx_count << ',' << m.regen_count << ',' << m.eq_wavelengths_50ghz << '\n';
    }
    return out.str();
}

json allocations_json(const PlanResult& result) {
    json doc;
    doc["schema_version"] = 1;
    doc["regeneration_enabled"] = result.regeneration_enabled;

    doc["demands"] = json::array();
    for (const auto& d : result.demands) {
        doc["demands"].push_back({{"id", d.id},
                                  {"source", d.source},
                                  {"destination", d.destination},
                                  {"routed", d.routed},
                                  {"node_walk", d.node_walk},
                                  {"regen_nodes", d.regen_nodes},
                                  {"segments", d.segment_ids},
                                  {"segment_groups", d.segment_groups}});
    }

    doc["groups"] = json::array();
    for (const auto& g : result.groups) {
        doc["groups"].push_back({{"key", g.key.str()},
                                 {"source", g.key.source},
                                 {"destination", g.key.destination},
                                 {"node_walk", g.key.node_walk},
                                 {"links", g.route.links},
                                 {"length_km", g.route.length_km},
                                 {"members", g.member_ids},
                                 {"rate_by_period_gbps", g.rate_by_period},
                                 {"route_osnr_db", g.route_osnr_db},
                                 {"admissible_by_osnr", g.admissible_by_osnr}});
    }

    doc["periods"] = json::array();
    std::size_t next = 0;
    for (const auto& m : result.periods) {
        json period{{"period", m.period + 1},
                    {"requested_gbps", m.requested_gbps},
                    {"served_gbps", m.served_gbps},
                    {"blocked_gbps", m.blocked_gbps},
                    {"trx_count", m.trx_count},
                    {"lightpaths", m.lightpaths},
                    {"regen_count", m.regen_count},
                    {"eq_wavelengths_50ghz", m.eq_wavelengths_50ghz},
                    {"c_band_overflow", m.c_band_overflow},
                    {"gn_evaluations", m.gn_evaluations},
                    {"groups", json::array()}};
        for (; next < result.records.size() && result.records[next].period == m.period; ++next) {
            const GroupPeriodRecord& r = result.records[next];
            json rec{{"key", r.group_key},
                     {"rate_gbps", r.rate_gbps},
                     {"admissible", r.admissible},
                     {"deployed_rate_gbps", r.deployed_rate_gbps},
                     {"deployed_lightpaths", r.deployed_lightpaths},
                     {"status", to_string(r.status)},
                     {"added", json::array()}};
            if (r.bound) {
                rec["gsnr_bound"] = {{"lower_db", r.bound->lower_db},
                                     {"upper_db", r.bound->upper_db},
                                     {"min_rate_config", r.bound->min_rate_config},
                                     {"min_rate_channels", r.bound->min_rate_channels},
                                     {"max_rate_config", r.bound->max_rate_config},
                                     {"max_rate_channels", r.bound->max_rate_channels}};
            } else {
                rec["gsnr_bound"] = nullptr;
            }
            for (const auto& lp : r.added) {
                rec["added"].push_back({{"lightpath", lp.id},
                                        {"config", lp.config_id},
                                        {"data_rate_gbps", lp.data_rate_gbps},
                                        {"bandwidth_ghz", lp.bandwidth_ghz},
                                        {"slots", {lp.start_slot, lp.end_slot}}});
            }
            period["groups"].push_back(std::move(rec));
        }
        doc["periods"].push_back(std::move(period));
    }
    return doc;
}

void emit_report(const PlanResult& result, const std::filesystem::path& directory, bool dump_spectrum) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw IoError("cannot create " + directory.string() + ": " + ec.message());
    write_file(directory / "summary.csv", summary_csv(result));
    write_file(directory / "allocations.json", allocations_json(result).dump(2) + "\n");
    if (dump_spectrum) write_file(directory / "spectrum.json", spectrum_to_json(result.spectrum).dump(2) + "\n");
}

std::vector<PeriodMetrics> read_summary_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    if (line != kSummaryHeader) throw SchemaError(path.string(), "unexpected summary header");
    std::vector<PeriodMetrics> out;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<long long> f;
        std::stringstream ss(line);
        std::string cell;
        try {
            while (std::getline(ss, cell, ',')) f.push_back(std::stoll(cell));
        } catch (const std::exception&) {
            throw SchemaError(path.string() + ":" + std::to_string(row), "non-integer field");
        }
        if (f.size() != 7) throw SchemaError(path.string() + ":" + std::to_string(row), "expected 7 columns");
        PeriodMetrics m;
        m.period = static_cast<std::size_t>(f[0] - 1);
        m.requested_gbps = f[1];
        m.served_gbps = f[2];
        m.blocked_gbps = f[3];
        m.trx_count = static_cast<std::size_t>(f[4]);
        m.regen_count = static_cast<std::size_t>(f[5]);
        m.eq_wavelengths_50ghz = static_cast<int>(f[6]);
        out.push_back(m);
    }
    return out;
}

std::string comparison_csv(const std::vector<RelativeDifference>& diffs) {
    std::ostringstream out;
    out << "period,throughput_rel,trx_rel,wavelengths_rel\n";
    for (const auto& d : diffs) {
        out << (d.period + 1) << ',' << format_ratio(d.throughput) << ',' << format_ratio(d.trx_count) << ','
            << format_ratio(d.wavelengths) << '\n';
    }
    return out.str();
}

}  // namespace flexplan
