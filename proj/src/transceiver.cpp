#include "flexplan/transceiver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "flexplan/errors.hpp"
#include "flexplan/qot.hpp"
#include "json_fields.hpp"

namespace flexplan {

using detail::join_path;
using nlohmann::json;

namespace {

constexpr double kBandwidthTie = 1e-9;

struct Totals {
    double bandwidth = 0.0;
    Gbps rate = 0;
};

Totals totals_of(std::span<const TrxConfig> lps) {
    Totals t;
    for (const auto& c : lps) {
        t.bandwidth += c.bandwidth_ghz;
        t.rate += c.data_rate_gbps;
    }
    return t;
}

std::vector<std::string> sorted_ids(std::span<const TrxConfig> lps) {
    std::vector<std::string> ids;
    for (const auto& c : lps) ids.push_back(c.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

Gbps ceil_div(Gbps a, Gbps b) { return (a + b - 1) / b; }

}  // namespace

Catalog load_catalog(const json& doc) {
    detail::require_schema_version(doc, 1);
    Catalog cat;
    if (!doc.contains("reference_bandwidth_ghz")) {
        throw SchemaError("/reference_bandwidth_ghz", "missing reference-bandwidth declaration");
    }
    const double ref = detail::require_number(doc, "reference_bandwidth_ghz", "");
    if (std::abs(ref - 12.5) > 1e-9) {
        throw SchemaError("/reference_bandwidth_ghz", "thresholds must be referenced to 12.5 GHz");
    }
    cat.margin_db = detail::optional_number(doc, "margin_db", "", 1.0);
    if (cat.margin_db < 0.0) throw SchemaError("/margin_db", "margin must be >= 0");

    const json& jconfigs = detail::require_array(doc, "configs", "");
    if (jconfigs.empty()) throw SchemaError("/configs", "catalog has no configurations");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < jconfigs.size(); ++i) {
        const std::string path = join_path("/configs", i);
        const json& jc = jconfigs[i];
        TrxConfig c;
        c.id = detail::require_string(jc, "id", path);
        if (!ids.insert(c.id).second) throw SchemaError(join_path(path, "id"), "duplicate config id " + c.id);
        c.data_rate_gbps = detail::require_integer(jc, "data_rate_gbps", path);
        if (c.data_rate_gbps <= 0) throw SchemaError(join_path(path, "data_rate_gbps"), "data rate must be positive");
        c.bandwidth_ghz = detail::require_number(jc, "bandwidth_ghz", path);
        if (c.bandwidth_ghz < 25.0 || c.bandwidth_ghz > 100.0) {
            throw SchemaError(join_path(path, "bandwidth_ghz"), "bandwidth must lie in [25, 100] GHz");
        }
        c.symbol_rate_gbd = detail::require_number(jc, "symbol_rate_gbd", path);
        if (c.symbol_rate_gbd <= 0.0 || c.symbol_rate_gbd > c.bandwidth_ghz) {
            throw SchemaError(join_path(path, "symbol_rate_gbd"), "symbol rate must be in (0, bandwidth]");
        }
        c.modulation = detail::require_string(jc, "modulation", path);
        c.min_osnr_db = detail::require_number(jc, "min_osnr_db", path);
        cat.configs.push_back(std::move(c));
    }

    std::map<double, std::vector<const TrxConfig*>> by_symbol_rate;
    for (const auto& c : cat.configs) by_symbol_rate[c.symbol_rate_gbd].push_back(&c);
    for (auto& [rate, configs] : by_symbol_rate) {
        std::sort(configs.begin(), configs.end(),
                  [](auto* a, auto* b) { return a->data_rate_gbps < b->data_rate_gbps; });
        for (std::size_t i = 1; i < configs.size(); ++i) {
            if (configs[i]->min_osnr_db < configs[i - 1]->min_osnr_db) {
                cat.warnings.push_back("min OSNR of " + configs[i]->id + " is below that of lower-rate " +
                                       configs[i - 1]->id + " at the same symbol rate");
            }
        }
    }
    return cat;
}

Catalog load_catalog_file(const std::filesystem::path& path) { return load_catalog(detail::read_json_file(path)); }

std::vector<TrxConfig> filter_by_osnr(const Catalog& catalog, double route_osnr_db) {
    std::vector<TrxConfig> out;
    for (const auto& c : catalog.configs) {
        if (c.min_osnr_db + catalog.margin_db <= route_osnr_db) out.push_back(c);
    }
    return out;
}

std::vector<TrxConfig> filter_by_gsnr(std::span<const TrxConfig> configs, const GsnrBound& bound, double margin_db) {
    std::vector<TrxConfig> out;
    for (const auto& c : configs) {
        if (c.min_osnr_db + margin_db <= bound.lower_db) out.push_back(c);
    }
    return out;
}

std::pair<std::size_t, std::size_t> lp_count_bounds(Gbps group_rate, std::span<const TrxConfig> admissible) {
    if (admissible.empty()) throw DemandBlocked("no admissible configuration");
    if (group_rate <= 0) return {0, 0};
    Gbps lo = admissible.front().data_rate_gbps, hi = lo;
    for (const auto& c : admissible) {
        lo = std::min(lo, c.data_rate_gbps);
        hi = std::max(hi, c.data_rate_gbps);
    }
    return {static_cast<std::size_t>(ceil_div(group_rate, hi)), static_cast<std::size_t>(ceil_div(group_rate, lo))};
}

bool allocation_better(std::span<const TrxConfig> a, std::span<const TrxConfig> b, Gbps rate) {
    const Totals ta = totals_of(a), tb = totals_of(b);
    if (ta.bandwidth < tb.bandwidth - kBandwidthTie) return true;
    if (tb.bandwidth < ta.bandwidth - kBandwidthTie) return false;
    if (a.size() != b.size()) return a.size() < b.size();
    if (ta.rate != tb.rate) return ta.rate - rate < tb.rate - rate;
    return sorted_ids(a) < sorted_ids(b);
}

std::vector<TrxConfig> min_bandwidth_multiset(Gbps rate, std::span<const TrxConfig> admissible) {
    if (rate <= 0) return {};
    if (admissible.empty()) throw DemandBlocked("no admissible configuration for " + std::to_string(rate) + " Gbps");

    std::vector<TrxConfig> configs(admissible.begin(), admissible.end());
    std::sort(configs.begin(), configs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    const std::size_t k = configs.size();

    // Suffix bounds for pruning: cheapest bandwidth and largest rate from index i on.
    std::vector<double> min_bw(k + 1, INFINITY);
    std::vector<Gbps> max_rate(k + 1, 0);
    for (std::size_t i = k; i-- > 0;) {
        min_bw[i] = std::min(min_bw[i + 1], configs[i].bandwidth_ghz);
        max_rate[i] = std::max(max_rate[i + 1], configs[i].data_rate_gbps);
    }

    const auto [n_min, n_max] = lp_count_bounds(rate, configs);
    std::vector<TrxConfig> best;
    double best_bw = INFINITY;
    std::vector<TrxConfig> current;

    // Combinations with repetition of size n, non-decreasing config index.
    auto search = [&](auto&& self, std::size_t start, std::size_t remaining, double bw, Gbps sum) -> void {
        if (remaining == 0) {
            if (sum >= rate && (best.empty() || allocation_better(current, best, rate))) {
                best = current;
                best_bw = bw;
            }
            return;
        }
        for (std::size_t i = start; i < k; ++i) {
            const auto rem = static_cast<double>(remaining);
            if (bw + rem * min_bw[i] > best_bw + kBandwidthTie) break;
            if (sum + static_cast<Gbps>(remaining) * max_rate[i] < rate) break;
            current.push_back(configs[i]);
            self(self, i, remaining - 1, bw + configs[i].bandwidth_ghz, sum + configs[i].data_rate_gbps);
            current.pop_back();
        }
    };
    for (std::size_t n = n_min; n <= n_max; ++n) search(search, 0, n, 0.0, 0);

    if (best.empty()) throw DemandBlocked("no feasible combination for " + std::to_string(rate) + " Gbps");
    std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return best;
}

namespace {

Allocation make_allocation(const GroupedDemand& group, std::size_t period, std::vector<TrxConfig> lps) {
    Allocation a;
    a.group_key = group.key.str();
    a.period = period;
    const Totals t = totals_of(lps);
    a.total_bandwidth_ghz = t.bandwidth;
    a.total_rate_gbps = t.rate;
    a.lightpaths = std::move(lps);
    return a;
}

}  // namespace

Allocation allocate(const GroupedDemand& group, std::size_t period, std::span<const TrxConfig> admissible) {
    const Gbps rate = group.rate_by_period.at(period);
    return make_allocation(group, period, min_bandwidth_multiset(rate, admissible));
}

Allocation incremental_allocate(const GroupedDemand& group, std::size_t period, std::span<const TrxConfig> admissible,
                                const Allocation& existing) {
    const Gbps residual = std::max<Gbps>(0, group.rate_by_period.at(period) - existing.total_rate_gbps);
    return make_allocation(group, period, min_bandwidth_multiset(residual, admissible));
}

}  // namespace flexplan
