#include "flexplan/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "flexplan/errors.hpp"
#include "json_fields.hpp"

namespace flexplan {

using detail::join_path;
using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::string GroupKey::str() const {
    std::string walk;
    for (const auto& n : node_walk) {
        if (!walk.empty()) walk += '-';
        walk += n;
    }
    return source + ">" + destination + ":" + walk;
}

std::vector<TrafficDemand> generate_periods(const GrowthModel& model) {
    if (model.periods == 0) throw ValidationError("growth model needs at least one period");
    std::vector<TrafficDemand> out;
    out.reserve(model.demands.size());
    for (const auto& spec : model.demands) {
        if (spec.base_rate_gbps < 0.0) throw ValidationError("demand " + spec.id + " has a negative base rate");
        if (spec.source == spec.destination) throw ValidationError("demand " + spec.id + " has source == destination");
        if (model.growth_only && spec.growth_factor < 1.0) {
            throw ValidationError("demand " + spec.id + " shrinks in a growth-only scenario");
        }

        TrafficDemand d{spec.id, spec.source, spec.destination, {}};
        d.rate_by_period.reserve(model.periods);

        // mt19937_64 output is fully specified by the standard; the modulo
        // mapping keeps the jitter sequence bit-identical across toolchains.
        std::mt19937_64 rng(spec.jitter ? spec.jitter->seed : 0);
        Gbps previous = 0;
        for (std::size_t p = 0; p < model.periods; ++p) {
            double nominal = spec.base_rate_gbps * std::pow(spec.growth_factor, static_cast<double>(p));
            Gbps rate = std::llround(nominal);
            if (spec.jitter && spec.jitter->max_gbps > 0) {
                const auto span = static_cast<std::uint64_t>(2 * spec.jitter->max_gbps + 1);
                rate += static_cast<Gbps>(rng() % span) - spec.jitter->max_gbps;
                rate = std::max<Gbps>(rate, 0);
                if (model.growth_only) rate = std::max(rate, previous);
            }
            d.rate_by_period.push_back(rate);
            previous = rate;
        }
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<GroupedDemand> group_demands(const std::vector<std::pair<TrafficDemand, Route>>& routed) {
    std::map<GroupKey, GroupedDemand> groups;
    for (const auto& [demand, route] : routed) {
        if (route.node_walk.empty() || route.source() != demand.source || route.destination() != demand.destination) {
            throw ValidationError("demand " + demand.id + " does not match its route endpoints");
        }
        GroupKey key{demand.source, demand.destination, route.node_walk};
        auto [it, inserted] = groups.try_emplace(key);
        GroupedDemand& g = it->second;
        if (inserted) {
            g.key = key;
            g.route = route;
            g.rate_by_period.assign(demand.rate_by_period.size(), 0);
        } else if (g.rate_by_period.size() != demand.rate_by_period.size()) {
            throw ValidationError("demand " + demand.id + " has a different period count than its group");
        }
        g.member_ids.push_back(demand.id);
        for (std::size_t p = 0; p < demand.rate_by_period.size(); ++p) g.rate_by_period[p] += demand.rate_by_period[p];
    }
    std::vector<GroupedDemand> out;
    out.reserve(groups.size());
    for (auto& [key, g] : groups) {
        std::sort(g.member_ids.begin(), g.member_ids.end());
        out.push_back(std::move(g));
    }
    return out;
}

GrowthModel load_growth_model(const json& doc, std::uint64_t default_seed) {
    detail::require_schema_version(doc, 1);
    GrowthModel model;
    const std::int64_t periods = detail::require_integer(doc, "periods", "");
    if (periods <= 0) throw SchemaError("/periods", "period count must be positive");
    model.periods = static_cast<std::size_t>(periods);
    model.growth_only = detail::optional_bool(doc, "growth_only", "", true);
    const double default_growth = detail::optional_number(doc, "growth_factor", "", 1.0);

    const json& jdemands = detail::require_array(doc, "demands", "");
    for (std::size_t i = 0; i < jdemands.size(); ++i) {
        const std::string path = join_path("/demands", i);
        const json& jd = jdemands[i];
        DemandSpec spec;
        spec.id = detail::require_string(jd, "id", path);
        spec.source = detail::require_string(jd, "source", path);
        spec.destination = detail::require_string(jd, "destination", path);
        spec.base_rate_gbps = detail::require_number(jd, "base_rate_gbps", path);
        if (spec.base_rate_gbps < 0.0) throw SchemaError(join_path(path, "base_rate_gbps"), "negative base rate");
        spec.growth_factor = detail::optional_number(jd, "growth_factor", path, default_growth);
        if (spec.growth_factor <= 0.0) throw SchemaError(join_path(path, "growth_factor"), "growth factor must be positive");
        if (jd.contains("jitter")) {
            const std::string jpath = join_path(path, "jitter");
            const json& jj = jd.at("jitter");
            Jitter jitter;
            jitter.max_gbps = detail::require_integer(jj, "max_gbps", jpath);
            if (jitter.max_gbps < 0) throw SchemaError(join_path(jpath, "max_gbps"), "jitter bound must be >= 0");
            if (jj.contains("seed")) {
                jitter.seed = static_cast<std::uint64_t>(detail::require_integer(jj, "seed", jpath));
            } else {
                // Distinct per-demand streams derived from the scenario seed.
                jitter.seed = default_seed ^ fnv1a(spec.id);
            }
            spec.jitter = jitter;
        }
        model.demands.push_back(std::move(spec));
    }
    return model;
}

GrowthModel load_growth_model_file(const std::filesystem::path& path, std::uint64_t default_seed) {
    return load_growth_model(detail::read_json_file(path), default_seed);
}

Gbps total_rate(const std::vector<TrafficDemand>& demands, std::size_t period) {
    Gbps total = 0;
    for (const auto& d : demands) total += d.rate_by_period.at(period);
    return total;
}

}  // namespace flexplan
