#include "flexplan/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "flexplan/errors.hpp"
#include "flexplan/transceiver.hpp"

namespace flexplan {

SpectrumGrid::SpectrumGrid(const std::vector<std::string>& link_ids, bool l_band_enabled) : l_enabled_(l_band_enabled) {
    for (const auto& id : link_ids) occupancy_[id].assign(static_cast<std::size_t>(slot_count()), false);
}

bool SpectrumGrid::occupied(const std::string& link, int slot) const {
    auto it = occupancy_.find(link);
    if (it == occupancy_.end()) throw ValidationError("unknown link " + link);
    return it->second.at(static_cast<std::size_t>(slot));
}

bool SpectrumGrid::range_free(const std::vector<std::string>& links, int start, int end) const {
    for (const auto& id : links) {
        const auto& bits = occupancy_.at(id);
        for (int s = start; s < end; ++s) {
            if (bits[static_cast<std::size_t>(s)]) return false;
        }
    }
    return true;
}

MediaChannel SpectrumGrid::assign_first_fit(const std::vector<std::string>& route_links, int width_slots,
                                            std::string lightpath_id, std::string config_id, std::string group_key) {
    if (width_slots < 1) throw ValidationError("media channel needs at least one slot");
    if (route_links.empty()) throw ValidationError("media channel needs a route");
    for (const auto& id : route_links) {
        if (!occupancy_.contains(id)) throw ValidationError("unknown link " + id);
    }

    const int bands = l_enabled_ ? 2 : 1;
    for (int band = 0; band < bands; ++band) {
        const int lo = band * kSlotsPerBand;
        const int hi = lo + kSlotsPerBand;
        for (int start = lo; start + width_slots <= hi; ++start) {
            if (!range_free(route_links, start, start + width_slots)) continue;
            for (const auto& id : route_links) {
                auto& bits = occupancy_[id];
                std::fill(bits.begin() + start, bits.begin() + start + width_slots, true);
            }
            MediaChannel mc{std::move(lightpath_id), std::move(config_id), std::move(group_key), route_links, start,
                            start + width_slots};
            channels_.push_back(mc);
            return mc;
        }
    }
    throw SpectrumBlocked("no common free range of " + std::to_string(width_slots) + " slots along the route");
}

std::vector<std::string> SpectrumGrid::verify() const {
    std::vector<std::string> problems;
    std::map<std::string, std::vector<int>> owner;
    for (const auto& [id, bits] : occupancy_) owner[id].assign(bits.size(), -1);

    for (std::size_t m = 0; m < channels_.size(); ++m) {
        const MediaChannel& mc = channels_[m];
        if (mc.start < 0 || mc.end > slot_count() || mc.start >= mc.end) {
            problems.push_back(mc.lightpath_id + ": invalid slot range");
            continue;
        }
        if (mc.start / kSlotsPerBand != (mc.end - 1) / kSlotsPerBand) {
            problems.push_back(mc.lightpath_id + ": straddles the band edge");
        }
        for (const auto& link : mc.links) {
            auto it = owner.find(link);
            if (it == owner.end()) {
                problems.push_back(mc.lightpath_id + ": unknown link " + link);
                continue;
            }
            for (int s = mc.start; s < mc.end; ++s) {
                int& o = it->second[static_cast<std::size_t>(s)];
                if (o >= 0) {
                    problems.push_back(mc.lightpath_id + " collides with " + channels_[static_cast<std::size_t>(o)].lightpath_id +
                                       " on " + link + " slot " + std::to_string(s));
                }
                o = static_cast<int>(m);
            }
        }
    }
    for (const auto& [id, bits] : occupancy_) {
        const auto& own = owner.at(id);
        for (std::size_t s = 0; s < bits.size(); ++s) {
            if (bits[s] != (own[s] >= 0)) {
                problems.push_back("bitmap of " + id + " disagrees with media channels at slot " + std::to_string(s));
            }
        }
    }
    return problems;
}

int slots_needed(double bandwidth_ghz) {
    return static_cast<int>(std::ceil(bandwidth_ghz / kSlotWidthGhz - 1e-9));
}

int slots_needed(const TrxConfig& config) { return slots_needed(config.bandwidth_ghz); }

SpectrumMetrics occupied_range_metrics(const SpectrumGrid& grid) {
    SpectrumMetrics m;
    int widest = 0;
    for (const auto& [id, bits] : grid.occupancy()) {
        int top = 0;
        for (std::size_t s = bits.size(); s-- > 0;) {
            if (bits[s]) {
                top = static_cast<int>(s) + 1;
                break;
            }
        }
        m.max_occupied_slot[id] = top;
        widest = std::max(widest, top);
    }
    // 4 slots of 12.5 GHz per 50 GHz wavelength.
    m.equivalent_50ghz_wavelengths = (widest + 3) / 4;
    m.c_band_overflow = widest > kSlotsPerBand;
    return m;
}

nlohmann::json spectrum_to_json(const SpectrumGrid& grid) {
    nlohmann::json doc;
    doc["slot_width_ghz"] = kSlotWidthGhz;
    doc["c_slots"] = kSlotsPerBand;
    doc["l_slots"] = grid.l_enabled() ? kSlotsPerBand : 0;
    doc["links"] = nlohmann::json::array();
    for (const auto& [id, bits] : grid.occupancy()) {
        std::string bitmap(bits.size(), '0');
        for (std::size_t s = 0; s < bits.size(); ++s) {
            if (bits[s]) bitmap[s] = '1';
        }
        doc["links"].push_back({{"id", id}, {"occupancy", bitmap}});
    }
    doc["media_channels"] = nlohmann::json::array();
    for (const auto& mc : grid.media_channels()) {
        doc["media_channels"].push_back({{"lightpath", mc.lightpath_id},
                                         {"config", mc.config_id},
                                         {"group", mc.group_key},
                                         {"links", mc.links},
                                         {"start", mc.start},
                                         {"end", mc.end}});
    }
    return doc;
}

}  // namespace flexplan
