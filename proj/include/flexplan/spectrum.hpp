#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "flexplan/route.hpp"

namespace flexplan {

struct TrxConfig;

inline constexpr int kSlotsPerBand = 384;
inline constexpr double kSlotWidthGhz = 12.5;

/// Contiguous slot range [start, end) held by one lightpath on every link of
/// its route.
struct MediaChannel {
    std::string lightpath_id;
    std::string config_id;
    std::string group_key;
    std::vector<std::string> links;
    int start = 0;
    int end = 0;

    int width() const { return end - start; }
};

struct SpectrumMetrics {
    std::map<std::string, int> max_occupied_slot;  // highest occupied index + 1, per link
    int equivalent_50ghz_wavelengths = 0;
    bool c_band_overflow = false;
};

/// Flex-grid occupancy per link: C band is slots [0, 384), the optional
/// L band continues at [384, 768). Slots are never released.
class SpectrumGrid {
public:
    SpectrumGrid() = default;
    SpectrumGrid(const std::vector<std::string>& link_ids, bool l_band_enabled);

    int slot_count() const { return l_enabled_ ? 2 * kSlotsPerBand : kSlotsPerBand; }
    bool l_enabled() const { return l_enabled_; }
    bool occupied(const std::string& link, int slot) const;
    const std::vector<MediaChannel>& media_channels() const { return channels_; }
    const std::map<std::string, std::vector<bool>>& occupancy() const { return occupancy_; }

    /// Lowest contiguous range free on every link, C band first. Throws
    /// SpectrumBlocked when none exists; the grid is left unchanged then.
    MediaChannel assign_first_fit(const std::vector<std::string>& route_links, int width_slots,
                                  std::string lightpath_id = {}, std::string config_id = {},
                                  std::string group_key = {});

    /// Occupancy recomputed from the media-channel table must match the
    /// bitmaps, and no two channels may share a slot on a link. Returns one
    /// message per violation.
    std::vector<std::string> verify() const;

private:
    bool range_free(const std::vector<std::string>& links, int start, int end) const;

    bool l_enabled_ = false;
    std::map<std::string, std::vector<bool>> occupancy_;
    std::vector<MediaChannel> channels_;
};

int slots_needed(const TrxConfig& config);
int slots_needed(double bandwidth_ghz);

SpectrumMetrics occupied_range_metrics(const SpectrumGrid& grid);

nlohmann::json spectrum_to_json(const SpectrumGrid& grid);

}  // namespace flexplan
